#include "gridplan/ev/fleet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <tuple>

#include "gridplan/core/csv.hpp"

namespace gridplan::ev {

namespace fs = std::filesystem;
using core::CsvTable;
using core::csv_number;
using core::ScenarioError;

std::optional<VehicleClass> parse_class(const std::string& s) {
    if (s == "2-3" || s == "2b-3") return VehicleClass::C2_3;
    if (s == "4-6") return VehicleClass::C4_6;
    if (s == "7") return VehicleClass::C7;
    if (s == "8") return VehicleClass::C8;
    return std::nullopt;
}

const char* to_string(VehicleClass c) {
    switch (c) {
        case VehicleClass::C2_3: return "2-3";
        case VehicleClass::C4_6: return "4-6";
        case VehicleClass::C7: return "7";
        case VehicleClass::C8: return "8";
    }
    return "?";
}

const std::array<VehicleSpec, 4>& vehicle_specs() {
    static const std::array<VehicleSpec, 4> specs{{
        {VehicleClass::C2_3, 150.0, 100.0, 0.6},
        {VehicleClass::C4_6, 150.0, 300.0, 1.05},
        {VehicleClass::C7, 150.0, 400.0, 1.1},
        {VehicleClass::C8, 150.0, 600.0, 1.8},
    }};
    return specs;
}

const VehicleSpec& spec_for(VehicleClass c) { return vehicle_specs()[static_cast<size_t>(c)]; }

double parse_hhmm(const std::string& s) {
    const auto colon = s.find(':');
    double h = 0.0;
    try {
        if (colon == std::string::npos) {
            size_t used = 0;
            h = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
        } else {
            const int hh = std::stoi(s.substr(0, colon));
            const int mm = std::stoi(s.substr(colon + 1));
            if (mm < 0 || mm >= 60) throw std::invalid_argument(s);
            h = hh + mm / 60.0;
        }
    } catch (const std::logic_error&) {
        throw std::invalid_argument("not a time of day: '" + s + "'");
    }
    if (h < 0.0 || h > 24.0) throw std::invalid_argument("time of day outside 0..24: '" + s + "'");
    return h >= 24.0 ? h - 24.0 : h;
}

std::vector<DriveRecord> load_drives(const fs::path& file) {
    auto t = CsvTable::read(file, {"class", "vocation", "start_hhmm", "end_hhmm", "miles"});
    std::vector<DriveRecord> out;
    t.for_each([&](const core::CsvRow& r) {
        DriveRecord d;
        auto c = parse_class(r.str("class"));
        if (!c) r.fail("unknown vehicle class '" + r.str("class") + "'");
        d.cls = *c;
        d.vocation = r.str("vocation");
        try {
            d.start_h = parse_hhmm(r.str("start_hhmm"));
            d.end_h = parse_hhmm(r.str("end_hhmm"));
        } catch (const std::invalid_argument& e) {
            r.fail(e.what());
        }
        d.miles = r.num("miles");
        if (d.miles <= 0.0) r.fail("miles must be positive");
        out.push_back(std::move(d));
    });
    return out;
}

std::vector<Projection> load_population(const fs::path& file) {
    auto t = CsvTable::read(file, {"year", "class", "vocation", "count"});
    std::vector<Projection> out;
    t.for_each([&](const core::CsvRow& r) {
        Projection p;
        p.year = r.integer("year");
        auto c = parse_class(r.str("class"));
        if (!c) r.fail("unknown vehicle class '" + r.str("class") + "'");
        p.cls = *c;
        p.vocation = r.str("vocation");
        p.count = r.integer("count");
        if (p.count < 0) r.fail("count must be non-negative");
        out.push_back(std::move(p));
    });
    return out;
}

namespace {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t fnv1a(const std::string& s, uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

double dwell_hours(double arrival, double departure) {
    double d = departure - arrival;
    if (d <= 0.0) d += 24.0;
    return d;
}

}  // namespace

uint64_t draw_index(uint64_t& state, uint64_t n) {
    if (n == 0) throw std::invalid_argument("draw_index: empty range");
    const uint64_t threshold = (0 - n) % n;
    for (;;) {
        const uint64_t x = splitmix64(state);
        if (x >= threshold) return x % n;
    }
}

BootstrapResult bootstrap_fleet(const std::vector<DriveRecord>& records, const std::vector<Projection>& projections,
                                uint64_t seed, const core::EvSettings& settings) {
    BootstrapResult res;
    // Usable records per stratum. A record is usable when one depot charge can
    // cover its consumption within battery limits and within its dwell time.
    std::map<std::pair<VehicleClass, std::string>, std::vector<int>> usable;
    std::map<std::pair<VehicleClass, std::string>, int> seen;
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const auto& spec = spec_for(r.cls);
        const auto key = std::make_pair(r.cls, r.vocation);
        ++seen[key];
        const double consumption = r.miles * spec.kwh_per_mile;
        const double usable_kwh = spec.battery_kwh * (settings.soc_drive_frac - settings.soc_min_frac);
        const double need_grid = consumption / settings.eta_charge;
        if (consumption > usable_kwh || need_grid > spec.charger_kw * dwell_hours(r.end_h, r.start_h)) {
            ++res.rejected_records;
            continue;
        }
        usable[key].push_back(static_cast<int>(i));
    }

    std::map<int, FleetYear> years;
    for (const auto& p : projections) {
        auto& fy = years[p.year];
        fy.year = p.year;
        if (p.count == 0) continue;
        const auto key = std::make_pair(p.cls, p.vocation);
        const auto it = usable.find(key);
        if (it == usable.end() || it->second.empty()) {
            const std::string what = seen.count(key) ? "has no usable drive records" : "has no drive records";
            throw std::runtime_error("stratum class " + std::string(to_string(p.cls)) + " / vocation '" + p.vocation +
                                     "' " + what + " but a projection of " + std::to_string(p.count));
        }
        uint64_t state = seed ^ fnv1a(std::to_string(p.year) + "|" + to_string(p.cls) + "|" + p.vocation);
        const auto& pool = it->second;
        const auto& spec = spec_for(p.cls);
        for (int k = 0; k < p.count; ++k) {
            const int ri = pool[draw_index(state, pool.size())];
            const auto& r = records[static_cast<size_t>(ri)];
            Vehicle v;
            v.cls = r.cls;
            v.vocation = r.vocation;
            v.record = ri;
            v.arrival_h = r.end_h;
            v.departure_h = r.start_h;
            v.charger_kw = spec.charger_kw;
            v.capacity_kwh = spec.battery_kwh;
            v.consumption_kwh = r.miles * spec.kwh_per_mile;
            v.departure_soc_kwh = spec.battery_kwh * settings.soc_drive_frac;
            v.arrival_soc_kwh = v.departure_soc_kwh - v.consumption_kwh;
            fy.vehicles.push_back(std::move(v));
        }
    }
    for (auto& [y, fy] : years) res.years.push_back(std::move(fy));
    return res;
}

std::optional<Regime> parse_regime(const std::string& s) {
    if (s == "fixed") return Regime::Fixed;
    if (s == "v1g") return Regime::V1G;
    if (s == "v2g") return Regime::V2G;
    return std::nullopt;
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Fixed: return "fixed";
        case Regime::V1G: return "v1g";
        case Regime::V2G: return "v2g";
    }
    return "?";
}

Window round_window(double arrival_h, double departure_h) {
    int a = static_cast<int>(std::ceil(arrival_h - 1e-9));
    int d = static_cast<int>(std::floor(departure_h + 1e-9));
    if (arrival_h > departure_h) d += 24;
    if (a >= 24) {
        a -= 24;
        d -= 24;
    }
    Window w;
    w.t_depot = a;
    w.t_wrap = d >= 24 ? 24 : 0;
    w.t_drive = d - w.t_wrap;
    return w;
}

int EvFleet::vehicles_in_year(int y) const { return fleet_size.empty() ? 0 : fleet_size[static_cast<size_t>(y)]; }

double EvFleet::coverage(int y) const {
    const int n = vehicles_in_year(y);
    return n > 0 ? static_cast<double>(modeled_vehicles[static_cast<size_t>(y)]) / n : 0.0;
}

std::array<double, 24> ProfileParts::total() const {
    std::array<double, 24> out{};
    for (size_t h = 0; h < 24; ++h) out[h] = 0.5 * (immediate[h] + spread[h]);
    return out;
}

ProfileParts fixed_profile_parts(double need_mwh, double pmax_mw, const Window& w, const std::string& cluster_id) {
    ProfileParts parts;
    if (need_mwh <= 0.0) return parts;
    const int L = w.hours();
    if (L <= 0 || need_mwh > pmax_mw * L * (1.0 + 1e-12)) {
        throw std::runtime_error("cluster '" + cluster_id + "': daily need of " + std::to_string(need_mwh) +
                                 " MWh cannot be charged within its " + std::to_string(std::max(L, 0)) + " h window");
    }
    double remaining = need_mwh;
    for (int k = 0; k < L && remaining > 0.0; ++k) {
        const double x = std::min(pmax_mw, remaining);
        parts.immediate[static_cast<size_t>((w.t_depot + k) % 24)] += x;
        remaining -= x;
    }
    for (int k = 0; k < L; ++k) parts.spread[static_cast<size_t>((w.t_depot + k) % 24)] += need_mwh / L;
    return parts;
}

std::array<double, 24> fixed_profile(double need_mwh, double pmax_mw, const Window& w, const std::string& cluster_id) {
    return fixed_profile_parts(need_mwh, pmax_mw, w, cluster_id).total();
}

namespace {

std::string cluster_id(const Window& w) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "e%02d%02d", w.t_depot, w.t_drive);
    return buf;
}

// Uncontrolled charging of a vehicle that cannot be scheduled: full power from
// its (rounded up) arrival until the need is met.
void add_plug_in_profile(std::array<double, 24>& profile, const Vehicle& v, double need_mwh) {
    const double p = v.charger_kw / 1000.0;
    int h = static_cast<int>(std::ceil(v.arrival_h - 1e-9)) % 24;
    double remaining = need_mwh;
    for (int k = 0; k < 24 && remaining > 0.0; ++k, h = (h + 1) % 24) {
        const double x = std::min(p, remaining);
        profile[static_cast<size_t>(h)] += x;
        remaining -= x;
    }
}

}  // namespace

EvFleet cluster_vehicles(const std::vector<FleetYear>& fleet, const core::EvSettings& settings) {
    EvFleet out;
    std::map<std::pair<int, int>, size_t> index;
    struct Acc {
        Window w;
        std::vector<ClusterYear> years;
    };
    std::vector<Acc> acc;
    const size_t Y = fleet.size();
    out.unmodeled_profile.assign(Y, {});
    out.fleet_size.assign(Y, 0);
    out.modeled_vehicles.assign(Y, 0);
    out.routed_vehicles.assign(Y, 0);

    for (size_t y = 0; y < Y; ++y) {
        out.years.push_back(fleet[y].year);
        out.fleet_size[y] = static_cast<int>(fleet[y].vehicles.size());
        for (const auto& v : fleet[y].vehicles) {
            const Window w = round_window(v.arrival_h, v.departure_h);
            const double need_kwh = (v.departure_soc_kwh - v.arrival_soc_kwh) / settings.eta_charge;
            if (w.empty() || need_kwh > v.charger_kw * w.hours() * (1.0 + 1e-12)) {
                ++out.routed_vehicles[y];
                add_plug_in_profile(out.unmodeled_profile[y], v, need_kwh / 1000.0);
                continue;
            }
            const auto key = std::make_pair(w.t_depot, w.t_drive);
            auto it = index.find(key);
            if (it == index.end()) {
                it = index.emplace(key, acc.size()).first;
                acc.push_back({w, std::vector<ClusterYear>(Y)});
            }
            auto& cy = acc[it->second].years[y];
            cy.vehicles += 1;
            cy.pmax_mw += v.charger_kw / 1000.0;
            cy.cmax_mwh += v.capacity_kwh / 1000.0;
            cy.cmin_mwh += v.capacity_kwh * settings.soc_min_frac / 1000.0;
            cy.cdepot_mwh += v.arrival_soc_kwh / 1000.0;
            cy.cdrive_mwh += v.departure_soc_kwh / 1000.0;
        }
    }

    // Deterministic order by (t_depot, t_drive).
    for (const auto& [key, i] : index) {
        auto& a = acc[i];
        EvCluster c;
        c.id = cluster_id(a.w);
        c.zone = settings.zone;
        c.window = a.w;
        c.eta_charge = settings.eta_charge;
        c.eta_discharge = settings.eta_discharge;
        for (size_t y = 0; y < Y; ++y) {
            auto& cy = a.years[y];
            cy.year = fleet[y].year;
            const int n = out.fleet_size[y];
            cy.modeled = cy.vehicles > 0 && static_cast<double>(cy.vehicles) >= settings.cluster_threshold * n;
            cy.fixed_profile = fixed_profile(cy.energy_need_mwh(c.eta_charge), cy.pmax_mw, c.window, c.id);
            if (cy.modeled) {
                out.modeled_vehicles[y] += cy.vehicles;
            } else {
                for (size_t h = 0; h < 24; ++h) out.unmodeled_profile[y][h] += cy.fixed_profile[h];
            }
        }
        c.years = std::move(a.years);
        out.clusters.push_back(std::move(c));
    }
    return out;
}

void write_clusters(const EvFleet& fleet, const fs::path& dir) {
    fs::create_directories(dir);
    std::ofstream c(dir / "clusters.csv");
    c << "cluster,zone,year,t_depot,t_drive,t_wrap,vehicles,modeled,pmax_mw,cmax_mwh,cmin_mwh,cdepot_mwh,"
         "cdrive_mwh,eta_charge,eta_discharge\n";
    std::ofstream p(dir / "fixed_profiles.csv");
    p << "cluster,year,hour,MW\n";
    for (const auto& cl : fleet.clusters) {
        for (const auto& cy : cl.years) {
            c << cl.id << ',' << cl.zone << ',' << cy.year << ',' << cl.window.t_depot << ',' << cl.window.t_drive
              << ',' << cl.window.t_wrap << ',' << cy.vehicles << ',' << (cy.modeled ? 1 : 0) << ','
              << csv_number(cy.pmax_mw) << ',' << csv_number(cy.cmax_mwh) << ',' << csv_number(cy.cmin_mwh) << ','
              << csv_number(cy.cdepot_mwh) << ',' << csv_number(cy.cdrive_mwh) << ',' << csv_number(cl.eta_charge)
              << ',' << csv_number(cl.eta_discharge) << '\n';
            for (size_t h = 0; h < 24; ++h) {
                p << cl.id << ',' << cy.year << ',' << h << ',' << csv_number(cy.fixed_profile[h]) << '\n';
            }
        }
    }
    // Vehicles that could not be scheduled, plus their count, as a pseudo-cluster.
    for (size_t y = 0; y < fleet.years.size(); ++y) {
        std::array<double, 24> routed = fleet.unmodeled_profile[y];
        for (const auto& cl : fleet.clusters) {
            const auto& cy = cl.years[y];
            if (!cy.modeled) {
                for (size_t h = 0; h < 24; ++h) routed[h] -= cy.fixed_profile[h];
            }
        }
        c << "routed," << (fleet.clusters.empty() ? 0 : fleet.clusters.front().zone) << ',' << fleet.years[y]
          << ",0,0,0," << fleet.routed_vehicles[y] << ",0,0,0,0,0,0,1,1\n";
        for (size_t h = 0; h < 24; ++h) {
            p << "routed," << fleet.years[y] << ',' << h << ',' << csv_number(std::max(0.0, routed[h])) << '\n';
        }
    }
}

EvFleet read_clusters(const fs::path& dir, const core::SystemData& sys) {
    auto ct = CsvTable::read(dir / "clusters.csv",
                             {"cluster", "zone", "year", "t_depot", "t_drive", "t_wrap", "vehicles", "modeled",
                              "pmax_mw", "cmax_mwh", "cmin_mwh", "cdepot_mwh", "cdrive_mwh", "eta_charge",
                              "eta_discharge"});
    auto pt = CsvTable::read(dir / "fixed_profiles.csv", {"cluster", "year", "hour", "MW"});
    EvFleet f;
    f.years = sys.grid.years;
    const size_t Y = f.years.size();
    f.unmodeled_profile.assign(Y, {});
    f.fleet_size.assign(Y, 0);
    f.modeled_vehicles.assign(Y, 0);
    f.routed_vehicles.assign(Y, 0);
    std::map<std::string, size_t> idx;
    auto year_of = [&](const core::CsvRow& r) {
        const int y = sys.grid.year_index(r.integer("year"));
        if (y < 0) r.fail("year not in the time grid");
        return static_cast<size_t>(y);
    };
    ct.for_each([&](const core::CsvRow& r) {
        const std::string id = r.str("cluster");
        const size_t y = year_of(r);
        const int vehicles = r.integer("vehicles");
        f.fleet_size[y] += vehicles;
        if (id == "routed") {
            f.routed_vehicles[y] += vehicles;
            return;
        }
        auto it = idx.find(id);
        if (it == idx.end()) {
            EvCluster c;
            c.id = id;
            c.zone = r.has("zone") ? sys.zone_index(r.str("zone")) : sys.ev.zone;
            if (c.zone < 0) {
                // numeric zone index as written by write_clusters
                c.zone = r.integer("zone");
                if (c.zone < 0 || c.zone >= static_cast<int>(sys.zones.size())) r.fail("unknown zone");
            }
            c.window = {r.integer("t_depot"), r.integer("t_drive"), r.integer("t_wrap")};
            if ((c.window.t_wrap == 24) != (c.window.t_depot > c.window.t_drive)) {
                r.fail("t_wrap must be 24 exactly when t_depot > t_drive");
            }
            c.eta_charge = r.num("eta_charge");
            c.eta_discharge = r.num("eta_discharge");
            c.years.resize(Y);
            for (size_t k = 0; k < Y; ++k) c.years[k].year = f.years[k];
            it = idx.emplace(id, f.clusters.size()).first;
            f.clusters.push_back(std::move(c));
        }
        auto& cy = f.clusters[it->second].years[y];
        cy.vehicles = vehicles;
        cy.modeled = r.flag("modeled");
        cy.pmax_mw = r.num("pmax_mw");
        cy.cmax_mwh = r.num("cmax_mwh");
        cy.cmin_mwh = r.num("cmin_mwh");
        cy.cdepot_mwh = r.num("cdepot_mwh");
        cy.cdrive_mwh = r.num("cdrive_mwh");
        if (!(cy.cmin_mwh <= cy.cdepot_mwh + 1e-9 && cy.cdepot_mwh <= cy.cdrive_mwh + 1e-9 &&
              cy.cdrive_mwh <= cy.cmax_mwh + 1e-9)) {
            r.fail("cluster energies must satisfy cmin <= cdepot <= cdrive <= cmax");
        }
        if (cy.modeled) f.modeled_vehicles[y] += vehicles;
    });
    pt.for_each([&](const core::CsvRow& r) {
        const std::string id = r.str("cluster");
        const size_t y = year_of(r);
        const int h = r.integer("hour");
        if (h < 0 || h >= 24) r.fail("hour must lie in 0..23");
        const double mw = r.num("MW");
        if (id == "routed") {
            f.unmodeled_profile[y][static_cast<size_t>(h)] += mw;
            return;
        }
        auto it = idx.find(id);
        if (it == idx.end()) r.fail("profile for unknown cluster '" + id + "'");
        auto& cy = f.clusters[it->second].years[y];
        cy.fixed_profile[static_cast<size_t>(h)] = mw;
        if (!cy.modeled) f.unmodeled_profile[y][static_cast<size_t>(h)] += mw;
    });
    return f;
}

EvFleet load_fleet(const fs::path& dir, const core::SystemData& sys, uint64_t seed) {
    if (fs::exists(dir / "drives.csv") && fs::exists(dir / "population.csv")) {
        auto boot = bootstrap_fleet(load_drives(dir / "drives.csv"), load_population(dir / "population.csv"), seed,
                                    sys.ev);
        // Align with the planning years; years without a projection have no trucks.
        std::vector<FleetYear> aligned;
        for (int year : sys.grid.years) {
            FleetYear fy;
            fy.year = year;
            for (auto& b : boot.years) {
                if (b.year == year) fy.vehicles = b.vehicles;
            }
            aligned.push_back(std::move(fy));
        }
        return cluster_vehicles(aligned, sys.ev);
    }
    if (fs::exists(dir / "clusters.csv")) return read_clusters(dir, sys);
    EvFleet f;
    f.years = sys.grid.years;
    f.unmodeled_profile.assign(f.years.size(), {});
    f.fleet_size.assign(f.years.size(), 0);
    f.modeled_vehicles.assign(f.years.size(), 0);
    f.routed_vehicles.assign(f.years.size(), 0);
    return f;
}

}  // namespace gridplan::ev

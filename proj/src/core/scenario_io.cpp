#include "gridplan/core/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include "gridplan/core/csv.hpp"
#include "json.hpp"

namespace gridplan::core {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int zone_of(const SystemData& s, const CsvRow& row, const std::string& col) {
    const int z = s.zone_index(row.str(col));
    if (z < 0) row.fail("unknown zone '" + row.str(col) + "'");
    return z;
}

Technology parse_technology(const CsvRow& row) {
    const std::string& t = row.str("technology");
    if (t == "solar") return Technology::Solar;
    if (t == "wind") return Technology::Wind;
    if (t == "firm") return Technology::Firm;
    if (t == "other") return Technology::Other;
    row.fail("technology must be solar|wind|firm|other, got '" + t + "'");
}

void load_json(SystemData& s, const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw ScenarioError(file.filename().string(), 0, "cannot open file");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ScenarioError(file.filename().string(), 0, e.what());
    }
    const std::string label = file.filename().string();
    try {
        s.name = j.value("name", fs::path(file).parent_path().filename().string());
        s.discount_rate = j.value("discount_rate", 0.05);
        s.policy.storage_credit_hours = j.value("storage_credit_hours", s.policy.storage_credit_hours);
        for (const auto& z : j.at("zones")) {
            s.zones.push_back(Zone{z.at("id").get<std::string>(), z.value("policy_zone", false)});
        }
        const auto& g = j.at("time_grid");
        s.grid.hours_per_period = g.at("hours_per_period").get<int>();
        s.grid.years = g.at("years").get<std::vector<int>>();
        s.grid.year_weights = g.at("year_weights").get<std::vector<double>>();
        for (const auto& p : g.at("periods")) {
            s.grid.periods.push_back(Period{p.at("id").get<std::string>(), p.at("weight").get<double>()});
        }
        if (j.contains("ev")) {
            const auto& e = j.at("ev");
            if (e.contains("zone")) {
                s.ev.zone = s.zone_index(e.at("zone").get<std::string>());
                if (s.ev.zone < 0) throw ScenarioError(label, 0, "ev.zone names an unknown zone");
            } else {
                s.ev.zone = std::max(0, s.policy_zone());
            }
            s.ev.eta_charge = e.value("eta_charge", s.ev.eta_charge);
            s.ev.eta_discharge = e.value("eta_discharge", s.ev.eta_discharge);
            s.ev.cluster_threshold = e.value("cluster_threshold", s.ev.cluster_threshold);
            s.ev.soc_min_frac = e.value("soc_min_frac", s.ev.soc_min_frac);
            s.ev.soc_drive_frac = e.value("soc_drive_frac", s.ev.soc_drive_frac);
            const std::string conv = e.value("discharge_convention", std::string("multiply"));
            if (conv == "multiply") {
                s.ev.discharge = EvDischargeConvention::Multiply;
            } else if (conv == "divide") {
                s.ev.discharge = EvDischargeConvention::Divide;
            } else {
                throw ScenarioError(label, 0, "ev.discharge_convention must be multiply|divide");
            }
        } else {
            s.ev.zone = std::max(0, s.policy_zone());
        }
    } catch (const json::exception& e) {
        throw ScenarioError(label, 0, e.what());
    }
}

void load_thermal(SystemData& s, const fs::path& f) {
    auto t = CsvTable::read(f,
                            {"id", "zone", "pmax", "pmin", "ramp_up", "ramp_down", "min_up", "min_down",
                             "startup_cost", "shutdown_cost", "cost_slope", "cost_intercept", "emission_slope",
                             "emission_intercept", "nqc"},
                            {"candidate", "retire_year", "retirable"});
    t.for_each([&](const CsvRow& r) {
        ThermalUnit u;
        u.id = r.str("id");
        u.zone = zone_of(s, r, "zone");
        u.pmax = r.num("pmax");
        u.pmin = r.num("pmin");
        u.ramp_up = r.num("ramp_up");
        u.ramp_down = r.num("ramp_down");
        u.min_up = r.integer("min_up");
        u.min_down = r.integer("min_down");
        u.startup_cost = r.num("startup_cost");
        u.shutdown_cost = r.num("shutdown_cost");
        u.cost_slope = r.num("cost_slope");
        u.cost_intercept = r.num("cost_intercept");
        u.emission_slope = r.num("emission_slope");
        u.emission_intercept = r.num("emission_intercept");
        u.nqc = r.num("nqc");
        u.candidate = r.flag_or("candidate", false);
        u.retire_year = r.integer_or("retire_year", 0);
        u.retirable = r.flag_or("retirable", false);
        s.thermal.push_back(std::move(u));
    });
}

void load_renewables(SystemData& s, const fs::path& f) {
    auto t = CsvTable::read(
        f, {"id", "zone", "technology", "curtailable", "rps_eligible", "curtailment_cost", "planned_mw"},
        {"candidate", "max_capacity_mw", "retirable"});
    t.for_each([&](const CsvRow& r) {
        RenewableResource res;
        res.id = r.str("id");
        res.zone = zone_of(s, r, "zone");
        res.technology = parse_technology(r);
        res.curtailable = r.flag("curtailable");
        res.rps_eligible = r.flag("rps_eligible");
        res.curtailment_cost = r.num("curtailment_cost");
        res.planned_mw = r.num("planned_mw");
        res.candidate = r.flag_or("candidate", false);
        res.max_capacity_mw = r.num_or("max_capacity_mw", res.planned_mw);
        res.retirable = r.flag_or("retirable", false);
        res.profile.assign(static_cast<size_t>(s.grid.num_periods()),
                           std::vector<double>(static_cast<size_t>(s.grid.hours_per_period),
                                               std::numeric_limits<double>::quiet_NaN()));
        s.renewables.push_back(std::move(res));
    });
}

void load_profiles(SystemData& s, const fs::path& f) {
    auto t = CsvTable::read(f, {"resource", "period", "hour", "factor"});
    t.for_each([&](const CsvRow& r) {
        auto it = std::find_if(s.renewables.begin(), s.renewables.end(),
                               [&](const RenewableResource& x) { return x.id == r.str("resource"); });
        if (it == s.renewables.end()) r.fail("unknown renewable resource '" + r.str("resource") + "'");
        const int w = s.grid.period_index(r.str("period"));
        if (w < 0) r.fail("unknown period '" + r.str("period") + "'");
        const int h = r.integer("hour");
        if (h < 0 || h >= s.grid.hours_per_period) r.fail("hour out of range");
        it->profile[static_cast<size_t>(w)][static_cast<size_t>(h)] = r.num("factor");
    });
    for (const auto& res : s.renewables) {
        for (const auto& row : res.profile)
            for (double v : row)
                if (std::isnan(v)) {
                    throw ScenarioError(f.filename().string(), 0, "profile of '" + res.id + "' does not cover every hour");
                }
    }
}

void load_storage(SystemData& s, const fs::path& f) {
    auto t = CsvTable::read(f, {"id", "zone", "planned_mw", "planned_mwh", "eta_charge", "eta_discharge"},
                            {"self_discharge", "soc_max_frac", "soc_min_frac", "min_duration_h", "candidate",
                             "max_power_mw", "max_energy_mwh", "retirable"});
    t.for_each([&](const CsvRow& r) {
        StorageResource st;
        st.id = r.str("id");
        st.zone = zone_of(s, r, "zone");
        st.planned_mw = r.num("planned_mw");
        st.planned_mwh = r.num("planned_mwh");
        st.eta_charge = r.num("eta_charge");
        st.eta_discharge = r.num("eta_discharge");
        st.self_discharge = r.num_or("self_discharge", 0.0);
        st.soc_max_frac = r.num_or("soc_max_frac", 1.0);
        st.soc_min_frac = r.num_or("soc_min_frac", 0.0);
        st.min_duration_h = r.integer_or("min_duration_h", 1);
        st.candidate = r.flag_or("candidate", false);
        st.max_power_mw = r.num_or("max_power_mw", st.planned_mw);
        st.max_energy_mwh = r.num_or("max_energy_mwh", st.planned_mwh);
        st.retirable = r.flag_or("retirable", false);
        s.storage.push_back(std::move(st));
    });
}

void load_hydro(SystemData& s, const fs::path& f) {
    auto t = CsvTable::read(f, {"id", "zone", "pmax", "pmin", "ramp_up", "ramp_down", "budget_mwh", "nqc"});
    t.for_each([&](const CsvRow& r) {
        HydroUnit h;
        h.id = r.str("id");
        h.zone = zone_of(s, r, "zone");
        h.pmax = r.num("pmax");
        h.pmin = r.num("pmin");
        h.ramp_up = r.num("ramp_up");
        h.ramp_down = r.num("ramp_down");
        h.budget_mwh = r.num("budget_mwh");
        h.nqc = r.num("nqc");
        s.hydro.push_back(std::move(h));
    });
}

void load_lines(SystemData& s, const fs::path& f) {
    auto t = CsvTable::read(f, {"id", "from_zone", "to_zone", "limit_mw", "wheeling_cost", "emission_rate"});
    t.for_each([&](const CsvRow& r) {
        Line l;
        l.id = r.str("id");
        l.incidence = {{zone_of(s, r, "from_zone"), -1}, {zone_of(s, r, "to_zone"), +1}};
        l.limit_mw = r.num("limit_mw");
        l.wheeling_cost = r.num("wheeling_cost");
        l.emission_rate = r.num("emission_rate");
        s.lines.push_back(std::move(l));
    });
}

void load_load(SystemData& s, const fs::path& f) {
    auto t = CsvTable::read(f, {"zone", "year", "period", "hour", "MW"});
    s.resize_load();
    std::vector<uint8_t> seen(s.load.size(), 0);
    t.for_each([&](const CsvRow& r) {
        const int z = zone_of(s, r, "zone");
        const int y = s.grid.year_index(r.integer("year"));
        if (y < 0) r.fail("year not in time grid");
        const int w = s.grid.period_index(r.str("period"));
        if (w < 0) r.fail("unknown period '" + r.str("period") + "'");
        const int h = r.integer("hour");
        if (h < 0 || h >= s.grid.hours_per_period) r.fail("hour out of range");
        const size_t k = s.load_index(z, y, w, h);
        if (seen[k]) r.fail("duplicate load entry");
        seen[k] = 1;
        s.load[k] = r.num("MW");
    });
    if (std::find(seen.begin(), seen.end(), uint8_t{0}) != seen.end()) {
        throw ScenarioError(f.filename().string(), 0, "load does not cover every zone/year/period/hour");
    }
}

void load_elcc(SystemData& s, const fs::path& f) {
    auto t = CsvTable::read(f, {"surface", "year", "intercept", "wind", "solar", "storage"});
    t.for_each([&](const CsvRow& r) {
        ElccPlane p{r.integer("year"), r.num("intercept"), r.num("wind"), r.num("solar"), r.num("storage")};
        if (p.year != 0 && s.grid.year_index(p.year) < 0) r.fail("year not in time grid");
        const std::string& surf = r.str("surface");
        if (surf == "variable") {
            s.policy.variable_elcc.push_back(p);
        } else if (surf == "storage") {
            s.policy.storage_elcc.push_back(p);
        } else {
            r.fail("surface must be variable|storage");
        }
    });
}

void load_policy(SystemData& s, const fs::path& f) {
    auto t = CsvTable::read(f, {"year", "emissions_cap", "rps", "prm"});
    std::set<int> seen;
    t.for_each([&](const CsvRow& r) {
        const int y = s.grid.year_index(r.integer("year"));
        if (y < 0) r.fail("year not in time grid");
        if (!seen.insert(y).second) r.fail("duplicate policy year");
        auto& p = s.policy.years[static_cast<size_t>(y)];
        p.emissions_cap = r.num("emissions_cap");
        p.rps = r.num("rps");
        p.prm = r.num("prm");
    });
}

void load_costs(SystemData& s, const fs::path& f) {
    auto t = CsvTable::read(f, {"resource", "component", "capital", "maintenance", "lifetime"});
    t.for_each([&](const CsvRow& r) {
        const std::string& id = r.str("resource");
        const std::string& comp = r.str("component");
        const CostData c{r.num("capital"), r.num("maintenance"), r.num("lifetime")};
        for (auto& u : s.thermal) {
            if (u.id == id) {
                if (comp != "unit") r.fail("thermal cost component must be 'unit'");
                u.cost = c;
                return;
            }
        }
        for (auto& res : s.renewables) {
            if (res.id == id) {
                if (comp != "mw") r.fail("renewable cost component must be 'mw'");
                res.cost = c;
                return;
            }
        }
        for (auto& st : s.storage) {
            if (st.id == id) {
                if (comp == "power") {
                    st.power_cost = c;
                } else if (comp == "energy") {
                    st.energy_cost = c;
                } else {
                    r.fail("storage cost component must be power|energy");
                }
                return;
            }
        }
        for (auto& h : s.hydro) {
            if (h.id == id) {
                if (comp != "mw") r.fail("hydro cost component must be 'mw'");
                h.cost = c;
                return;
            }
        }
        r.fail("unknown resource '" + id + "'");
    });
}

}  // namespace

SystemData load_system(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw ScenarioError(dir.string(), 0, "scenario directory not found");
    SystemData s;
    load_json(s, dir / "system.json");
    s.policy.years.resize(s.grid.years.size());
    for (size_t y = 0; y < s.grid.years.size(); ++y) {
        s.policy.years[y] = YearPolicy{s.grid.years[y], std::numeric_limits<double>::infinity(), 0.0, 0.0};
    }
    auto opt = [&](const char* name, auto&& fn) {
        if (fs::exists(dir / name)) fn(s, dir / name);
    };
    opt("thermal.csv", load_thermal);
    opt("renewables.csv", load_renewables);
    if (!s.renewables.empty()) load_profiles(s, dir / "profiles.csv");
    opt("storage.csv", load_storage);
    opt("hydro.csv", load_hydro);
    opt("lines.csv", load_lines);
    load_load(s, dir / "load.csv");
    opt("elcc.csv", load_elcc);
    opt("policy.csv", load_policy);
    opt("costs.csv", load_costs);
    return s;
}

}  // namespace gridplan::core

#include "gridplan/analysis/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "gridplan/core/csv.hpp"
#include "gridplan/core/scenario_io.hpp"
#include "gridplan/core/validate.hpp"

namespace gridplan::analysis {

using core::csv_number;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::optional<SolveMode> parse_mode(const std::string& s) {
    if (s == "slr") return SolveMode::Slr;
    if (s == "monolithic") return SolveMode::Monolithic;
    return std::nullopt;
}

const char* to_string(SolveMode m) { return m == SolveMode::Slr ? "slr" : "monolithic"; }

CostSummary RunOutcome::summary() const {
    CostSummary s;
    s.scenario = scenario;
    s.regime = ev::to_string(regime);
    s.total = ledger.total();
    s.ca_total = ledger.ca_total();
    s.maintenance = ledger.maintenance();
    s.investment = ledger.investment();
    s.ca_operational = ledger.ca_operational();
    for (size_t i = 0; i < ledger.years.size(); ++i) {
        s.years.push_back({ledger.years[i].year, ledger.years[i].annual_total(), years[i].vehicles});
    }
    return s;
}

namespace {

double value_of(lp::Var v, std::span<const double> x) {
    return v.valid() ? x[static_cast<size_t>(v.index)] : 0.0;
}

// One cyclic series per block: SoC inside the depot window, a straight drive-down outside it.
std::vector<double> block_soc(const ev::EvCluster& c, const ev::ClusterYear& cy, const ev::EvVars& ev, int T,
                              std::span<const double> x) {
    const int L = c.window.hours();
    std::vector<double> s(static_cast<size_t>(T), 0.0);
    for (int d = 0; d < T / 24; ++d) {
        std::vector<double> in(static_cast<size_t>(L) + 1);
        if (ev.soc.empty()) {
            in[0] = cy.cdepot_mwh;
            for (int k = 0; k < L; ++k) {
                in[static_cast<size_t>(k) + 1] =
                    in[static_cast<size_t>(k)] + c.eta_charge * cy.fixed_profile[static_cast<size_t>((c.window.t_depot + k) % 24)];
            }
        } else {
            for (int k = 0; k <= L; ++k) in[static_cast<size_t>(k)] = value_of(ev.soc[static_cast<size_t>(d)][static_cast<size_t>(k)], x);
        }
        for (int k = 0; k < 24; ++k) {
            double v;
            if (k <= L) {
                v = in[static_cast<size_t>(k)];
            } else {
                const double f = static_cast<double>(k - L) / (24 - L);
                v = cy.cdrive_mwh + f * (cy.cdepot_mwh - cy.cdrive_mwh);
            }
            s[static_cast<size_t>(core::tau(c.window.t_depot + 24 * d + k, T))] = v;
        }
    }
    return s;
}

json capacity_json(const std::vector<plan::CapacityRow>& rows) {
    json a = json::array();
    for (const auto& r : rows) {
        a.push_back({{"year", r.year}, {"resource", r.resource}, {"kind", r.kind}, {"value", r.value},
                     {"built", r.built}, {"retired", r.retired}});
    }
    return a;
}

}  // namespace

std::vector<ClusterTrace> soc_traces(const plan::PlanningModel& pm, std::span<const double> x) {
    std::vector<ClusterTrace> out;
    if (!pm.fleet || pm.fleet->clusters.empty()) return out;
    const auto& g = pm.sys->grid;
    for (size_t ci = 0; ci < pm.fleet->clusters.size(); ++ci) {
        const auto& c = pm.fleet->clusters[ci];
        for (int y = 0; y < g.num_years(); ++y) {
            const auto& cy = c.years[static_cast<size_t>(y)];
            if (!cy.modeled || cy.vehicles == 0 || cy.cmax_mwh <= 0.0) continue;
            ClusterTrace tr;
            tr.cluster = c.id;
            tr.year = g.years[static_cast<size_t>(y)];
            tr.capacity_mwh = cy.cmax_mwh;
            for (int w = 0; w < g.num_periods(); ++w) {
                const auto bi = static_cast<size_t>(g.block_index(y, w));
                auto s = block_soc(c, cy, pm.ev[bi][ci], pm.blocks[bi].hours, x);
                for (auto& v : s) v /= cy.cmax_mwh;
                tr.periods.push_back(std::move(s));
                tr.weights.push_back(g.periods[static_cast<size_t>(w)].weight);
            }
            out.push_back(std::move(tr));
        }
    }
    return out;
}

namespace {

std::vector<YearStats> year_stats(const plan::PlanningModel& pm, std::span<const double> x) {
    const auto& g = pm.sys->grid;
    std::vector<YearStats> out;
    for (int y = 0; y < g.num_years(); ++y) {
        YearStats ys;
        ys.year = g.years[static_cast<size_t>(y)];
        if (pm.fleet && !pm.fleet->years.empty()) {
            ys.vehicles = pm.fleet->vehicles_in_year(y);
            ys.charging_vehicles = ys.vehicles;
            for (int w = 0; w < g.num_periods(); ++w) {
                const auto bi = static_cast<size_t>(g.block_index(y, w));
                const auto& b = pm.blocks[bi];
                for (int t = 0; t < b.hours; ++t) {
                    double draw = 0.0;
                    for (const auto& row : b.ev_load) draw += row[static_cast<size_t>(t)].evaluate(x);
                    for (const auto& ev : pm.ev[bi]) {
                        if (!ev.discharge.empty()) draw += value_of(ev.discharge[static_cast<size_t>(t)], x);
                    }
                    ys.ev_peak_mw = std::max(ys.ev_peak_mw, draw);
                }
            }
        }
        out.push_back(ys);
    }
    return out;
}

void write_hourly(const plan::PlanningModel& pm, std::span<const double> x, const fs::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    const auto& sys = *pm.sys;
    const auto& g = sys.grid;
    out << "year,period,hour,zone,load_mw,ev_load_mw,gross_load_mw,renewable_mw,net_load_mw\n";
    for (int y = 0; y < g.num_years(); ++y) {
        for (int w = 0; w < g.num_periods(); ++w) {
            const auto& b = pm.blocks[static_cast<size_t>(g.block_index(y, w))];
            for (int t = 0; t < b.hours; ++t) {
                for (size_t z = 0; z < sys.zones.size(); ++z) {
                    const double load = sys.load_at(static_cast<int>(z), y, w, t);
                    const double evl = b.ev_load[z][static_cast<size_t>(t)].evaluate(x);
                    double ren = 0.0;
                    for (size_t r = 0; r < sys.renewables.size(); ++r) {
                        if (sys.renewables[r].zone != static_cast<int>(z)) continue;
                        const auto& o = b.renewable[r].output;
                        if (!o.empty()) ren += o[static_cast<size_t>(t)].evaluate(x);
                    }
                    out << g.years[static_cast<size_t>(y)] << ',' << w << ',' << t << ',' << sys.zones[z].id << ','
                        << csv_number(load) << ',' << csv_number(evl) << ',' << csv_number(load + evl) << ','
                        << csv_number(ren) << ',' << csv_number(load + evl - ren) << '\n';
                }
            }
        }
    }
}

void write_ev_soc(const plan::PlanningModel& pm, std::span<const double> x, const fs::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "cluster,year,period,weight,hour,capacity_mwh,soc_mwh,charge_mw,discharge_mw\n";
    if (!pm.fleet || pm.fleet->clusters.empty()) return;
    const auto& g = pm.sys->grid;
    for (size_t ci = 0; ci < pm.fleet->clusters.size(); ++ci) {
        const auto& c = pm.fleet->clusters[ci];
        for (int y = 0; y < g.num_years(); ++y) {
            const auto& cy = c.years[static_cast<size_t>(y)];
            if (!cy.modeled || cy.vehicles == 0 || cy.cmax_mwh <= 0.0) continue;
            for (int w = 0; w < g.num_periods(); ++w) {
                const auto bi = static_cast<size_t>(g.block_index(y, w));
                const auto& ev = pm.ev[bi][ci];
                const int T = pm.blocks[bi].hours;
                const auto s = block_soc(c, cy, ev, T, x);
                for (int t = 0; t < T; ++t) {
                    const auto i = static_cast<size_t>(t);
                    double pc, pd = 0.0;
                    if (ev.charge.empty()) {
                        pc = cy.fixed_profile[static_cast<size_t>(t % 24)];
                    } else {
                        pc = value_of(ev.charge[i], x);
                        if (!ev.discharge.empty()) pd = value_of(ev.discharge[i], x);
                    }
                    out << c.id << ',' << g.years[static_cast<size_t>(y)] << ',' << w << ','
                        << csv_number(g.periods[static_cast<size_t>(w)].weight) << ',' << t << ','
                        << csv_number(cy.cmax_mwh) << ',' << csv_number(s[i]) << ',' << csv_number(pc) << ','
                        << csv_number(pd) << '\n';
                }
            }
        }
    }
}

}  // namespace

void write_artifacts(const RunOutcome& r, const plan::PlanningModel& pm, std::span<const double> x,
                     const fs::path& out) {
    fs::create_directories(out);
    const auto& L = r.ledger;
    json j;
    j["scenario"] = r.scenario;
    j["regime"] = ev::to_string(r.regime);
    j["mode"] = to_string(r.mode);
    j["status"] = lp::to_string(r.solution.status);
    j["objective"] = r.solution.objective;
    j["bound"] = r.solution.bound;
    j["gap"] = r.solution.gap;
    j["max_violation"] = r.solution.max_violation;
    j["fixed_binaries"] = r.solution.fixed_binaries;
    j["free_binaries"] = r.solution.free_binaries;
    j["retries"] = r.solution.retries;
    j["costs"] = {{"total", L.total()},           {"ca_total", L.ca_total()},
                  {"maintenance", L.maintenance()}, {"investment", L.investment()},
                  {"ca_operational", L.ca_operational()}, {"generation", L.generation()},
                  {"objective", L.objective}};
    json years = json::array();
    for (size_t i = 0; i < L.years.size(); ++i) {
        const auto& y = L.years[i];
        const auto& s = r.years[i];
        years.push_back({{"year", y.year},
                         {"gen", y.gen},
                         {"maint", y.maint},
                         {"inv", y.inv},
                         {"ca_gen", y.ca_gen},
                         {"ca_maint", y.ca_maint},
                         {"ca_import", y.ca_import},
                         {"annual_gen", y.annual_gen},
                         {"annual_maint", y.annual_maint},
                         {"annual_inv", y.annual_inv},
                         {"annual_cost", y.annual_total()},
                         {"emissions", y.emissions},
                         {"ev_energy_mwh", y.ev_energy_mwh},
                         {"vehicles", s.vehicles},
                         {"charging_vehicles", s.charging_vehicles},
                         {"ev_peak_mw", s.ev_peak_mw}});
    }
    j["years"] = years;
    j["investments"] = capacity_json(r.capacity);
    {
        std::ofstream f(out / "plan_solution.json");
        if (!f) throw std::runtime_error("cannot write plan_solution.json");
        f << j.dump(2) << '\n';
    }
    {
        // Wall-clock figures live apart so the other artifacts stay reproducible.
        std::ofstream f(out / "timing.json");
        f << json{{"seconds", r.solution.seconds}}.dump(2) << '\n';
    }
    {
        std::ofstream f(out / "costs.csv");
        f << "year,component,value\n";
        for (const auto& y : L.years) {
            const std::pair<const char*, double> parts[] = {
                {"gen", y.gen},           {"maint", y.maint},           {"inv", y.inv},
                {"ca_gen", y.ca_gen},     {"ca_maint", y.ca_maint},     {"ca_import", y.ca_import},
                {"annual_gen", y.annual_gen}, {"annual_maint", y.annual_maint}, {"annual_inv", y.annual_inv}};
            for (const auto& [name, v] : parts) f << y.year << ',' << name << ',' << csv_number(v) << '\n';
        }
    }
    {
        std::ofstream f(out / "installed_capacity.csv");
        f << "year,resource,kind,value,built,retired\n";
        for (const auto& c : r.capacity) {
            f << c.year << ',' << c.resource << ',' << c.kind << ',' << csv_number(c.value) << ','
              << csv_number(c.built) << ',' << csv_number(c.retired) << '\n';
        }
    }
    write_hourly(pm, x, out / "hourly.csv");
    write_ev_soc(pm, x, out / "ev_soc.csv");
    slr::write_iterations(out / "iterations.csv", r.iterations);
}

namespace {

RunOutcome solve_impl(const core::SystemData& sys, const ev::EvFleet& fleet, const RunConfig& cfg,
                      const fs::path* out) {
    plan::PlanningModel pm;
    try {
        plan::BuildOptions bo;
        bo.regime = cfg.regime;
        bo.balance = cfg.mode == SolveMode::Slr ? uc::BalanceMode::Residual : uc::BalanceMode::Hard;
        pm = plan::build_planning_model(sys, fleet, bo);
    } catch (const std::exception& e) {
        throw StageError("build", e.what());
    }

    RunOutcome r;
    r.scenario = sys.name;
    r.regime = cfg.regime;
    r.mode = cfg.mode;
    try {
        auto backend = lp::make_backend(cfg.backend);
        const int threads = cfg.threads > 0 ? cfg.threads : lp::default_threads();
        if (cfg.mode == SolveMode::Monolithic) {
            lp::SolveOptions o;
            o.mip_rel_gap = cfg.gap;
            o.time_limit_s = cfg.time_limit_s;
            o.threads = threads;
            r.solution = slr::solve_monolithic(pm, *backend, o);
        } else {
            auto sc = cfg.slr;
            sc.sub_options.threads = threads;
            sc.bound_options.threads = threads;
            sc.recovery_options.threads = threads;
            sc.recovery_options.mip_rel_gap = cfg.gap;
            sc.recovery_options.time_limit_s = cfg.time_limit_s;
            auto s = slr::solve_slr(pm, *backend, sc);
            r.solution = std::move(s.primal);
            r.iterations = std::move(s.dual.log);
        }
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError("solve", e.what());
    }
    if (!r.solution.ok()) {
        throw StageError("solve", r.solution.diagnostic.empty() ? std::string("no feasible plan")
                                                                : r.solution.diagnostic);
    }
    try {
        const auto& x = r.solution.values;
        r.ledger = plan::evaluate_ledger(pm, x);
        r.capacity = plan::installed_capacity(pm, x);
        r.years = year_stats(pm, x);
        r.traces = soc_traces(pm, x);
        if (out) write_artifacts(r, pm, x, *out);
    } catch (const std::exception& e) {
        throw StageError("report", e.what());
    }
    return r;
}

}  // namespace

RunOutcome solve_scenario(const core::SystemData& sys, const ev::EvFleet& fleet, const RunConfig& cfg) {
    return solve_impl(sys, fleet, cfg, nullptr);
}

RunOutcome run(const RunConfig& cfg) {
    core::SystemData sys;
    try {
        sys = core::load_system(cfg.scenario);
    } catch (const std::exception& e) {
        throw StageError("load", e.what());
    }
    const auto violations = core::validate_system(sys);
    if (!violations.empty()) {
        std::string msg = violations.front().code + ": " + violations.front().message;
        if (violations.size() > 1) msg += " (+" + std::to_string(violations.size() - 1) + " more)";
        throw StageError("validate", msg);
    }
    ev::EvFleet fleet;
    try {
        fleet = ev::load_fleet(cfg.scenario, sys, cfg.seed);
        if (!cfg.out.empty() && !fleet.clusters.empty()) {
            fs::create_directories(cfg.out);
            ev::write_clusters(fleet, cfg.out);
        }
    } catch (const std::exception& e) {
        throw StageError("cluster", e.what());
    }
    if (cfg.out.empty()) return solve_impl(sys, fleet, cfg, nullptr);
    return solve_impl(sys, fleet, cfg, &cfg.out);
}

namespace {

json read_json(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error(file.string() + ": " + e.what());
    }
}

}  // namespace

CostSummary read_summary(const fs::path& dir) {
    const auto j = read_json(dir / "plan_solution.json");
    CostSummary s;
    s.scenario = j.at("scenario").get<std::string>();
    s.regime = j.at("regime").get<std::string>();
    const auto& c = j.at("costs");
    s.total = c.at("total").get<double>();
    s.ca_total = c.at("ca_total").get<double>();
    s.maintenance = c.at("maintenance").get<double>();
    s.investment = c.at("investment").get<double>();
    s.ca_operational = c.at("ca_operational").get<double>();
    for (const auto& y : j.at("years")) {
        s.years.push_back({y.at("year").get<int>(), y.at("annual_cost").get<double>(), y.at("vehicles").get<int>()});
    }
    return s;
}

std::vector<YearStats> read_year_stats(const fs::path& dir) {
    const auto j = read_json(dir / "plan_solution.json");
    std::vector<YearStats> out;
    for (const auto& y : j.at("years")) {
        out.push_back({y.at("year").get<int>(), y.at("vehicles").get<int>(),
                       y.at("charging_vehicles").get<long long>(), y.at("ev_peak_mw").get<double>()});
    }
    return out;
}

std::vector<ClusterTrace> read_traces(const fs::path& dir) {
    std::vector<ClusterTrace> out;
    std::map<std::pair<std::string, int>, size_t> index;
    core::CsvTable::read(dir / "ev_soc.csv",
                         {"cluster", "year", "period", "weight", "hour", "capacity_mwh", "soc_mwh"},
                         {"charge_mw", "discharge_mw"})
        .for_each([&](const core::CsvRow& r) {
            const auto key = std::make_pair(r.str("cluster"), static_cast<int>(r.integer("year")));
            auto it = index.find(key);
            if (it == index.end()) {
                it = index.emplace(key, out.size()).first;
                ClusterTrace tr;
                tr.cluster = key.first;
                tr.year = key.second;
                tr.capacity_mwh = r.num("capacity_mwh");
                out.push_back(std::move(tr));
            }
            auto& tr = out[it->second];
            const auto w = static_cast<size_t>(r.integer("period"));
            if (w >= tr.periods.size()) {
                tr.periods.resize(w + 1);
                tr.weights.resize(w + 1, 0.0);
            }
            tr.weights[w] = r.num("weight");
            const double cap = tr.capacity_mwh;
            tr.periods[w].push_back(cap > 0.0 ? r.num("soc_mwh") / cap : 0.0);
        });
    return out;
}

}  // namespace gridplan::analysis

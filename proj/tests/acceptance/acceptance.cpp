// Acceptance run: one PASS/FAIL line per headline property, on the bundled
// scenarios. Exit status is the number of failed lines.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <string>

#include "gridplan/analysis/reports.hpp"
#include "gridplan/analysis/run.hpp"
#include "gridplan/core/scenario_io.hpp"
#include "gridplan/ev/fleet.hpp"
#include "gridplan/slr/slr.hpp"

using namespace gridplan;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned tolerances.
constexpr double kOracleRel = 0.01;
constexpr double kOracleWallS = 300.0;
constexpr double kOracleGap = 1e-4;
constexpr double kSweepGap = 1e-3;
constexpr double kResidualFrac = 0.001;
constexpr int kMaxIterations = 500;
constexpr double kPinMwh = 1e-6;
constexpr double kEnergyMwh = 1e-6;
constexpr double kCoverage = 0.90;
constexpr double kProfileRel = 1e-9;
constexpr double kLedgerRel = 1e-6;
constexpr double kResidualPctTol = 1e-9;
constexpr double kTargetResidual = 81.9;

std::string src(const std::string& rel) { return std::string(GRIDPLAN_SOURCE_DIR) + "/" + rel; }

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void line(bool ok, const char* name, const std::string& detail) {
    std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), f, args...);
    return buf;
}

struct Case {
    core::SystemData sys;
    ev::EvFleet fleet;
};

std::unique_ptr<Case> load_case(const std::string& scen, uint64_t seed) {
    auto c = std::make_unique<Case>();
    c->sys = core::load_system(src(scen));
    c->fleet = ev::load_fleet(src(scen), c->sys, seed);
    return c;
}

struct Solved {
    std::unique_ptr<plan::PlanningModel> pm;
    slr::PlanSolution sol;
    slr::SlrResult dual;
    double wall = 0.0;

    [[nodiscard]] bool ok() const { return sol.ok(); }
    [[nodiscard]] double gap_abs() const { return std::max(0.0, sol.objective - sol.bound); }
    [[nodiscard]] double at(lp::Var v) const { return sol.values[static_cast<size_t>(v.index)]; }
};

Solved solve(const Case& c, ev::Regime regime, bool use_slr, double gap, const char* label) {
    std::fprintf(stderr, "  solving %s %s %s (gap %g)\n", label, ev::to_string(regime), use_slr ? "slr" : "monolithic",
                 gap);
    Solved s;
    auto backend = lp::make_backend();
    const auto t0 = Clock::now();
    plan::BuildOptions o;
    o.regime = regime;
    o.balance = use_slr ? uc::BalanceMode::Residual : uc::BalanceMode::Hard;
    s.pm = std::make_unique<plan::PlanningModel>(plan::build_planning_model(c.sys, c.fleet, o));
    if (use_slr) {
        slr::SlrConfig cfg;
        cfg.max_iterations = kMaxIterations;
        cfg.recovery_options.mip_rel_gap = gap;
        auto r = slr::solve_slr(*s.pm, *backend, cfg);
        s.sol = std::move(r.primal);
        s.dual = std::move(r.dual);
    } else {
        lp::SolveOptions opt;
        opt.mip_rel_gap = gap;
        opt.time_limit_s = 3600.0;
        s.sol = slr::solve_monolithic(*s.pm, *backend, opt);
    }
    s.wall = since(t0);
    std::fprintf(stderr, "    objective %.9g bound %.9g, %.1f s%s\n", s.sol.objective, s.sol.bound, s.wall,
                 s.ok() ? "" : (" FAILED: " + s.sol.diagnostic).c_str());
    return s;
}

double storage_mw(const Solved& s, const std::string& id, int year) {
    for (const auto& row : plan::installed_capacity(*s.pm, s.sol.values)) {
        if (row.resource == id && row.kind == "mw" && row.year == year) return row.value;
    }
    return NAN;
}

double sum24(const std::array<double, 24>& a) { return std::accumulate(a.begin(), a.end(), 0.0); }

// ---------------------------------------------------------------------------

void oracle(const Solved& mono, const Solved& slr_run) {
    if (!mono.ok() || !slr_run.ok()) {
        line(false, "oracle equivalence", "a solve failed");
        return;
    }
    const double rel = std::abs(slr_run.sol.objective - mono.sol.objective) / std::abs(mono.sol.objective);
    line(rel <= kOracleRel && slr_run.wall < kOracleWallS, "oracle equivalence",
         fmt("slr %.6e vs monolithic %.6e: rel %.2e (tol %.0e), slr wall %.1f s (limit %.0f s)",
             slr_run.sol.objective, mono.sol.objective, rel, kOracleRel, slr_run.wall, kOracleWallS));
}

void dual_convergence(const Solved& s) {
    const auto& log = s.dual.log;
    if (log.empty()) {
        line(false, "dual convergence", "no iterations logged");
        return;
    }
    bool monotone = true;
    for (size_t i = 1; i < log.size(); ++i) monotone = monotone && log[i].best_max_residual <= log[i - 1].best_max_residual;
    const auto& last = log.back();
    const bool ok = s.dual.converged && last.max_residual_frac < kResidualFrac && last.k <= kMaxIterations && monotone;
    line(ok, "dual convergence",
         fmt("max |r| %.3e of zone peak after %d iterations (tol %.0e within %d), best-so-far non-increasing: %s",
             last.max_residual_frac, last.k, kResidualFrac, kMaxIterations, monotone ? "yes" : "no"));
}

void ev_suite(const Case& c, const std::map<ev::Regime, Solved*>& runs) {
    double worst_pin = 0.0, worst_energy = 0.0;
    int outside = 0, v1g_discharge = 0, days = 0;
    const double dis = c.sys.ev.discharge == core::EvDischargeConvention::Multiply ? 1.0 : -1.0;
    for (const auto& [regime, s] : runs) {
        if (!s->ok()) {
            ++outside;
            continue;
        }
        const auto& pm = *s->pm;
        for (int bi = 0; bi < pm.num_blocks(); ++bi) {
            const int T = pm.blocks[static_cast<size_t>(bi)].hours;
            const int y = pm.blocks[static_cast<size_t>(bi)].year;
            for (const auto& ev : pm.ev[static_cast<size_t>(bi)]) {
                if (ev.soc.empty()) continue;
                const auto& cl = c.fleet.clusters[static_cast<size_t>(ev.cluster)];
                const auto& cy = cl.years[static_cast<size_t>(y)];
                const int L = cl.window.hours();
                std::vector<int> in_window(static_cast<size_t>(T), 0);
                for (size_t d = 0; d < ev.soc.size(); ++d) {
                    ++days;
                    worst_pin = std::max(worst_pin, std::abs(s->at(ev.soc[d].front()) - cy.cdepot_mwh));
                    worst_pin = std::max(worst_pin, std::abs(s->at(ev.soc[d].back()) - cy.cdrive_mwh));
                    double e = 0.0;
                    for (int k = 0; k < L; ++k) {
                        const auto t = static_cast<size_t>(core::tau(cl.window.t_depot + 24 * static_cast<int>(d) + k, T));
                        in_window[t] = 1;
                        e += cl.eta_charge * s->at(ev.charge[t]);
                        if (!ev.discharge.empty()) {
                            const double pd = s->at(ev.discharge[t]);
                            e -= dis > 0 ? pd * cl.eta_discharge : pd / cl.eta_discharge;
                        }
                    }
                    worst_energy = std::max(worst_energy, std::abs(e - (cy.cdrive_mwh - cy.cdepot_mwh)));
                }
                for (int t = 0; t < T; ++t) {
                    const auto i = static_cast<size_t>(t);
                    if (in_window[i]) continue;
                    if (ev.charge[i].valid() && std::abs(s->at(ev.charge[i])) > 0.0) ++outside;
                    if (!ev.discharge.empty() && ev.discharge[i].valid() && std::abs(s->at(ev.discharge[i])) > 0.0) ++outside;
                }
                if (regime == ev::Regime::V1G && !ev.discharge.empty()) ++v1g_discharge;
            }
        }
    }
    const bool ok = days > 0 && worst_pin <= kPinMwh && worst_energy <= kEnergyMwh && outside == 0 && v1g_discharge == 0;
    line(ok, "EV constraint suite",
         fmt("%d cluster-days: pin error %.1e MWh (tol %.0e), daily energy error %.1e MWh (tol %.0e), "
             "out-of-window flows %d, V1G discharge variables %d",
             days, worst_pin, kPinMwh, worst_energy, kEnergyMwh, outside, v1g_discharge));
}

void clustering() {
    const auto recs = ev::load_drives(src("tests/data/fd_fleet/drives.csv"));
    const auto proj = ev::load_population(src("tests/data/fd_fleet/population.csv"));
    core::EvSettings settings;
    const auto boot = ev::bootstrap_fleet(recs, proj, 1, settings);
    const auto fleet = ev::cluster_vehicles(boot.years, settings);
    double min_cov = 1.0, worst = 0.0;
    int clusters = 0;
    for (size_t y = 0; y < fleet.years.size(); ++y) {
        min_cov = std::min(min_cov, fleet.coverage(static_cast<int>(y)));
        for (const auto& cl : fleet.clusters) {
            const auto& cy = cl.years[y];
            const double need = cy.energy_need_mwh(cl.eta_charge);
            if (need <= 0.0) continue;
            ++clusters;
            worst = std::max(worst, std::abs(sum24(cy.fixed_profile) - need) / need);
        }
    }
    line(min_cov >= kCoverage && worst <= kProfileRel && clusters > 0, "clustering reproduction",
         fmt("modeled coverage %.2f%% (min over years, tol %.0f%%), %d profiles, worst energy error %.1e rel (tol %.0e)",
             100.0 * min_cov, 100.0 * kCoverage, clusters, worst, kProfileRel));
}

bool hand_cases() {
    // One 72 h period at weight 365/3 with block cost X.
    core::SystemData s;
    s.zones = {{"A", true}};
    s.grid.years = {2030, 2040};
    s.grid.year_weights = {1.0, 1.0};
    s.grid.hours_per_period = 72;
    s.grid.periods = {{"p", 365.0 / 3.0}};
    s.discount_rate = 0.0;
    s.resize_load();
    for (auto& l : s.load) l = 50.0;
    core::ThermalUnit u;
    u.id = "g";
    u.pmax = 100;
    u.ramp_up = u.ramp_down = 100;
    u.cost_slope = 20;
    s.thermal.push_back(u);
    core::RenewableResource pv;
    pv.id = "pv";
    pv.technology = core::Technology::Solar;
    pv.candidate = true;
    pv.max_capacity_mw = 1;
    pv.profile = {std::vector<double>(72, 0.0)};
    pv.cost = {100.0, 0.0, 1.0};
    s.renewables.push_back(pv);
    ev::EvFleet none;
    plan::BuildOptions o;
    o.policy = false;
    auto pm = plan::build_planning_model(s, none, o);
    std::vector<double> x(static_cast<size_t>(pm.model.num_vars()), 0.0);
    for (const auto& b : pm.blocks) {
        for (size_t t = 0; t < b.thermal[0].p.size(); ++t) {
            x[static_cast<size_t>(b.thermal[0].p[t].index)] = 50.0;
            x[static_cast<size_t>(b.thermal[0].on[t].index)] = 1.0;
        }
    }
    const auto& st = pm.investment.renewable[0];
    x[static_cast<size_t>(st.build[0].index)] = 1.0;
    for (const auto& c : st.capacity) x[static_cast<size_t>(c.terms().front().first)] = 1.0;
    const auto L = plan::evaluate_ledger(pm, x);
    const double X = 72.0 * 50.0 * 20.0;
    return pm.model.max_violation(x) <= 1e-9 && std::abs(L.years[0].gen - 365.0 / 3.0 * X) <= 1e-12 * X * 365.0 &&
           std::abs(L.investment() - 200.0) <= 1e-9;
}

void ledger(const std::vector<const Solved*>& runs) {
    double worst = 0.0;
    int n = 0;
    for (const auto* s : runs) {
        if (!s->ok()) continue;
        const auto L = plan::evaluate_ledger(*s->pm, s->sol.values);
        worst = std::max(worst, std::abs(L.total() - s->sol.objective) / std::abs(s->sol.objective));
        ++n;
    }
    const bool hand = hand_cases();
    line(n > 0 && worst <= kLedgerRel && hand, "cost-ledger exactness",
         fmt("%d solved plans: worst |ledger - objective| %.1e rel (tol %.0e); hand cases %s", n, worst, kLedgerRel,
             hand ? "exact" : "wrong"));
}

void degradation(const std::map<ev::Regime, Solved*>& runs) {
    std::map<ev::Regime, std::vector<analysis::ClusterTrace>> traces;
    for (const auto& [r, s] : runs) {
        if (!s->ok()) {
            line(false, "degradation calibration + ordering", "a solve failed");
            return;
        }
        traces[r] = analysis::soc_traces(*s->pm, s->sol.values);
    }
    analysis::DegradationConfig cfg;
    cfg.scale = analysis::calibrate_degradation(traces[ev::Regime::Fixed], cfg, kTargetResidual);
    std::map<ev::Regime, analysis::DegradationResult> res;
    for (const auto& [r, t] : traces) res[r] = analysis::degradation_proxy(t, cfg);
    const double f = res[ev::Regime::Fixed].residual_pct;
    const double v1 = res[ev::Regime::V1G].residual_pct;
    const double v2 = res[ev::Regime::V2G].residual_pct;
    bool linear = true;
    for (double price : {0.0, 50.0, 100.0, 200.0, 1234.5}) {
        auto c = cfg;
        c.price_per_kwh = price;
        for (const auto& [r, t] : traces) {
            const auto d = analysis::degradation_proxy(t, c);
            linear = linear && d.cost == d.degraded_kwh * price && d.degraded_kwh == res[r].degraded_kwh;
        }
        auto c2 = c;
        c2.price_per_kwh = 2.0 * price;
        linear = linear && analysis::degradation_proxy(traces[ev::Regime::V2G], c2).cost ==
                               2.0 * analysis::degradation_proxy(traces[ev::Regime::V2G], c).cost;
    }
    const bool ok = std::abs(f - kTargetResidual) <= kResidualPctTol && f >= v1 - kResidualPctTol &&
                    v1 >= v2 - kResidualPctTol && linear;
    line(ok, "degradation calibration + ordering",
         fmt("residual fixed %.4f%% (target %.1f) >= V1G %.4f%% >= V2G %.4f%% (tol %.0e pt); cost $%.4g at $100/kWh; "
             "linear in price: %s",
             f, kTargetResidual, v1, v2, kResidualPctTol, res[ev::Regime::Fixed].cost, linear ? "exact" : "no"));
}

void chargers(const Case& c, const Solved& v2g) {
    bool ok = analysis::charger_costs({2030}, {1000}, {}, analysis::ChargerPolicy::Dedicated, false).total_cost ==
              142.2e6;
    ok = ok && analysis::charger_costs({2030}, {1000}, {}, analysis::ChargerPolicy::Dedicated, true).total_cost -
                       142.2e6 == 7.5e6;
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long long> n(0, 100000);
    std::uniform_real_distribution<double> mw(0.0, 20000.0);
    int trials = 0;
    for (int i = 0; i < 2000; ++i, ++trials) {
        std::vector<long long> veh{n(rng), n(rng), n(rng)};
        std::vector<double> peak{mw(rng), mw(rng), mw(rng)};
        for (bool bidir : {false, true}) {
            const auto d = analysis::charger_costs({1, 2, 3}, veh, peak, analysis::ChargerPolicy::Dedicated, bidir);
            const auto p = analysis::charger_costs({1, 2, 3}, veh, peak, analysis::ChargerPolicy::PeakShared, bidir);
            ok = ok && p.total_cost <= d.total_cost;
        }
    }
    // The desk V2G plan itself.
    std::vector<int> years;
    std::vector<long long> veh;
    std::vector<double> peak;
    if (v2g.ok()) {
        const auto& pm = *v2g.pm;
        for (int y = 0; y < c.sys.grid.num_years(); ++y) {
            years.push_back(c.sys.grid.years[static_cast<size_t>(y)]);
            veh.push_back(c.fleet.vehicles_in_year(y));
            double pk = 0.0;
            for (const auto& b : pm.blocks) {
                if (b.year != y) continue;
                for (int t = 0; t < b.hours; ++t) {
                    double draw = 0.0;
                    for (const auto& z : b.ev_load) draw += z[static_cast<size_t>(t)].evaluate(v2g.sol.values);
                    pk = std::max(pk, draw);
                }
            }
            peak.push_back(pk);
        }
    }
    const auto d = analysis::charger_costs(years, veh, peak, analysis::ChargerPolicy::Dedicated, true);
    const auto p = analysis::charger_costs(years, veh, peak, analysis::ChargerPolicy::PeakShared, true);
    ok = ok && v2g.ok() && p.total_cost <= d.total_cost && d.total_cost == static_cast<double>(d.chargers) * 149700.0;
    line(ok, "charger-cost arithmetic",
         fmt("1000 dedicated = $142.2M, V2G +$7.5M exact; peak-shared <= dedicated on %d random inputs; desk V2G: "
             "%lld dedicated ($%.4g) vs %lld peak-shared ($%.4g)",
             trials, d.chargers, d.total_cost, p.chargers, p.total_cost));
}

void policy(const Case& base, const Solved& base_fixed) {
    bool ok = base_fixed.ok();
    std::string detail;
    auto sweep = [&](const char* what, auto tighten) {
        double prev_bound = base_fixed.sol.bound;
        double prev_obj = base_fixed.sol.objective;
        detail += std::string(what) + fmt(" %.6e", prev_obj);
        for (int step = 1; step <= 2; ++step) {
            Case c{base.sys, base.fleet};  // each step tightens the base policy
            tighten(c.sys, step);
            auto s = solve(c, ev::Regime::Fixed, false, kOracleGap, what);
            if (!s.ok()) {
                ok = false;
                detail += " infeasible";
                return;
            }
            // opt(k) >= opt(k-1) >= bound(k-1), and obj(k) >= opt(k).
            ok = ok && s.sol.objective >= prev_bound && s.sol.objective >= prev_obj - s.gap_abs() - 1e-9 * prev_obj;
            detail += fmt(" -> %.6e", s.sol.objective);
            prev_bound = s.sol.bound;
            prev_obj = s.sol.objective;
        }
        detail += "; ";
    };
    sweep("cap x1/0.9/0.8:", [](core::SystemData& s, int step) {
        for (auto& p : s.policy.years) p.emissions_cap *= 1.0 - 0.1 * step;
    });
    sweep("RPS +0/5/10 pt:", [](core::SystemData& s, int step) {
        for (auto& p : s.policy.years) p.rps = std::min(1.0, p.rps + 0.05 * step);
    });
    line(ok, "policy monotonicity", detail + "gap-aware (obj_k >= bound_k-1)");
}

}  // namespace

int main() {
    std::printf("acceptance: desk-scale and toy scenarios, HiGHS backend\n");
    std::fflush(stdout);
    try {
        // Desk scenario, seed 1: the shared runs.
        auto desk = load_case("scenarios/desk", 1);
        auto fixed = solve(*desk, ev::Regime::Fixed, false, kOracleGap, "desk seed 1");
        auto v1g = solve(*desk, ev::Regime::V1G, false, kOracleGap, "desk seed 1");
        auto v2g = solve(*desk, ev::Regime::V2G, false, kOracleGap, "desk seed 1");
        auto v2g_slr = solve(*desk, ev::Regime::V2G, true, kOracleGap, "desk seed 1");

        oracle(v2g, v2g_slr);

        // Regime ordering on every bundled scenario and five seeds.
        {
            int checked = 0, bad = 0;
            std::string worst;
            double worst_excess = -INFINITY;
            auto check = [&](const char* scen, uint64_t seed, const Solved& f, const Solved& a, const Solved& b) {
                ++checked;
                if (!f.ok() || !a.ok() || !b.ok()) {
                    ++bad;
                    worst = fmt("%s seed %llu: solve failed", scen, static_cast<unsigned long long>(seed));
                    return;
                }
                // obj(V2G) <= obj(V1G) + gap(V2G) and obj(V1G) <= obj(fixed) + gap(V1G).
                const double e1 = b.sol.objective - a.sol.objective - b.gap_abs();
                const double e2 = a.sol.objective - f.sol.objective - a.gap_abs();
                const double e = std::max(e1, e2) / std::abs(f.sol.objective);
                if (e > 1e-9) ++bad;
                if (e > worst_excess) {
                    worst_excess = e;
                    worst = fmt("%s seed %llu: fixed %.6e, V1G %.6e, V2G %.6e", scen,
                                static_cast<unsigned long long>(seed), f.sol.objective, a.sol.objective,
                                b.sol.objective);
                }
            };
            check("desk", 1, fixed, v1g, v2g);
            for (uint64_t seed = 2; seed <= 5; ++seed) {
                auto c = load_case("scenarios/desk", seed);
                const auto label = fmt("desk seed %llu", static_cast<unsigned long long>(seed));
                auto f = solve(*c, ev::Regime::Fixed, false, kSweepGap, label.c_str());
                auto a = solve(*c, ev::Regime::V1G, false, kSweepGap, label.c_str());
                auto b = solve(*c, ev::Regime::V2G, false, kSweepGap, label.c_str());
                check("desk", seed, f, a, b);
            }
            for (uint64_t seed = 1; seed <= 5; ++seed) {
                auto c = load_case("scenarios/toy2z", seed);
                const auto label = fmt("toy2z seed %llu", static_cast<unsigned long long>(seed));
                auto f = solve(*c, ev::Regime::Fixed, false, kOracleGap, label.c_str());
                auto a = solve(*c, ev::Regime::V1G, false, kOracleGap, label.c_str());
                auto b = solve(*c, ev::Regime::V2G, false, kOracleGap, label.c_str());
                check("toy2z", seed, f, a, b);
            }
            line(bad == 0, "regime ordering",
                 fmt("%d scenario-seed triples, %d violations beyond the reported gap; tightest: %s", checked, bad,
                     worst.c_str()));
        }

        {
            const double sf = storage_mw(fixed, "ca_batt", 2045);
            const double sv = storage_mw(v2g, "ca_batt", 2045);
            line(std::isfinite(sf) && std::isfinite(sv) && sv <= sf + 1e-6, "directional capacity effect",
                 fmt("2045 storage: V2G %.3f MW <= fixed %.3f MW (V1G %.3f MW)", sv, sf,
                     storage_mw(v1g, "ca_batt", 2045)));
        }

        dual_convergence(v2g_slr);
        ev_suite(*desk, {{ev::Regime::V1G, &v1g}, {ev::Regime::V2G, &v2g}, {ev::Regime::Fixed, &fixed}});
        clustering();
        ledger({&fixed, &v1g, &v2g, &v2g_slr});
        degradation({{ev::Regime::Fixed, &fixed}, {ev::Regime::V1G, &v1g}, {ev::Regime::V2G, &v2g}});
        chargers(*desk, v2g);
        policy(*desk, fixed);
    } catch (const std::exception& e) {
        line(false, "acceptance harness", e.what());
    }
    std::printf("%d failed\n", failures);
    return failures;
}

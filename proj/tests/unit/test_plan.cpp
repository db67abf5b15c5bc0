#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "gridplan/core/scenario_io.hpp"
#include "gridplan/ev/fleet.hpp"
#include "gridplan/slr/slr.hpp"

using namespace gridplan;
using lp::LinExpr;

namespace {

plan::PlanningModel planning(const core::SystemData& s, bool policy = false) {
    static const ev::EvFleet none;
    plan::BuildOptions o;
    o.policy = policy;
    o.regime = ev::Regime::Fixed;
    return plan::build_planning_model(s, none, o);
}

core::SystemData two_years(double load0, double load1) {
    auto s = fx::one_zone(24, 0.0);
    s.discount_rate = 0.0;
    s.grid.years = {2030, 2040};
    s.grid.year_weights = {1.0, 1.0};
    s.resize_load();
    for (int t = 0; t < 24; ++t) {
        s.load[s.load_index(0, 0, 0, t)] = load0;
        s.load[s.load_index(0, 1, 0, t)] = load1;
    }
    return s;
}

double val(const std::vector<double>& x, lp::Var v) { return x[static_cast<size_t>(v.index)]; }

}  // namespace

TEST_CASE("generation cost is weighted by the period weight") {
    auto s = fx::one_zone(72, 50.0);
    s.thermal.push_back(fx::unit("g", 0, 100, 20));
    CHECK(s.grid.periods[0].weight == doctest::Approx(365.0 / 3.0));
    auto pm = planning(s);
    auto r = fx::solve(pm.model);
    REQUIRE(r.status == lp::SolveStatus::Optimal);
    const double X = 72 * 50.0 * 20.0;
    auto L = plan::evaluate_ledger(pm, r.values);
    CHECK(L.years[0].gen == doctest::Approx(365.0 / 3.0 * X));
    CHECK(L.objective == doctest::Approx(r.objective).epsilon(1e-9));
    CHECK(std::abs(L.total() - r.objective) <= 1e-6 * std::abs(r.objective));
}

TEST_CASE("a first-year build pays its annuity in every remaining year") {
    auto s = two_years(0.0, 0.0);
    core::RenewableResource pv;
    pv.id = "pv";
    pv.technology = core::Technology::Solar;
    pv.candidate = true;
    pv.max_capacity_mw = 10;
    pv.profile = {std::vector<double>(24, 0.0)};
    pv.cost = {100.0, 0.0, 1.0};
    s.renewables.push_back(pv);
    auto pm = planning(s);
    CHECK(plan::annualized_capital(pv.cost, 0.0) == doctest::Approx(100.0));
    std::vector<double> x(static_cast<size_t>(pm.model.num_vars()), 0.0);
    const auto& st = pm.investment.renewable[0];
    x[static_cast<size_t>(st.build[0].index)] = 1.0;
    for (const auto& c : st.capacity) x[static_cast<size_t>(c.terms().front().first)] = 1.0;
    CHECK(pm.model.max_violation(x) <= 1e-9);
    auto L = plan::evaluate_ledger(pm, x);
    CHECK(L.investment() == doctest::Approx(200.0));
    CHECK(L.years[0].inv == doctest::Approx(200.0));
    CHECK(L.years[1].annual_inv == doctest::Approx(100.0));
}

TEST_CASE("idle system costs its planned maintenance only") {
    auto s = two_years(0.0, 0.0);
    auto u = fx::unit("g", 0, 100, 20);
    u.cost.maintenance = 1000.0;
    s.thermal.push_back(u);
    auto pm = planning(s);
    std::vector<double> x(static_cast<size_t>(pm.model.num_vars()), 0.0);
    auto L = plan::evaluate_ledger(pm, x);
    CHECK(L.total() == doctest::Approx(2000.0));
    CHECK(L.maintenance() == doctest::Approx(2000.0));
    CHECK(L.generation() == 0.0);
}

TEST_CASE("capacity stock telescopes and offline units stay off") {
    auto s = two_years(50.0, 150.0);
    s.thermal.push_back(fx::unit("old", 0, 100, 20));
    auto cand = fx::unit("new", 0, 100, 30);
    cand.candidate = true;
    cand.cost = {1e5, 100.0, 30.0};
    s.thermal.push_back(cand);
    auto pm = planning(s);
    auto r = fx::solve(pm.model);
    REQUIRE(r.status == lp::SolveStatus::Optimal);
    const auto& st = pm.investment.thermal[1];
    CHECK(st.capacity[0].evaluate(r.values) == doctest::Approx(0.0));
    CHECK(st.capacity[1].evaluate(r.values) == doctest::Approx(1.0));
    for (size_t y = 1; y < st.capacity.size(); ++y) {
        CHECK(st.capacity[y].evaluate(r.values) - st.capacity[y - 1].evaluate(r.values) ==
              doctest::Approx(val(r.values, st.build[y])));
    }
    for (auto v : pm.blocks[0].thermal[1].on) CHECK(val(r.values, v) == 0.0);
    auto L = plan::evaluate_ledger(pm, r.values);
    CHECK(std::abs(L.total() - r.objective) <= 1e-6 * r.objective);
}

TEST_CASE("capacity credit is the lower envelope of the planes") {
    auto s = fx::one_zone(24, 0.0);
    core::RenewableResource pv;
    pv.id = "pv";
    pv.technology = core::Technology::Solar;
    pv.candidate = true;
    pv.max_capacity_mw = 1000;
    pv.profile = {std::vector<double>(24, 0.3)};
    s.renewables.push_back(pv);
    s.policy.years = {{2030, 1e12, 0.0, 10.0}};
    s.policy.variable_elcc = {{0, 0.0, 0.0, 0.5, 0.0}, {0, 100.0, 0.0, 0.1, 0.0}};
    auto pm = planning(s, true);
    const auto credit = pm.investment.variable_credit[0];
    REQUIRE(credit.valid());
    for (double X : {20.0, 100.0, 250.0, 500.0, 1000.0}) {
        auto m = pm.model;
        m.add_eq(pm.investment.renewable[0].capacity[0], X, "fix");
        m.objective() = LinExpr(credit, -1.0);
        auto r = fx::solve(m);
        REQUIRE(r.status == lp::SolveStatus::Optimal);
        CHECK(val(r.values, credit) == doctest::Approx(std::min(0.5 * X, 100.0 + 0.1 * X)));
    }
}

TEST_CASE("toy planning: ledger exactness, policy pressure and regime nesting") {
    auto sys = core::load_system(fx::source_path("scenarios/toy2z"));
    auto fleet = ev::load_fleet(fx::source_path("scenarios/toy2z"), sys, 1);
    auto backend = lp::make_backend("highs");
    lp::SolveOptions opt;
    opt.mip_rel_gap = 1e-6;

    auto solve = [&](const core::SystemData& s, ev::Regime regime) {
        plan::BuildOptions o;
        o.regime = regime;
        auto pm = plan::build_planning_model(s, fleet, o);
        auto sol = slr::solve_monolithic(pm, *backend, opt);
        REQUIRE(sol.ok());
        CHECK(sol.max_violation <= 1e-6);
        auto L = plan::evaluate_ledger(pm, sol.values);
        CHECK(std::abs(L.total() - sol.objective) <= 1e-6 * std::abs(sol.objective));
        return sol;
    };

    const auto fixed = solve(sys, ev::Regime::Fixed);
    const auto v1g = solve(sys, ev::Regime::V1G);
    const auto v2g = solve(sys, ev::Regime::V2G);
    auto slack = [](const slr::PlanSolution& a, const slr::PlanSolution& b) {
        return a.objective - a.bound + b.objective - b.bound + 1e-6;
    };
    CHECK(v1g.objective <= fixed.objective + slack(v1g, fixed));
    CHECK(v2g.objective <= v1g.objective + slack(v2g, v1g));

    double prev = fixed.objective;
    auto tight = sys;
    for (double f : {0.9, 0.8}) {
        for (size_t y = 0; y < tight.policy.years.size(); ++y) {
            tight.policy.years[y].emissions_cap = f * sys.policy.years[y].emissions_cap;
        }
        const auto s = solve(tight, ev::Regime::Fixed);
        CHECK(s.objective >= prev - 1e-6 * prev);
        prev = s.objective;
    }
}

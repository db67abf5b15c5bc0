#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "gridplan/core/scenario_io.hpp"
#include "gridplan/slr/slr.hpp"
#include "gridplan/uc/dispatch_block.hpp"

using namespace gridplan;
using lp::LinExpr;

namespace {

struct Single {
    core::SystemData sys;
    lp::Model m;
    uc::DispatchBlock b;
};

Single single_unit(core::ThermalUnit u, int hours = 24) {
    Single s;
    s.sys = fx::one_zone(hours, 0.0);
    s.sys.thermal.push_back(std::move(u));
    s.b = uc::begin_block(s.m, s.sys, 0, 0);
    uc::add_thermal(s.m, s.b, s.sys, 0, LinExpr(1.0));
    return s;
}

double optimum(lp::Model m, const LinExpr& obj) {
    m.add_objective(obj);
    auto r = fx::solve(m);
    REQUIRE(r.status == lp::SolveStatus::Optimal);
    return r.objective;
}

}  // namespace

TEST_CASE("committed unit stays within its limits and an offline unit produces nothing") {
    auto u = fx::unit("g", 10, 100, 20);
    auto s = single_unit(u);
    const auto& tv = s.b.thermal[0];
    s.m.add_eq(LinExpr(tv.on[3]), 1, "fix");
    CHECK(optimum(s.m, LinExpr(tv.p[3])) == doctest::Approx(10));
    CHECK(-optimum(s.m, -1.0 * LinExpr(tv.p[3])) == doctest::Approx(100));

    auto off = single_unit(u);
    off.m.add_eq(LinExpr(off.b.thermal[0].on[3]), 0, "fix");
    CHECK(-optimum(off.m, -1.0 * LinExpr(off.b.thermal[0].p[3])) == doctest::Approx(0));
}

TEST_CASE("ramp limit bounds the next hour when committed both hours") {
    auto u = fx::unit("g", 0, 100, 20);
    u.ramp_up = u.ramp_down = 20;
    auto s = single_unit(u);
    const auto& tv = s.b.thermal[0];
    s.m.add_eq(LinExpr(tv.p[5]), 50, "fix");
    s.m.add_eq(LinExpr(tv.on[5]), 1, "fix");
    s.m.add_eq(LinExpr(tv.on[6]), 1, "fix");
    CHECK(optimum(s.m, LinExpr(tv.p[6])) == doctest::Approx(30));
    CHECK(-optimum(s.m, -1.0 * LinExpr(tv.p[6])) == doctest::Approx(70));
}

TEST_CASE("a start holds the unit on for its minimum up time") {
    auto u = fx::unit("g", 0, 100, 20);
    u.min_up = 4;
    u.min_down = 3;
    auto s = single_unit(u);
    const auto& tv = s.b.thermal[0];
    s.m.add_eq(LinExpr(tv.on[4]), 0, "fix");
    s.m.add_eq(LinExpr(tv.on[5]), 1, "fix");
    LinExpr hours_on;
    for (auto v : tv.on) hours_on.add(v, 1.0);
    s.m.add_objective(hours_on);
    auto r = fx::solve(s.m);
    REQUIRE(r.status == lp::SolveStatus::Optimal);
    CHECK(r.objective == doctest::Approx(4));
    for (int t = 5; t < 9; ++t) CHECK(r.values[static_cast<size_t>(tv.on[static_cast<size_t>(t)].index)] == 1.0);
}

TEST_CASE("renewable output follows capacity and profile") {
    auto sys = fx::one_zone(2, 0.0);
    core::RenewableResource r;
    r.id = "pv";
    r.technology = core::Technology::Solar;
    r.curtailment_cost = 10;
    r.profile = {{0.5, 0.5}};
    sys.renewables.push_back(r);
    r.id = "geo";
    r.technology = core::Technology::Firm;
    r.profile = {{0.9, 0.9}};
    sys.renewables.push_back(r);

    lp::Model m;
    auto b = uc::begin_block(m, sys, 0, 0);
    uc::add_renewable(m, b, sys, 0, LinExpr(100.0));
    uc::add_renewable(m, b, sys, 1, LinExpr(10.0));
    const auto& pv = b.renewable[0];
    const auto& geo = b.renewable[1];
    CHECK_FALSE(geo.curtail[0].valid());
    CHECK(geo.output[0].is_constant());
    CHECK(geo.output[0].constant() == doctest::Approx(9.0));

    std::vector<double> x(static_cast<size_t>(m.num_vars()), 0.0);
    CHECK(pv.output[0].evaluate(x) == doctest::Approx(50.0));
    x[static_cast<size_t>(pv.curtail[0].index)] = 50.0;
    CHECK(pv.output[0].evaluate(x) == doctest::Approx(0.0));
    CHECK(uc::generation_cost(b, sys).evaluate(x) == doctest::Approx(500.0));
    CHECK(m.max_violation(x) <= 1e-9);
}

TEST_CASE("storage charges with efficiency and returns to its cyclic start") {
    auto sys = fx::one_zone(3, 0.0);
    core::StorageResource st;
    st.id = "bat";
    st.eta_charge = st.eta_discharge = 0.9;
    sys.storage.push_back(st);
    lp::Model m;
    auto b = uc::begin_block(m, sys, 0, 0);
    uc::add_storage(m, b, sys, 0, LinExpr(20.0), LinExpr(40.0), 20.0);
    const auto& sv = b.storage[0];
    m.add_eq(LinExpr(sv.charge[0]), 10, "fix");
    m.add_eq(LinExpr(sv.charge[1]) + LinExpr(sv.discharge[1]), 0, "fix");
    m.add_eq(LinExpr(sv.charge[2]), 0, "fix");
    m.add_objective(-1.0 * LinExpr(sv.discharge[2]));
    auto r = fx::solve(m);
    REQUIRE(r.status == lp::SolveStatus::Optimal);
    CHECK(r.values[static_cast<size_t>(sv.discharge[2].index)] == doctest::Approx(8.1));
    CHECK(r.values[static_cast<size_t>(sv.soc[0].index)] - r.values[static_cast<size_t>(sv.soc[2].index)] ==
          doctest::Approx(9.0));

    lp::Model m2;
    auto b2 = uc::begin_block(m2, sys, 0, 0);
    uc::add_storage(m2, b2, sys, 0, LinExpr(20.0), LinExpr(40.0), 20.0);
    m2.add_eq(LinExpr(b2.storage[0].mode[1]), 1, "fix");
    m2.add_objective(-1.0 * LinExpr(b2.storage[0].charge[1]));
    auto r2 = fx::solve(m2);
    REQUIRE(r2.status == lp::SolveStatus::Optimal);
    CHECK(r2.objective == doctest::Approx(0.0));
}

TEST_CASE("hydro respects its daily budget and floor") {
    auto sys = fx::one_zone(24, 0.0);
    core::HydroUnit h;
    h.id = "dam";
    h.pmin = 2;
    h.pmax = 20;
    h.ramp_up = h.ramp_down = 20;
    h.budget_mwh = 240;
    sys.hydro.push_back(h);
    lp::Model m;
    auto b = uc::begin_block(m, sys, 0, 0);
    uc::add_hydro(m, b, sys, 0);
    LinExpr total;
    for (auto v : b.hydro[0].p) total.add(v, 1.0);
    m.add_objective(-1.0 * total);
    auto r = fx::solve(m);
    REQUIRE(r.status == lp::SolveStatus::Optimal);
    CHECK(-r.objective == doctest::Approx(240));
    for (auto v : b.hydro[0].p) CHECK(r.values[static_cast<size_t>(v.index)] >= 2.0 - 1e-9);
}

TEST_CASE("balance residuals see generation, line exports and EV charging") {
    auto sys = fx::one_zone(1, 100.0);
    sys.thermal.push_back(fx::unit("g", 0, 200, 20));
    lp::Model m;
    auto b = uc::begin_block(m, sys, 0, 0);
    uc::add_thermal(m, b, sys, 0, LinExpr(1.0));
    auto res = uc::build_balance(m, b, sys, uc::BalanceMode::Residual);
    REQUIRE(res.size() == 1);
    std::vector<double> x(static_cast<size_t>(m.num_vars()), 0.0);
    x[static_cast<size_t>(b.thermal[0].p[0].index)] = 100.0;
    CHECK(res[0].expr.evaluate(x) == doctest::Approx(0.0));
    CHECK(m.num_rows() > 0);

    core::SystemData two = fx::one_zone(1, 0.0);
    two.zones = {{"A", true}, {"B", false}};
    two.resize_load();
    two.load[two.load_index(1, 0, 0, 0)] = 20.0;
    core::Line l;
    l.id = "ab";
    l.incidence = {{0, -1}, {1, +1}};
    l.limit_mw = 50;
    two.lines.push_back(l);
    lp::Model m2;
    auto b2 = uc::begin_block(m2, two, 0, 0);
    uc::add_lines(m2, b2, two);
    b2.ev_load[0][0].add_constant(5.0);
    auto r2 = uc::build_balance(m2, b2, two, uc::BalanceMode::Residual);
    std::vector<double> x2(static_cast<size_t>(m2.num_vars()), 0.0);
    x2[static_cast<size_t>(b2.lines[0].fwd[0].index)] = 20.0;
    CHECK(r2[0].expr.evaluate(x2) == doctest::Approx(-25.0));
    CHECK(r2[1].expr.evaluate(x2) == doctest::Approx(0.0));

    core::SystemData dead = fx::one_zone(1, 10.0);
    lp::Model m3;
    auto b3 = uc::begin_block(m3, dead, 0, 0);
    CHECK_THROWS(uc::build_balance(m3, b3, dead, uc::BalanceMode::Hard));
}

TEST_CASE("generation cost by hand") {
    auto s = single_unit(fx::unit("g", 0, 100, 20, 10), 2);
    const auto& tv = s.b.thermal[0];
    std::vector<double> x(static_cast<size_t>(s.m.num_vars()), 0.0);
    CHECK(uc::generation_cost(s.b, s.sys).evaluate(x) == 0.0);
    for (int t = 0; t < 2; ++t) {
        x[static_cast<size_t>(tv.on[static_cast<size_t>(t)].index)] = 1.0;
        x[static_cast<size_t>(tv.p[static_cast<size_t>(t)].index)] = 5.0;
    }
    CHECK(s.m.max_violation(x) <= 1e-9);
    CHECK(uc::generation_cost(s.b, s.sys).evaluate(x) == doctest::Approx(220.0));
}

TEST_CASE("solved commitments honour minimum up and down times") {
    auto sys = core::load_system(fx::source_path("scenarios/toy2z"));
    auto pm = fx::uc_model(sys, ev::EvFleet{});
    auto backend = lp::make_backend("highs");
    auto sol = slr::solve_monolithic(pm, *backend, lp::SolveOptions{});
    REQUIRE(sol.ok());
    CHECK(sol.max_violation <= 1e-6);
    for (const auto& b : pm.blocks) {
        for (size_t u = 0; u < sys.thermal.size(); ++u) {
            const auto& on = b.thermal[u].on;
            if (on.empty()) continue;
            const int T = static_cast<int>(on.size());
            auto state = [&](int t) { return std::lround(sol.values[static_cast<size_t>(on[static_cast<size_t>(core::tau(t, T))].index)]); };
            for (int t = 0; t < T; ++t) {
                if (state(t) == 1 && state(t - 1) == 0) {
                    for (int k = 0; k < sys.thermal[u].min_up; ++k) CHECK(state(t + k) == 1);
                }
                if (state(t) == 0 && state(t - 1) == 1) {
                    for (int k = 0; k < sys.thermal[u].min_down; ++k) CHECK(state(t + k) == 0);
                }
            }
        }
    }
}

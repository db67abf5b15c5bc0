#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "gridplan/core/scenario_io.hpp"
#include "gridplan/slr/slr.hpp"

using namespace gridplan;

namespace {

struct Toy {
    core::SystemData sys;
    ev::EvFleet fleet;
};

const Toy& toy() {
    static const Toy t = [] {
        Toy x;
        x.sys = core::load_system(fx::source_path("scenarios/toy2z"));
        x.fleet = ev::load_fleet(fx::source_path("scenarios/toy2z"), x.sys, 1);
        return x;
    }();
    return t;
}

plan::PlanningModel toy_model(uc::BalanceMode mode, ev::Regime regime = ev::Regime::V2G) {
    plan::BuildOptions o;
    o.balance = mode;
    o.regime = regime;
    return plan::build_planning_model(toy().sys, toy().fleet, o);
}

}  // namespace

TEST_CASE("step sizes shrink but do not sum to a finite limit") {
    slr::StepRule rule;
    CHECK(rule.level(0) == 0);
    double first = rule.step(0, 1.0), last = first, total = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double s = rule.step(k, 1.0);
        CHECK(s <= last + 1e-15);
        last = s;
        total += s;
    }
    CHECK(last < first / 50.0);
    CHECK(total > 25.0 * first);
    CHECK(rule.step(3, 0.0) == 0.0);
    CHECK(rule.step(0, 4.0) == doctest::Approx(rule.s0 / 4.0));
}

TEST_CASE("multipliers move against the residual") {
    const std::vector<double> lam{3.0, -1.0};
    CHECK(slr::update_multipliers(lam, {0.0, 0.0}, 0.7) == lam);
    auto next = slr::update_multipliers(lam, {10.0, -2.0}, 0.5);
    CHECK(next[0] == doctest::Approx(-2.0));
    CHECK(next[1] == doctest::Approx(0.0));
    CHECK_THROWS(slr::update_multipliers(lam, {NAN, 0.0}, 0.5));
    CHECK_THROWS(slr::update_multipliers(lam, {1.0}, 0.5));
}

TEST_CASE("residual vector matches the hard-balance rows") {
    auto pm = toy_model(uc::BalanceMode::Residual);
    const auto hard = plan::with_hard_balance(pm);
    CHECK(hard.num_vars() == pm.model.num_vars());
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    std::vector<double> x(static_cast<size_t>(pm.model.num_vars()));
    for (auto& v : x) v = u(rng);
    const auto r = slr::residual_vector(pm, x);
    REQUIRE(r.size() == pm.residuals.size());
    const auto fam = std::find(hard.families().begin(), hard.families().end(), "balance") - hard.families().begin();
    size_t k = 0;
    for (const auto& row : hard.rows()) {
        if (row.family != fam) continue;
        double lhs = 0.0;
        for (const auto& [j, c] : row.terms) lhs += c * x[static_cast<size_t>(j)];
        REQUIRE(k < r.size());
        CHECK(std::abs((lhs - row.lb) - r[k]) <= 1e-9 * std::max(1.0, std::abs(r[k])));
        ++k;
    }
    CHECK(k == r.size());
}

TEST_CASE("surrogate relaxation with recovery reaches the monolithic optimum on the toy") {
    auto backend = lp::make_backend("highs");
    auto hard = toy_model(uc::BalanceMode::Hard);
    auto mono = slr::solve_monolithic(hard, *backend, lp::SolveOptions{1e-6});
    REQUIRE(mono.ok());

    auto pm = toy_model(uc::BalanceMode::Residual);
    slr::SlrConfig cfg;
    cfg.max_iterations = 200;
    auto a = slr::solve_slr(pm, *backend, cfg);
    auto b = slr::solve_slr(pm, *backend, cfg);
    CHECK(a.dual.converged);
    REQUIRE(a.primal.ok());
    CHECK(a.dual.log.back().max_residual < 1.0);
    CHECK(a.primal.max_violation <= 1e-6);
    CHECK(std::abs(a.primal.objective - mono.objective) <= 0.01 * mono.objective);
    CHECK(a.dual.best_bound <= mono.objective * (1.0 + 1e-6));

    double best = INFINITY;
    for (const auto& it : a.dual.log) {
        best = std::min(best, it.max_residual);
        CHECK(it.best_max_residual == doctest::Approx(best));
    }
    REQUIRE(a.dual.log.size() == b.dual.log.size());
    for (size_t i = 0; i < a.dual.log.size(); ++i) {
        CHECK(a.dual.log[i].dual_value == b.dual.log[i].dual_value);
        CHECK(a.dual.log[i].max_residual == b.dual.log[i].max_residual);
    }
    CHECK(a.primal.objective == b.primal.objective);
}

TEST_CASE("recovery unfixes commitments that block every dispatch") {
    auto backend = lp::make_backend("highs");
    auto pm = toy_model(uc::BalanceMode::Residual, ev::Regime::Fixed);
    // All binaries pinned "stable" at zero: no unit can run, so the first attempts fail.
    std::vector<double> x(static_cast<size_t>(pm.model.num_vars()), 0.0);
    std::vector<int> stability(x.size(), 1000);
    slr::SlrConfig cfg;
    cfg.fix_fraction = 1.0;
    auto sol = slr::recover_primal(pm, x, stability, *backend, cfg, -INFINITY);
    REQUIRE(sol.ok());
    CHECK(sol.retries > 0);
    CHECK(sol.max_violation <= 1e-6);
}

TEST_CASE("infeasible models name a constraint family") {
    auto sys = toy().sys;
    for (auto& p : sys.policy.years) p.emissions_cap = 0.0;
    plan::BuildOptions o;
    o.regime = ev::Regime::Fixed;
    auto pm = plan::build_planning_model(sys, toy().fleet, o);
    auto backend = lp::make_backend("highs");
    auto sol = slr::solve_monolithic(pm, *backend, lp::SolveOptions{});
    CHECK_FALSE(sol.ok());
    CHECK(sol.diagnostic.find("family") != std::string::npos);
}

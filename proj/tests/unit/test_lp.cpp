#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "gridplan/lp/backend.hpp"

using namespace gridplan;
using lp::LinExpr;

TEST_CASE("linear expressions merge duplicates and fold constants") {
    lp::Model m;
    auto x = m.add_continuous(0, 10, "x");
    LinExpr e = 2.0 * LinExpr(x) + LinExpr(x, 3.0) + 4.0;
    e.normalize();
    REQUIRE(e.terms().size() == 1);
    CHECK(e.terms()[0].second == 5.0);
    std::vector<double> v{2.0};
    CHECK(e.evaluate(v) == 14.0);

    auto ref = m.add_le(LinExpr(x) + 1.0, 5.0, "cap");
    REQUIRE(ref.valid());
    CHECK(m.rows()[0].ub == 4.0);
    CHECK_FALSE(m.add_le(LinExpr(3.0), 5.0, "const").valid());
    CHECK_THROWS(m.add_le(LinExpr(7.0), 5.0, "const"));
}

TEST_CASE("several rows keep their own coefficients in the backend") {
    // min x + 2y + 3z  s.t. x + y >= 4, y + z >= 3, x <= 1, z - y <= 0
    lp::Model m;
    auto x = m.add_continuous(0, lp::kInf, "x");
    auto y = m.add_continuous(0, lp::kInf, "y");
    auto z = m.add_continuous(0, lp::kInf, "z");
    m.add_ge(LinExpr(x) + LinExpr(y), 4, "a");
    m.add_ge(LinExpr(y) + LinExpr(z), 3, "b");
    m.add_le(LinExpr(x), 1, "c");
    m.add_le(LinExpr(z) - LinExpr(y), 0, "d");
    m.add_objective(LinExpr(x) + 2.0 * LinExpr(y) + 3.0 * LinExpr(z));
    auto r = fx::solve(m);
    REQUIRE(r.status == lp::SolveStatus::Optimal);
    CHECK(r.values[0] == doctest::Approx(1.0));
    CHECK(r.values[1] == doctest::Approx(3.0));
    CHECK(r.values[2] == doctest::Approx(0.0));
    CHECK(r.objective == doctest::Approx(7.0));
    CHECK(m.max_violation(r.values) <= 1e-9);
}

TEST_CASE("binaries, infeasibility and objective constants") {
    lp::Model m;
    auto u = m.add_binary("u");
    auto p = m.add_continuous(0, 100, "p");
    m.add_le(LinExpr(p) - 100.0 * LinExpr(u), 0, "link");
    m.add_ge(LinExpr(p), 30, "demand");
    m.add_objective(LinExpr(p) + 50.0 * LinExpr(u) + 7.0);
    auto r = fx::solve(m);
    REQUIRE(r.has_solution());
    CHECK(r.values[0] == 1.0);
    CHECK(r.objective == doctest::Approx(87.0));

    m.add_le(LinExpr(u), 0, "off");
    CHECK(fx::solve(m).status == lp::SolveStatus::Infeasible);
}

TEST_CASE("integrality violations are reported") {
    lp::Model m;
    m.add_binary("u");
    std::vector<double> v{0.5};
    std::string worst;
    CHECK(m.max_violation(v, &worst) == doctest::Approx(0.5));
    CHECK_FALSE(worst.empty());
}

TEST_CASE("restricted model substitutes fixed variables") {
    lp::Model m;
    auto x = m.add_continuous(0, 10, "x");
    auto y = m.add_continuous(0, 10, "y");
    auto z = m.add_continuous(0, 10, "z");
    m.add_ge(LinExpr(x) + LinExpr(y), 6, "a");
    m.add_le(LinExpr(z), 10, "only_fixed");
    m.add_objective(LinExpr(x) + 3.0 * LinExpr(y) + LinExpr(z));
    std::vector<double> inc{0.0, 2.0, 4.0};
    auto red = lp::restrict_model(m, {1, 0, 0}, inc);
    CHECK(red.model.num_vars() == 1);
    CHECK(red.model.num_rows() == 1);
    CHECK(red.objective_offset == doctest::Approx(10.0));
    auto r = fx::solve(red.model);
    REQUIRE(r.status == lp::SolveStatus::Optimal);
    CHECK(r.objective == doctest::Approx(14.0));
    auto full = red.expand(r.values, inc);
    CHECK(full == std::vector<double>{4.0, 2.0, 4.0});
    CHECK_THROWS(lp::restrict_model(m, {1, 0}, inc));
}

TEST_CASE("backend selection") {
    CHECK(lp::make_backend("highs")->name() == "highs");
    CHECK_THROWS(lp::make_backend("nope"));
}

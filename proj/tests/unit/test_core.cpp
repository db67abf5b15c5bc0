#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "gridplan/core/csv.hpp"
#include "gridplan/core/scenario_io.hpp"
#include "gridplan/core/validate.hpp"

using namespace gridplan;
namespace fs = std::filesystem;

TEST_CASE("tau wraps hours cyclically") {
    CHECK(core::tau(71, 72) == 71);
    CHECK(core::tau(72, 72) == 0);
    CHECK(core::tau(-1, 72) == 71);
    for (int T : {1, 24, 72}) {
        for (int t = -3 * T; t < 3 * T; ++t) {
            const int v = core::tau(t, T);
            CHECK(v >= 0);
            CHECK(v < T);
            CHECK(core::tau(t + T, T) == v);
        }
    }
}

TEST_CASE("bundled scenarios validate cleanly") {
    for (const char* name : {"scenarios/toy2z", "scenarios/desk"}) {
        auto sys = core::load_system(fx::source_path(name));
        auto rep = core::validate_system(sys);
        INFO(name << ": " << (rep.empty() ? std::string() : rep.front().message));
        CHECK(rep.empty());
        CHECK(sys.grid.represented_hours() == doctest::Approx(8760.0));
    }
}

TEST_CASE("validation catches a doubled incidence and unnormalized weights") {
    auto sys = core::load_system(fx::source_path("scenarios/toy2z"));
    auto bad = sys;
    REQUIRE_FALSE(bad.lines.empty());
    for (auto& [z, s] : bad.lines[0].incidence) s = +1;
    CHECK(core::has_violation(core::validate_system(bad), "line.incidence"));

    bad = sys;
    bad.grid.periods[0].weight = 8000.0 / bad.grid.hours_per_period;
    CHECK(bad.grid.represented_hours() == doctest::Approx(8000.0));
    CHECK(core::has_violation(core::validate_system(bad), "time_grid.weight_normalization"));

    bad = sys;
    bad.policy.storage_credit_hours = 0.0;
    CHECK(core::has_violation(core::validate_system(bad), "policy.storage_credit_hours"));

    bad = sys;
    bad.thermal[0].pmin = bad.thermal[0].pmax + 1.0;
    CHECK(core::has_violation(core::validate_system(bad), "thermal.limits"));
}

TEST_CASE("csv errors name the file and row") {
    CHECK_THROWS_AS(core::CsvTable::parse("a,b,c\n1,2,3\n", "t.csv", {"a", "b"}), core::ScenarioError);
    CHECK_THROWS_AS(core::CsvTable::parse("a\n1\n", "t.csv", {"a", "b"}), core::ScenarioError);
    auto t = core::CsvTable::parse("a,b\n1,2\n3,x\n", "t.csv", {"a", "b"});
    CHECK(t.row(0).num("b") == 2.0);
    try {
        (void)t.row(1).num("b");
        FAIL("expected a parse error");
    } catch (const core::ScenarioError& e) {
        CHECK(e.file() == "t.csv");
        CHECK(e.row() == 2);
    }
}

TEST_CASE("scenario loader reports the offending file") {
    const fs::path dir = fs::temp_directory_path() / "gridplan_bad_scenario";
    fs::remove_all(dir);
    fs::copy(fx::source_path("scenarios/toy2z"), dir);
    {
        std::ofstream f(dir / "lines.csv", std::ios::app);
        f << "extra,A,B,notanumber,0,0\n";
    }
    try {
        (void)core::load_system(dir);
        FAIL("expected a scenario error");
    } catch (const core::ScenarioError& e) {
        CHECK(e.file().find("lines.csv") != std::string::npos);
        CHECK(e.row() > 0);
    }
    fs::remove_all(dir);
}

TEST_CASE("capital recovery factor") {
    CHECK(core::capital_recovery_factor(0.0, 20) == doctest::Approx(0.05));
    CHECK(core::capital_recovery_factor(0.05, 30) == doctest::Approx(0.0650514).epsilon(1e-6));
    CHECK_THROWS(core::capital_recovery_factor(0.05, 0));
}

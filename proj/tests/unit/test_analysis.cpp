#include <cmath>
#include <random>

#include "doctest.h"
#include "gridplan/analysis/reports.hpp"

using namespace gridplan::analysis;

namespace {

CostSummary summary(const std::string& regime, std::vector<YearCost> years) {
    CostSummary s;
    s.scenario = "desk";
    s.regime = regime;
    s.years = std::move(years);
    return s;
}

ClusterTrace trace(std::vector<double> day, double cap = 10.0, int year = 2030) {
    ClusterTrace t;
    t.cluster = "c";
    t.year = year;
    t.capacity_mwh = cap;
    t.periods = {std::move(day)};
    t.weights = {365.0};
    return t;
}

std::vector<double> daily(double low, double high) {
    std::vector<double> d(24, high);
    for (int h = 8; h < 18; ++h) d[static_cast<size_t>(h)] = low;
    return d;
}

double total_range(const std::vector<Cycle>& cs) {
    double s = 0.0;
    for (const auto& c : cs) s += c.count * c.range;
    return s;
}

}  // namespace

TEST_CASE("levelized savings") {
    auto base = summary("fixed", {{2030, 1.0e9, 10000}, {2045, 2.0e9, 20000}});
    auto same = levelized_savings(base, base);
    for (const auto& r : same.years) {
        CHECK(r.saving_total == 0.0);
        CHECK(r.per_vehicle == 0.0);
    }
    auto alt = summary("v2g", {{2030, 1.0e9 - 1.0e7, 10000}, {2045, 2.0e9, 20000}});
    auto rep = levelized_savings(base, alt);
    CHECK(rep.years[0].saving_total == doctest::Approx(1.0e7));
    CHECK(rep.years[0].per_vehicle == doctest::Approx(1000.0));
    CHECK(rep.baseline == "fixed");

    auto other = alt;
    other.scenario = "toy2z";
    CHECK_THROWS(levelized_savings(base, other));
    auto shifted = alt;
    shifted.years[1].year = 2040;
    CHECK_THROWS(levelized_savings(base, shifted));
}

TEST_CASE("rainflow on simple cyclic series") {
    auto one = rainflow_cyclic({0.2, 1.0, 0.2, 1.0});
    CHECK(total_range(one) == doctest::Approx(1.6));
    auto sq = rainflow_cyclic(daily(0.3, 1.0));
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].range == doctest::Approx(0.7));
    CHECK(sq[0].count == 1.0);
    CHECK(rainflow_cyclic(std::vector<double>(24, 0.5)).empty());

    // Nested small cycle inside a large one.
    auto nested = rainflow_cyclic({1.0, 0.0, 0.6, 0.4, 1.0});
    double big = 0.0, small = 0.0;
    for (const auto& c : nested) {
        if (std::abs(c.range - 1.0) < 1e-12) big += c.count;
        if (std::abs(c.range - 0.2) < 1e-12) small += c.count;
    }
    CHECK(big == 1.0);
    CHECK(small == 1.0);
}

TEST_CASE("rainflow counts are rotation invariant and conserve half the travel") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> s(24);
        for (auto& v : s) v = u(rng);
        double travel = 0.0;
        for (size_t i = 0; i < s.size(); ++i) travel += std::abs(s[(i + 1) % s.size()] - s[i]);
        auto base = rainflow_cyclic(s);
        CHECK(2.0 * total_range(base) == doctest::Approx(travel));
        std::rotate(s.begin(), s.begin() + 5, s.end());
        CHECK(total_range(rainflow_cyclic(s)) == doctest::Approx(total_range(base)));
    }
}

TEST_CASE("degradation proxy") {
    DegradationConfig cfg;
    cfg.start_year = 2030;
    cfg.end_year = 2030;
    auto idle = degradation_proxy({trace(std::vector<double>(24, 1.0))}, cfg);
    CHECK(idle.residual_pct == 100.0);
    CHECK(idle.cost == 0.0);

    cfg.end_year = 2045;
    auto calm = degradation_proxy({trace(std::vector<double>(24, 1.0))}, cfg);
    auto busy = degradation_proxy({trace(daily(0.3, 1.0))}, cfg);
    auto busier = degradation_proxy({trace(daily(0.0, 1.0))}, cfg);
    CHECK(calm.residual_pct > busy.residual_pct);
    CHECK(busy.residual_pct > busier.residual_pct);

    const double scale = calibrate_degradation({trace(daily(0.3, 1.0))}, cfg, 81.9);
    cfg.scale = scale;
    auto cal = degradation_proxy({trace(daily(0.3, 1.0))}, cfg);
    CHECK(cal.residual_pct == doctest::Approx(81.9));
    CHECK(cal.degraded_kwh == doctest::Approx(0.181 * 10.0 * 1000.0));

    auto cost_at = [&](double price) {
        auto c = cfg;
        c.price_per_kwh = price;
        return degradation_proxy({trace(daily(0.3, 1.0))}, c).cost;
    };
    CHECK(cost_at(200.0) == 2.0 * cost_at(100.0));
    CHECK(cost_at(100.0) == cal.degraded_kwh * 100.0);
    CHECK(cost_at(0.0) == 0.0);

    CHECK_THROWS(degradation_proxy({trace(std::vector<double>(12, 1.0))}, cfg));
    CHECK_THROWS(calibrate_degradation({}, cfg, 81.9));
}

TEST_CASE("charger arithmetic") {
    CHECK(dedicated_chargers(1000) == 1000);
    auto d = charger_costs({2030}, {1000}, {}, ChargerPolicy::Dedicated, false);
    CHECK(d.total_cost == 142.2e6);
    auto v = charger_costs({2030}, {1000}, {}, ChargerPolicy::Dedicated, true);
    CHECK(v.total_cost - d.total_cost == doctest::Approx(7.5e6));

    CHECK(peak_shared_chargers(1.5, 100) == 10);
    CHECK(peak_shared_chargers(1.51, 100) == 11);
    CHECK(peak_shared_chargers(100.0, 7) == 7);
    CHECK(peak_shared_chargers(0.0, 7) == 0);
    CHECK_THROWS(charger_costs({2030, 2045}, {1}, {}, ChargerPolicy::Dedicated, false));

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> n(0, 20000);
    std::uniform_real_distribution<double> mw(0.0, 5000.0);
    for (int i = 0; i < 500; ++i) {
        std::vector<long long> veh{n(rng), n(rng)};
        std::vector<double> peak{mw(rng), mw(rng)};
        for (bool v2g : {false, true}) {
            auto ded = charger_costs({2030, 2045}, veh, peak, ChargerPolicy::Dedicated, v2g);
            auto shr = charger_costs({2030, 2045}, veh, peak, ChargerPolicy::PeakShared, v2g);
            CHECK(shr.total_cost <= ded.total_cost);
            CHECK(shr.chargers <= ded.chargers);
        }
    }
}

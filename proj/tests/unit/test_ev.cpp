#include <cmath>
#include <map>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "gridplan/ev/constraints.hpp"
#include "gridplan/ev/fleet.hpp"
#include "gridplan/slr/slr.hpp"

using namespace gridplan;

namespace {

ev::DriveRecord record(ev::VehicleClass cls, const std::string& voc, double start, double end, double miles) {
    ev::DriveRecord r;
    r.cls = cls;
    r.vocation = voc;
    r.start_h = start;
    r.end_h = end;
    r.miles = miles;
    return r;
}

double sum(const std::array<double, 24>& a) { return std::accumulate(a.begin(), a.end(), 0.0); }

ev::EvFleet one_cluster_fleet() {
    ev::EvCluster c;
    c.id = "e1906";
    c.window = ev::round_window(19.0, 6.0);
    ev::ClusterYear cy;
    cy.year = 2030;
    cy.vehicles = 10;
    cy.modeled = true;
    cy.pmax_mw = 1.5;
    cy.cmax_mwh = 6.0;
    cy.cdepot_mwh = 2.0;
    cy.cdrive_mwh = 6.0;
    cy.fixed_profile = ev::fixed_profile(cy.energy_need_mwh(c.eta_charge), cy.pmax_mw, c.window, c.id);
    c.years = {cy};
    ev::EvFleet f;
    f.years = {2030};
    f.clusters = {c};
    f.unmodeled_profile = {std::array<double, 24>{}};
    f.fleet_size = {10};
    f.modeled_vehicles = {10};
    f.routed_vehicles = {0};
    return f;
}

// Cheap base unit up to 100 MW and an expensive peaker; evening peak of 150 MW.
core::SystemData peaky_system() {
    auto s = fx::one_zone(24, 60.0);
    for (int t : {20, 21}) s.load[s.load_index(0, 0, 0, t)] = 150.0;
    s.thermal.push_back(fx::unit("base", 0, 100, 10));
    s.thermal.push_back(fx::unit("peak", 0, 100, 300));
    return s;
}

}  // namespace

TEST_CASE("depot windows round inward") {
    auto w = ev::round_window(18.0 + 20.0 / 60.0, 6.0 + 40.0 / 60.0);
    CHECK(w.t_depot == 19);
    CHECK(w.t_drive == 6);
    CHECK(w.t_wrap == 24);
    CHECK(w.hours() == 11);
    CHECK(ev::round_window(18.0, 23.5).t_depot == 18);
    CHECK(ev::round_window(18.0, 23.5).t_wrap == 0);
    CHECK(ev::round_window(10.5, 10.75).empty());
    CHECK(ev::parse_hhmm("06:40") == doctest::Approx(6.0 + 40.0 / 60.0));
}

TEST_CASE("bootstrap uses the class battery and efficiency") {
    const std::vector<ev::DriveRecord> recs{record(ev::VehicleClass::C8, "linehaul", 6.0, 18.0, 100.0)};
    const std::vector<ev::Projection> proj{{2030, ev::VehicleClass::C8, "linehaul", 3},
                                           {2030, ev::VehicleClass::C4_6, "delivery", 0}};
    core::EvSettings s;
    auto res = ev::bootstrap_fleet(recs, proj, 7, s);
    REQUIRE(res.years.size() == 1);
    REQUIRE(res.years[0].vehicles.size() == 3);
    const auto& v = res.years[0].vehicles[0];
    CHECK(v.consumption_kwh == doctest::Approx(180.0));
    CHECK(v.capacity_kwh == doctest::Approx(600.0));
    CHECK(v.arrival_soc_kwh == doctest::Approx(420.0));
    CHECK(v.departure_soc_kwh == doctest::Approx(600.0));
    CHECK(v.charger_kw == 150.0);
    for (const auto& x : res.years[0].vehicles) CHECK(x.cls == ev::VehicleClass::C8);

    const std::vector<ev::Projection> missing{{2030, ev::VehicleClass::C7, "drayage", 5}};
    CHECK_THROWS_WITH_AS(ev::bootstrap_fleet(recs, missing, 7, s), doctest::Contains("drayage"), std::runtime_error);
}

TEST_CASE("bootstrap draws are uniform and reproducible") {
    std::vector<ev::DriveRecord> recs;
    for (int i = 0; i < 3; ++i) recs.push_back(record(ev::VehicleClass::C4_6, "delivery", 7.0 + i, 17.0, 50.0));
    const std::vector<ev::Projection> proj{{2030, ev::VehicleClass::C4_6, "delivery", 10000}};
    core::EvSettings s;
    auto a = ev::bootstrap_fleet(recs, proj, 42, s);
    auto b = ev::bootstrap_fleet(recs, proj, 42, s);
    auto c = ev::bootstrap_fleet(recs, proj, 43, s);
    std::map<int, int> freq;
    bool same = true, differs = false;
    for (size_t i = 0; i < a.years[0].vehicles.size(); ++i) {
        freq[a.years[0].vehicles[i].record]++;
        same = same && a.years[0].vehicles[i].record == b.years[0].vehicles[i].record;
        differs = differs || a.years[0].vehicles[i].record != c.years[0].vehicles[i].record;
    }
    CHECK(same);
    CHECK(differs);
    REQUIRE(freq.size() == 3);
    for (const auto& [rec, n] : freq) CHECK(std::abs(n / 10000.0 - 1.0 / 3.0) <= 0.02);

    uint64_t st = 1;
    for (int i = 0; i < 1000; ++i) CHECK(ev::draw_index(st, 7) < 7);
}

TEST_CASE("small clusters fall back to the fixed profile") {
    ev::FleetYear fy;
    fy.year = 2030;
    auto vehicle = [](double arr, double dep) {
        ev::Vehicle v;
        v.arrival_h = arr;
        v.departure_h = dep;
        v.charger_kw = 150;
        v.capacity_kwh = 300;
        v.arrival_soc_kwh = 200;
        v.departure_soc_kwh = 300;
        return v;
    };
    for (int i = 0; i < 9995; ++i) fy.vehicles.push_back(vehicle(19.0, 6.0));
    for (int i = 0; i < 5; ++i) fy.vehicles.push_back(vehicle(12.0, 16.0));
    core::EvSettings s;
    auto f = ev::cluster_vehicles({fy}, s);
    REQUIRE(f.clusters.size() == 2);
    int unmodeled = 0;
    for (const auto& c : f.clusters) {
        if (c.years[0].vehicles == 5) {
            CHECK_FALSE(c.years[0].modeled);
            unmodeled += 5;
        } else {
            CHECK(c.years[0].modeled);
        }
    }
    CHECK(f.modeled_vehicles[0] + unmodeled + f.routed_vehicles[0] == f.fleet_size[0]);
    CHECK(sum(f.unmodeled_profile[0]) == doctest::Approx(5 * 0.1 / s.eta_charge));
}

TEST_CASE("fixed profile halves") {
    ev::Window w{8, 18, 0};
    auto p = ev::fixed_profile_parts(0.150, 0.150, w, "c");
    CHECK(p.immediate[8] == doctest::Approx(0.150));
    CHECK(sum(p.immediate) == doctest::Approx(0.150));
    for (int h = 8; h < 18; ++h) CHECK(p.spread[static_cast<size_t>(h)] == doctest::Approx(0.015));
    CHECK(sum(p.spread) == doctest::Approx(0.150));
    CHECK(sum(p.total()) == doctest::Approx(0.150));

    auto z = ev::fixed_profile(0.0, 0.150, w, "c");
    CHECK(sum(z) == 0.0);
    CHECK_THROWS_WITH(ev::fixed_profile(2.0, 0.150, w, "late"), doctest::Contains("late"));
}

TEST_CASE("synthetic delivery fleet: coverage and profile energy") {
    const auto recs = ev::load_drives(fx::source_path("tests/data/fd_fleet/drives.csv"));
    const auto proj = ev::load_population(fx::source_path("tests/data/fd_fleet/population.csv"));
    core::EvSettings s;
    auto boot = ev::bootstrap_fleet(recs, proj, 1, s);
    auto f = ev::cluster_vehicles(boot.years, s);
    for (size_t y = 0; y < f.years.size(); ++y) {
        INFO("year " << f.years[y]);
        CHECK(f.coverage(static_cast<int>(y)) >= 0.90);
        int unmodeled = 0;
        double cluster_energy = 0.0;
        for (const auto& c : f.clusters) {
            const auto& cy = c.years[y];
            if (cy.vehicles > 0 && !cy.modeled) unmodeled += cy.vehicles;
            const double need = cy.energy_need_mwh(c.eta_charge);
            if (need > 0.0) CHECK(std::abs(sum(cy.fixed_profile) - need) <= 1e-9 * need);
            cluster_energy += sum(cy.fixed_profile);
        }
        CHECK(f.modeled_vehicles[y] + unmodeled + f.routed_vehicles[y] == f.fleet_size[y]);

        // Independent per-vehicle sum.
        double direct = 0.0;
        for (const auto& v : boot.years[y].vehicles) {
            const auto w = ev::round_window(v.arrival_h, v.departure_h);
            const double need_kwh = (v.departure_soc_kwh - v.arrival_soc_kwh) / s.eta_charge;
            if (!w.empty() && need_kwh <= v.charger_kw * w.hours()) direct += need_kwh / 1000.0;
        }
        CHECK(cluster_energy == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("solved EV schedules respect pins, windows and daily energy") {
    const auto sys = peaky_system();
    const auto fleet = one_cluster_fleet();
    const auto& c = fleet.clusters[0];
    const auto& cy = c.years[0];
    auto backend = lp::make_backend("highs");
    lp::SolveOptions opt;
    opt.mip_rel_gap = 1e-9;

    std::map<ev::Regime, double> obj;
    for (auto regime : {ev::Regime::Fixed, ev::Regime::V1G, ev::Regime::V2G}) {
        auto pm = fx::uc_model(sys, fleet, regime);
        auto sol = slr::solve_monolithic(pm, *backend, opt);
        REQUIRE(sol.ok());
        obj[regime] = sol.objective;
        if (regime == ev::Regime::Fixed) continue;
        const auto& ev = pm.ev[0][0];
        auto val = [&](lp::Var v) { return sol.values[static_cast<size_t>(v.index)]; };
        REQUIRE(ev.soc.size() == 1);
        CHECK(std::abs(val(ev.soc[0].front()) - cy.cdepot_mwh) <= 1e-6);
        CHECK(std::abs(val(ev.soc[0].back()) - cy.cdrive_mwh) <= 1e-6);
        double balance = 0.0;
        for (int t = 0; t < 24; ++t) {
            const bool at_depot = t >= 19 || t < 6;
            const auto i = static_cast<size_t>(t);
            if (!at_depot) {
                CHECK_FALSE(ev.charge[i].valid());
                if (!ev.discharge.empty()) CHECK_FALSE(ev.discharge[i].valid());
                continue;
            }
            REQUIRE(ev.charge[i].valid());
            balance += val(ev.charge[i]) * c.eta_charge;
            if (regime == ev::Regime::V2G) balance -= val(ev.discharge[i]) * c.eta_discharge;
        }
        CHECK(std::abs(balance - (cy.cdrive_mwh - cy.cdepot_mwh)) <= 1e-6);
        if (regime == ev::Regime::V1G) CHECK(ev.discharge.empty());
        if (regime == ev::Regime::V2G) {
            CHECK(val(ev.discharge[20]) + val(ev.discharge[21]) > 0.5);
        }
    }
    CHECK(obj[ev::Regime::V2G] <= obj[ev::Regime::V1G] + 1e-6);
    CHECK(obj[ev::Regime::V1G] <= obj[ev::Regime::Fixed] + 1e-6);
    CHECK(obj[ev::Regime::V2G] < obj[ev::Regime::V1G] - 1.0);
}

TEST_CASE("boundary pins outside the SoC bounds are rejected before solving") {
    auto sys = peaky_system();
    auto fleet = one_cluster_fleet();
    fleet.clusters[0].years[0].cdrive_mwh = 7.0;
    CHECK_THROWS_WITH(fx::uc_model(sys, fleet, ev::Regime::V1G), doctest::Contains("e1906"));
}

#pragma once

#include <string>

#include "gridplan/core/system.hpp"
#include "gridplan/lp/backend.hpp"
#include "gridplan/plan/planning_model.hpp"

#ifndef GRIDPLAN_SOURCE_DIR
#define GRIDPLAN_SOURCE_DIR "."
#endif

namespace fx {

using namespace gridplan;

inline std::string source_path(const std::string& rel) { return std::string(GRIDPLAN_SOURCE_DIR) + "/" + rel; }

/// One policy zone, one year, one period of `hours` hours at constant load.
inline core::SystemData one_zone(int hours, double load_mw) {
    core::SystemData s;
    s.name = "fixture";
    s.zones = {{"A", true}};
    s.grid.years = {2030};
    s.grid.year_weights = {1.0};
    s.grid.hours_per_period = hours;
    s.grid.periods = {{"p", core::kHoursPerYear / hours}};
    s.resize_load();
    for (auto& l : s.load) l = load_mw;
    return s;
}

inline core::ThermalUnit unit(const std::string& id, double pmin, double pmax, double slope, double intercept = 0.0) {
    core::ThermalUnit u;
    u.id = id;
    u.pmin = pmin;
    u.pmax = pmax;
    u.ramp_up = u.ramp_down = pmax;
    u.cost_slope = slope;
    u.cost_intercept = intercept;
    return u;
}

inline plan::PlanningModel uc_model(const core::SystemData& s, const ev::EvFleet& fleet,
                                    ev::Regime regime = ev::Regime::Fixed) {
    plan::BuildOptions o;
    o.investment = false;
    o.policy = false;
    o.regime = regime;
    return plan::build_planning_model(s, fleet, o);
}

inline lp::SolveResult solve(const lp::Model& m, double gap = 1e-9) {
    auto b = lp::make_backend("highs");
    lp::SolveOptions o;
    o.mip_rel_gap = gap;
    return b->solve(m, o);
}

}  // namespace fx

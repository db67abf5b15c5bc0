#pragma once

// Scenario directory layout (all CSV headers fixed; unknown columns rejected):
//
//   system.json     name, discount_rate, zones, time_grid, ev settings
//   thermal.csv     id,zone,pmax,pmin,ramp_up,ramp_down,min_up,min_down,startup_cost,
//                   shutdown_cost,cost_slope,cost_intercept,emission_slope,
//                   emission_intercept,nqc[,candidate,retire_year,retirable]
//   renewables.csv  id,zone,technology,curtailable,rps_eligible,curtailment_cost,
//                   planned_mw[,candidate,max_capacity_mw,retirable]
//   profiles.csv    resource,period,hour,factor
//   storage.csv     id,zone,planned_mw,planned_mwh,eta_charge,eta_discharge[,self_discharge,
//                   soc_max_frac,soc_min_frac,min_duration_h,candidate,max_power_mw,
//                   max_energy_mwh,retirable]
//   hydro.csv       id,zone,pmax,pmin,ramp_up,ramp_down,budget_mwh,nqc
//   lines.csv       id,from_zone,to_zone,limit_mw,wheeling_cost,emission_rate
//   load.csv        zone,year,period,hour,MW          (hours are 0-based)
//   elcc.csv        surface,year,intercept,wind,solar,storage   (surface: variable|storage)
//   policy.csv      year,emissions_cap,rps,prm
//   costs.csv       resource,component,capital,maintenance,lifetime
//                   (component: unit|mw|power|energy)

#include <filesystem>

#include "gridplan/core/system.hpp"

namespace gridplan::core {

/// Parses a scenario directory. Throws ScenarioError naming the file and row
/// on malformed input; semantic checks are left to validate_system().
SystemData load_system(const std::filesystem::path& dir);

}  // namespace gridplan::core

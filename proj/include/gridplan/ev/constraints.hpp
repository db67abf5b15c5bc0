#pragma once

#include <array>
#include <vector>

#include "gridplan/ev/fleet.hpp"
#include "gridplan/uc/dispatch_block.hpp"

namespace gridplan::ev {

struct EvVars {
    int cluster = -1;
    Regime regime = Regime::Fixed;
    std::vector<lp::Var> charge;     // per block hour; invalid outside the depot window
    std::vector<lp::Var> discharge;  // V2G only
    std::vector<lp::Var> mode;       // V2G only, 1 = discharging
    /// [day][k]: state of charge at the start of hour t_depot + k, k = 0..window hours.
    std::vector<std::vector<lp::Var>> soc;
};

/// Emits one cluster's charging model into a block. Fixed regime adds the
/// cluster profile to the zone's load and returns no variables. Throws when
/// the pinned boundary energies violate the cluster's SoC bounds.
EvVars add_ev_constraints(lp::Model& m, uc::DispatchBlock& b, const EvCluster& cluster, int cluster_index,
                          int year_index, Regime regime, core::EvDischargeConvention convention);

/// Adds a 24-hour daily profile (MW) to a zone's EV load for every day of the block.
void add_fixed_load(uc::DispatchBlock& b, int zone, const std::array<double, 24>& profile);

}  // namespace gridplan::ev

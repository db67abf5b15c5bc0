#pragma once

// Hourly dispatch of one (year, period) block: thermal commitment, renewable
// output, storage, hydro and line flows, plus the zonal balance and the
// block's generation-cost expression.

#include <vector>

#include "gridplan/core/system.hpp"
#include "gridplan/lp/model.hpp"

namespace gridplan::uc {

using lp::LinExpr;
using lp::Var;

/// Capacity seen by a block. Planned constants in UC-only mode; investment
/// expressions when the planning layer links the block to its year.
struct CapacityLinks {
    std::vector<LinExpr> thermal_status;  // IU_u(y)
    std::vector<LinExpr> renewable_mw;    // IC_r(y)
    std::vector<LinExpr> storage_mw;      // IC_s(y)
    std::vector<LinExpr> storage_mwh;     // ICE_s(y)
    std::vector<double> storage_mw_max;   // bound on IC_s(y), used to gate the mode binary
};

[[nodiscard]] CapacityLinks planned_capacity(const core::SystemData& sys, int year_index);

struct ThermalVars {
    std::vector<Var> on, start, stop, p;
};

struct RenewableVars {
    std::vector<Var> curtail;      // invalid where curtailment is impossible
    std::vector<LinExpr> output;   // IC*PF - curtail
};

struct StorageVars {
    std::vector<Var> mode, charge, discharge, soc;  // mode 1 = discharge
};

struct HydroVars {
    std::vector<Var> p;
};

struct LineVars {
    std::vector<Var> fwd, bwd;  // flow = fwd - bwd, both >= 0
};

struct DispatchBlock {
    int year = 0;
    int period = 0;
    int hours = 0;
    std::vector<ThermalVars> thermal;
    std::vector<RenewableVars> renewable;
    std::vector<StorageVars> storage;
    std::vector<HydroVars> hydro;
    std::vector<LineVars> lines;
    /// [zone][t] generation + storage net + hydro + net line inflow.
    std::vector<std::vector<LinExpr>> supply;
    /// [zone][t] EV net charging and fixed charging load, withdrawn with the load.
    std::vector<std::vector<LinExpr>> ev_load;
    int32_t first_var = 0;  // block variables occupy [first_var, end_var)
    int32_t end_var = 0;

    [[nodiscard]] LinExpr flow(int line, int t) const;
};

[[nodiscard]] DispatchBlock begin_block(const lp::Model& model, const core::SystemData& sys, int y, int w);

void add_thermal(lp::Model& m, DispatchBlock& b, const core::SystemData& sys, int u, const LinExpr& status);
void add_renewable(lp::Model& m, DispatchBlock& b, const core::SystemData& sys, int r, const LinExpr& capacity);
void add_storage(lp::Model& m, DispatchBlock& b, const core::SystemData& sys, int s, const LinExpr& power,
                 const LinExpr& energy, double power_max);
void add_hydro(lp::Model& m, DispatchBlock& b, const core::SystemData& sys, int h);
void add_lines(lp::Model& m, DispatchBlock& b, const core::SystemData& sys);

/// All resources of the system with the given capacities.
void add_resources(lp::Model& m, DispatchBlock& b, const core::SystemData& sys, const CapacityLinks& caps);

enum class BalanceMode { Hard, Residual };

/// r_z(y,w,t) = supply - load - EV net charge.
struct BalanceResidual {
    int zone = 0;
    int year = 0;
    int period = 0;
    int hour = 0;
    LinExpr expr;
};

/// Residual expressions for every zone and hour of the block. Hard mode also
/// adds r = 0 rows to the model.
std::vector<BalanceResidual> build_balance(lp::Model& m, const DispatchBlock& b, const core::SystemData& sys,
                                           BalanceMode mode);

/// Fuel, start/stop, wheeling (on |f|) and curtailment cost of the block, in $.
[[nodiscard]] LinExpr generation_cost(const DispatchBlock& b, const core::SystemData& sys);

/// Same terms restricted to policy-zone units and resources plus wheeling on
/// lines touching the policy zone.
[[nodiscard]] LinExpr policy_zone_generation_cost(const DispatchBlock& b, const core::SystemData& sys);

}  // namespace gridplan::uc

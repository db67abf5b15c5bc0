#pragma once

// Multi-year planning model: investment stock variables linked into every
// dispatch block, yearly policy constraints and the discounted objective.

#include <span>
#include <vector>

#include "gridplan/core/system.hpp"
#include "gridplan/ev/constraints.hpp"
#include "gridplan/ev/fleet.hpp"
#include "gridplan/uc/dispatch_block.hpp"

namespace gridplan::plan {

using lp::LinExpr;
using lp::Var;

struct BuildOptions {
    uc::BalanceMode balance = uc::BalanceMode::Hard;
    ev::Regime regime = ev::Regime::V2G;
    bool investment = true;  // false: planned capacities only (UC mode)
    bool policy = true;      // emissions, RPS and reserve-margin rows
};

/// Stock of one asset over the years: capacity[y] is a constant or a variable,
/// build/retire hold the flow variables where they exist.
struct AssetStock {
    std::vector<LinExpr> capacity;
    std::vector<Var> build;
    std::vector<Var> retire;
};

struct InvestmentState {
    std::vector<AssetStock> thermal;         // IU_u(y), IU^b, IU^r
    std::vector<AssetStock> renewable;       // IC_r(y) MW
    std::vector<AssetStock> storage_power;   // IC_s(y) MW
    std::vector<AssetStock> storage_energy;  // ICE_s(y) MWh
    std::vector<Var> variable_credit;        // per year, ELCC of wind+solar (invalid if no surface)
    std::vector<Var> storage_credit;         // per year
};

/// Linear cost pieces per year. The objective is the sum of gen + maint + inv.
struct YearCostExpr {
    LinExpr gen;    // omega_y * sum_w omega_w * C_gen(y,w)
    LinExpr maint;  // omega_y * maintenance of operational stock
    LinExpr inv;    // annualized capital of builds in y, times remaining year weight
    LinExpr ca_gen;
    LinExpr ca_maint;
    LinExpr annual_gen;    // undiscounted, one year
    LinExpr annual_maint;
    LinExpr annual_inv;    // annuities of everything built up to y
};

struct PlanningModel {
    const core::SystemData* sys = nullptr;
    const ev::EvFleet* fleet = nullptr;
    BuildOptions options;
    lp::Model model;
    InvestmentState investment;
    std::vector<uc::DispatchBlock> blocks;           // index = grid.block_index(y, w)
    std::vector<std::vector<ev::EvVars>> ev;         // [block][cluster]
    std::vector<std::vector<std::vector<Var>>> imports;  // [block][line][t], lines touching the policy zone
    std::vector<uc::BalanceResidual> residuals;      // every zone/hour of every block
    std::vector<double> residual_weight;             // omega_y * omega_w per residual
    std::vector<YearCostExpr> costs;
    std::vector<LinExpr> emissions;                  // annual policy-zone tons per year
    std::vector<int> var_block;                      // block of each variable, -1 = investment

    [[nodiscard]] int num_blocks() const { return static_cast<int>(blocks.size()); }
};

PlanningModel build_planning_model(const core::SystemData& sys, const ev::EvFleet& fleet, const BuildOptions& opt);

/// The model with r = 0 rows added for every residual (variable indices unchanged).
lp::Model with_hard_balance(const PlanningModel& pm);

/// Annualized capital of one cost component.
[[nodiscard]] double annualized_capital(const core::CostData& c, double discount_rate);

struct YearLedger {
    int year = 0;
    double gen = 0.0;
    double maint = 0.0;
    double inv = 0.0;
    double ca_gen = 0.0;
    double ca_maint = 0.0;
    double ca_import = 0.0;   // imported MWh valued at the exporting zones' average generation cost
    double annual_gen = 0.0;
    double annual_maint = 0.0;
    double annual_inv = 0.0;
    double emissions = 0.0;
    double ev_energy_mwh = 0.0;  // annual EV charging energy (all clusters)

    [[nodiscard]] double total() const { return gen + maint + inv; }
    [[nodiscard]] double annual_total() const { return annual_gen + annual_maint + annual_inv; }
};

struct CostLedger {
    std::vector<YearLedger> years;
    double objective = 0.0;  // the model objective evaluated at the solution

    [[nodiscard]] double total() const;
    [[nodiscard]] double maintenance() const;
    [[nodiscard]] double investment() const;
    [[nodiscard]] double generation() const;
    [[nodiscard]] double ca_operational() const;
    [[nodiscard]] double ca_total() const;
};

CostLedger evaluate_ledger(const PlanningModel& pm, std::span<const double> values);

/// Installed capacity per year and asset, evaluated at a solution.
struct CapacityRow {
    int year = 0;
    std::string resource;
    std::string kind;  // thermal_units | mw | mwh
    double value = 0.0;
    double built = 0.0;
    double retired = 0.0;
};

std::vector<CapacityRow> installed_capacity(const PlanningModel& pm, std::span<const double> values);

}  // namespace gridplan::plan

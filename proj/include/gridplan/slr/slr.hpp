#pragma once

// Surrogate Lagrangian relaxation of the zonal balance rows, the monolithic
// oracle, and binary-fixing primal recovery.
//
// Sign convention: residuals are r = supply - load - EV net charge, the
// relaxed objective is O(x) - sum_i W_i*L_i*r_i(x) + c * sum_i W_i*|r_i(x)|
// with W_i = omega_y * omega_w, so L_i reads as an energy price in $/MWh and
// the update is L' = L - s*R (excess generation lowers the price).

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "gridplan/lp/backend.hpp"
#include "gridplan/plan/planning_model.hpp"

namespace gridplan::slr {

struct PlanSolution {
    lp::SolveStatus status = lp::SolveStatus::Error;
    std::vector<double> values;
    double objective = 0.0;
    double bound = 0.0;  // best proven lower bound available to the method
    double gap = 0.0;
    double seconds = 0.0;
    double max_violation = 0.0;  // audit of every row and bound of the hard model
    int fixed_binaries = 0;
    int free_binaries = 0;
    int retries = 0;
    std::string diagnostic;

    [[nodiscard]] bool ok() const { return !values.empty(); }
};

/// Solves the hard-balance model directly. On infeasibility the diagnostic
/// names the first constraint family of an irreducible family set.
PlanSolution solve_monolithic(const plan::PlanningModel& pm, lp::SolverBackend& backend,
                              const lp::SolveOptions& options);

/// Constraint families whose joint presence makes `model` infeasible,
/// reduced by deletion filtering (each remaining family is necessary).
std::vector<std::string> infeasible_families(const lp::Model& model, lp::SolverBackend& backend,
                                             const lp::SolveOptions& options);

/// Balance residual of every zone and hour at an assignment.
std::vector<double> residual_vector(const plan::PlanningModel& pm, std::span<const double> x);

/// Diminishing step: s_k = s0 * alpha^m_k / ||R||, m_k = floor(log_{1/alpha}(1 + k/K)).
struct StepRule {
    double s0 = 20.0;
    double alpha = 0.98;
    double K = 10.0;
    [[nodiscard]] int level(int k) const;
    [[nodiscard]] double step(int k, double residual_norm) const;
};

/// L' = L - s*R.
std::vector<double> update_multipliers(const std::vector<double>& lambda, const std::vector<double>& residual,
                                       double step);

struct DualIterate {
    int k = 0;
    double dual_value = 0.0;     // surrogate value at the incumbent
    double max_residual = 0.0;   // MW
    double l2_residual = 0.0;
    double step = 0.0;
    double seconds = 0.0;        // elapsed since start
    int subset_blocks = 0;
    double penalty = 0.0;
    bool accepted = true;        // surrogate condition held (strict decrease)
    bool degraded = false;       // backend timeout/failure, incumbent kept
    double best_max_residual = 0.0;
    double max_residual_frac = 0.0;  // worst |r| / zone peak
    double lagrangian_bound = 0.0;   // NaN when not computed this iteration
};

struct SlrConfig {
    StepRule step;
    double penalty0 = 1.0;        // $/MWh on |r|; 0 gives the pure linear dual
    double penalty_growth = 1.1;
    double penalty_max = 1e4;
    int max_iterations = 500;
    double tolerance_frac = 0.001;  // of each zone's peak load
    int stability_window = 10;
    double fix_fraction = 0.95;
    int max_recovery_retries = 6;
    int bound_every = 50;           // Lagrangian bound solves (0 = only at the end)
    bool compute_bound = true;
    double time_limit_s = 1e9;
    lp::SolveOptions sub_options{1e-4, 120.0, 1, 0, false, false};
    lp::SolveOptions bound_options{1e-3, 60.0, 1, 0, false, false};
    lp::SolveOptions recovery_options{1e-4, 600.0, 1, 0, false, false};
    std::vector<double> warm_multipliers;
    std::function<void(const DualIterate&)> on_iterate;
};

struct SlrResult {
    std::vector<double> x;        // dual incumbent
    std::vector<double> multipliers;
    std::vector<DualIterate> log;
    std::vector<int> stability;   // consecutive unchanged iterations per variable (binaries only)
    bool converged = false;
    double best_bound = 0.0;      // best Lagrangian lower bound
    double seconds = 0.0;
};

/// Dual phase on a residual-mode planning model.
SlrResult dual_phase(const plan::PlanningModel& pm, lp::SolverBackend& backend, const SlrConfig& cfg);

/// Hard-balance re-solve with the most stable binaries fixed at the dual
/// incumbent; unfixes least-stable binaries on infeasibility.
PlanSolution recover_primal(const plan::PlanningModel& pm, const std::vector<double>& incumbent,
                            const std::vector<int>& stability, lp::SolverBackend& backend, const SlrConfig& cfg,
                            double best_bound);

struct SlrSolve {
    SlrResult dual;
    PlanSolution primal;
};

SlrSolve solve_slr(const plan::PlanningModel& pm, lp::SolverBackend& backend, const SlrConfig& cfg);

void write_iterations(const std::filesystem::path& file, const std::vector<DualIterate>& log);

}  // namespace gridplan::slr

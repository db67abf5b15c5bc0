#pragma once

// Solver backend contract: load a Model (variables, linear rows, objective),
// honour bound fixings already applied to the model, solve, and report
// status, values and objective.

#include <memory>
#include <string>
#include <vector>

#include "gridplan/lp/model.hpp"

namespace gridplan::lp {

enum class SolveStatus { Optimal, FeasibleGap, Infeasible, Timeout, Error };

[[nodiscard]] const char* to_string(SolveStatus s);

struct SolveOptions {
    double mip_rel_gap = 1e-4;
    double time_limit_s = 600.0;
    int threads = 1;
    int random_seed = 0;
    bool relax_integrality = false;
    bool verbose = false;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Error;
    std::vector<double> values;
    double objective = 0.0;
    /// Best proven lower bound (equals objective for LPs solved to optimality).
    double bound = 0.0;
    double gap = 0.0;
    double seconds = 0.0;

    [[nodiscard]] bool has_solution() const {
        return status == SolveStatus::Optimal || status == SolveStatus::FeasibleGap ||
               (status == SolveStatus::Timeout && !values.empty());
    }
};

struct Capabilities {
    bool lp = true;
    bool milp = true;
};

class SolverBackend {
public:
    virtual ~SolverBackend() = default;
    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual Capabilities capabilities() const = 0;
    virtual SolveResult solve(const Model& model, const SolveOptions& options) = 0;
};

/// Creates the backend named by `name`, or by GRIDPLAN_BACKEND when empty.
/// Only "highs" is compiled in.
std::unique_ptr<SolverBackend> make_backend(const std::string& name = {});

/// Thread count from GRIDPLAN_THREADS (default 1).
int default_threads();

/// A model restricted to a subset of free variables; every other variable is
/// substituted by its incumbent value.
struct ReducedModel {
    Model model;
    std::vector<int32_t> to_full;    // reduced index -> full index
    std::vector<int32_t> to_reduced; // full index -> reduced index or -1
    double objective_offset = 0.0;   // contribution of fixed variables

    /// Scatter reduced values into a copy of the full incumbent.
    [[nodiscard]] std::vector<double> expand(const std::vector<double>& reduced,
                                             const std::vector<double>& incumbent) const;
};

/// Builds the restriction of `full` to variables with free[j] != 0. Rows that
/// only involve fixed variables are dropped.
ReducedModel restrict_model(const Model& full, const std::vector<uint8_t>& free,
                            const std::vector<double>& incumbent);

}  // namespace gridplan::lp

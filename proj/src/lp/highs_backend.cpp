#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "Highs.h"
#include "gridplan/lp/backend.hpp"

namespace gridplan::lp {

namespace {

class HighsBackend final : public SolverBackend {
public:
    [[nodiscard]] std::string name() const override { return "highs"; }
    [[nodiscard]] Capabilities capabilities() const override { return {true, true}; }

    SolveResult solve(const Model& model, const SolveOptions& options) override {
        const auto start = std::chrono::steady_clock::now();
        Highs highs;
        highs.setOptionValue("output_flag", options.verbose);
        highs.setOptionValue("mip_rel_gap", options.mip_rel_gap);
        highs.setOptionValue("time_limit", options.time_limit_s);
        highs.setOptionValue("threads", static_cast<HighsInt>(options.threads));
        highs.setOptionValue("random_seed", static_cast<HighsInt>(options.random_seed));
        highs.setOptionValue("primal_feasibility_tolerance", 1e-8);
        highs.setOptionValue("mip_feasibility_tolerance", 1e-8);

        HighsLp lp;
        const auto n = static_cast<HighsInt>(model.num_vars());
        const auto m = static_cast<HighsInt>(model.num_rows());
        lp.num_col_ = n;
        lp.num_row_ = m;
        lp.sense_ = ObjSense::kMinimize;
        lp.offset_ = model.objective().constant();
        lp.col_cost_.assign(static_cast<size_t>(n), 0.0);
        for (const auto& [idx, coef] : model.objective().terms()) lp.col_cost_[static_cast<size_t>(idx)] += coef;
        lp.col_lower_.resize(static_cast<size_t>(n));
        lp.col_upper_.resize(static_cast<size_t>(n));
        bool has_int = false;
        if (!options.relax_integrality) lp.integrality_.assign(static_cast<size_t>(n), HighsVarType::kContinuous);
        for (HighsInt j = 0; j < n; ++j) {
            const auto& v = model.vars()[static_cast<size_t>(j)];
            lp.col_lower_[static_cast<size_t>(j)] = std::isinf(v.lb) ? -kHighsInf : v.lb;
            lp.col_upper_[static_cast<size_t>(j)] = std::isinf(v.ub) ? kHighsInf : v.ub;
            if (v.type == VarType::Binary && !options.relax_integrality) {
                lp.integrality_[static_cast<size_t>(j)] = HighsVarType::kInteger;
                has_int = true;
            }
        }
        if (!has_int) lp.integrality_.clear();
        lp.row_lower_.resize(static_cast<size_t>(m));
        lp.row_upper_.resize(static_cast<size_t>(m));
        lp.a_matrix_.format_ = MatrixFormat::kRowwise;
        lp.a_matrix_.num_col_ = n;
        lp.a_matrix_.num_row_ = m;
        lp.a_matrix_.start_.assign(1, 0);
        lp.a_matrix_.start_.reserve(static_cast<size_t>(m) + 1);
        for (HighsInt i = 0; i < m; ++i) {
            const auto& r = model.rows()[static_cast<size_t>(i)];
            lp.row_lower_[static_cast<size_t>(i)] = std::isinf(r.lb) ? -kHighsInf : r.lb;
            lp.row_upper_[static_cast<size_t>(i)] = std::isinf(r.ub) ? kHighsInf : r.ub;
            for (const auto& [idx, coef] : r.terms) {
                lp.a_matrix_.index_.push_back(idx);
                lp.a_matrix_.value_.push_back(coef);
            }
            lp.a_matrix_.start_.push_back(static_cast<HighsInt>(lp.a_matrix_.index_.size()));
        }

        SolveResult result;
        if (highs.passModel(std::move(lp)) == HighsStatus::kError) {
            result.status = SolveStatus::Error;
            return result;
        }
        const HighsStatus run_status = highs.run();
        const HighsModelStatus ms = highs.getModelStatus();
        const HighsInfo& info = highs.getInfo();
        result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        const bool have_primal = info.primal_solution_status == kSolutionStatusFeasible;
        if (have_primal) {
            result.values = highs.getSolution().col_value;
            result.objective = info.objective_function_value;
        }
        if (has_int) {
            result.bound = info.mip_dual_bound;
            result.gap = info.mip_gap;
        } else {
            result.bound = result.objective;
            result.gap = 0.0;
        }

        switch (ms) {
            case HighsModelStatus::kOptimal:
                result.status = SolveStatus::Optimal;
                if (!has_int) result.bound = result.objective;
                break;
            case HighsModelStatus::kInfeasible:
            case HighsModelStatus::kUnboundedOrInfeasible:
                result.status = SolveStatus::Infeasible;
                break;
            case HighsModelStatus::kTimeLimit:
            case HighsModelStatus::kIterationLimit:
            case HighsModelStatus::kSolutionLimit:
            case HighsModelStatus::kInterrupt:
                result.status = have_primal ? SolveStatus::FeasibleGap : SolveStatus::Timeout;
                if (ms == HighsModelStatus::kTimeLimit) result.status = SolveStatus::Timeout;
                break;
            default:
                result.status = SolveStatus::Error;
                break;
        }
        if (run_status == HighsStatus::kError && result.status == SolveStatus::Optimal) {
            result.status = SolveStatus::Error;
        }
        return result;
    }
};

}  // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::FeasibleGap: return "feasible-gap";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Timeout: return "timeout";
        case SolveStatus::Error: return "error";
    }
    return "error";
}

std::unique_ptr<SolverBackend> make_backend(const std::string& name) {
    std::string which = name;
    if (which.empty()) {
        const char* env = std::getenv("GRIDPLAN_BACKEND");
        which = env ? env : "highs";
    }
    if (which == "highs") return std::make_unique<HighsBackend>();
    throw std::invalid_argument("unknown solver backend '" + which + "' (available: highs)");
}

int default_threads() {
    const char* env = std::getenv("GRIDPLAN_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
}

}  // namespace gridplan::lp

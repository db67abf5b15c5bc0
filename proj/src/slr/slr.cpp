#include "gridplan/slr/slr.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gridplan/core/csv.hpp"

namespace gridplan::slr {

using lp::LinExpr;
using lp::Var;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Residual-mode model plus one pair of slacks per residual: r_i(x) = sp_i - sm_i.
struct DualModel {
    lp::Model m;
    LinExpr base_objective;
    std::vector<Var> sp, sm;
    std::vector<int> var_block;
};

DualModel make_dual_model(const plan::PlanningModel& pm) {
    DualModel d;
    d.m = pm.model;
    d.base_objective = pm.model.objective();
    d.var_block = pm.var_block;
    const auto& g = pm.sys->grid;
    for (const auto& r : pm.residuals) {
        Var p = d.m.add_continuous(0.0, lp::kInf, {});
        Var n = d.m.add_continuous(0.0, lp::kInf, {});
        LinExpr e = r.expr;
        e.add(p, -1.0).add(n, 1.0);
        d.m.add_eq(e, 0.0, "residual");
        d.sp.push_back(p);
        d.sm.push_back(n);
        const int b = g.block_index(r.year, r.period);
        d.var_block.push_back(b);
        d.var_block.push_back(b);
    }
    return d;
}

void set_prices(DualModel& d, const std::vector<double>& lambda, const std::vector<double>& weight, double c) {
    LinExpr obj = d.base_objective;
    for (size_t i = 0; i < d.sp.size(); ++i) {
        obj.add(d.sp[i], weight[i] * (c - lambda[i]));
        obj.add(d.sm[i], weight[i] * (c + lambda[i]));
    }
    d.m.objective() = std::move(obj);
}

// Keeps the slack pair consistent with the residuals of an assignment.
void sync_slacks(const DualModel& d, const std::vector<double>& r, std::vector<double>& x) {
    for (size_t i = 0; i < r.size(); ++i) {
        x[static_cast<size_t>(d.sp[i].index)] = std::max(0.0, r[i]);
        x[static_cast<size_t>(d.sm[i].index)] = std::max(0.0, -r[i]);
    }
}

double surrogate_value(const plan::PlanningModel& pm, std::span<const double> x, const std::vector<double>& r,
                       const std::vector<double>& lambda, double c) {
    double q = pm.model.objective().evaluate(x);
    for (size_t i = 0; i < r.size(); ++i) {
        q += pm.residual_weight[i] * (-lambda[i] * r[i] + c * std::abs(r[i]));
    }
    return q;
}

std::vector<double> zone_tolerance(const plan::PlanningModel& pm, double frac) {
    std::vector<double> tol;
    for (size_t z = 0; z < pm.sys->zones.size(); ++z) {
        tol.push_back(std::max(1e-6, frac * pm.sys->peak_load(static_cast<int>(z))));
    }
    return tol;
}

lp::Model fix_binaries(const lp::Model& base, const std::vector<int32_t>& which, const std::vector<double>& x) {
    lp::Model m = base;
    for (int32_t j : which) {
        auto& v = m.vars()[static_cast<size_t>(j)];
        const double val = std::round(x[static_cast<size_t>(j)]);
        v.lb = v.ub = std::clamp(val, 0.0, 1.0);
    }
    return m;
}

}  // namespace

std::vector<double> residual_vector(const plan::PlanningModel& pm, std::span<const double> x) {
    std::vector<double> r;
    r.reserve(pm.residuals.size());
    for (const auto& res : pm.residuals) {
        const double v = res.expr.evaluate(x);
        if (!std::isfinite(v)) throw std::runtime_error("non-finite balance residual");
        r.push_back(v);
    }
    return r;
}

int StepRule::level(int k) const { return static_cast<int>(std::floor(std::log(1.0 + k / K) / std::log(1.0 / alpha))); }

double StepRule::step(int k, double residual_norm) const {
    if (residual_norm <= 0.0) return 0.0;
    return s0 * std::pow(alpha, level(k)) / residual_norm;
}

std::vector<double> update_multipliers(const std::vector<double>& lambda, const std::vector<double>& residual,
                                       double step) {
    if (lambda.size() != residual.size()) throw std::invalid_argument("multiplier/residual size mismatch");
    std::vector<double> out(lambda.size());
    for (size_t i = 0; i < lambda.size(); ++i) {
        if (!std::isfinite(residual[i])) throw std::runtime_error("non-finite residual in multiplier update");
        out[i] = lambda[i] - step * residual[i];
    }
    return out;
}

std::vector<std::string> infeasible_families(const lp::Model& model, lp::SolverBackend& backend,
                                             const lp::SolveOptions& options) {
    std::set<uint16_t> present;
    for (const auto& r : model.rows()) present.insert(r.family);
    std::vector<uint16_t> keep(present.begin(), present.end());
    auto infeasible_with = [&](const std::vector<uint16_t>& fams) {
        lp::Model probe;
        for (const auto& v : model.vars()) probe.add_var(v.lb, v.ub, v.type, {});
        for (const auto& r : model.rows()) {
            if (std::find(fams.begin(), fams.end(), r.family) == fams.end()) continue;
            LinExpr e;
            for (const auto& [j, a] : r.terms) e.add(Var{j}, a);
            probe.add_range(e, r.lb, r.ub, model.families()[r.family]);
        }
        return backend.solve(probe, options).status == lp::SolveStatus::Infeasible;
    };
    for (size_t k = 0; k < keep.size();) {
        std::vector<uint16_t> without = keep;
        without.erase(without.begin() + static_cast<std::ptrdiff_t>(k));
        if (infeasible_with(without)) {
            keep = std::move(without);
        } else {
            ++k;
        }
    }
    std::vector<std::string> out;
    for (uint16_t f : keep) out.push_back(model.families()[f]);
    return out;
}

PlanSolution solve_monolithic(const plan::PlanningModel& pm, lp::SolverBackend& backend,
                              const lp::SolveOptions& options) {
    const lp::Model hard = pm.options.balance == uc::BalanceMode::Hard ? pm.model : plan::with_hard_balance(pm);
    PlanSolution sol;
    auto res = backend.solve(hard, options);
    sol.status = res.status;
    sol.seconds = res.seconds;
    sol.bound = res.bound;
    sol.gap = res.gap;
    sol.free_binaries = hard.count_binaries();
    if (res.has_solution()) {
        sol.values = std::move(res.values);
        sol.objective = res.objective;
        sol.max_violation = hard.max_violation(sol.values);
    } else if (res.status == lp::SolveStatus::Infeasible) {
        const auto fams = infeasible_families(hard, backend, options);
        sol.diagnostic = "model infeasible";
        if (!fams.empty()) {
            sol.diagnostic += "; first violated constraint family: " + fams.front() + " (irreducible set:";
            for (const auto& f : fams) sol.diagnostic += " " + f;
            sol.diagnostic += ")";
        }
    } else {
        sol.diagnostic = std::string("backend returned ") + lp::to_string(res.status);
    }
    return sol;
}

SlrResult dual_phase(const plan::PlanningModel& pm, lp::SolverBackend& backend, const SlrConfig& cfg) {
    if (pm.options.balance != uc::BalanceMode::Residual) {
        throw std::invalid_argument("dual_phase needs a residual-mode planning model");
    }
    const auto t0 = Clock::now();
    DualModel d = make_dual_model(pm);
    const size_t nres = pm.residuals.size();
    const int nb = pm.num_blocks();
    const auto tol = zone_tolerance(pm, cfg.tolerance_frac);
    std::vector<double> peak;
    for (size_t z = 0; z < pm.sys->zones.size(); ++z) peak.push_back(pm.sys->peak_load(static_cast<int>(z)));

    SlrResult out;
    std::vector<double> lambda = cfg.warm_multipliers;
    if (lambda.size() != nres) lambda.assign(nres, 0.0);
    double c = cfg.penalty0;

    auto check = [&](const std::vector<double>& r, double& max_abs, double& l2, double& frac) {
        max_abs = 0.0;
        l2 = 0.0;
        frac = 0.0;
        bool ok = true;
        for (size_t i = 0; i < r.size(); ++i) {
            const int z = pm.residuals[i].zone;
            max_abs = std::max(max_abs, std::abs(r[i]));
            l2 += r[i] * r[i];
            frac = std::max(frac, std::abs(r[i]) / std::max(1e-9, peak[static_cast<size_t>(z)]));
            if (std::abs(r[i]) > tol[static_cast<size_t>(z)]) ok = false;
        }
        l2 = std::sqrt(l2);
        return ok;
    };

    auto lagrangian_bound = [&]() {
        set_prices(d, lambda, pm.residual_weight, 0.0);
        auto res = backend.solve(d.m, cfg.bound_options);
        if (res.status == lp::SolveStatus::Infeasible || res.status == lp::SolveStatus::Error) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        return res.bound;
    };

    // Iteration 0: every block at once (the classical Lagrangian step).
    set_prices(d, lambda, pm.residual_weight, c);
    auto first = backend.solve(d.m, cfg.sub_options);
    if (!first.has_solution()) {
        throw std::runtime_error(std::string("initial relaxed solve failed: ") + lp::to_string(first.status));
    }
    std::vector<double> x = std::move(first.values);
    auto r = residual_vector(pm, x);
    sync_slacks(d, r, x);

    const auto nvar = static_cast<size_t>(pm.model.num_vars());
    out.stability.assign(nvar, 0);
    std::vector<int32_t> binaries;
    for (size_t j = 0; j < nvar; ++j) {
        if (pm.model.vars()[j].type == lp::VarType::Binary) binaries.push_back(static_cast<int32_t>(j));
    }

    double best = std::numeric_limits<double>::infinity();
    out.best_bound = -std::numeric_limits<double>::infinity();
    int next_block = 0;
    int prev_used = nb;
    bool prev_accepted = true, prev_degraded = false;

    for (int k = 0;; ++k) {
        DualIterate it;
        it.k = k;
        it.penalty = c;
        it.subset_blocks = prev_used;
        it.accepted = prev_accepted;
        it.degraded = prev_degraded;
        it.lagrangian_bound = std::numeric_limits<double>::quiet_NaN();
        const bool converged = check(r, it.max_residual, it.l2_residual, it.max_residual_frac);
        best = std::min(best, it.max_residual);
        it.best_max_residual = best;
        it.dual_value = surrogate_value(pm, x, r, lambda, c);

        const bool last = converged || k >= cfg.max_iterations || since(t0) > cfg.time_limit_s;
        if (cfg.compute_bound && (last || (cfg.bound_every > 0 && k > 0 && k % cfg.bound_every == 0))) {
            it.lagrangian_bound = lagrangian_bound();
            if (std::isfinite(it.lagrangian_bound)) out.best_bound = std::max(out.best_bound, it.lagrangian_bound);
        }
        if (last) {
            it.seconds = since(t0);
            out.log.push_back(it);
            if (cfg.on_iterate) cfg.on_iterate(it);
            out.converged = converged;
            break;
        }

        // Multiplier and penalty update from the current residuals.
        it.step = cfg.step.step(k, it.l2_residual);
        lambda = update_multipliers(lambda, r, it.step);
        c = std::min(cfg.penalty_max, c * cfg.penalty_growth);
        set_prices(d, lambda, pm.residual_weight, c);
        it.seconds = since(t0);
        out.log.push_back(it);
        if (cfg.on_iterate) cfg.on_iterate(it);

        // Partial solve for the next iterate: one dispatch block plus the
        // investment block, enlarged while the surrogate condition fails.
        const double q_old = surrogate_value(pm, x, r, lambda, c);
        std::vector<uint8_t> free(d.var_block.size(), 0);
        std::vector<double> x_new;
        int used = 0;
        bool accepted = false, degraded = false;
        for (int add = 0; add < nb; ++add) {
            const int blk = (next_block + add) % nb;
            for (size_t j = 0; j < free.size(); ++j) {
                if (d.var_block[j] == -1 || d.var_block[j] == blk) free[j] = 1;
            }
            ++used;
            auto red = lp::restrict_model(d.m, free, x);
            auto res = backend.solve(red.model, cfg.sub_options);
            if (!res.has_solution()) {
                degraded = true;
                continue;
            }
            auto cand = red.expand(res.values, x);
            auto rc = residual_vector(pm, cand);
            sync_slacks(d, rc, cand);
            const double q_new = surrogate_value(pm, cand, rc, lambda, c);
            if (x_new.empty() || q_new <= surrogate_value(pm, x_new, residual_vector(pm, x_new), lambda, c)) {
                x_new = std::move(cand);
            }
            if (q_new < q_old - 1e-9 * std::max(1.0, std::abs(q_old))) {
                accepted = true;
                break;
            }
        }
        next_block = (next_block + used) % nb;
        if (!x_new.empty()) {
            auto rn = residual_vector(pm, x_new);
            if (surrogate_value(pm, x_new, rn, lambda, c) <= q_old + 1e-9 * std::max(1.0, std::abs(q_old))) {
                for (int32_t j : binaries) {
                    const auto uj = static_cast<size_t>(j);
                    if (std::round(x_new[uj]) == std::round(x[uj])) {
                        ++out.stability[uj];
                    } else {
                        out.stability[uj] = 0;
                    }
                }
                x = std::move(x_new);
                r = std::move(rn);
            }
        }
        prev_used = used;
        prev_accepted = accepted;
        prev_degraded = degraded && !accepted;
    }
    out.x = std::move(x);
    out.x.resize(nvar);
    out.multipliers = std::move(lambda);
    out.seconds = since(t0);
    return out;
}

PlanSolution recover_primal(const plan::PlanningModel& pm, const std::vector<double>& incumbent,
                            const std::vector<int>& stability, lp::SolverBackend& backend, const SlrConfig& cfg,
                            double best_bound) {
    const lp::Model hard = plan::with_hard_balance(pm);
    std::vector<int32_t> binaries;
    for (int32_t j = 0; j < hard.num_vars(); ++j) {
        if (hard.vars()[static_cast<size_t>(j)].type == lp::VarType::Binary) binaries.push_back(j);
    }
    // Most stable first; ties by index for determinism.
    std::vector<int32_t> stable;
    for (int32_t j : binaries) {
        if (stability[static_cast<size_t>(j)] >= cfg.stability_window) stable.push_back(j);
    }
    std::stable_sort(stable.begin(), stable.end(), [&](int32_t a, int32_t b) {
        return stability[static_cast<size_t>(a)] > stability[static_cast<size_t>(b)];
    });
    size_t nfix = std::min(stable.size(), static_cast<size_t>(std::floor(cfg.fix_fraction * binaries.size())));

    PlanSolution sol;
    const auto t0 = Clock::now();
    for (int attempt = 0; attempt <= cfg.max_recovery_retries; ++attempt) {
        if (attempt == cfg.max_recovery_retries) nfix = 0;
        std::vector<int32_t> fixed(stable.begin(), stable.begin() + static_cast<std::ptrdiff_t>(nfix));
        auto model = fix_binaries(hard, fixed, incumbent);
        auto res = backend.solve(model, cfg.recovery_options);
        sol.retries = attempt;
        sol.status = res.status;
        if (res.has_solution()) {
            sol.values = std::move(res.values);
            sol.objective = res.objective;
            sol.fixed_binaries = static_cast<int>(nfix);
            sol.free_binaries = static_cast<int>(binaries.size() - nfix);
            sol.max_violation = hard.max_violation(sol.values);
            break;
        }
        if (res.status != lp::SolveStatus::Infeasible && res.status != lp::SolveStatus::Timeout) break;
        if (nfix == 0) break;
        nfix /= 2;  // release the least stable half of the fixings
    }
    sol.seconds = since(t0);
    if (!sol.ok()) {
        sol.diagnostic = "primal recovery failed after " + std::to_string(sol.retries) + " retries";
        return sol;
    }
    sol.bound = best_bound;
    sol.gap = std::isfinite(best_bound) ? (sol.objective - best_bound) / std::max(1.0, std::abs(sol.objective)) : 0.0;
    return sol;
}

SlrSolve solve_slr(const plan::PlanningModel& pm, lp::SolverBackend& backend, const SlrConfig& cfg) {
    SlrSolve s;
    s.dual = dual_phase(pm, backend, cfg);
    s.primal = recover_primal(pm, s.dual.x, s.dual.stability, backend, cfg, s.dual.best_bound);
    s.primal.seconds += s.dual.seconds;
    return s;
}

void write_iterations(const std::filesystem::path& file, const std::vector<DualIterate>& log) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    using core::csv_number;
    auto num = [](double v) { return std::isfinite(v) ? csv_number(v) : std::string{}; };
    out << "k,dual_value,max_residual,l2_residual,step,seconds,subset_blocks,penalty,accepted,best_max_residual,"
           "max_residual_frac,lagrangian_bound\n";
    for (const auto& it : log) {
        out << it.k << ',' << num(it.dual_value) << ',' << num(it.max_residual) << ',' << num(it.l2_residual) << ','
            << num(it.step) << ',' << num(it.seconds) << ',' << it.subset_blocks << ',' << num(it.penalty) << ','
            << (it.accepted ? 1 : 0) << ',' << num(it.best_max_residual) << ',' << num(it.max_residual_frac) << ','
            << num(it.lagrangian_bound) << '\n';
    }
}

}  // namespace gridplan::slr

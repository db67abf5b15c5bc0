#include <cmath>
#include <stdexcept>

#include "gridplan/lp/backend.hpp"

namespace gridplan::lp {

std::vector<double> ReducedModel::expand(const std::vector<double>& reduced,
                                         const std::vector<double>& incumbent) const {
    std::vector<double> full = incumbent;
    for (size_t k = 0; k < to_full.size(); ++k) full[static_cast<size_t>(to_full[k])] = reduced[k];
    return full;
}

ReducedModel restrict_model(const Model& full, const std::vector<uint8_t>& free,
                            const std::vector<double>& incumbent) {
    const auto n = static_cast<size_t>(full.num_vars());
    if (free.size() != n || incumbent.size() != n) {
        throw std::invalid_argument("restrict_model: mask/incumbent size mismatch");
    }
    ReducedModel out;
    out.to_reduced.assign(n, -1);
    for (size_t j = 0; j < n; ++j) {
        if (!free[j]) continue;
        const auto& v = full.vars()[j];
        out.to_reduced[j] = out.model.add_var(v.lb, v.ub, v.type, v.name).index;
        out.to_full.push_back(static_cast<int32_t>(j));
    }
    for (const auto& fam : full.families()) (void)out.model.family_id(fam);

    for (const auto& r : full.rows()) {
        LinExpr e;
        bool any_free = false;
        for (const auto& [idx, coef] : r.terms) {
            const int32_t red = out.to_reduced[static_cast<size_t>(idx)];
            if (red >= 0) {
                e.add(Var{red}, coef);
                any_free = true;
            } else {
                e.add_constant(coef * incumbent[static_cast<size_t>(idx)]);
            }
        }
        if (!any_free) continue;
        out.model.add_range(e, r.lb, r.ub, full.families()[r.family], r.name);
    }

    LinExpr obj;
    double offset = full.objective().constant();
    for (const auto& [idx, coef] : full.objective().terms()) {
        const int32_t red = out.to_reduced[static_cast<size_t>(idx)];
        if (red >= 0) {
            obj.add(Var{red}, coef);
        } else {
            offset += coef * incumbent[static_cast<size_t>(idx)];
        }
    }
    out.objective_offset = offset;
    obj.add_constant(offset);
    out.model.add_objective(obj);
    return out;
}

}  // namespace gridplan::lp

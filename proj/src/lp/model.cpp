#include "gridplan/lp/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gridplan::lp {

LinExpr& LinExpr::add(const LinExpr& other, double scale) {
    if (scale == 0.0) return *this;
    terms_.reserve(terms_.size() + other.terms_.size());
    for (const auto& [idx, coef] : other.terms_) terms_.emplace_back(idx, coef * scale);
    constant_ += other.constant_ * scale;
    return *this;
}

LinExpr& LinExpr::operator*=(double s) {
    for (auto& t : terms_) t.second *= s;
    constant_ *= s;
    return *this;
}

bool LinExpr::is_constant() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second == 0.0; });
}

void LinExpr::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int32_t, double>> merged;
    merged.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!merged.empty() && merged.back().first == t.first) {
            merged.back().second += t.second;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const auto& t) { return t.second == 0.0; });
    terms_ = std::move(merged);
}

double LinExpr::evaluate(std::span<const double> values) const {
    double v = constant_;
    for (const auto& [idx, coef] : terms_) v += coef * values[static_cast<size_t>(idx)];
    return v;
}

LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
LinExpr operator*(double s, LinExpr e) { return e *= s; }
LinExpr operator*(LinExpr e, double s) { return e *= s; }

Var Model::add_var(double lb, double ub, VarType type, std::string name) {
    if (lb > ub) throw std::invalid_argument("variable '" + name + "' has lb > ub");
    vars_.push_back(VarInfo{lb, ub, type, std::move(name)});
    return Var{static_cast<int32_t>(vars_.size() - 1)};
}

uint16_t Model::family_id(const std::string& family) {
    auto it = std::find(families_.begin(), families_.end(), family);
    if (it != families_.end()) return static_cast<uint16_t>(it - families_.begin());
    families_.push_back(family);
    return static_cast<uint16_t>(families_.size() - 1);
}

ConstraintRef Model::add_range(const LinExpr& expr, double lb, double ub, const std::string& family,
                               std::string name) {
    LinExpr e = expr;
    e.normalize();
    const double c = e.constant();
    if (e.terms().empty()) {
        constexpr double tol = 1e-7;
        if (c < lb - tol * std::max(1.0, std::abs(lb)) || c > ub + tol * std::max(1.0, std::abs(ub))) {
            throw std::invalid_argument("constant row in family '" + family + "' (" + name +
                                        ") is infeasible: " + std::to_string(c) + " not in [" +
                                        std::to_string(lb) + ", " + std::to_string(ub) + "]");
        }
        return {};
    }
    Row row;
    row.terms = e.terms();
    row.lb = std::isfinite(lb) ? lb - c : lb;
    row.ub = std::isfinite(ub) ? ub - c : ub;
    row.name = std::move(name);
    row.family = family_id(family);
    rows_.push_back(std::move(row));
    return ConstraintRef{static_cast<int32_t>(rows_.size() - 1)};
}

int Model::count_binaries() const {
    return static_cast<int>(std::count_if(vars_.begin(), vars_.end(),
                                          [](const VarInfo& v) { return v.type == VarType::Binary; }));
}

double Model::max_violation(std::span<const double> values, std::string* worst) const {
    double maxv = 0.0;
    auto note = [&](double v, auto&& what) {
        if (v > maxv) {
            maxv = v;
            if (worst) *worst = what();
        }
    };
    for (size_t j = 0; j < vars_.size(); ++j) {
        const double x = values[j];
        note(vars_[j].lb - x, [&] { return "lb:" + vars_[j].name; });
        note(x - vars_[j].ub, [&] { return "ub:" + vars_[j].name; });
        if (vars_[j].type == VarType::Binary) note(std::abs(x - std::round(x)), [&] { return "int:" + vars_[j].name; });
    }
    for (const auto& r : rows_) {
        double a = 0.0;
        for (const auto& [idx, coef] : r.terms) a += coef * values[static_cast<size_t>(idx)];
        auto label = [&] { return families_[r.family] + ":" + r.name; };
        if (std::isfinite(r.lb)) note(r.lb - a, label);
        if (std::isfinite(r.ub)) note(a - r.ub, label);
    }
    return maxv;
}

}  // namespace gridplan::lp

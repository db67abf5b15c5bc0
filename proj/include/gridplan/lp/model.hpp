#pragma once

// Backend-neutral linear/mixed-integer model: variables with bounds and
// integrality, linear rows tagged by constraint family, and a linear objective.

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gridplan::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Var {
    int32_t index = -1;
    [[nodiscard]] bool valid() const { return index >= 0; }
    friend bool operator==(Var, Var) = default;
};

enum class VarType : uint8_t { Continuous, Binary };

/// Sparse linear expression sum(coef * x) + constant. Duplicate entries are
/// allowed until normalize() merges them.
class LinExpr {
public:
    LinExpr() = default;
    LinExpr(double constant) : constant_(constant) {}  // NOLINT(implicit)
    LinExpr(Var v, double coef = 1.0) { add(v, coef); }  // NOLINT(implicit)

    LinExpr& add(Var v, double coef) {
        if (coef != 0.0) terms_.emplace_back(v.index, coef);
        return *this;
    }
    LinExpr& add(const LinExpr& other, double scale = 1.0);
    LinExpr& add_constant(double c) {
        constant_ += c;
        return *this;
    }

    LinExpr& operator+=(const LinExpr& o) { return add(o, 1.0); }
    LinExpr& operator-=(const LinExpr& o) { return add(o, -1.0); }
    LinExpr& operator*=(double s);

    [[nodiscard]] double constant() const { return constant_; }
    [[nodiscard]] const std::vector<std::pair<int32_t, double>>& terms() const { return terms_; }
    [[nodiscard]] bool is_constant() const;

    /// Merge duplicate variables and drop zero coefficients.
    void normalize();

    [[nodiscard]] double evaluate(std::span<const double> values) const;

private:
    std::vector<std::pair<int32_t, double>> terms_;
    double constant_ = 0.0;
};

LinExpr operator+(LinExpr a, const LinExpr& b);
LinExpr operator-(LinExpr a, const LinExpr& b);
LinExpr operator*(double s, LinExpr e);
LinExpr operator*(LinExpr e, double s);

struct VarInfo {
    double lb = 0.0;
    double ub = kInf;
    VarType type = VarType::Continuous;
    std::string name;
};

/// Row lb <= sum(coef * x) <= ub. The expression constant is folded into the
/// bounds when the row is added.
struct Row {
    std::vector<std::pair<int32_t, double>> terms;
    double lb = -kInf;
    double ub = kInf;
    std::string name;
    uint16_t family = 0;
};

struct ConstraintRef {
    int32_t index = -1;
    [[nodiscard]] bool valid() const { return index >= 0; }
};

class Model {
public:
    Var add_var(double lb, double ub, VarType type, std::string name);
    Var add_binary(std::string name) { return add_var(0.0, 1.0, VarType::Binary, std::move(name)); }
    Var add_continuous(double lb, double ub, std::string name) {
        return add_var(lb, ub, VarType::Continuous, std::move(name));
    }

    /// Adds lb <= expr <= ub under the named family. Returns an invalid ref
    /// when the expression has no variables (the row is then checked for
    /// consistency and dropped).
    ConstraintRef add_range(const LinExpr& expr, double lb, double ub, const std::string& family,
                            std::string name = {});
    ConstraintRef add_le(const LinExpr& expr, double rhs, const std::string& family, std::string name = {}) {
        return add_range(expr, -kInf, rhs, family, std::move(name));
    }
    ConstraintRef add_ge(const LinExpr& expr, double rhs, const std::string& family, std::string name = {}) {
        return add_range(expr, rhs, kInf, family, std::move(name));
    }
    ConstraintRef add_eq(const LinExpr& expr, double rhs, const std::string& family, std::string name = {}) {
        return add_range(expr, rhs, rhs, family, std::move(name));
    }

    void add_objective(const LinExpr& e) { objective_ += e; }
    LinExpr& objective() { return objective_; }
    [[nodiscard]] const LinExpr& objective() const { return objective_; }

    [[nodiscard]] int32_t num_vars() const { return static_cast<int32_t>(vars_.size()); }
    [[nodiscard]] int32_t num_rows() const { return static_cast<int32_t>(rows_.size()); }
    [[nodiscard]] const std::vector<VarInfo>& vars() const { return vars_; }
    std::vector<VarInfo>& vars() { return vars_; }
    [[nodiscard]] const VarInfo& var(Var v) const { return vars_.at(static_cast<size_t>(v.index)); }
    VarInfo& var(Var v) { return vars_.at(static_cast<size_t>(v.index)); }
    [[nodiscard]] const std::vector<Row>& rows() const { return rows_; }
    std::vector<Row>& rows() { return rows_; }

    [[nodiscard]] const std::vector<std::string>& families() const { return families_; }
    [[nodiscard]] uint16_t family_id(const std::string& family);
    [[nodiscard]] int count_binaries() const;

    /// Largest violation of any bound, row or integrality requirement.
    [[nodiscard]] double max_violation(std::span<const double> values, std::string* worst = nullptr) const;

private:
    std::vector<VarInfo> vars_;
    std::vector<Row> rows_;
    std::vector<std::string> families_;
    LinExpr objective_;
};

}  // namespace gridplan::lp

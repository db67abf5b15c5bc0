#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridplan::core {

/// Input error carrying the offending file and 1-based data row (0 = header
/// or whole file).
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(const std::string& file, int row, const std::string& what);
    [[nodiscard]] const std::string& file() const { return file_; }
    [[nodiscard]] int row() const { return row_; }

private:
    std::string file_;
    int row_;
};

class CsvTable;

class CsvRow {
public:
    CsvRow(const CsvTable& table, size_t index) : table_(&table), index_(index) {}

    [[nodiscard]] bool has(const std::string& col) const;
    [[nodiscard]] const std::string& str(const std::string& col) const;
    [[nodiscard]] double num(const std::string& col) const;
    [[nodiscard]] double num_or(const std::string& col, double fallback) const;
    [[nodiscard]] int integer(const std::string& col) const;
    [[nodiscard]] int integer_or(const std::string& col, int fallback) const;
    [[nodiscard]] bool flag(const std::string& col) const;
    [[nodiscard]] bool flag_or(const std::string& col, bool fallback) const;
    [[nodiscard]] int row_number() const { return static_cast<int>(index_) + 1; }
    [[noreturn]] void fail(const std::string& what) const;

private:
    const CsvTable* table_;
    size_t index_;
};

/// Comma-separated table with a fixed header. Columns outside the declared
/// required/optional sets are rejected.
class CsvTable {
public:
    static CsvTable read(const std::filesystem::path& path, const std::vector<std::string>& required,
                         const std::vector<std::string>& optional = {});
    static CsvTable parse(const std::string& text, const std::string& label, const std::vector<std::string>& required,
                          const std::vector<std::string>& optional = {});

    [[nodiscard]] size_t size() const { return cells_.size(); }
    [[nodiscard]] CsvRow row(size_t i) const { return {*this, i}; }
    [[nodiscard]] const std::string& label() const { return label_; }
    [[nodiscard]] int column(const std::string& name) const;
    [[nodiscard]] const std::string& cell(size_t row, int col) const { return cells_[row][static_cast<size_t>(col)]; }

    template <typename F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < cells_.size(); ++i) f(row(i));
    }

private:
    std::string label_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> cells_;
};

/// Minimal CSV writer: fields are written verbatim with full double precision.
std::string csv_number(double v);

}  // namespace gridplan::core

#include "gridplan/core/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gridplan::core {

namespace {

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

}  // namespace

ScenarioError::ScenarioError(const std::string& file, int row, const std::string& what)
    : std::runtime_error(file + (row > 0 ? ":" + std::to_string(row) : std::string{}) + ": " + what),
      file_(file),
      row_(row) {}

CsvTable CsvTable::read(const std::filesystem::path& path, const std::vector<std::string>& required,
                        const std::vector<std::string>& optional) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path.string(), 0, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.filename().string(), required, optional);
}

CsvTable CsvTable::parse(const std::string& text, const std::string& label, const std::vector<std::string>& required,
                         const std::vector<std::string>& optional) {
    CsvTable t;
    t.label_ = label;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    int data_row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        auto fields = split(line);
        if (!have_header) {
            t.header_ = fields;
            have_header = true;
            for (const auto& h : t.header_) {
                const bool known = std::find(required.begin(), required.end(), h) != required.end() ||
                                   std::find(optional.begin(), optional.end(), h) != optional.end();
                if (!known) throw ScenarioError(label, 0, "unknown column '" + h + "'");
            }
            for (const auto& r : required) {
                if (std::find(t.header_.begin(), t.header_.end(), r) == t.header_.end()) {
                    throw ScenarioError(label, 0, "missing required column '" + r + "'");
                }
            }
            continue;
        }
        ++data_row;
        if (fields.size() != t.header_.size()) {
            throw ScenarioError(label, data_row,
                                "expected " + std::to_string(t.header_.size()) + " fields, found " +
                                    std::to_string(fields.size()));
        }
        t.cells_.push_back(std::move(fields));
    }
    if (!have_header) throw ScenarioError(label, 0, "empty file (no header)");
    return t;
}

int CsvTable::column(const std::string& name) const {
    auto it = std::find(header_.begin(), header_.end(), name);
    return it == header_.end() ? -1 : static_cast<int>(it - header_.begin());
}

bool CsvRow::has(const std::string& col) const {
    const int c = table_->column(col);
    return c >= 0 && !table_->cell(index_, c).empty();
}

const std::string& CsvRow::str(const std::string& col) const {
    const int c = table_->column(col);
    if (c < 0) fail("missing column '" + col + "'");
    return table_->cell(index_, c);
}

double CsvRow::num(const std::string& col) const {
    const std::string& s = str(col);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) fail("column '" + col + "': not a number: '" + s + "'");
    return v;
}

double CsvRow::num_or(const std::string& col, double fallback) const { return has(col) ? num(col) : fallback; }

int CsvRow::integer(const std::string& col) const {
    const std::string& s = str(col);
    int v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) fail("column '" + col + "': not an integer: '" + s + "'");
    return v;
}

int CsvRow::integer_or(const std::string& col, int fallback) const { return has(col) ? integer(col) : fallback; }

bool CsvRow::flag(const std::string& col) const {
    const std::string& s = str(col);
    if (s == "1" || s == "true" || s == "yes") return true;
    if (s == "0" || s == "false" || s == "no") return false;
    fail("column '" + col + "': not a boolean: '" + s + "'");
}

bool CsvRow::flag_or(const std::string& col, bool fallback) const { return has(col) ? flag(col) : fallback; }

void CsvRow::fail(const std::string& what) const { throw ScenarioError(table_->label(), row_number(), what); }

std::string csv_number(double v) {
    if (v == 0.0) return "0";  // avoids "-0"
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace gridplan::core

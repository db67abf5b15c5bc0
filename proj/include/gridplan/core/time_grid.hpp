#pragma once

#include <string>
#include <vector>

namespace gridplan::core {

/// Cyclic hour index: maps any integer hour onto [0, period_length).
/// tau(T, T) == 0 and tau(-1, T) == T - 1, so the last hour links to the first.
[[nodiscard]] constexpr int tau(int t, int period_length) {
    const int r = t % period_length;
    return r < 0 ? r + period_length : r;
}

struct Period {
    std::string id;
    double weight = 0.0;  // days-equivalent multiplier applied to the period's hourly costs
};

inline constexpr double kHoursPerYear = 8760.0;

/// Years x representative periods x hours. Every period has the same length.
struct TimeGrid {
    std::vector<int> years;
    std::vector<double> year_weights;
    std::vector<Period> periods;
    int hours_per_period = 24;

    [[nodiscard]] int num_years() const { return static_cast<int>(years.size()); }
    [[nodiscard]] int num_periods() const { return static_cast<int>(periods.size()); }
    [[nodiscard]] int days_per_period() const { return hours_per_period / 24; }
    [[nodiscard]] int num_blocks() const { return num_years() * num_periods(); }
    [[nodiscard]] int block_index(int y, int w) const { return y * num_periods() + w; }

    /// Sum of period weight times period length; 8760 for a normalized grid.
    [[nodiscard]] double represented_hours() const;

    /// Sum of year weights from year index y to the end of the horizon.
    [[nodiscard]] double remaining_year_weight(int y) const;

    [[nodiscard]] int year_index(int year) const;
    [[nodiscard]] int period_index(const std::string& id) const;
};

}  // namespace gridplan::core

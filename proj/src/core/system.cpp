#include "gridplan/core/system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gridplan::core {

double TimeGrid::represented_hours() const {
    double h = 0.0;
    for (const auto& p : periods) h += p.weight * hours_per_period;
    return h;
}

double TimeGrid::remaining_year_weight(int y) const {
    double s = 0.0;
    for (size_t k = static_cast<size_t>(y); k < year_weights.size(); ++k) s += year_weights[k];
    return s;
}

int TimeGrid::year_index(int year) const {
    auto it = std::find(years.begin(), years.end(), year);
    return it == years.end() ? -1 : static_cast<int>(it - years.begin());
}

int TimeGrid::period_index(const std::string& id) const {
    for (size_t i = 0; i < periods.size(); ++i) {
        if (periods[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

int Line::sign_at(int zone) const {
    for (const auto& [z, s] : incidence) {
        if (z == zone) return s;
    }
    return 0;
}

double ThermalUnit::planned_status(int year) const {
    if (candidate) return 0.0;
    if (retire_year > 0 && year >= retire_year) return 0.0;
    return 1.0;
}

std::vector<ElccPlane> PolicyInputs::planes_for(const std::vector<ElccPlane>& surface, int year) const {
    std::vector<ElccPlane> out;
    for (const auto& p : surface) {
        if (p.year == 0 || p.year == year) out.push_back(p);
    }
    return out;
}

int SystemData::policy_zone() const {
    for (size_t i = 0; i < zones.size(); ++i) {
        if (zones[i].policy_zone) return static_cast<int>(i);
    }
    return -1;
}

int SystemData::zone_index(const std::string& id) const {
    for (size_t i = 0; i < zones.size(); ++i) {
        if (zones[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

size_t SystemData::load_index(int z, int y, int w, int t) const {
    const auto Y = static_cast<size_t>(grid.num_years());
    const auto W = static_cast<size_t>(grid.num_periods());
    const auto T = static_cast<size_t>(grid.hours_per_period);
    return ((static_cast<size_t>(z) * Y + static_cast<size_t>(y)) * W + static_cast<size_t>(w)) * T +
           static_cast<size_t>(t);
}

void SystemData::resize_load() {
    load.assign(zones.size() * static_cast<size_t>(grid.num_years() * grid.num_periods() * grid.hours_per_period),
                0.0);
}

double SystemData::peak_load(int z) const {
    double peak = 0.0;
    for (int y = 0; y < grid.num_years(); ++y)
        for (int w = 0; w < grid.num_periods(); ++w)
            for (int t = 0; t < grid.hours_per_period; ++t) peak = std::max(peak, load_at(z, y, w, t));
    return peak;
}

double capital_recovery_factor(double rate, double lifetime_years) {
    if (lifetime_years <= 0.0) throw std::invalid_argument("lifetime must be positive");
    if (rate == 0.0) return 1.0 / lifetime_years;
    const double g = std::pow(1.0 + rate, lifetime_years);
    return rate * g / (g - 1.0);
}

}  // namespace gridplan::core

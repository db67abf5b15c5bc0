#include "gridplan/analysis/reports.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace gridplan::analysis {

SavingsReport levelized_savings(const CostSummary& baseline, const CostSummary& alternative) {
    if (baseline.scenario != alternative.scenario) {
        throw std::invalid_argument("savings need the same scenario ('" + baseline.scenario + "' vs '" +
                                    alternative.scenario + "')");
    }
    if (baseline.years.size() != alternative.years.size()) {
        throw std::invalid_argument("savings need the same planning years");
    }
    SavingsReport rep;
    rep.baseline = baseline.regime;
    rep.alternative = alternative.regime;
    for (size_t i = 0; i < baseline.years.size(); ++i) {
        const auto& b = baseline.years[i];
        const auto& a = alternative.years[i];
        if (a.year != b.year || a.vehicles != b.vehicles) {
            throw std::invalid_argument("savings need matching years and vehicle counts");
        }
        SavingsRow row;
        row.year = b.year;
        row.saving_total = b.annual_cost - a.annual_cost;
        row.per_vehicle = b.vehicles > 0 ? row.saving_total / b.vehicles : 0.0;
        rep.years.push_back(row);
    }
    return rep;
}

std::vector<Cycle> rainflow_cyclic(const std::vector<double>& series) {
    std::vector<Cycle> out;
    if (series.size() < 2) return out;
    // Start and end at the global maximum; every range then closes as a full cycle.
    const auto start = static_cast<size_t>(std::max_element(series.begin(), series.end()) - series.begin());
    std::vector<double> pts;
    for (size_t k = 0; k <= series.size(); ++k) pts.push_back(series[(start + k) % series.size()]);

    std::vector<double> rev;
    for (double p : pts) {
        if (!rev.empty() && p == rev.back()) continue;
        if (rev.size() >= 2 && (rev.back() - rev[rev.size() - 2]) * (p - rev.back()) > 0.0) {
            rev.back() = p;
        } else {
            rev.push_back(p);
        }
    }

    std::vector<double> st;
    for (double p : rev) {
        st.push_back(p);
        while (st.size() >= 3) {
            const size_t n = st.size();
            const double x = std::abs(st[n - 1] - st[n - 2]);
            const double y = std::abs(st[n - 2] - st[n - 3]);
            if (x < y) break;
            out.push_back({y, 1.0});
            st.erase(st.begin() + static_cast<std::ptrdiff_t>(n - 3), st.begin() + static_cast<std::ptrdiff_t>(n - 1));
        }
    }
    for (size_t i = 0; i + 1 < st.size(); ++i) {
        const double r = std::abs(st[i + 1] - st[i]);
        if (r > 0.0) out.push_back({r, 0.5});
    }
    return out;
}

const std::array<Chemistry, 3>& default_chemistries() {
    static const std::array<Chemistry, 3> chems{{
        {"LFP", 0.6, 0.004, 1.1},
        {"NCA", 1.0, 0.008, 1.4},
        {"NMC", 0.8, 0.006, 1.3},
    }};
    return chems;
}

double annual_cycle_units(const ClusterTrace& trace, const Chemistry& chem) {
    double u = 0.0;
    for (size_t w = 0; w < trace.periods.size(); ++w) {
        double per = 0.0;
        for (const auto& c : rainflow_cyclic(trace.periods[w])) per += c.count * std::pow(c.range, chem.depth_exponent);
        u += trace.weights[w] * per;
    }
    return u;
}

DegradationResult degradation_proxy(const std::vector<ClusterTrace>& traces, const DegradationConfig& cfg) {
    for (const auto& t : traces) {
        for (const auto& p : t.periods) {
            if (p.size() < 24) throw std::invalid_argument("SoC series of '" + t.cluster + "' shorter than a day");
        }
    }
    DegradationResult res;
    const auto& chems = default_chemistries();
    std::map<int, std::vector<const ClusterTrace*>> by_year;
    for (const auto& t : traces) by_year[t.year].push_back(&t);
    if (by_year.empty() || cfg.end_year <= cfg.start_year) return res;

    // Capacity-weighted fleet cycle units per planning year and chemistry.
    std::map<int, std::array<double, 3>> units;
    std::map<int, double> capacity;
    for (const auto& [year, ts] : by_year) {
        std::array<double, 3> u{};
        double cap = 0.0;
        for (const auto* t : ts) {
            cap += t->capacity_mwh;
            for (size_t c = 0; c < chems.size(); ++c) u[c] += t->capacity_mwh * annual_cycle_units(*t, chems[c]);
        }
        for (auto& v : u) v = cap > 0.0 ? v / cap : 0.0;
        units[year] = u;
        capacity[year] = cap;
    }

    const double elapsed = cfg.end_year - cfg.start_year;
    double fade = 0.0;
    for (size_t c = 0; c < chems.size(); ++c) {
        double cyc = 0.0;
        for (int y = cfg.start_year; y < cfg.end_year; ++y) {
            auto it = units.upper_bound(y);
            if (it != units.begin()) --it;
            cyc += it->second[c];
        }
        fade += chems[c].calendar_per_year * elapsed + chems[c].cycle_per_efc * cyc;
    }
    fade /= static_cast<double>(chems.size());
    res.raw_fade_pct = fade;
    res.residual_pct = 100.0 - cfg.scale * fade;
    res.degraded_kwh = (100.0 - res.residual_pct) / 100.0 * capacity.rbegin()->second * 1000.0;
    res.cost = res.degraded_kwh * cfg.price_per_kwh;
    return res;
}

double calibrate_degradation(const std::vector<ClusterTrace>& baseline, DegradationConfig cfg, double target_pct) {
    cfg.scale = 1.0;
    const auto raw = degradation_proxy(baseline, cfg).raw_fade_pct;
    if (raw <= 0.0) throw std::invalid_argument("baseline has no degradation to calibrate against");
    return (100.0 - target_pct) / raw;
}

long long dedicated_chargers(long long vehicles) { return vehicles; }

long long peak_shared_chargers(double peak_mw, long long vehicles, double charger_kw) {
    const auto n = static_cast<long long>(std::ceil(peak_mw * 1000.0 / charger_kw - 1e-9));
    return std::min(std::max(n, 0LL), vehicles);
}

ChargerReport charger_costs(const std::vector<int>& years, const std::vector<long long>& charging_vehicles,
                            const std::vector<double>& peak_mw, ChargerPolicy policy, bool v2g,
                            const ChargerConfig& cfg) {
    if (charging_vehicles.size() != years.size() ||
        (policy == ChargerPolicy::PeakShared && peak_mw.size() != years.size())) {
        throw std::invalid_argument("charger inputs must have one entry per year");
    }
    const double per_charger = cfg.unit_cost + (v2g ? cfg.inverter_per_kw * cfg.charger_kw : 0.0);
    ChargerReport rep;
    for (size_t i = 0; i < years.size(); ++i) {
        ChargerYear cy;
        cy.year = years[i];
        cy.chargers = policy == ChargerPolicy::Dedicated
                          ? dedicated_chargers(charging_vehicles[i])
                          : peak_shared_chargers(peak_mw[i], charging_vehicles[i], cfg.charger_kw);
        cy.cost = static_cast<double>(cy.chargers) * per_charger;
        rep.chargers = std::max(rep.chargers, cy.chargers);
        rep.years.push_back(cy);
    }
    rep.total_cost = static_cast<double>(rep.chargers) * per_charger;
    return rep;
}

}  // namespace gridplan::analysis

#include "gridplan/core/validate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gridplan::core {

namespace {

class Report {
public:
    void check(bool ok, const char* code, const std::string& msg) {
        if (!ok) out.push_back({code, msg});
    }
    std::vector<Violation> out;
};

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

void check_grid(const TimeGrid& g, Report& r) {
    r.check(!g.years.empty(), "time_grid.years", "at least one investment year is required");
    r.check(std::is_sorted(g.years.begin(), g.years.end()) &&
                std::adjacent_find(g.years.begin(), g.years.end()) == g.years.end(),
            "time_grid.years", "years must be strictly increasing");
    r.check(g.year_weights.size() == g.years.size(), "time_grid.year_weights", "one weight per year is required");
    for (double w : g.year_weights) r.check(w > 0.0, "time_grid.year_weights", "year weights must be positive");
    r.check(g.hours_per_period > 0 && g.hours_per_period % 24 == 0, "time_grid.hours_per_period",
            "hours_per_period must be a positive multiple of 24");
    r.check(!g.periods.empty(), "time_grid.periods", "at least one representative period is required");
    for (const auto& p : g.periods) r.check(p.weight > 0.0, "time_grid.periods", "period '" + p.id + "' weight <= 0");
    const double h = g.represented_hours();
    r.check(std::abs(h - kHoursPerYear) <= 1e-6 * kHoursPerYear, "time_grid.weight_normalization",
            "sum of period weight x length is " + std::to_string(h) + ", expected 8760");
}

void check_elcc(const SystemData& s, const std::vector<ElccPlane>& surface, const char* name, Report& r) {
    std::set<int> years;
    for (const auto& p : surface) years.insert(p.year);
    for (const auto& p : surface) {
        const bool monotone = p.wind >= 0.0 && p.solar >= 0.0 && p.storage >= 0.0 && p.intercept >= 0.0;
        r.check(monotone, "elcc.shape",
                std::string(name) + " surface plane has a negative coefficient (credit must be non-decreasing)");
        r.check(p.wind <= 1.0 && p.solar <= 1.0 && p.storage <= 1.0, "elcc.shape",
                std::string(name) + " surface plane credits more than nameplate");
    }
    // Concavity through the origin: each year's surface needs a plane with zero
    // intercept so the credit of zero capacity is zero.
    for (int y = 0; y < s.grid.num_years(); ++y) {
        const auto planes = s.policy.planes_for(surface, s.grid.years[static_cast<size_t>(y)]);
        if (planes.empty()) continue;
        const bool through_origin =
            std::any_of(planes.begin(), planes.end(), [](const ElccPlane& p) { return p.intercept == 0.0; });
        r.check(through_origin, "elcc.shape", std::string(name) + " surface for year " +
                                                  std::to_string(s.grid.years[static_cast<size_t>(y)]) +
                                                  " has no plane through the origin");
    }
}

}  // namespace

std::vector<Violation> validate_system(const SystemData& s) {
    Report r;
    check_grid(s.grid, r);

    const auto nz = static_cast<int>(s.zones.size());
    r.check(nz > 0, "zone.count", "at least one zone is required");
    const auto policy_count =
        std::count_if(s.zones.begin(), s.zones.end(), [](const Zone& z) { return z.policy_zone; });
    r.check(policy_count == 1, "zone.policy", "exactly one policy zone is required, found " +
                                                  std::to_string(policy_count));
    std::set<std::string> ids;
    for (const auto& z : s.zones) r.check(ids.insert(z.id).second, "zone.duplicate", "duplicate zone '" + z.id + "'");
    const int pz = s.policy_zone();
    auto zone_ok = [&](int z) { return z >= 0 && z < nz; };

    const size_t expected_load =
        s.zones.size() * static_cast<size_t>(s.grid.num_years() * s.grid.num_periods() * s.grid.hours_per_period);
    r.check(s.load.size() == expected_load, "load.shape", "load table does not match zones x time grid");
    for (double l : s.load) {
        if (l < 0.0 || !std::isfinite(l)) {
            r.check(false, "load.negative", "zonal load must be finite and non-negative");
            break;
        }
    }

    for (const auto& l : s.lines) {
        int plus = 0, minus = 0;
        std::set<int> zs;
        bool bad_sign = false;
        for (const auto& [z, sign] : l.incidence) {
            if (sign == 1) ++plus;
            else if (sign == -1) ++minus;
            else bad_sign = true;
            zs.insert(z);
            r.check(zone_ok(z), "line.zone", "line '" + l.id + "' references an unknown zone");
        }
        r.check(plus == 1 && minus == 1 && !bad_sign && zs.size() == 2 && l.incidence.size() == 2, "line.incidence",
                "line '" + l.id + "' must have exactly one +1 and one -1 incidence on two distinct zones");
        r.check(l.limit_mw > 0.0, "line.limit", "line '" + l.id + "' limit must be positive");
        r.check(l.emission_rate >= 0.0, "line.emission_rate", "line '" + l.id + "' emission rate must be >= 0");
        r.check(l.wheeling_cost >= 0.0, "line.wheeling_cost", "line '" + l.id + "' wheeling cost must be >= 0");
    }

    auto check_cost = [&](const CostData& c, const std::string& id) {
        r.check(c.capital >= 0.0 && c.maintenance >= 0.0, "cost.negative", "costs of '" + id + "' must be >= 0");
        r.check(c.lifetime_years > 0.0, "cost.lifetime", "lifetime of '" + id + "' must be positive");
    };

    for (const auto& u : s.thermal) {
        r.check(zone_ok(u.zone), "thermal.zone", "thermal unit '" + u.id + "' references an unknown zone");
        r.check(u.pmin >= 0.0 && u.pmin <= u.pmax, "thermal.limits", "thermal unit '" + u.id + "' needs 0 <= pmin <= pmax");
        r.check(in_unit(u.nqc), "thermal.nqc", "thermal unit '" + u.id + "' NQC must lie in [0,1]");
        r.check(u.ramp_up >= 0.0 && u.ramp_down >= 0.0, "thermal.ramp", "thermal unit '" + u.id + "' ramps must be >= 0");
        r.check(u.min_up >= 1 && u.min_down >= 1 && u.min_up <= s.grid.hours_per_period &&
                    u.min_down <= s.grid.hours_per_period,
                "thermal.min_time", "thermal unit '" + u.id + "' min up/down must lie in [1, period length]");
        r.check(u.startup_cost >= 0.0 && u.shutdown_cost >= 0.0 && u.cost_slope >= 0.0 && u.cost_intercept >= 0.0,
                "thermal.cost", "thermal unit '" + u.id + "' costs must be >= 0");
        r.check(u.emission_slope >= 0.0 && u.emission_intercept >= 0.0, "thermal.emissions",
                "thermal unit '" + u.id + "' emission rates must be >= 0");
        r.check(!(u.candidate || u.retirable) || u.zone == pz, "investment.zone",
                "thermal unit '" + u.id + "': investment decisions are restricted to the policy zone");
        check_cost(u.cost, u.id);
    }

    for (const auto& res : s.renewables) {
        r.check(zone_ok(res.zone), "renewable.zone", "renewable '" + res.id + "' references an unknown zone");
        bool pf_ok = res.profile.size() == static_cast<size_t>(s.grid.num_periods());
        for (const auto& row : res.profile) {
            pf_ok = pf_ok && row.size() == static_cast<size_t>(s.grid.hours_per_period);
            for (double v : row) pf_ok = pf_ok && in_unit(v);
        }
        r.check(pf_ok, "renewable.profile", "renewable '" + res.id + "' production factors must cover the grid within [0,1]");
        r.check(res.planned_mw >= 0.0, "renewable.capacity", "renewable '" + res.id + "' planned capacity must be >= 0");
        r.check(!res.candidate || res.max_capacity_mw >= res.planned_mw, "renewable.capacity",
                "renewable '" + res.id + "' max capacity below planned capacity");
        r.check(res.curtailment_cost >= 0.0, "renewable.cost", "renewable '" + res.id + "' curtailment cost must be >= 0");
        r.check(!(res.candidate || res.retirable) || res.zone == pz, "investment.zone",
                "renewable '" + res.id + "': investment decisions are restricted to the policy zone");
        check_cost(res.cost, res.id);
    }

    for (const auto& st : s.storage) {
        r.check(zone_ok(st.zone), "storage.zone", "storage '" + st.id + "' references an unknown zone");
        r.check(st.eta_charge > 0.0 && st.eta_charge <= 1.0 && st.eta_discharge > 0.0 && st.eta_discharge <= 1.0,
                "storage.efficiency", "storage '" + st.id + "' efficiencies must lie in (0,1]");
        r.check(st.soc_max_frac > 0.0 && st.soc_max_frac <= 1.0, "storage.headroom",
                "storage '" + st.id + "' headroom fraction must lie in (0,1]");
        r.check(st.soc_min_frac >= 0.0 && st.soc_min_frac < st.soc_max_frac, "storage.footroom",
                "storage '" + st.id + "' footroom fraction must lie in [0, headroom)");
        r.check(st.self_discharge >= 0.0 && st.self_discharge < 1.0, "storage.self_discharge",
                "storage '" + st.id + "' self-discharge must lie in [0,1)");
        r.check(st.min_duration_h >= 1 && st.min_duration_h <= s.grid.hours_per_period, "storage.min_duration",
                "storage '" + st.id + "' minimum duration must lie in [1, period length]");
        r.check(st.planned_mw >= 0.0 && st.planned_mwh >= 0.0, "storage.capacity",
                "storage '" + st.id + "' planned capacity must be >= 0");
        r.check(!st.candidate || (st.max_power_mw >= st.planned_mw && st.max_energy_mwh >= st.planned_mwh),
                "storage.capacity", "storage '" + st.id + "' max capacity below planned capacity");
        r.check(!(st.candidate || st.retirable) || st.zone == pz, "investment.zone",
                "storage '" + st.id + "': investment decisions are restricted to the policy zone");
        check_cost(st.power_cost, st.id);
        check_cost(st.energy_cost, st.id);
    }

    for (const auto& h : s.hydro) {
        r.check(zone_ok(h.zone), "hydro.zone", "hydro unit '" + h.id + "' references an unknown zone");
        r.check(h.pmin >= 0.0 && h.pmin <= h.pmax, "hydro.limits", "hydro unit '" + h.id + "' needs 0 <= pmin <= pmax");
        r.check(h.budget_mwh >= h.pmin * s.grid.hours_per_period, "hydro.budget",
                "hydro unit '" + h.id + "' budget is below minimum output over a period");
        r.check(in_unit(h.nqc), "hydro.nqc", "hydro unit '" + h.id + "' NQC must lie in [0,1]");
        r.check(h.ramp_up >= 0.0 && h.ramp_down >= 0.0, "hydro.ramp", "hydro unit '" + h.id + "' ramps must be >= 0");
        check_cost(h.cost, h.id);
    }

    r.check(s.policy.years.size() == s.grid.years.size(), "policy.years", "one policy row per investment year");
    for (const auto& p : s.policy.years) {
        r.check(p.emissions_cap >= 0.0, "policy.emissions_cap", "emissions cap must be >= 0");
        r.check(in_unit(p.rps), "policy.rps", "RPS fraction must lie in [0,1]");
        r.check(p.prm >= 0.0, "policy.prm", "planning reserve margin must be >= 0");
    }
    r.check(s.policy.storage_credit_hours > 0.0, "policy.storage_credit_hours", "storage credit duration must be positive");
    check_elcc(s, s.policy.variable_elcc, "variable", r);
    check_elcc(s, s.policy.storage_elcc, "storage", r);

    r.check(zone_ok(s.ev.zone), "ev.zone", "EV zone is unknown");
    r.check(s.ev.eta_charge > 0.0 && s.ev.eta_charge <= 1.0 && s.ev.eta_discharge > 0.0 && s.ev.eta_discharge <= 1.0,
            "ev.efficiency", "EV charger efficiencies must lie in (0,1]");
    r.check(s.ev.cluster_threshold >= 0.0 && s.ev.cluster_threshold < 1.0, "ev.threshold",
            "cluster threshold must lie in [0,1)");
    r.check(s.ev.soc_min_frac >= 0.0 && s.ev.soc_min_frac < s.ev.soc_drive_frac && s.ev.soc_drive_frac <= 1.0,
            "ev.soc", "EV SoC fractions must satisfy 0 <= min < drive <= 1");
    r.check(s.discount_rate >= 0.0, "cost.discount_rate", "discount rate must be >= 0");
    return r.out;
}

bool has_violation(const std::vector<Violation>& report, const std::string& code) {
    return std::any_of(report.begin(), report.end(), [&](const Violation& v) { return v.code == code; });
}

}  // namespace gridplan::core

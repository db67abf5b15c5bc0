#include "gridplan/uc/dispatch_block.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gridplan::uc {

using core::tau;

namespace {

std::string tag(const char* kind, const std::string& id, const DispatchBlock& b, int t) {
    return std::string(kind) + "[" + id + "," + std::to_string(b.year) + "," + std::to_string(b.period) + "," +
           std::to_string(t) + "]";
}

// Bound a variable by a capacity expression: as a column bound when the
// capacity is a constant, as a row otherwise.
void cap_by(lp::Model& m, Var v, const LinExpr& cap, double scale, const char* family) {
    if (cap.is_constant()) {
        auto& info = m.var(v);
        info.ub = std::min(info.ub, std::max(0.0, scale * cap.constant()));
    } else {
        m.add_le(LinExpr(v) - scale * cap, 0.0, family);
    }
}

}  // namespace

LinExpr DispatchBlock::flow(int line, int t) const {
    const auto& l = lines[static_cast<size_t>(line)];
    LinExpr e(l.fwd[static_cast<size_t>(t)]);
    e.add(l.bwd[static_cast<size_t>(t)], -1.0);
    return e;
}

CapacityLinks planned_capacity(const core::SystemData& sys, int y) {
    const int year = sys.grid.years[static_cast<size_t>(y)];
    CapacityLinks c;
    for (const auto& u : sys.thermal) c.thermal_status.emplace_back(u.planned_status(year));
    for (const auto& r : sys.renewables) c.renewable_mw.emplace_back(r.planned_mw);
    for (const auto& s : sys.storage) {
        c.storage_mw.emplace_back(s.planned_mw);
        c.storage_mwh.emplace_back(s.planned_mwh);
        c.storage_mw_max.push_back(s.planned_mw);
    }
    return c;
}

DispatchBlock begin_block(const lp::Model& model, const core::SystemData& sys, int y, int w) {
    DispatchBlock b;
    b.year = y;
    b.period = w;
    b.hours = sys.grid.hours_per_period;
    b.thermal.resize(sys.thermal.size());
    b.renewable.resize(sys.renewables.size());
    b.storage.resize(sys.storage.size());
    b.hydro.resize(sys.hydro.size());
    b.lines.resize(sys.lines.size());
    b.supply.assign(sys.zones.size(), std::vector<LinExpr>(static_cast<size_t>(b.hours)));
    b.ev_load.assign(sys.zones.size(), std::vector<LinExpr>(static_cast<size_t>(b.hours)));
    b.first_var = model.num_vars();
    b.end_var = model.num_vars();
    return b;
}

void add_thermal(lp::Model& m, DispatchBlock& b, const core::SystemData& sys, int ui, const LinExpr& status) {
    const auto& u = sys.thermal[static_cast<size_t>(ui)];
    auto& tv = b.thermal[static_cast<size_t>(ui)];
    const int T = b.hours;
    if (status.is_constant() && status.constant() <= 0.0) {
        // Not operational this year: no dispatch variables at all.
        tv = {};
        return;
    }
    for (int t = 0; t < T; ++t) {
        tv.on.push_back(m.add_binary(tag("on", u.id, b, t)));
        tv.start.push_back(m.add_continuous(0.0, 1.0, tag("su", u.id, b, t)));
        tv.stop.push_back(m.add_continuous(0.0, 1.0, tag("sd", u.id, b, t)));
        tv.p.push_back(m.add_continuous(0.0, u.pmax, tag("p", u.id, b, t)));
    }
    const double su_limit = std::max(u.ramp_up, u.pmin);
    const double sd_limit = std::max(u.ramp_down, u.pmin);
    for (int t = 0; t < T; ++t) {
        const auto i = static_cast<size_t>(t);
        const auto prev = static_cast<size_t>(tau(t - 1, T));
        m.add_ge(LinExpr(tv.p[i]) - u.pmin * LinExpr(tv.on[i]), 0.0, "thermal_limits");
        m.add_le(LinExpr(tv.p[i]) - u.pmax * LinExpr(tv.on[i]), 0.0, "thermal_limits");
        LinExpr logic(tv.on[i]);
        logic.add(tv.on[prev], -1.0).add(tv.start[i], -1.0).add(tv.stop[i], 1.0);
        m.add_eq(logic, 0.0, "thermal_logic");
        if (!status.is_constant() || status.constant() < 1.0) {
            m.add_le(LinExpr(tv.on[i]) - status, 0.0, "operational_status");
        }
        LinExpr up(tv.start[i]);
        for (int k = 1; k < u.min_up; ++k) up.add(tv.start[static_cast<size_t>(tau(t - k, T))], 1.0);
        up.add(tv.on[i], -1.0);
        m.add_le(up, 0.0, "min_up");
        LinExpr down(tv.stop[i]);
        for (int k = 1; k < u.min_down; ++k) down.add(tv.stop[static_cast<size_t>(tau(t - k, T))], 1.0);
        down.add(tv.on[i], 1.0);
        m.add_le(down, 1.0, "min_down");
        if (u.ramp_up < u.pmax) {
            LinExpr r(tv.p[i]);
            r.add(tv.p[prev], -1.0).add(tv.on[prev], -u.ramp_up).add(tv.start[i], -su_limit);
            m.add_le(r, 0.0, "ramp");
        }
        if (u.ramp_down < u.pmax) {
            LinExpr r(tv.p[prev]);
            r.add(tv.p[i], -1.0).add(tv.on[i], -u.ramp_down).add(tv.stop[i], -sd_limit);
            m.add_le(r, 0.0, "ramp");
        }
        b.supply[static_cast<size_t>(u.zone)][i].add(tv.p[i], 1.0);
    }
}

void add_renewable(lp::Model& m, DispatchBlock& b, const core::SystemData& sys, int ri, const LinExpr& capacity) {
    const auto& r = sys.renewables[static_cast<size_t>(ri)];
    auto& rv = b.renewable[static_cast<size_t>(ri)];
    const auto& pf = r.profile[static_cast<size_t>(b.period)];
    const bool curtailable = r.curtailable && r.technology != core::Technology::Firm;
    rv.curtail.assign(static_cast<size_t>(b.hours), Var{});
    rv.output.assign(static_cast<size_t>(b.hours), LinExpr{});
    for (int t = 0; t < b.hours; ++t) {
        const auto i = static_cast<size_t>(t);
        LinExpr out = pf[i] * capacity;
        if (curtailable && pf[i] > 0.0) {
            Var c = m.add_continuous(0.0, lp::kInf, tag("curt", r.id, b, t));
            cap_by(m, c, capacity, pf[i], "curtailment");
            out.add(c, -1.0);
            rv.curtail[i] = c;
        }
        b.supply[static_cast<size_t>(r.zone)][i] += out;
        rv.output[i] = std::move(out);
    }
}

void add_storage(lp::Model& m, DispatchBlock& b, const core::SystemData& sys, int si, const LinExpr& power,
                 const LinExpr& energy, double power_max) {
    const auto& s = sys.storage[static_cast<size_t>(si)];
    auto& sv = b.storage[static_cast<size_t>(si)];
    const int T = b.hours;
    if (power_max <= 0.0 && power.is_constant() && power.constant() <= 0.0) {
        sv = {};
        return;
    }
    for (int t = 0; t < T; ++t) {
        sv.mode.push_back(m.add_binary(tag("mode", s.id, b, t)));
        sv.charge.push_back(m.add_continuous(0.0, power_max, tag("pc", s.id, b, t)));
        sv.discharge.push_back(m.add_continuous(0.0, power_max, tag("pd", s.id, b, t)));
        sv.soc.push_back(m.add_continuous(0.0, lp::kInf, tag("soc", s.id, b, t)));
    }
    for (int t = 0; t < T; ++t) {
        const auto i = static_cast<size_t>(t);
        const auto prev = static_cast<size_t>(tau(t - 1, T));
        if (power.is_constant()) {
            // charge <= (1 - v) IC, discharge <= v IC
            m.add_le(LinExpr(sv.charge[i]) + power.constant() * LinExpr(sv.mode[i]), power.constant(),
                     "storage_power");
            m.add_le(LinExpr(sv.discharge[i]) - power.constant() * LinExpr(sv.mode[i]), 0.0, "storage_power");
        } else {
            m.add_le(LinExpr(sv.charge[i]) + power_max * LinExpr(sv.mode[i]), power_max, "storage_power");
            m.add_le(LinExpr(sv.discharge[i]) - power_max * LinExpr(sv.mode[i]), 0.0, "storage_power");
            m.add_le(LinExpr(sv.charge[i]) - power, 0.0, "storage_power");
            m.add_le(LinExpr(sv.discharge[i]) - power, 0.0, "storage_power");
        }
        LinExpr rec(sv.soc[i]);
        rec.add(sv.soc[prev], -(1.0 - s.self_discharge));
        rec.add(sv.charge[i], -s.eta_charge);
        rec.add(sv.discharge[i], 1.0 / s.eta_discharge);
        m.add_eq(rec, 0.0, "storage_soc");
        cap_by(m, sv.soc[i], energy, s.soc_max_frac, "storage_energy");
        if (s.soc_min_frac > 0.0) m.add_ge(LinExpr(sv.soc[i]) - s.soc_min_frac * energy, 0.0, "storage_energy");
        // Once the mode switches it holds for min_duration hours.
        for (int k = 1; k < s.min_duration_h; ++k) {
            const auto ahead = static_cast<size_t>(tau(t + k, T));
            LinExpr on(sv.mode[i]);
            on.add(sv.mode[prev], -1.0).add(sv.mode[ahead], -1.0);
            m.add_le(on, 0.0, "storage_duration");
            LinExpr off(sv.mode[prev]);
            off.add(sv.mode[i], -1.0).add(sv.mode[ahead], 1.0);
            m.add_le(off, 1.0, "storage_duration");
        }
        auto& sup = b.supply[static_cast<size_t>(s.zone)][i];
        sup.add(sv.discharge[i], 1.0);
        sup.add(sv.charge[i], -1.0);
    }
}

void add_hydro(lp::Model& m, DispatchBlock& b, const core::SystemData& sys, int hi) {
    const auto& h = sys.hydro[static_cast<size_t>(hi)];
    auto& hv = b.hydro[static_cast<size_t>(hi)];
    const int T = b.hours;
    for (int t = 0; t < T; ++t) hv.p.push_back(m.add_continuous(h.pmin, h.pmax, tag("ph", h.id, b, t)));
    LinExpr total;
    for (int t = 0; t < T; ++t) {
        const auto i = static_cast<size_t>(t);
        const auto prev = static_cast<size_t>(tau(t - 1, T));
        if (h.ramp_up < h.pmax - h.pmin) m.add_le(LinExpr(hv.p[i]) - LinExpr(hv.p[prev]), h.ramp_up, "ramp");
        if (h.ramp_down < h.pmax - h.pmin) m.add_le(LinExpr(hv.p[prev]) - LinExpr(hv.p[i]), h.ramp_down, "ramp");
        total.add(hv.p[i], 1.0);
        b.supply[static_cast<size_t>(h.zone)][i].add(hv.p[i], 1.0);
    }
    m.add_le(total, h.budget_mwh, "hydro_budget");
}

void add_lines(lp::Model& m, DispatchBlock& b, const core::SystemData& sys) {
    for (size_t li = 0; li < sys.lines.size(); ++li) {
        const auto& l = sys.lines[li];
        auto& lv = b.lines[li];
        for (int t = 0; t < b.hours; ++t) {
            lv.fwd.push_back(m.add_continuous(0.0, l.limit_mw, tag("ff", l.id, b, t)));
            lv.bwd.push_back(m.add_continuous(0.0, l.limit_mw, tag("fb", l.id, b, t)));
            for (const auto& [z, sign] : l.incidence) {
                auto& sup = b.supply[static_cast<size_t>(z)][static_cast<size_t>(t)];
                sup.add(lv.fwd.back(), sign);
                sup.add(lv.bwd.back(), -sign);
            }
        }
    }
}

void add_resources(lp::Model& m, DispatchBlock& b, const core::SystemData& sys, const CapacityLinks& caps) {
    for (size_t u = 0; u < sys.thermal.size(); ++u) add_thermal(m, b, sys, static_cast<int>(u), caps.thermal_status[u]);
    for (size_t r = 0; r < sys.renewables.size(); ++r) add_renewable(m, b, sys, static_cast<int>(r), caps.renewable_mw[r]);
    for (size_t s = 0; s < sys.storage.size(); ++s) {
        add_storage(m, b, sys, static_cast<int>(s), caps.storage_mw[s], caps.storage_mwh[s], caps.storage_mw_max[s]);
    }
    for (size_t h = 0; h < sys.hydro.size(); ++h) add_hydro(m, b, sys, static_cast<int>(h));
    add_lines(m, b, sys);
}

std::vector<BalanceResidual> build_balance(lp::Model& m, const DispatchBlock& b, const core::SystemData& sys,
                                           BalanceMode mode) {
    std::vector<BalanceResidual> out;
    for (size_t z = 0; z < sys.zones.size(); ++z) {
        for (int t = 0; t < b.hours; ++t) {
            const auto i = static_cast<size_t>(t);
            const double load = sys.load_at(static_cast<int>(z), b.year, b.period, t);
            LinExpr r = b.supply[z][i];
            r -= b.ev_load[z][i];
            r.add_constant(-load);
            r.normalize();
            if (r.terms().empty() && load > 0.0) {
                throw std::logic_error("zone '" + sys.zones[z].id + "' has load but no resource or line attached");
            }
            if (mode == BalanceMode::Hard) m.add_eq(r, 0.0, "balance");
            out.push_back({static_cast<int>(z), b.year, b.period, t, std::move(r)});
        }
    }
    return out;
}

namespace {

LinExpr cost_terms(const DispatchBlock& b, const core::SystemData& sys, int only_zone) {
    LinExpr c;
    auto counts = [&](int zone) { return only_zone < 0 || zone == only_zone; };
    for (size_t u = 0; u < sys.thermal.size(); ++u) {
        const auto& unit = sys.thermal[u];
        const auto& tv = b.thermal[u];
        if (!counts(unit.zone)) continue;
        for (size_t t = 0; t < tv.on.size(); ++t) {
            c.add(tv.start[t], unit.startup_cost);
            c.add(tv.stop[t], unit.shutdown_cost);
            c.add(tv.on[t], unit.cost_intercept);
            c.add(tv.p[t], unit.cost_slope);
        }
    }
    for (size_t li = 0; li < sys.lines.size(); ++li) {
        const auto& l = sys.lines[li];
        if (only_zone >= 0 && l.sign_at(only_zone) == 0) continue;
        const auto& lv = b.lines[li];
        for (size_t t = 0; t < lv.fwd.size(); ++t) {
            c.add(lv.fwd[t], l.wheeling_cost);
            c.add(lv.bwd[t], l.wheeling_cost);
        }
    }
    for (size_t r = 0; r < sys.renewables.size(); ++r) {
        if (!counts(sys.renewables[r].zone)) continue;
        for (Var v : b.renewable[r].curtail) {
            if (v.valid()) c.add(v, sys.renewables[r].curtailment_cost);
        }
    }
    return c;
}

}  // namespace

LinExpr generation_cost(const DispatchBlock& b, const core::SystemData& sys) { return cost_terms(b, sys, -1); }

LinExpr policy_zone_generation_cost(const DispatchBlock& b, const core::SystemData& sys) {
    return cost_terms(b, sys, sys.policy_zone());
}

}  // namespace gridplan::uc

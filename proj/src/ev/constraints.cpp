#include "gridplan/ev/constraints.hpp"

#include <stdexcept>
#include <string>

namespace gridplan::ev {

using core::tau;
using lp::LinExpr;
using lp::Var;

void add_fixed_load(uc::DispatchBlock& b, int zone, const std::array<double, 24>& profile) {
    auto& row = b.ev_load[static_cast<size_t>(zone)];
    for (int t = 0; t < b.hours; ++t) row[static_cast<size_t>(t)].add_constant(profile[static_cast<size_t>(t % 24)]);
}

EvVars add_ev_constraints(lp::Model& m, uc::DispatchBlock& b, const EvCluster& c, int ci, int y, Regime regime,
                          core::EvDischargeConvention convention) {
    EvVars ev;
    ev.cluster = ci;
    ev.regime = regime;
    const auto& cy = c.years[static_cast<size_t>(y)];
    if (cy.vehicles == 0) return ev;
    if (regime == Regime::Fixed) {
        add_fixed_load(b, c.zone, cy.fixed_profile);
        return ev;
    }
    if (cy.cdepot_mwh < cy.cmin_mwh - 1e-9 || cy.cdrive_mwh > cy.cmax_mwh + 1e-9) {
        throw std::runtime_error("cluster '" + c.id + "': boundary state of charge outside its bounds");
    }
    const int T = b.hours;
    const int L = c.window.hours();
    const bool v2g = regime == Regime::V2G;
    const double dis_factor =
        convention == core::EvDischargeConvention::Multiply ? c.eta_discharge : 1.0 / c.eta_discharge;
    ev.charge.assign(static_cast<size_t>(T), Var{});
    if (v2g) {
        ev.discharge.assign(static_cast<size_t>(T), Var{});
        ev.mode.assign(static_cast<size_t>(T), Var{});
    }
    auto name = [&](const char* kind, int t) {
        return std::string(kind) + "[" + c.id + "," + std::to_string(b.year) + "," + std::to_string(b.period) + "," +
               std::to_string(t) + "]";
    };
    auto& load = b.ev_load[static_cast<size_t>(c.zone)];
    for (int d = 0; d < T / 24; ++d) {
        std::vector<Var> soc;
        for (int k = 0; k <= L; ++k) {
            const int t = tau(c.window.t_depot + 24 * d + k, T);
            // Boundary pins enter as fixed bounds.
            double lo = cy.cmin_mwh, hi = cy.cmax_mwh;
            if (k == 0) lo = hi = cy.cdepot_mwh;
            if (k == L) lo = hi = cy.cdrive_mwh;
            soc.push_back(m.add_continuous(lo, hi, name("evsoc", t)));
        }
        for (int k = 0; k < L; ++k) {
            const int t = tau(c.window.t_depot + 24 * d + k, T);
            const auto i = static_cast<size_t>(t);
            Var pc = m.add_continuous(0.0, cy.pmax_mw, name("evpc", t));
            ev.charge[i] = pc;
            LinExpr rec(soc[static_cast<size_t>(k + 1)]);
            rec.add(soc[static_cast<size_t>(k)], -1.0).add(pc, -c.eta_charge);
            load[i].add(pc, 1.0);
            if (v2g) {
                Var pd = m.add_continuous(0.0, cy.pmax_mw, name("evpd", t));
                Var v = m.add_binary(name("evmode", t));
                ev.discharge[i] = pd;
                ev.mode[i] = v;
                m.add_le(LinExpr(pc) + cy.pmax_mw * LinExpr(v), cy.pmax_mw, "ev_power");
                m.add_le(LinExpr(pd) - cy.pmax_mw * LinExpr(v), 0.0, "ev_power");
                rec.add(pd, dis_factor);
                load[i].add(pd, -1.0);
            }
            m.add_eq(rec, 0.0, "ev_soc");
        }
        ev.soc.push_back(std::move(soc));
    }
    return ev;
}

}  // namespace gridplan::ev

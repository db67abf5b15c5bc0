#include "gridplan/plan/planning_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gridplan::plan {

namespace {

std::string yname(const char* kind, const std::string& id, int year) {
    return std::string(kind) + "[" + id + "," + std::to_string(year) + "]";
}

// Stock recursion capacity(y) = capacity(y-1) + build(y) - retire(y), starting from `base`.
AssetStock make_stock(lp::Model& m, const std::string& id, const core::TimeGrid& g, double base, bool can_build,
                      bool can_retire, bool binary, const std::vector<double>& cap, const char* kind) {
    AssetStock s;
    LinExpr prev(base);
    for (int y = 0; y < g.num_years(); ++y) {
        const int year = g.years[static_cast<size_t>(y)];
        const double ub = cap[static_cast<size_t>(y)];
        Var c = binary ? m.add_binary(yname(kind, id, year)) : m.add_continuous(0.0, ub, yname(kind, id, year));
        if (binary) m.var(c).ub = std::min(1.0, ub);
        LinExpr rec(c);
        rec -= prev;
        if (can_build) {
            Var b = binary ? m.add_binary(yname("build", id, year))
                           : m.add_continuous(0.0, lp::kInf, yname("build", id, year));
            rec.add(b, -1.0);
            s.build.push_back(b);
        }
        if (can_retire) {
            Var r = binary ? m.add_binary(yname("retire", id, year))
                           : m.add_continuous(0.0, lp::kInf, yname("retire", id, year));
            rec.add(r, 1.0);
            s.retire.push_back(r);
        }
        m.add_eq(rec, 0.0, "investment_stock");
        s.capacity.emplace_back(c);
        prev = LinExpr(c);
    }
    return s;
}

AssetStock constant_stock(const core::TimeGrid& g, const std::vector<double>& values) {
    AssetStock s;
    for (int y = 0; y < g.num_years(); ++y) s.capacity.emplace_back(values[static_cast<size_t>(y)]);
    return s;
}

void build_investment(PlanningModel& pm) {
    const auto& sys = *pm.sys;
    const auto& g = sys.grid;
    auto& m = pm.model;
    auto& inv = pm.investment;
    const bool on = pm.options.investment;
    const auto Y = static_cast<size_t>(g.num_years());

    for (const auto& u : sys.thermal) {
        std::vector<double> planned(Y), cap(Y);
        for (size_t y = 0; y < Y; ++y) {
            planned[y] = u.planned_status(g.years[y]);
            cap[y] = u.candidate ? 1.0 : planned[y];
        }
        if (on && (u.candidate || u.retirable)) {
            inv.thermal.push_back(
                make_stock(m, u.id, g, u.candidate ? 0.0 : 1.0, u.candidate, u.retirable, true, cap, "IU"));
        } else {
            inv.thermal.push_back(constant_stock(g, planned));
        }
    }
    for (const auto& r : sys.renewables) {
        if (on && (r.candidate || r.retirable)) {
            std::vector<double> cap(Y, r.candidate ? r.max_capacity_mw : r.planned_mw);
            inv.renewable.push_back(make_stock(m, r.id, g, r.planned_mw, r.candidate, r.retirable, false, cap, "IC"));
        } else {
            inv.renewable.push_back(constant_stock(g, std::vector<double>(Y, r.planned_mw)));
        }
    }
    for (const auto& s : sys.storage) {
        if (on && (s.candidate || s.retirable)) {
            std::vector<double> pcap(Y, s.candidate ? s.max_power_mw : s.planned_mw);
            std::vector<double> ecap(Y, s.candidate ? s.max_energy_mwh : s.planned_mwh);
            inv.storage_power.push_back(
                make_stock(m, s.id, g, s.planned_mw, s.candidate, s.retirable, false, pcap, "ICP"));
            inv.storage_energy.push_back(
                make_stock(m, s.id + "_e", g, s.planned_mwh, s.candidate, s.retirable, false, ecap, "ICE"));
        } else {
            inv.storage_power.push_back(constant_stock(g, std::vector<double>(Y, s.planned_mw)));
            inv.storage_energy.push_back(constant_stock(g, std::vector<double>(Y, s.planned_mwh)));
        }
    }

    inv.variable_credit.assign(Y, Var{});
    inv.storage_credit.assign(Y, Var{});
    if (!pm.options.policy) return;
    for (size_t y = 0; y < Y && y < sys.policy.years.size(); ++y) {
        if (sys.policy.years[y].prm <= 0.0) continue;
        const int year = g.years[y];
        if (!sys.policy.planes_for(sys.policy.variable_elcc, year).empty()) {
            inv.variable_credit[y] = m.add_continuous(0.0, lp::kInf, yname("elcc", "variable", year));
        }
        if (!sys.policy.planes_for(sys.policy.storage_elcc, year).empty()) {
            inv.storage_credit[y] = m.add_continuous(0.0, lp::kInf, yname("elcc", "storage", year));
        }
    }
}

uc::CapacityLinks links_for_year(const PlanningModel& pm, int y) {
    const auto& sys = *pm.sys;
    const auto& inv = pm.investment;
    const auto yi = static_cast<size_t>(y);
    uc::CapacityLinks c;
    for (const auto& s : inv.thermal) c.thermal_status.push_back(s.capacity[yi]);
    for (const auto& s : inv.renewable) c.renewable_mw.push_back(s.capacity[yi]);
    for (size_t k = 0; k < sys.storage.size(); ++k) {
        c.storage_mw.push_back(inv.storage_power[k].capacity[yi]);
        c.storage_mwh.push_back(inv.storage_energy[k].capacity[yi]);
        const auto& st = sys.storage[k];
        const bool var = !inv.storage_power[k].capacity[yi].is_constant();
        c.storage_mw_max.push_back(var ? (st.candidate ? st.max_power_mw : st.planned_mw) : st.planned_mw);
    }
    return c;
}

void add_policy(PlanningModel& pm) {
    const auto& sys = *pm.sys;
    const auto& g = sys.grid;
    auto& m = pm.model;
    const int pz = sys.policy_zone();
    const auto& inv = pm.investment;
    pm.emissions.assign(static_cast<size_t>(g.num_years()), LinExpr{});

    for (int y = 0; y < g.num_years(); ++y) {
        const auto yi = static_cast<size_t>(y);
        LinExpr emis, renewable_energy;
        double load_energy = 0.0;
        for (int w = 0; w < g.num_periods(); ++w) {
            const double ww = g.periods[static_cast<size_t>(w)].weight;
            const int bi = g.block_index(y, w);
            const auto& b = pm.blocks[static_cast<size_t>(bi)];
            for (size_t u = 0; u < sys.thermal.size(); ++u) {
                const auto& unit = sys.thermal[u];
                if (unit.zone != pz) continue;
                for (size_t t = 0; t < b.thermal[u].p.size(); ++t) {
                    emis.add(b.thermal[u].p[t], ww * unit.emission_slope);
                    emis.add(b.thermal[u].on[t], ww * unit.emission_intercept);
                }
            }
            const auto& imp = pm.imports[static_cast<size_t>(bi)];
            for (size_t l = 0; l < imp.size(); ++l) {
                for (Var v : imp[l]) emis.add(v, ww * sys.lines[l].emission_rate);
            }
            for (size_t r = 0; r < sys.renewables.size(); ++r) {
                const auto& res = sys.renewables[r];
                if (res.zone != pz || !res.rps_eligible) continue;
                for (const auto& out : b.renewable[r].output) renewable_energy.add(out, ww);
            }
            for (int t = 0; t < g.hours_per_period; ++t) load_energy += ww * sys.load_at(pz, y, w, t);
        }
        emis.normalize();
        pm.emissions[yi] = emis;
        if (!pm.options.policy || yi >= sys.policy.years.size()) continue;
        const auto& pol = sys.policy.years[yi];

        m.add_le(emis, pol.emissions_cap, "emissions", yname("emissions", "cap", g.years[yi]));
        if (pol.rps > 0.0) m.add_ge(renewable_energy, pol.rps * load_energy, "rps", yname("rps", "min", g.years[yi]));

        if (pol.prm > 0.0) {
            LinExpr firm;
            for (size_t u = 0; u < sys.thermal.size(); ++u) {
                const auto& unit = sys.thermal[u];
                if (unit.zone == pz) firm.add(inv.thermal[u].capacity[yi], unit.pmax * unit.nqc);
            }
            for (const auto& h : sys.hydro) {
                if (h.zone == pz) firm.add_constant(h.pmax * h.nqc);
            }
            LinExpr wind, solar, storage;
            for (size_t r = 0; r < sys.renewables.size(); ++r) {
                const auto& res = sys.renewables[r];
                if (res.zone != pz) continue;
                if (res.technology == core::Technology::Wind) wind += inv.renewable[r].capacity[yi];
                if (res.technology == core::Technology::Solar) solar += inv.renewable[r].capacity[yi];
            }
            for (size_t s = 0; s < sys.storage.size(); ++s) {
                if (sys.storage[s].zone != pz) continue;
                Var d = m.add_continuous(0.0, lp::kInf, yname("deliverable", sys.storage[s].id, g.years[yi]));
                m.add_le(LinExpr(d) - inv.storage_power[s].capacity[yi], 0.0, "prm");
                m.add_le(LinExpr(d) - (1.0 / sys.policy.storage_credit_hours) * inv.storage_energy[s].capacity[yi],
                         0.0, "prm");
                storage += d;
            }
            auto cuts = [&](Var credit, const std::vector<core::ElccPlane>& surface, const char* fam) {
                if (!credit.valid()) return;
                for (const auto& p : sys.policy.planes_for(surface, g.years[yi])) {
                    LinExpr e(credit);
                    e.add(wind, -p.wind).add(solar, -p.solar).add(storage, -p.storage);
                    m.add_le(e, p.intercept, fam);
                }
                firm.add(credit, 1.0);
            };
            cuts(inv.variable_credit[yi], sys.policy.variable_elcc, "elcc");
            cuts(inv.storage_credit[yi], sys.policy.storage_elcc, "elcc");
            m.add_ge(firm, pol.prm, "prm", yname("prm", "min", g.years[yi]));
        }
    }
}

void add_costs(PlanningModel& pm) {
    const auto& sys = *pm.sys;
    const auto& g = sys.grid;
    const int pz = sys.policy_zone();
    const auto& inv = pm.investment;
    const double rate = sys.discount_rate;
    pm.costs.assign(static_cast<size_t>(g.num_years()), YearCostExpr{});

    for (int y = 0; y < g.num_years(); ++y) {
        const auto yi = static_cast<size_t>(y);
        const double wy = g.year_weights[yi];
        auto& c = pm.costs[yi];
        for (int w = 0; w < g.num_periods(); ++w) {
            const double ww = g.periods[static_cast<size_t>(w)].weight;
            const auto& b = pm.blocks[static_cast<size_t>(g.block_index(y, w))];
            c.annual_gen.add(uc::generation_cost(b, sys), ww);
            c.ca_gen.add(uc::policy_zone_generation_cost(b, sys), ww * wy);
        }
        c.gen = wy * c.annual_gen;

        LinExpr ca_maint;
        auto maint = [&](int zone, const LinExpr& cap, double rate_per) {
            c.annual_maint.add(cap, rate_per);
            if (zone == pz) ca_maint.add(cap, rate_per);
        };
        for (size_t u = 0; u < sys.thermal.size(); ++u) {
            maint(sys.thermal[u].zone, inv.thermal[u].capacity[yi], sys.thermal[u].cost.maintenance);
        }
        for (size_t r = 0; r < sys.renewables.size(); ++r) {
            maint(sys.renewables[r].zone, inv.renewable[r].capacity[yi], sys.renewables[r].cost.maintenance);
        }
        for (size_t s = 0; s < sys.storage.size(); ++s) {
            maint(sys.storage[s].zone, inv.storage_power[s].capacity[yi], sys.storage[s].power_cost.maintenance);
            maint(sys.storage[s].zone, inv.storage_energy[s].capacity[yi], sys.storage[s].energy_cost.maintenance);
        }
        for (const auto& h : sys.hydro) maint(h.zone, LinExpr(h.pmax), h.cost.maintenance);
        c.maint = wy * c.annual_maint;
        c.ca_maint = wy * ca_maint;

        // Builds in year y pay their annuity for every remaining year of the horizon.
        const double remaining = g.remaining_year_weight(y);
        auto invest = [&](const AssetStock& s, const core::CostData& cost) {
            if (s.build.empty()) return;
            const double a = annualized_capital(cost, rate);
            c.inv.add(s.build[yi], a * remaining);
            for (size_t k = 0; k <= yi; ++k) c.annual_inv.add(s.build[k], a);
        };
        for (size_t u = 0; u < sys.thermal.size(); ++u) invest(inv.thermal[u], sys.thermal[u].cost);
        for (size_t r = 0; r < sys.renewables.size(); ++r) invest(inv.renewable[r], sys.renewables[r].cost);
        for (size_t s = 0; s < sys.storage.size(); ++s) {
            invest(inv.storage_power[s], sys.storage[s].power_cost);
            invest(inv.storage_energy[s], sys.storage[s].energy_cost);
        }
        for (auto* e : {&c.gen, &c.maint, &c.inv, &c.ca_gen, &c.ca_maint, &c.annual_gen, &c.annual_maint,
                        &c.annual_inv}) {
            e->normalize();
        }
        pm.model.add_objective(c.gen);
        pm.model.add_objective(c.maint);
        pm.model.add_objective(c.inv);
    }
    pm.model.objective().normalize();
}

}  // namespace

double annualized_capital(const core::CostData& c, double discount_rate) {
    return c.capital * core::capital_recovery_factor(discount_rate, c.lifetime_years);
}

PlanningModel build_planning_model(const core::SystemData& sys, const ev::EvFleet& fleet, const BuildOptions& opt) {
    PlanningModel pm;
    pm.sys = &sys;
    pm.fleet = &fleet;
    pm.options = opt;
    const auto& g = sys.grid;
    const bool have_ev = !fleet.years.empty();
    if (have_ev && fleet.years != g.years) throw std::invalid_argument("EV fleet years do not match the time grid");
    const int pz = sys.policy_zone();
    auto& m = pm.model;

    build_investment(pm);
    pm.var_block.assign(static_cast<size_t>(m.num_vars()), -1);

    pm.blocks.reserve(static_cast<size_t>(g.num_blocks()));
    for (int y = 0; y < g.num_years(); ++y) {
        const auto caps = links_for_year(pm, y);
        for (int w = 0; w < g.num_periods(); ++w) {
            auto b = uc::begin_block(m, sys, y, w);
            uc::add_resources(m, b, sys, caps);

            std::vector<ev::EvVars> evs;
            if (have_ev) {
                for (size_t ci = 0; ci < fleet.clusters.size(); ++ci) {
                    const auto& c = fleet.clusters[ci];
                    if (c.years[static_cast<size_t>(y)].modeled) {
                        evs.push_back(ev::add_ev_constraints(m, b, c, static_cast<int>(ci), y, opt.regime,
                                                             sys.ev.discharge));
                    } else {
                        evs.push_back(ev::EvVars{static_cast<int>(ci), ev::Regime::Fixed, {}, {}, {}, {}});
                    }
                }
                ev::add_fixed_load(b, sys.ev.zone, fleet.unmodeled_profile[static_cast<size_t>(y)]);
            }

            std::vector<std::vector<Var>> imp(sys.lines.size());
            if (opt.policy) {
                for (size_t l = 0; l < sys.lines.size(); ++l) {
                    const int sign = sys.lines[l].sign_at(pz);
                    if (sign == 0 || sys.lines[l].emission_rate <= 0.0) continue;
                    for (int t = 0; t < b.hours; ++t) {
                        Var v = m.add_continuous(0.0, lp::kInf,
                                                 "import[" + sys.lines[l].id + "," + std::to_string(y) + "," +
                                                     std::to_string(w) + "," + std::to_string(t) + "]");
                        m.add_ge(LinExpr(v) - sign * b.flow(static_cast<int>(l), t), 0.0, "import");
                        imp[l].push_back(v);
                    }
                }
            }

            auto res = uc::build_balance(m, b, sys, opt.balance);
            const double weight = g.year_weights[static_cast<size_t>(y)] * g.periods[static_cast<size_t>(w)].weight;
            for (auto& r : res) {
                pm.residuals.push_back(std::move(r));
                pm.residual_weight.push_back(weight);
            }
            b.end_var = m.num_vars();
            pm.var_block.resize(static_cast<size_t>(m.num_vars()), g.block_index(y, w));
            pm.blocks.push_back(std::move(b));
            pm.ev.push_back(std::move(evs));
            pm.imports.push_back(std::move(imp));
        }
    }
    add_policy(pm);
    // Credit variables are created with the investment block, policy rows after all blocks.
    pm.var_block.resize(static_cast<size_t>(m.num_vars()), -1);
    add_costs(pm);
    return pm;
}

lp::Model with_hard_balance(const PlanningModel& pm) {
    lp::Model m = pm.model;
    for (const auto& r : pm.residuals) m.add_eq(r.expr, 0.0, "balance");
    return m;
}

double CostLedger::total() const {
    double s = 0.0;
    for (const auto& y : years) s += y.total();
    return s;
}

double CostLedger::maintenance() const {
    double s = 0.0;
    for (const auto& y : years) s += y.maint;
    return s;
}

double CostLedger::investment() const {
    double s = 0.0;
    for (const auto& y : years) s += y.inv;
    return s;
}

double CostLedger::generation() const {
    double s = 0.0;
    for (const auto& y : years) s += y.gen;
    return s;
}

double CostLedger::ca_operational() const {
    double s = 0.0;
    for (const auto& y : years) s += y.ca_gen + y.ca_import;
    return s;
}

double CostLedger::ca_total() const {
    double s = 0.0;
    for (const auto& y : years) s += y.ca_gen + y.ca_import + y.ca_maint + y.inv;
    return s;
}

CostLedger evaluate_ledger(const PlanningModel& pm, std::span<const double> x) {
    const auto& sys = *pm.sys;
    const auto& g = sys.grid;
    const int pz = sys.policy_zone();
    CostLedger led;
    led.objective = pm.model.objective().evaluate(x);
    for (int y = 0; y < g.num_years(); ++y) {
        const auto yi = static_cast<size_t>(y);
        const auto& c = pm.costs[yi];
        YearLedger yl;
        yl.year = g.years[yi];
        yl.gen = c.gen.evaluate(x);
        yl.maint = c.maint.evaluate(x);
        yl.inv = c.inv.evaluate(x);
        yl.ca_gen = c.ca_gen.evaluate(x);
        yl.ca_maint = c.ca_maint.evaluate(x);
        yl.annual_gen = c.annual_gen.evaluate(x);
        yl.annual_maint = c.annual_maint.evaluate(x);
        yl.annual_inv = c.annual_inv.evaluate(x);
        yl.emissions = pm.emissions.empty() ? 0.0 : pm.emissions[yi].evaluate(x);

        // Imports into the policy zone valued at the other zones' average thermal cost.
        double other_cost = 0.0, other_mwh = 0.0, imported = 0.0, ev_mwh = 0.0;
        for (int w = 0; w < g.num_periods(); ++w) {
            const double ww = g.periods[static_cast<size_t>(w)].weight;
            const auto& b = pm.blocks[static_cast<size_t>(g.block_index(y, w))];
            for (size_t u = 0; u < sys.thermal.size(); ++u) {
                const auto& unit = sys.thermal[u];
                if (unit.zone == pz) continue;
                const auto& tv = b.thermal[u];
                for (size_t t = 0; t < tv.p.size(); ++t) {
                    const auto val = [&](Var v) { return x[static_cast<size_t>(v.index)]; };
                    other_cost += ww * (unit.startup_cost * val(tv.start[t]) + unit.shutdown_cost * val(tv.stop[t]) +
                                        unit.cost_intercept * val(tv.on[t]) + unit.cost_slope * val(tv.p[t]));
                    other_mwh += ww * val(tv.p[t]);
                }
            }
            for (size_t l = 0; l < sys.lines.size(); ++l) {
                const int sign = sys.lines[l].sign_at(pz);
                if (sign == 0) continue;
                for (int t = 0; t < b.hours; ++t) {
                    imported += ww * std::max(0.0, sign * b.flow(static_cast<int>(l), t).evaluate(x));
                }
            }
            for (const auto& zone : b.ev_load) {
                for (const auto& e : zone) ev_mwh += ww * e.evaluate(x);
            }
        }
        const double avg = other_mwh > 1e-9 ? other_cost / other_mwh : 0.0;
        yl.ca_import = g.year_weights[yi] * imported * avg;
        yl.ev_energy_mwh = ev_mwh;
        led.years.push_back(yl);
    }
    return led;
}

std::vector<CapacityRow> installed_capacity(const PlanningModel& pm, std::span<const double> x) {
    const auto& sys = *pm.sys;
    const auto& g = sys.grid;
    const auto& inv = pm.investment;
    std::vector<CapacityRow> out;
    auto flow = [&](const std::vector<Var>& v, size_t y) {
        return v.empty() ? 0.0 : x[static_cast<size_t>(v[y].index)];
    };
    for (size_t y = 0; y < static_cast<size_t>(g.num_years()); ++y) {
        const int year = g.years[y];
        auto push = [&](const std::string& id, const char* kind, const AssetStock& s, double scale) {
            out.push_back({year, id, kind, scale * s.capacity[y].evaluate(x), scale * flow(s.build, y),
                           scale * flow(s.retire, y)});
        };
        for (size_t u = 0; u < sys.thermal.size(); ++u) push(sys.thermal[u].id, "mw", inv.thermal[u], sys.thermal[u].pmax);
        for (size_t r = 0; r < sys.renewables.size(); ++r) push(sys.renewables[r].id, "mw", inv.renewable[r], 1.0);
        for (size_t s = 0; s < sys.storage.size(); ++s) {
            push(sys.storage[s].id, "mw", inv.storage_power[s], 1.0);
            push(sys.storage[s].id, "mwh", inv.storage_energy[s], 1.0);
        }
        for (const auto& h : sys.hydro) out.push_back({year, h.id, "mw", h.pmax, 0.0, 0.0});
    }
    return out;
}

}  // namespace gridplan::plan

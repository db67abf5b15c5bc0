#pragma once

// Static planning world: zones, lines, the generation fleet, loads and policy
// inputs. Immutable after loading; safe to share across solver workers.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridplan/core/time_grid.hpp"

namespace gridplan::core {

struct Zone {
    std::string id;
    bool policy_zone = false;
};

/// Transport-model corridor. Incidence is +1 for the zone the reference
/// direction points to and -1 for the zone it leaves.
struct Line {
    std::string id;
    std::vector<std::pair<int, int>> incidence;  // (zone index, sign)
    double limit_mw = 0.0;
    double wheeling_cost = 0.0;   // $/MWh
    double emission_rate = 0.0;   // ton/MWh of imported energy

    [[nodiscard]] int sign_at(int zone) const;
};

/// Overnight capital, yearly fixed maintenance and economic lifetime of one
/// cost component (per unit, per MW or per MWh depending on the resource).
struct CostData {
    double capital = 0.0;
    double maintenance = 0.0;
    double lifetime_years = 30.0;
};

struct ThermalUnit {
    std::string id;
    int zone = 0;
    double pmax = 0.0;
    double pmin = 0.0;
    double ramp_up = 0.0;
    double ramp_down = 0.0;
    int min_up = 1;
    int min_down = 1;
    double startup_cost = 0.0;
    double shutdown_cost = 0.0;
    double cost_slope = 0.0;       // $/MWh
    double cost_intercept = 0.0;   // $/h while committed
    double emission_slope = 0.0;   // ton/MWh
    double emission_intercept = 0.0;  // ton/h while committed
    double nqc = 1.0;
    bool candidate = false;
    /// Existing units are planned operational for years strictly before this
    /// year; 0 means no planned retirement.
    int retire_year = 0;
    bool retirable = false;
    CostData cost;

    /// Planned operational status IU^p for a calendar year.
    [[nodiscard]] double planned_status(int year) const;
};

enum class Technology { Solar, Wind, Firm, Other };

struct RenewableResource {
    std::string id;
    int zone = 0;
    Technology technology = Technology::Other;
    bool curtailable = true;
    bool rps_eligible = true;
    double curtailment_cost = 0.0;  // $/MWh
    double planned_mw = 0.0;
    bool candidate = false;
    double max_capacity_mw = 0.0;   // total installed cap for candidates
    bool retirable = false;
    CostData cost;                  // per MW
    std::vector<std::vector<double>> profile;  // [period][hour] production factor
};

struct StorageResource {
    std::string id;
    int zone = 0;
    double planned_mw = 0.0;
    double planned_mwh = 0.0;
    double eta_charge = 0.9;
    double eta_discharge = 0.9;
    double self_discharge = 0.0;  // fraction per hour
    double soc_max_frac = 1.0;
    double soc_min_frac = 0.0;
    int min_duration_h = 1;
    bool candidate = false;
    double max_power_mw = 0.0;
    double max_energy_mwh = 0.0;
    bool retirable = false;
    CostData power_cost;   // per MW
    CostData energy_cost;  // per MWh
};

struct HydroUnit {
    std::string id;
    int zone = 0;
    double pmax = 0.0;
    double pmin = 0.0;
    double ramp_up = 0.0;
    double ramp_down = 0.0;
    double budget_mwh = 0.0;  // per representative period
    double nqc = 1.0;
    CostData cost;            // maintenance per MW
};

/// One plane of a concave piecewise-linear capacity-credit surface:
/// credit <= intercept + wind*IC_wind + solar*IC_solar + storage*IC_storage.
struct ElccPlane {
    int year = 0;  // calendar year, 0 = all years
    double intercept = 0.0;
    double wind = 0.0;
    double solar = 0.0;
    double storage = 0.0;
};

struct YearPolicy {
    int year = 0;
    double emissions_cap = 0.0;  // ton/yr
    double rps = 0.0;            // fraction of policy-zone load
    double prm = 0.0;            // MW of firm capacity required
};

struct PolicyInputs {
    std::vector<YearPolicy> years;  // aligned with TimeGrid::years
    std::vector<ElccPlane> variable_elcc;
    std::vector<ElccPlane> storage_elcc;
    double storage_credit_hours = 4.0;  // storage MW counts for reserves only up to energy / this duration

    [[nodiscard]] std::vector<ElccPlane> planes_for(const std::vector<ElccPlane>& surface, int year) const;
};

/// How EV discharge enters the cluster state of charge.
enum class EvDischargeConvention {
    Multiply,  // soc -= p_d * eta_d  (as written for EV clusters)
    Divide,    // soc -= p_d / eta_d  (as written for stationary storage)
};

struct EvSettings {
    int zone = 0;
    double eta_charge = 0.95;
    double eta_discharge = 0.95;
    double cluster_threshold = 0.001;
    double soc_min_frac = 0.0;
    double soc_drive_frac = 1.0;  // departure state of charge as a fraction of capacity
    EvDischargeConvention discharge = EvDischargeConvention::Multiply;
};

struct SystemData {
    std::string name;
    TimeGrid grid;
    std::vector<Zone> zones;
    std::vector<Line> lines;
    std::vector<ThermalUnit> thermal;
    std::vector<RenewableResource> renewables;
    std::vector<StorageResource> storage;
    std::vector<HydroUnit> hydro;
    PolicyInputs policy;
    EvSettings ev;
    double discount_rate = 0.05;
    /// Zonal load in MW, flattened [zone][year][period][hour].
    std::vector<double> load;

    [[nodiscard]] int policy_zone() const;
    [[nodiscard]] int zone_index(const std::string& id) const;
    [[nodiscard]] size_t load_index(int z, int y, int w, int t) const;
    [[nodiscard]] double load_at(int z, int y, int w, int t) const { return load[load_index(z, y, w, t)]; }
    void resize_load();
    [[nodiscard]] double peak_load(int z) const;
};

/// Capital recovery factor for a discount rate and lifetime.
[[nodiscard]] double capital_recovery_factor(double rate, double lifetime_years);

}  // namespace gridplan::core

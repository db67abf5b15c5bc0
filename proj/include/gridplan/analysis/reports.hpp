#pragma once

#include <array>
#include <string>
#include <vector>

namespace gridplan::analysis {

// ---- savings ---------------------------------------------------------------

struct YearCost {
    int year = 0;
    double annual_cost = 0.0;  // undiscounted one-year system cost
    int vehicles = 0;
};

struct CostSummary {
    std::string scenario;
    std::string regime;
    double total = 0.0;
    double ca_total = 0.0;
    double maintenance = 0.0;
    double investment = 0.0;
    double ca_operational = 0.0;
    std::vector<YearCost> years;
};

struct SavingsRow {
    int year = 0;
    double saving_total = 0.0;
    double per_vehicle = 0.0;  // $/vehicle-yr, not discounted
};

struct SavingsReport {
    std::string baseline;
    std::string alternative;
    std::vector<SavingsRow> years;
};

/// Per-year (baseline - alternative) annual cost divided by that year's
/// vehicle count. Throws when the two summaries do not describe the same
/// scenario and years.
SavingsReport levelized_savings(const CostSummary& baseline, const CostSummary& alternative);

// ---- degradation proxy -----------------------------------------------------

struct Cycle {
    double range = 0.0;  // depth as a fraction of capacity
    double count = 1.0;  // 1 full cycle or 0.5 half cycle
};

/// Rainflow count of a closed (cyclic) series.
std::vector<Cycle> rainflow_cyclic(const std::vector<double>& series);

struct Chemistry {
    std::string name;
    double calendar_per_year = 0.0;  // % capacity per elapsed year
    double cycle_per_efc = 0.0;      // % capacity per depth-weighted equivalent full cycle
    double depth_exponent = 1.0;
};

[[nodiscard]] const std::array<Chemistry, 3>& default_chemistries();

/// State-of-charge trace of one cluster in one planning year: one cyclic
/// series of SoC fractions per representative period, with period weights.
struct ClusterTrace {
    std::string cluster;
    int year = 0;
    double capacity_mwh = 0.0;
    std::vector<std::vector<double>> periods;
    std::vector<double> weights;
};

/// Depth-weighted equivalent full cycles per year for one chemistry.
double annual_cycle_units(const ClusterTrace& trace, const Chemistry& chem);

struct DegradationConfig {
    int start_year = 2025;
    int end_year = 2045;
    double price_per_kwh = 100.0;
    double scale = 1.0;  // calibration multiplier on both terms
};

struct DegradationResult {
    double residual_pct = 100.0;
    double degraded_kwh = 0.0;
    double cost = 0.0;
    double raw_fade_pct = 0.0;  // unscaled chemistry-averaged fade
};

/// Capacity-weighted fleet degradation over [start_year, end_year]. Each
/// calendar year uses the most recent planning year's traces.
DegradationResult degradation_proxy(const std::vector<ClusterTrace>& traces, const DegradationConfig& cfg);

/// Scale that brings `baseline` to the target residual capacity.
double calibrate_degradation(const std::vector<ClusterTrace>& baseline, DegradationConfig cfg, double target_pct);

// ---- chargers --------------------------------------------------------------

enum class ChargerPolicy { Dedicated, PeakShared };

struct ChargerConfig {
    double unit_cost = 142200.0;
    double inverter_per_kw = 50.0;
    double charger_kw = 150.0;
};

struct ChargerYear {
    int year = 0;
    long long chargers = 0;
    double cost = 0.0;
};

struct ChargerReport {
    std::vector<ChargerYear> years;
    long long chargers = 0;  // largest yearly requirement
    double total_cost = 0.0;
};

/// Dedicated: one charger per vehicle charging that day. Peak-shared:
/// ceil(peak MW / charger MW), never more than the dedicated count. V2G adds
/// the inverter cost per charger.
ChargerReport charger_costs(const std::vector<int>& years, const std::vector<long long>& charging_vehicles,
                            const std::vector<double>& peak_mw, ChargerPolicy policy, bool v2g,
                            const ChargerConfig& cfg = {});

[[nodiscard]] long long dedicated_chargers(long long vehicles);
[[nodiscard]] long long peak_shared_chargers(double peak_mw, long long vehicles, double charger_kw = 150.0);

}  // namespace gridplan::analysis

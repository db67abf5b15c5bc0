#pragma once

// Scenario pipeline: load, cluster, build, solve, and write the run artifacts.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridplan/analysis/reports.hpp"
#include "gridplan/core/system.hpp"
#include "gridplan/ev/fleet.hpp"
#include "gridplan/plan/planning_model.hpp"
#include "gridplan/slr/slr.hpp"

namespace gridplan::analysis {

enum class SolveMode { Slr, Monolithic };

[[nodiscard]] std::optional<SolveMode> parse_mode(const std::string& s);
[[nodiscard]] const char* to_string(SolveMode m);

struct RunConfig {
    std::filesystem::path scenario;
    ev::Regime regime = ev::Regime::V2G;
    SolveMode mode = SolveMode::Slr;
    uint64_t seed = 1;
    std::filesystem::path out;
    double degradation_price = 100.0;  // $/kWh
    double charger_cost = 142200.0;    // $ per charger
    double inverter_per_kw = 50.0;
    std::string backend;  // empty: GRIDPLAN_BACKEND or highs
    int threads = 0;      // 0: GRIDPLAN_THREADS or 1
    double gap = 1e-4;
    double time_limit_s = 600.0;
    slr::SlrConfig slr;
};

/// Failure of one pipeline stage (load, cluster, build, solve, report).
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
    [[nodiscard]] const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct YearStats {
    int year = 0;
    int vehicles = 0;           // all trucks in the fleet that year
    long long charging_vehicles = 0;
    double ev_peak_mw = 0.0;    // largest hourly EV charging draw
};

struct RunOutcome {
    std::string scenario;
    ev::Regime regime = ev::Regime::V2G;
    SolveMode mode = SolveMode::Slr;
    slr::PlanSolution solution;
    std::vector<slr::DualIterate> iterations;
    plan::CostLedger ledger;
    std::vector<plan::CapacityRow> capacity;
    std::vector<YearStats> years;
    std::vector<ClusterTrace> traces;

    [[nodiscard]] CostSummary summary() const;
};

/// Solves an already loaded scenario. Throws StageError("solve", ...) when no
/// feasible plan is found.
RunOutcome solve_scenario(const core::SystemData& sys, const ev::EvFleet& fleet, const RunConfig& cfg);

/// EV SoC traces of every controlled cluster at a solution (fixed regime
/// traces follow the fixed profile).
std::vector<ClusterTrace> soc_traces(const plan::PlanningModel& pm, std::span<const double> x);

/// Whole pipeline with artifacts written to cfg.out.
RunOutcome run(const RunConfig& cfg);

void write_artifacts(const RunOutcome& r, const plan::PlanningModel& pm, std::span<const double> x,
                     const std::filesystem::path& out);

/// Reads the cost summary of a finished run directory.
CostSummary read_summary(const std::filesystem::path& run_dir);
std::vector<YearStats> read_year_stats(const std::filesystem::path& run_dir);
std::vector<ClusterTrace> read_traces(const std::filesystem::path& run_dir);

}  // namespace gridplan::analysis

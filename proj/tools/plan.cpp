#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gridplan/analysis/reports.hpp"
#include "gridplan/analysis/run.hpp"
#include "gridplan/core/csv.hpp"
#include "gridplan/core/scenario_io.hpp"
#include "gridplan/core/validate.hpp"
#include "gridplan/ev/fleet.hpp"

namespace fs = std::filesystem;
using namespace gridplan;
using core::csv_number;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct RunFlags {
    std::string scenario;
    std::string regime = "v2g";
    std::string mode = "slr";
    uint64_t seed = 1;
    std::string out;
    bool progress = false;
    analysis::RunConfig cfg;
};

void add_run_flags(CLI::App* c, RunFlags& f, bool single) {
    if (single) c->add_option("--scenario", f.scenario, "scenario directory")->required()->check(CLI::ExistingDirectory);
    if (single) c->add_option("--regime", f.regime, "fixed | v1g | v2g")->check(CLI::IsMember({"fixed", "v1g", "v2g"}));
    c->add_option("--mode", f.mode, "slr | monolithic")->check(CLI::IsMember({"slr", "monolithic"}));
    c->add_option("--seed", f.seed, "fleet bootstrap seed");
    c->add_option("--out", f.out, "output directory");
    c->add_option("--degradation-price", f.cfg.degradation_price, "$/kWh");
    c->add_option("--charger-cost", f.cfg.charger_cost, "$ per charger");
    c->add_option("--inverter-cost", f.cfg.inverter_per_kw, "$/kW");
    c->add_option("--backend", f.cfg.backend, "solver backend (default GRIDPLAN_BACKEND or highs)");
    c->add_option("--threads", f.cfg.threads, "solver threads (default GRIDPLAN_THREADS or 1)");
    c->add_option("--gap", f.cfg.gap, "relative MIP gap");
    c->add_option("--time-limit", f.cfg.time_limit_s, "seconds per backend solve");
    c->add_option("--max-iterations", f.cfg.slr.max_iterations, "surrogate iterations");
    c->add_option("--s0", f.cfg.slr.step.s0, "initial step");
    c->add_option("--alpha", f.cfg.slr.step.alpha, "step decay");
    c->add_option("--tolerance", f.cfg.slr.tolerance_frac, "residual tolerance as a fraction of zone peak");
    c->add_option("--penalty", f.cfg.slr.penalty0, "initial |r| penalty ($/MWh)");
    c->add_option("--penalty-growth", f.cfg.slr.penalty_growth, "per-iteration penalty factor");
    c->add_flag("--progress", f.progress, "print surrogate iterations to stderr");
}

analysis::RunConfig finish(const RunFlags& f) {
    auto cfg = f.cfg;
    cfg.scenario = f.scenario;
    cfg.regime = *ev::parse_regime(f.regime);
    cfg.mode = *analysis::parse_mode(f.mode);
    cfg.seed = f.seed;
    cfg.out = f.out;
    if (f.progress) {
        cfg.slr.on_iterate = [](const slr::DualIterate& it) {
            std::fprintf(stderr, "k=%d max|r|=%.4g (%.3g%% of peak) c=%.3g step=%.3g blocks=%d %.1fs\n", it.k,
                         it.max_residual, 100.0 * it.max_residual_frac, it.penalty, it.step, it.subset_blocks,
                         it.seconds);
        };
    }
    return cfg;
}

void print_outcome(const analysis::RunOutcome& r) {
    const auto& L = r.ledger;
    std::printf("%s %s %s: objective %.6g (bound %.6g, gap %.3g%%), %.1f s\n", r.scenario.c_str(),
                ev::to_string(r.regime), analysis::to_string(r.mode), r.solution.objective, r.solution.bound,
                100.0 * r.solution.gap, r.solution.seconds);
    std::printf("  total %.6g  ca_total %.6g  maintenance %.6g  investment %.6g  ca_operational %.6g\n", L.total(),
                L.ca_total(), L.maintenance(), L.investment(), L.ca_operational());
}

int cmd_validate(const std::string& scenario) {
    const auto sys = core::load_system(scenario);
    const auto v = core::validate_system(sys);
    for (const auto& x : v) std::printf("%s: %s\n", x.code.c_str(), x.message.c_str());
    if (!v.empty()) return kFailure;
    std::printf("%s: ok (%d zones, %d years, %d periods)\n", sys.name.c_str(), static_cast<int>(sys.zones.size()),
                sys.grid.num_years(), sys.grid.num_periods());
    return kOk;
}

int cmd_cluster(const std::string& scenario, uint64_t seed, const std::string& out) {
    const auto sys = core::load_system(scenario);
    const auto fleet = ev::load_fleet(scenario, sys, seed);
    fs::create_directories(out);
    ev::write_clusters(fleet, out);
    for (size_t y = 0; y < fleet.years.size(); ++y) {
        int modeled = 0;
        for (const auto& c : fleet.clusters) modeled += c.years[y].modeled ? 1 : 0;
        std::printf("%d: %d vehicles, %d clusters modeled, coverage %.2f%%, routed %d\n", fleet.years[y],
                    fleet.vehicles_in_year(static_cast<int>(y)), modeled,
                    100.0 * fleet.coverage(static_cast<int>(y)), fleet.routed_vehicles[y]);
    }
    return kOk;
}

void write_report(const std::vector<analysis::CostSummary>& runs, std::ostream& out) {
    out << "regime,total,ca_total,maintenance,investment,ca_operational\n";
    for (const auto& s : runs) {
        out << s.regime << ',' << csv_number(s.total) << ',' << csv_number(s.ca_total) << ','
            << csv_number(s.maintenance) << ',' << csv_number(s.investment) << ',' << csv_number(s.ca_operational)
            << '\n';
    }
    out << "\nbaseline,alternative,year,saving_total,per_vehicle\n";
    for (size_t i = 1; i < runs.size(); ++i) {
        const auto rep = analysis::levelized_savings(runs.front(), runs[i]);
        for (const auto& y : rep.years) {
            out << rep.baseline << ',' << rep.alternative << ',' << y.year << ',' << csv_number(y.saving_total)
                << ',' << csv_number(y.per_vehicle) << '\n';
        }
    }
}

int cmd_report(const std::vector<std::string>& dirs, const std::string& out) {
    std::vector<analysis::CostSummary> runs;
    for (const auto& d : dirs) runs.push_back(analysis::read_summary(d));
    if (out.empty()) {
        write_report(runs, std::cout);
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write " + out);
        write_report(runs, f);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacity expansion and unit commitment planning with truck charging"};
    app.require_subcommand(1);

    std::string scenario;
    auto* validate = app.add_subcommand("validate", "check a scenario directory");
    validate->add_option("--scenario", scenario)->required()->check(CLI::ExistingDirectory);

    uint64_t cseed = 1;
    std::string cout_dir;
    auto* cluster = app.add_subcommand("cluster", "bootstrap and cluster the truck fleet");
    cluster->add_option("--scenario", scenario)->required()->check(CLI::ExistingDirectory);
    cluster->add_option("--seed", cseed);
    cluster->add_option("--out", cout_dir)->required();

    RunFlags rf;
    auto* run = app.add_subcommand("run", "cluster, build, solve and report one scenario");
    add_run_flags(run, rf, true);

    RunFlags sf;
    std::vector<std::string> sweep_scenarios;
    auto* sweep = app.add_subcommand("sweep", "run fixed, v1g and v2g on one or more scenarios");
    add_run_flags(sweep, sf, false);
    sweep->add_option("--scenario", sweep_scenarios, "scenario directories")->required()->check(CLI::ExistingDirectory);
    sweep->get_option("--out")->required();

    std::vector<std::string> report_dirs;
    std::string report_out;
    auto* report = app.add_subcommand("report", "cost table and per-vehicle savings (first run is the baseline)");
    report->add_option("--runs", report_dirs, "run directories")->required()->expected(1, -1)->check(CLI::ExistingDirectory);
    report->add_option("--out", report_out, "CSV file (default stdout)");

    std::vector<std::string> degrade_dirs;
    std::string degrade_baseline;
    analysis::DegradationConfig dcfg;
    double target = 81.9;
    auto* degrade = app.add_subcommand("degrade", "battery degradation proxy of solved runs");
    degrade->add_option("--baseline", degrade_baseline, "run used for calibration")->required()->check(CLI::ExistingDirectory);
    degrade->add_option("--runs", degrade_dirs, "runs to evaluate")->expected(0, -1)->check(CLI::ExistingDirectory);
    degrade->add_option("--price", dcfg.price_per_kwh, "$/kWh");
    degrade->add_option("--target", target, "baseline residual capacity %");
    degrade->add_option("--start-year", dcfg.start_year);
    degrade->add_option("--end-year", dcfg.end_year);

    std::string charger_run, policy = "dedicated";
    std::vector<long long> vehicles;
    std::vector<double> peaks;
    bool v2g = false;
    analysis::ChargerConfig ccfg;
    auto* chargers = app.add_subcommand("chargers", "charger counts and costs");
    chargers->add_option("--run", charger_run, "solved run directory")->check(CLI::ExistingDirectory);
    chargers->add_option("--vehicles", vehicles, "vehicles charging per day, one per year");
    chargers->add_option("--peak-mw", peaks, "peak hourly charging MW, one per year");
    chargers->add_option("--policy", policy, "dedicated | peak-shared")->check(CLI::IsMember({"dedicated", "peak-shared"}));
    chargers->add_flag("--v2g", v2g, "add the bidirectional inverter cost");
    chargers->add_option("--unit-cost", ccfg.unit_cost, "$ per charger");
    chargers->add_option("--inverter-cost", ccfg.inverter_per_kw, "$/kW");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*validate) return cmd_validate(scenario);
        if (*cluster) return cmd_cluster(scenario, cseed, cout_dir);
        if (*run) {
            auto cfg = finish(rf);
            if (cfg.out.empty()) cfg.out = fs::path("runs") / (fs::path(rf.scenario).filename().string() + "_" + rf.regime);
            print_outcome(analysis::run(cfg));
            return kOk;
        }
        if (*sweep) {
            std::vector<std::string> dirs;
            for (const auto& sc : sweep_scenarios) {
                for (const char* reg : {"fixed", "v1g", "v2g"}) {
                    auto f = sf;
                    f.scenario = sc;
                    f.regime = reg;
                    auto cfg = finish(f);
                    cfg.out = fs::path(sf.out) / fs::path(sc).filename() / reg;
                    print_outcome(analysis::run(cfg));
                    dirs.push_back(cfg.out.string());
                }
                cmd_report({dirs.end() - 3, dirs.end()}, (fs::path(sf.out) / fs::path(sc).filename() / "report.csv").string());
            }
            return kOk;
        }
        if (*report) return cmd_report(report_dirs, report_out);
        if (*degrade) {
            const auto base = analysis::read_traces(degrade_baseline);
            dcfg.scale = analysis::calibrate_degradation(base, dcfg, target);
            std::printf("run,residual_pct,degraded_kwh,cost\n");
            std::vector<std::string> all{degrade_baseline};
            all.insert(all.end(), degrade_dirs.begin(), degrade_dirs.end());
            for (const auto& d : all) {
                const auto r = analysis::degradation_proxy(analysis::read_traces(d), dcfg);
                std::printf("%s,%s,%s,%s\n", d.c_str(), csv_number(r.residual_pct).c_str(),
                            csv_number(r.degraded_kwh).c_str(), csv_number(r.cost).c_str());
            }
            return kOk;
        }
        if (*chargers) {
            std::vector<int> years;
            if (!charger_run.empty()) {
                vehicles.clear();
                peaks.clear();
                for (const auto& y : analysis::read_year_stats(charger_run)) {
                    years.push_back(y.year);
                    vehicles.push_back(y.charging_vehicles);
                    peaks.push_back(y.ev_peak_mw);
                }
            } else {
                if (vehicles.empty()) {
                    std::fprintf(stderr, "chargers: give --run or --vehicles\n");
                    return kUsage;
                }
                for (size_t i = 0; i < vehicles.size(); ++i) years.push_back(static_cast<int>(i));
            }
            const auto pol = policy == "dedicated" ? analysis::ChargerPolicy::Dedicated : analysis::ChargerPolicy::PeakShared;
            if (pol == analysis::ChargerPolicy::PeakShared && peaks.size() != vehicles.size()) {
                std::fprintf(stderr, "chargers: peak-shared needs one --peak-mw per year\n");
                return kUsage;
            }
            const auto rep = analysis::charger_costs(years, vehicles, peaks, pol, v2g, ccfg);
            std::printf("year,chargers,cost\n");
            for (const auto& y : rep.years) std::printf("%d,%lld,%s\n", y.year, y.chargers, csv_number(y.cost).c_str());
            std::printf("total,%lld,%s\n", rep.chargers, csv_number(rep.total_cost).c_str());
            return kOk;
        }
    } catch (const analysis::StageError& e) {
        std::fprintf(stderr, "error [%s] %s\n", e.stage().c_str(), e.what());
        return kFailure;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFailure;
    }
    return kUsage;
}

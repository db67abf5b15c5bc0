#pragma once

// Truck fleet synthesis: drive records are bootstrapped into per-year fleets,
// vehicles are grouped by rounded depot window into clusters, and clusters
// below the size threshold fall back to a fixed charging profile.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gridplan/core/system.hpp"

namespace gridplan::ev {

enum class VehicleClass { C2_3, C4_6, C7, C8 };

[[nodiscard]] std::optional<VehicleClass> parse_class(const std::string& s);
[[nodiscard]] const char* to_string(VehicleClass c);

struct VehicleSpec {
    VehicleClass cls;
    double charger_kw;
    double battery_kwh;
    double kwh_per_mile;
};

[[nodiscard]] const std::array<VehicleSpec, 4>& vehicle_specs();
[[nodiscard]] const VehicleSpec& spec_for(VehicleClass c);

struct DriveRecord {
    VehicleClass cls = VehicleClass::C8;
    std::string vocation;
    double start_h = 0.0;  // leaves the depot
    double end_h = 0.0;    // returns to the depot
    double miles = 0.0;
};

struct Projection {
    int year = 0;
    VehicleClass cls = VehicleClass::C8;
    std::string vocation;
    int count = 0;
};

/// "HH:MM" (or fractional hours) to hours in [0, 24).
[[nodiscard]] double parse_hhmm(const std::string& s);

std::vector<DriveRecord> load_drives(const std::filesystem::path& file);
std::vector<Projection> load_population(const std::filesystem::path& file);

struct Vehicle {
    VehicleClass cls = VehicleClass::C8;
    std::string vocation;
    int record = -1;
    double arrival_h = 0.0;
    double departure_h = 0.0;
    double charger_kw = 0.0;
    double capacity_kwh = 0.0;
    double consumption_kwh = 0.0;
    double arrival_soc_kwh = 0.0;
    double departure_soc_kwh = 0.0;
};

struct FleetYear {
    int year = 0;
    std::vector<Vehicle> vehicles;
};

struct BootstrapResult {
    std::vector<FleetYear> years;
    int rejected_records = 0;  // records whose consumption cannot be covered by one charge
};

/// Stratified sampling with replacement. Deterministic for a given seed on
/// every platform (splitmix64 stream, unbiased index draws).
BootstrapResult bootstrap_fleet(const std::vector<DriveRecord>& records, const std::vector<Projection>& projections,
                                uint64_t seed, const core::EvSettings& settings);

/// Unbiased integer in [0, n) from a 64-bit generator state.
uint64_t draw_index(uint64_t& state, uint64_t n);

enum class Regime { Fixed, V1G, V2G };

[[nodiscard]] std::optional<Regime> parse_regime(const std::string& s);
[[nodiscard]] const char* to_string(Regime r);

/// Rounded charging window: charging is possible during hours
/// t_depot .. t_drive + t_wrap - 1 (cyclic), and the vehicle must be full at t_drive.
struct Window {
    int t_depot = 0;
    int t_drive = 0;
    int t_wrap = 0;  // 24 when the window crosses midnight
    [[nodiscard]] int hours() const { return t_drive + t_wrap - t_depot; }
    [[nodiscard]] bool empty() const { return hours() <= 0; }
};

[[nodiscard]] Window round_window(double arrival_h, double departure_h);

struct ClusterYear {
    int year = 0;
    int vehicles = 0;
    bool modeled = false;
    double pmax_mw = 0.0;
    double cmax_mwh = 0.0;
    double cmin_mwh = 0.0;
    double cdepot_mwh = 0.0;
    double cdrive_mwh = 0.0;
    std::array<double, 24> fixed_profile{};  // MW by hour of day

    /// Grid-side energy needed per day.
    [[nodiscard]] double energy_need_mwh(double eta_charge) const { return (cdrive_mwh - cdepot_mwh) / eta_charge; }
};

struct EvCluster {
    std::string id;
    int zone = 0;
    Window window;
    double eta_charge = 0.95;
    double eta_discharge = 0.95;
    std::vector<ClusterYear> years;  // aligned with EvFleet::years
};

struct EvFleet {
    std::vector<int> years;
    std::vector<EvCluster> clusters;
    std::vector<std::array<double, 24>> unmodeled_profile;  // per year, MW by hour of day
    std::vector<int> fleet_size;
    std::vector<int> modeled_vehicles;
    std::vector<int> routed_vehicles;  // window empty or too short after rounding

    [[nodiscard]] bool empty() const { return clusters.empty() && fleet_size.empty(); }
    [[nodiscard]] int vehicles_in_year(int year_index) const;
    [[nodiscard]] double coverage(int year_index) const;
};

/// The two charging patterns, each carrying the whole need; the fixed profile
/// is their average (half the fleet follows each).
struct ProfileParts {
    std::array<double, 24> immediate{};
    std::array<double, 24> spread{};
    [[nodiscard]] std::array<double, 24> total() const;
};

/// Half the fleet charges at full power from the window start until its need
/// is met; the other half draws a constant power across the whole window.
/// Throws when the need cannot be delivered within the window.
ProfileParts fixed_profile_parts(double need_mwh, double pmax_mw, const Window& w, const std::string& cluster_id);
std::array<double, 24> fixed_profile(double need_mwh, double pmax_mw, const Window& w, const std::string& cluster_id);

/// Groups each year's vehicles by rounded window. Clusters holding fewer than
/// `threshold` of the year's fleet, and vehicles whose rounded window cannot
/// hold their charge, are left uncontrolled on a fixed profile.
EvFleet cluster_vehicles(const std::vector<FleetYear>& fleet, const core::EvSettings& settings);

/// Writes clusters.csv and fixed_profiles.csv.
void write_clusters(const EvFleet& fleet, const std::filesystem::path& dir);

/// Reads clusters.csv and fixed_profiles.csv (externally simulated fleets).
EvFleet read_clusters(const std::filesystem::path& dir, const core::SystemData& sys);

/// Fleet for a scenario: bootstrapped from drives.csv/population.csv when
/// present, else read from clusters.csv, else empty.
EvFleet load_fleet(const std::filesystem::path& dir, const core::SystemData& sys, uint64_t seed);

}  // namespace gridplan::ev

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tclflex/economics.hpp"
#include "tclflex/fleet.hpp"

namespace tclflex {

struct ClassConfig {
    DeviceClass device;
    CapitalCost capital_cost;
    std::string cycles_per_year;
};

struct CityConfig {
    std::string name;
    double households = 0.0;
    std::string temperature_file; ///< relative to the temperature directory
};

struct MarketConfig {
    double mileage_multiplier = 2.5;
    double accuracy = 0.95;
};

enum class TrackSignalType { file, sinusoid, step, zero };

struct TrackConfig {
    std::string device_class = "ac";
    std::size_t units = 1000;
    double ambient = 32.0;
    double horizon_hours = 1.0;
    TrackSignalType signal = TrackSignalType::sinusoid;
    /// sinusoid amplitude, or file-trace scale, as a fraction of min(n₋, n₊)
    double amplitude_fraction = 0.5;
    double period_minutes = 20.0;
    /// step level as a fraction of n₊ (positive) or n₋ (negative)
    double step_fraction = 1.5;
    double ramp_fraction = 0.5;
    int delay_steps = 0;
    double min_dwell_seconds = 0.0;
    double disturbance_std = 0.0;
};

struct EnergyRequirementConfig {
    std::vector<double> dissipation{0.25, 0.02};
    std::vector<double> amplitudes_mw{600.0, 1300.0};
};

/// Everything a run needs besides time-series inputs.
struct FleetConfig {
    double households_total = 0.0;
    std::vector<ClassConfig> classes;
    std::vector<CityConfig> cities;
    MarketConfig market;
    TrackConfig track;
    EnergyRequirementConfig energy_requirement;
    std::string storage_reference; ///< relative to the config file
    std::filesystem::path base_dir;

    [[nodiscard]] std::vector<DeviceClass> device_classes() const;
    [[nodiscard]] const ClassConfig* find_class(const std::string& name) const;
};

/// Parses the JSON fleet configuration. Any TCL parameter may be given as a
/// number or as a `[low, high]` range, in which case the midpoint is used.
FleetConfig parse_fleet_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
FleetConfig load_fleet_config(const std::filesystem::path& path);

std::vector<StorageTech> parse_storage_techs(std::string_view json_text);
std::vector<StorageTech> load_storage_techs(const std::filesystem::path& path);

} // namespace tclflex

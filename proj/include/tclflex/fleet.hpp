#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tclflex/battery.hpp"
#include "tclflex/tcl_dynamics.hpp"

namespace tclflex {

enum class ParticipationDirection { increasing, decreasing };

/// Fraction of installed units available for dispatch as a function of ambient
/// temperature: p_min + (p_max − p_min)·(atan(±k(θ − θ_mid))/π + 1/2).
struct ParticipationCurve {
    double p_min = 0.0;
    double p_max = 1.0;
    double midpoint = 25.0; ///< °C
    double slope = 0.5;     ///< 1/°C
    ParticipationDirection direction = ParticipationDirection::increasing;

    void validate() const;
    [[nodiscard]] double operator()(double ambient) const;
};

double participation(const ParticipationCurve& curve, double ambient);

struct DeviceClass {
    std::string name;
    TclParams params;
    double saturation_rate = 0.0; ///< units per household, may exceed 1
    std::optional<double> fixed_ambient; ///< °C; bypasses city weather and participation
    std::optional<ParticipationCurve> participation; ///< absent means always participating

    void validate() const;
};

struct CityProfile {
    std::string name;
    double households = 0.0;
    AmbientSeries ambient;
};

/// Household-share weights, in city order. Sums to 1.
std::vector<double> city_weights(std::span<const CityProfile> cities);

/// Hourly envelope of one device class, in kW / kWh.
struct ClassFlexibility {
    std::string name;
    double installed_units = 0.0;
    double dissipation = 0.0; ///< 1/h, the class's a
    bool temperature_independent = false;
    std::vector<double> decrease_limit; ///< n₋ per hour
    std::vector<double> increase_limit; ///< n₊ per hour
    std::vector<double> capacity;       ///< 𝒞 per hour
    std::vector<double> participating_units; ///< weighted N_eff per hour
};

struct FlexibilitySeries {
    Timestamp start{};
    double step_hours = 1.0;
    std::vector<ClassFlexibility> classes;
    std::vector<double> total_decrease_limit;
    std::vector<double> total_increase_limit;
    std::vector<double> total_capacity;

    [[nodiscard]] std::size_t hours() const noexcept { return total_capacity.size(); }
    [[nodiscard]] const ClassFlexibility* find(const std::string& name) const;
};

/// Per-hour, per-class battery envelope weighted across cities.
FlexibilitySeries hourly_flexibility(std::span<const DeviceClass> classes, std::span<const CityProfile> cities,
                                     double households_total);

struct ClassPeak {
    std::string name;
    double decrease_limit = 0.0;
    double increase_limit = 0.0;
    double capacity = 0.0;
    double dissipation = 0.0;
};

struct FlexibilitySummary {
    std::vector<ClassPeak> peaks;
    double min_total_decrease_limit = 0.0;
    double min_total_increase_limit = 0.0;
    double min_total_capacity = 0.0;
    std::size_t min_decrease_hour = 0;
    std::size_t min_increase_hour = 0;
    std::size_t min_capacity_hour = 0;
};

/// Per-class maxima and minima of the combined series over the horizon.
FlexibilitySummary summary_stats(const FlexibilitySeries& series);

/// Average temperature for each UTC hour of day (24 values, starting at 00:00).
AmbientSeries diurnal_profile(const AmbientSeries& hourly);

} // namespace tclflex

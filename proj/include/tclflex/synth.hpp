#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tclflex/battery.hpp"
#include "tclflex/market.hpp"
#include "tclflex/tcl_dynamics.hpp"

namespace tclflex {

// Synthetic, non-historical fixtures. Everything written here lives under a
// `synthetic` directory and carries a "synthetic" comment line.

struct CityClimate {
    std::string name;
    double households = 0.0;
    double annual_mean = 0.0;       ///< °C
    double annual_amplitude = 0.0;  ///< °C, peak in late July
    double diurnal_amplitude = 0.0; ///< °C, peak mid-afternoon local time
    double noise_std = 1.5;         ///< °C, hourly AR(1) weather noise
};

/// Five California cities with household counts and rough climatology.
std::vector<CityClimate> default_california_cities();

struct SynthOptions {
    Timestamp start = std::chrono::sys_days{std::chrono::year{2013} / 6 / 1};
    std::size_t hours = 8760;
    double signal_hours = 24.0;
    double signal_step_seconds = 4.0;
};

struct SynthFixtures {
    std::vector<std::string> city_names;
    std::vector<AmbientSeries> temperatures;
    PriceSeries prices;
    SignalSeries signal; ///< normalized
};

AmbientSeries synthetic_temperature(const CityClimate& city, Timestamp start, std::size_t hours, std::uint64_t seed);

/// Zero-mean band-limited trace in [−1, 1] (periods from one minute to a few hours).
SignalSeries synthetic_regulation_signal(std::uint64_t seed, double hours = 24.0, double step_seconds = 4.0);

/// Flat prices at the 2013–14 CAISO averages: 4.61 / 3.43 / 0.069 / 0.130 $/MW.
PriceSeries synthetic_flat_prices(Timestamp start, std::size_t hours);

SynthFixtures synth_fixtures(std::uint64_t seed, std::span<const CityClimate> cities, const SynthOptions& options = {});

/// Writes `<dir>/temps/<city>.csv`, `<dir>/prices.csv` and `<dir>/regulation_signal.csv`.
void write_fixtures(const SynthFixtures& fixtures, const std::filesystem::path& dir, std::uint64_t seed);

} // namespace tclflex

#include "tclflex/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "tclflex/ingest.hpp"
#include "tclflex/numeric.hpp"

namespace tclflex {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kPacificOffsetHours = -8;
constexpr double kPeakDayOfYear = 205.0; // late July

/// Rounds to `decimals` places so the value prints as its short decimal form.
double round_to(double v, int decimals)
{
    const double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

} // namespace

std::vector<CityClimate> default_california_cities()
{
    return {
        {"SA", 558'807, 16.5, 8.0, 8.0, 1.5},
        {"SF", 380'971, 14.5, 3.0, 3.5, 1.2},
        {"BF", 288'342, 19.0, 10.0, 7.5, 1.5},
        {"LA", 3'462'202, 18.5, 4.5, 5.0, 1.3},
        {"SD", 1'176'718, 17.5, 3.5, 4.0, 1.2},
    };
}

AmbientSeries synthetic_temperature(const CityClimate& city, Timestamp start, std::size_t hours, std::uint64_t seed)
{
    using namespace std::chrono;
    std::mt19937_64 rng(seed ^ fnv1a64(city.name));
    std::normal_distribution<double> z(0.0, 1.0);
    constexpr double phi = 0.9;
    const double innovation = city.noise_std * std::sqrt(1.0 - phi * phi);

    const auto year_start = sys_days{year_month_day{floor<days>(start)}.year() / 1 / 1};
    AmbientSeries s;
    s.start = start;
    s.step_hours = 1.0;
    s.values.reserve(hours);
    double noise = 0.0;
    for (std::size_t h = 0; h < hours; ++h) {
        const Timestamp t = start + std::chrono::hours(static_cast<long long>(h));
        const double day_of_year = duration<double, days::period>(t - year_start).count();
        const int local_hour = (utc_hour(t) + 24 + kPacificOffsetHours) % 24;
        noise = phi * noise + innovation * z(rng);
        const double v = city.annual_mean + city.annual_amplitude * std::cos(kTwoPi * (day_of_year - kPeakDayOfYear) / 365.25)
                         + city.diurnal_amplitude * std::cos(kTwoPi * (local_hour - 15) / 24.0) + noise;
        s.values.push_back(round_to(v, 2));
    }
    return s;
}

SignalSeries synthetic_regulation_signal(std::uint64_t seed, double hours, double step_seconds)
{
    if (!(hours > 0.0) || !(step_seconds > 0.0))
        throw ValidationError("signal duration and step must be positive");
    std::mt19937_64 rng(seed ^ 0x5eed5eed5eedULL);
    constexpr int kComponents = 48;
    constexpr double kShortestPeriod = 60.0;
    constexpr double kLongestPeriod = 3.0 * 3600.0;

    struct Component {
        double omega, amplitude, phase;
    };
    std::vector<Component> comps;
    for (int j = 0; j < kComponents; ++j) {
        const double period = kShortestPeriod * std::pow(kLongestPeriod / kShortestPeriod, unit_uniform(rng));
        comps.push_back({kTwoPi / period, std::sqrt(period / 3600.0), kTwoPi * unit_uniform(rng)});
    }

    const auto n = static_cast<std::size_t>(std::llround(hours * kSecondsPerHour / step_seconds));
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * step_seconds;
        double sum = 0.0;
        for (const auto& c : comps)
            sum += c.amplitude * std::sin(c.omega * t + c.phase);
        v[k] = sum;
    }
    const double mean = compensated_sum(v) / static_cast<double>(n);
    double peak = 0.0;
    for (double& x : v) {
        x -= mean;
        peak = std::max(peak, std::abs(x));
    }
    for (double& x : v)
        x = round_to(x / peak, 6);

    SignalSeries s;
    s.step_hours = step_seconds / kSecondsPerHour;
    s.samples = std::move(v);
    s.normalized = true;
    return s;
}

PriceSeries synthetic_flat_prices(Timestamp start, std::size_t hours)
{
    return flat_prices(start, hours, 4.61, 3.43, 0.069, 0.130);
}

SynthFixtures synth_fixtures(std::uint64_t seed, std::span<const CityClimate> cities, const SynthOptions& options)
{
    SynthFixtures f;
    for (const auto& c : cities) {
        f.city_names.push_back(c.name);
        f.temperatures.push_back(synthetic_temperature(c, options.start, options.hours, seed));
    }
    f.prices = synthetic_flat_prices(options.start, options.hours);
    f.signal = synthetic_regulation_signal(seed, options.signal_hours, options.signal_step_seconds);
    return f;
}

void write_fixtures(const SynthFixtures& fixtures, const std::filesystem::path& dir, std::uint64_t seed)
{
    namespace fs = std::filesystem;
    fs::create_directories(dir / "temps");
    const std::string note = "synthetic fixture, not historical data; seed=" + std::to_string(seed);
    for (std::size_t i = 0; i < fixtures.city_names.size(); ++i) {
        std::ofstream out(dir / "temps" / (fixtures.city_names[i] + ".csv"), std::ios::binary);
        write_temperature_csv(out, fixtures.temperatures[i], note);
    }
    {
        std::ofstream out(dir / "prices.csv", std::ios::binary);
        write_price_csv(out, fixtures.prices, note);
    }
    std::ofstream out(dir / "regulation_signal.csv", std::ios::binary);
    write_signal_csv(out, fixtures.signal, note);
}

} // namespace tclflex

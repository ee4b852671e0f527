#include "tclflex/fleet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "tclflex/numeric.hpp"

namespace tclflex {

void ParticipationCurve::validate() const
{
    if (!(p_min >= 0.0 && p_min <= p_max && p_max <= 1.0))
        throw ValidationError("participation curve needs 0 <= p_min <= p_max <= 1");
    if (!std::isfinite(slope) || slope <= 0.0)
        throw ValidationError("participation curve slope must be positive");
    require_finite(midpoint, "participation curve midpoint");
}

double ParticipationCurve::operator()(double ambient) const
{
    const double sign = direction == ParticipationDirection::increasing ? 1.0 : -1.0;
    const double shape = std::atan(sign * slope * (ambient - midpoint)) / std::numbers::pi + 0.5;
    return std::clamp(p_min + (p_max - p_min) * shape, p_min, p_max);
}

double participation(const ParticipationCurve& curve, double ambient)
{
    curve.validate();
    require_finite(ambient, "ambient temperature");
    return curve(ambient);
}

void DeviceClass::validate() const
{
    params.validate();
    if (!std::isfinite(saturation_rate) || saturation_rate < 0.0)
        throw ValidationError("device class " + name + ": saturation rate must be non-negative");
    if (fixed_ambient)
        require_finite(*fixed_ambient, "fixed ambient of " + name);
    if (participation)
        participation->validate();
}

std::vector<double> city_weights(std::span<const CityProfile> cities)
{
    if (cities.empty())
        throw ValidationError("city list is empty");
    CompensatedSum total;
    for (const auto& c : cities) {
        if (!std::isfinite(c.households) || c.households <= 0.0)
            throw ValidationError("city " + c.name + " must have a positive household count");
        total.add(c.households);
    }
    std::vector<double> w;
    w.reserve(cities.size());
    for (const auto& c : cities)
        w.push_back(c.households / total.value());
    return w;
}

const ClassFlexibility* FlexibilitySeries::find(const std::string& name) const
{
    for (const auto& c : classes)
        if (c.name == name)
            return &c;
    return nullptr;
}

FlexibilitySeries hourly_flexibility(std::span<const DeviceClass> classes, std::span<const CityProfile> cities,
                                     double households_total)
{
    if (!std::isfinite(households_total) || households_total < 0.0)
        throw ValidationError("household total must be non-negative");
    const std::vector<double> weights = city_weights(cities);
    for (const auto& c : cities) {
        c.ambient.validate();
        if (c.ambient.values.size() != cities.front().ambient.values.size())
            throw ValidationError("city " + c.name + ": temperature series length "
                                  + std::to_string(c.ambient.values.size()) + " differs from "
                                  + std::to_string(cities.front().ambient.values.size()));
        if (c.ambient.start != cities.front().ambient.start || c.ambient.step_hours != cities.front().ambient.step_hours)
            throw ValidationError("city " + c.name + ": temperature series is not aligned with " + cities.front().name);
    }

    const std::size_t horizon = cities.front().ambient.values.size();
    FlexibilitySeries out;
    out.start = cities.front().ambient.start;
    out.step_hours = cities.front().ambient.step_hours;
    out.total_decrease_limit.assign(horizon, 0.0);
    out.total_increase_limit.assign(horizon, 0.0);
    out.total_capacity.assign(horizon, 0.0);

    for (const auto& dc : classes) {
        dc.validate();
        ClassFlexibility f;
        f.name = dc.name;
        f.installed_units = households_total * dc.saturation_rate;
        f.dissipation = dc.params.a();
        f.temperature_independent = dc.fixed_ambient.has_value();

        if (dc.fixed_ambient) {
            const FleetBattery fb = battery_from_fleet(dc.params, *dc.fixed_ambient, f.installed_units);
            f.decrease_limit.assign(horizon, fb.battery.decrease_limit);
            f.increase_limit.assign(horizon, fb.battery.increase_limit);
            f.capacity.assign(horizon, fb.battery.capacity);
            f.participating_units.assign(horizon, f.installed_units);
        } else {
            f.decrease_limit.resize(horizon);
            f.increase_limit.resize(horizon);
            f.capacity.resize(horizon);
            f.participating_units.resize(horizon);
            for (std::size_t h = 0; h < horizon; ++h) {
                double dec = 0.0, inc = 0.0, cap = 0.0, eff = 0.0;
                for (std::size_t c = 0; c < cities.size(); ++c) {
                    const double theta = cities[c].ambient.values[h];
                    const double p = dc.participation ? (*dc.participation)(theta) : 1.0;
                    const double n_eff = f.installed_units * p;
                    const FleetBattery fb = battery_from_fleet(dc.params, theta, n_eff);
                    dec += weights[c] * fb.battery.decrease_limit;
                    inc += weights[c] * fb.battery.increase_limit;
                    cap += weights[c] * fb.battery.capacity;
                    eff += weights[c] * n_eff;
                }
                f.decrease_limit[h] = dec;
                f.increase_limit[h] = inc;
                f.capacity[h] = cap;
                f.participating_units[h] = eff;
            }
        }

        for (std::size_t h = 0; h < horizon; ++h) {
            out.total_decrease_limit[h] += f.decrease_limit[h];
            out.total_increase_limit[h] += f.increase_limit[h];
            out.total_capacity[h] += f.capacity[h];
        }
        out.classes.push_back(std::move(f));
    }
    return out;
}

FlexibilitySummary summary_stats(const FlexibilitySeries& series)
{
    if (series.hours() == 0)
        throw ValidationError("flexibility series is empty");
    FlexibilitySummary s;
    for (const auto& c : series.classes) {
        s.peaks.push_back({c.name, *std::max_element(c.decrease_limit.begin(), c.decrease_limit.end()),
                           *std::max_element(c.increase_limit.begin(), c.increase_limit.end()),
                           *std::max_element(c.capacity.begin(), c.capacity.end()), c.dissipation});
    }
    auto argmin = [](const std::vector<double>& v) {
        return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
    };
    s.min_decrease_hour = argmin(series.total_decrease_limit);
    s.min_increase_hour = argmin(series.total_increase_limit);
    s.min_capacity_hour = argmin(series.total_capacity);
    s.min_total_decrease_limit = series.total_decrease_limit[s.min_decrease_hour];
    s.min_total_increase_limit = series.total_increase_limit[s.min_increase_hour];
    s.min_total_capacity = series.total_capacity[s.min_capacity_hour];
    return s;
}

AmbientSeries diurnal_profile(const AmbientSeries& hourly)
{
    hourly.validate();
    if (hourly.step_hours != 1.0)
        throw ValidationError("diurnal profile needs an hourly series");
    std::array<CompensatedSum, 24> sums{};
    std::array<int, 24> counts{};
    for (std::size_t i = 0; i < hourly.values.size(); ++i) {
        const int h = utc_hour(hourly.start + std::chrono::hours(static_cast<long>(i)));
        sums[h].add(hourly.values[i]);
        ++counts[h];
    }
    AmbientSeries out;
    out.start = std::chrono::floor<std::chrono::days>(hourly.start);
    out.step_hours = 1.0;
    out.values.resize(24);
    for (int h = 0; h < 24; ++h) {
        if (counts[h] == 0)
            throw ValidationError("diurnal profile needs at least one sample for every hour of day");
        out.values[h] = sums[h].value() / counts[h];
    }
    return out;
}

} // namespace tclflex

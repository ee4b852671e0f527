#include "tclflex/battery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tclflex/numeric.hpp"

namespace tclflex {

namespace {

// Below this α·dt the gain uses its Taylor expansion.
constexpr double kTaylorThreshold = 1e-8;

double energy_slack(double capacity) noexcept
{
    return 1e-9 * std::max(1.0, capacity);
}

void require_same_unit(const GeneralizedBattery& battery, const SignalSeries& signal)
{
    if (signal.normalized)
        throw ValidationError("normalized signal must be scaled to a power unit before use with a battery");
    if (signal.unit != battery.unit)
        throw ValidationError("unit mismatch: battery in " + std::string(to_string(battery.unit)) + ", signal in "
                              + std::string(to_string(signal.unit)));
}

} // namespace

void GeneralizedBattery::validate() const
{
    auto nonneg = [](double v, const char* name) {
        if (!std::isfinite(v) || v < 0.0)
            throw ValidationError(std::string("battery ") + name + " must be non-negative and finite");
    };
    nonneg(capacity, "capacity");
    nonneg(decrease_limit, "decrease limit");
    nonneg(increase_limit, "increase limit");
    nonneg(dissipation, "dissipation");
}

GeneralizedBattery GeneralizedBattery::in(PowerUnit target) const
{
    const double f = unit_factor(unit, target);
    return {capacity * f, decrease_limit * f, increase_limit * f, dissipation, target};
}

void SignalSeries::validate() const
{
    if (samples.empty())
        throw ValidationError("signal series is empty");
    if (!std::isfinite(step_hours) || step_hours <= 0.0)
        throw ValidationError("signal step must be positive");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i]))
            throw ValidationError("signal sample " + std::to_string(i) + " is not finite");
        if (normalized && std::abs(samples[i]) > 1.0)
            throw ValidationError("normalized signal sample " + std::to_string(i) + " is outside [-1, 1]");
    }
}

SignalSeries scale_signal(const SignalSeries& normalized, double amplitude, PowerUnit unit)
{
    normalized.validate();
    if (!normalized.normalized)
        throw ValidationError("scale_signal expects a normalized series");
    require_finite(amplitude, "signal amplitude");
    SignalSeries out{normalized.step_hours, normalized.samples, false, unit};
    for (double& v : out.samples)
        v *= amplitude;
    return out;
}

SocStep soc_step(double dissipation, double dt_hours)
{
    const double z = dissipation * dt_hours;
    SocStep s;
    s.decay = std::exp(-z);
    if (z < kTaylorThreshold)
        s.gain = dt_hours * (1.0 - 0.5 * z);
    else
        s.gain = -std::expm1(-z) / dissipation;
    return s;
}

std::vector<double> soc_trajectory(const GeneralizedBattery& battery, const SignalSeries& signal, double x0)
{
    battery.validate();
    signal.validate();
    require_same_unit(battery, signal);
    require_finite(x0, "initial state of charge");

    const SocStep k = soc_step(battery.dissipation, signal.step_hours);
    std::vector<double> x;
    x.reserve(signal.samples.size() + 1);
    x.push_back(x0);
    for (double u : signal.samples)
        x.push_back(k.decay * x.back() - k.gain * u);
    return x;
}

AdmissibilityReport is_admissible(const GeneralizedBattery& battery, const SignalSeries& signal)
{
    battery.validate();
    signal.validate();
    require_same_unit(battery, signal);

    const SocStep k = soc_step(battery.dissipation, signal.step_hours);
    const double limit = battery.capacity + energy_slack(battery.capacity);

    AdmissibilityReport report;
    double x = 0.0;
    for (std::size_t i = 0; i < signal.samples.size(); ++i) {
        const double u = signal.samples[i];
        if (u > battery.increase_limit) {
            report.admissible = false;
            report.first_violation = {ViolationKind::above_increase_limit, i, u, battery.increase_limit};
            return report;
        }
        if (u < -battery.decrease_limit) {
            report.admissible = false;
            report.first_violation = {ViolationKind::below_decrease_limit, i, u, -battery.decrease_limit};
            return report;
        }
        x = k.decay * x - k.gain * u;
        report.max_abs_soc = std::max(report.max_abs_soc, std::abs(x));
        if (std::abs(x) > limit) {
            report.admissible = false;
            report.first_violation = {ViolationKind::energy, i + 1, x, battery.capacity};
            return report;
        }
    }
    return report;
}

FleetBattery battery_from_fleet(const TclParams& params, double ambient, double units)
{
    params.validate();
    require_finite(ambient, "ambient temperature");
    if (!std::isfinite(units) || units < 0.0)
        throw ValidationError("unit count must be non-negative");

    const DutyCycle dc = duty_cycle_power(params, ambient);
    FleetBattery out;
    out.baseline_per_unit = dc.linearized;
    out.saturated = dc.linearized_clamped;
    out.battery.capacity = units * params.deadband / params.b();
    out.battery.decrease_limit = units * dc.linearized;
    out.battery.increase_limit = units * (params.rated_power - dc.linearized);
    out.battery.dissipation = params.a();
    out.battery.unit = PowerUnit::kW;
    return out;
}

ClusteredBattery sum_clusters(std::span<const GeneralizedBattery> clusters)
{
    ClusteredBattery out;
    if (clusters.empty())
        return out;
    out.unit = clusters.front().unit;
    CompensatedSum cap, dec, inc;
    for (const auto& c : clusters) {
        c.validate();
        if (c.unit != out.unit)
            throw ValidationError("cannot sum battery clusters with different units");
        cap.add(c.capacity);
        dec.add(c.decrease_limit);
        inc.add(c.increase_limit);
        out.dissipation.push_back(c.dissipation);
    }
    out.capacity = cap.value();
    out.decrease_limit = dec.value();
    out.increase_limit = inc.value();
    return out;
}

double max_energy_requirement(double dissipation, double amplitude, const SignalSeries& r)
{
    if (!std::isfinite(dissipation) || dissipation < 0.0)
        throw ValidationError("dissipation must be non-negative");
    if (!std::isfinite(amplitude) || amplitude <= 0.0)
        throw ValidationError("amplitude must be positive");
    if (r.samples.empty())
        throw ValidationError("regulation signal is empty");
    if (!std::isfinite(r.step_hours) || r.step_hours <= 0.0)
        throw ValidationError("signal step must be positive");
    for (std::size_t i = 0; i < r.samples.size(); ++i)
        if (!(std::abs(r.samples[i]) <= 1.0))
            throw ValidationError("regulation signal sample " + std::to_string(i) + " is outside [-1, 1]");

    const SocStep k = soc_step(dissipation, r.step_hours);
    double x = 0.0;
    double peak = 0.0;
    for (double v : r.samples) {
        x = k.decay * x - k.gain * (amplitude * v);
        peak = std::max(peak, std::abs(x));
    }
    check_numeric(peak, "maximum energy requirement");
    return peak;
}

} // namespace tclflex

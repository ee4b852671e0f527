#include "tclflex/tcl_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tclflex/numeric.hpp"

namespace tclflex {

namespace {

// Distance from a band edge at which the thermostat is considered to have reached it.
constexpr double kEdgeEpsilon = 1e-10;
constexpr int kMaxSwitchesPerStep = 1'000'000;

bool switches_at_upper(const TclParams& p, bool on) noexcept
{
    // cooling: OFF warms up to the upper edge; heating: ON warms up to it
    return (p.kind == LoadKind::cooling) != on;
}

bool at_switching_edge(const TclParams& p, const TclState& s) noexcept
{
    return switches_at_upper(p, s.on) ? s.temperature >= p.upper() - kEdgeEpsilon
                                      : s.temperature <= p.lower() + kEdgeEpsilon;
}

double segment_equilibrium(const TclParams& p, bool on, double ambient, double disturbance) noexcept
{
    const double drive = on ? -p.drive_sign() * p.b() * p.rated_power : 0.0;
    return ambient + (drive + disturbance) / p.a();
}

} // namespace

void TclParams::validate() const
{
    auto positive = [](double v, const char* name) {
        if (!std::isfinite(v) || v <= 0.0)
            throw ValidationError(std::string("TCL parameter ") + name + " must be positive and finite");
    };
    positive(capacitance, "capacitance");
    positive(resistance, "resistance");
    positive(rated_power, "rated_power");
    positive(cop, "cop");
    positive(deadband, "deadband");
    require_finite(setpoint, "TCL setpoint");
}

void AmbientSeries::validate() const
{
    if (values.empty())
        throw ValidationError("ambient series is empty");
    if (!std::isfinite(step_hours) || step_hours <= 0.0)
        throw ValidationError("ambient series step must be positive");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw ValidationError("ambient series value " + std::to_string(i) + " is not finite");
}

TclStepResult advance_tcl(const TclParams& params, const TclState& state, double ambient, double dt_hours,
                          double disturbance)
{
    params.validate();
    if (!std::isfinite(dt_hours) || dt_hours <= 0.0)
        throw ValidationError("time step must be positive and finite");
    require_finite(ambient, "ambient temperature");
    require_finite(disturbance, "disturbance");
    require_finite(state.temperature, "TCL temperature");
    require_finite(state.clock, "TCL clock");

    const double a = params.a();
    TclStepResult out;
    TclState s = state;
    double remaining = dt_hours;

    auto toggle_if_at_edge = [&] {
        if (at_switching_edge(params, s)) {
            s.on = !s.on;
            if (++out.switches > kMaxSwitchesPerStep)
                throw NumericalError("thermostat switching did not terminate");
        }
    };

    while (remaining > 0.0) {
        toggle_if_at_edge();
        const double eq = segment_equilibrium(params, s.on, ambient, disturbance);
        const double edge = switches_at_upper(params, s.on) ? params.upper() : params.lower();
        const double to_edge = edge - s.temperature;
        const double to_eq = eq - s.temperature;

        double hit = INFINITY;
        if (to_edge * to_eq > 0.0 && std::abs(to_eq) > std::abs(to_edge)) {
            // θ(t) = eq + (θ0 − eq) e^{−a t} reaches `edge` at t = ln((θ0 − eq)/(edge − eq)) / a
            hit = std::log1p((s.temperature - edge) / (edge - eq)) / a;
        }

        if (hit < remaining) {
            s.temperature = edge;
            if (s.on)
                out.on_hours += hit;
            remaining -= hit;
        } else {
            s.temperature = eq + (s.temperature - eq) * std::exp(-a * remaining);
            if (s.on)
                out.on_hours += remaining;
            remaining = 0.0;
        }
    }
    toggle_if_at_edge();

    s.clock = state.clock + dt_hours;
    check_numeric(s.temperature, "TCL temperature after step");
    out.state = s;
    return out;
}

TclState step_tcl(const TclParams& params, const TclState& state, double ambient, double dt_hours,
                  double disturbance)
{
    return advance_tcl(params, state, ambient, dt_hours, disturbance).state;
}

double linearized_power_unclamped(const TclParams& params, double ambient)
{
    return params.drive_sign() * params.a() * (ambient - params.setpoint) / params.b();
}

DutyCycle duty_cycle_power(const TclParams& params, double ambient)
{
    params.validate();
    require_finite(ambient, "ambient temperature");

    DutyCycle out;
    const double lin = linearized_power_unclamped(params, ambient);
    out.linearized = std::clamp(lin, 0.0, params.rated_power);
    out.linearized_clamped = lin <= 0.0 || lin >= params.rated_power;

    const double a = params.a();
    const double lo = params.lower();
    const double hi = params.upper();
    const double swing = params.b() * params.rated_power / a;

    if (params.kind == LoadKind::cooling) {
        const double on_eq = ambient - swing;
        if (ambient <= hi) {
            out.regime = CycleRegime::never_on;
        } else if (on_eq >= lo) {
            out.regime = CycleRegime::always_on;
        } else {
            out.off_hours = std::log((ambient - lo) / (ambient - hi)) / a;
            out.on_hours = std::log((hi - on_eq) / (lo - on_eq)) / a;
        }
    } else {
        const double on_eq = ambient + swing;
        if (ambient >= lo) {
            out.regime = CycleRegime::never_on;
        } else if (on_eq <= hi) {
            out.regime = CycleRegime::always_on;
        } else {
            out.off_hours = std::log((hi - ambient) / (lo - ambient)) / a;
            out.on_hours = std::log((on_eq - lo) / (on_eq - hi)) / a;
        }
    }

    switch (out.regime) {
    case CycleRegime::never_on: out.exact = 0.0; break;
    case CycleRegime::always_on: out.exact = params.rated_power; break;
    case CycleRegime::cycling:
        out.exact = params.rated_power * out.on_hours / (out.on_hours + out.off_hours);
        break;
    }
    return out;
}

TclState limit_cycle_state(const TclParams& params, double ambient, double phase)
{
    if (!(phase >= 0.0 && phase < 1.0))
        throw ValidationError("cycle phase must lie in [0, 1)");
    const DutyCycle dc = duty_cycle_power(params, ambient);
    TclState s;
    if (dc.regime != CycleRegime::cycling) {
        s.on = dc.regime == CycleRegime::always_on;
        s.temperature = params.lower() + phase * (params.upper() - params.lower());
        return s;
    }

    const bool cooling = params.kind == LoadKind::cooling;
    const double a = params.a();
    const double tau = phase * (dc.on_hours + dc.off_hours);
    if (tau < dc.on_hours) {
        const double start = cooling ? params.upper() : params.lower();
        const double eq = segment_equilibrium(params, true, ambient, 0.0);
        s.on = true;
        s.temperature = eq + (start - eq) * std::exp(-a * tau);
    } else {
        const double start = cooling ? params.lower() : params.upper();
        s.on = false;
        s.temperature = ambient + (start - ambient) * std::exp(-a * (tau - dc.on_hours));
    }
    return s;
}

std::vector<TclState> sample_population(const TclParams& params, double ambient, std::size_t count,
                                        std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<TclState> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(limit_cycle_state(params, ambient, unit_uniform(rng)));
    return out;
}

} // namespace tclflex

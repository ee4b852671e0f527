#include "tclflex/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "tclflex/format.hpp"
#include "tclflex/numeric.hpp"

namespace tclflex {

namespace {

// Normalized position in the band, oriented so that 1 means "about to switch ON".
double on_urgency(const TclParams& p, double temperature) noexcept
{
    const double width = 2.0 * p.deadband;
    return p.kind == LoadKind::cooling ? (temperature - p.lower()) / width : (p.upper() - temperature) / width;
}

bool may_turn_on(const TclParams& p, double temperature) noexcept
{
    return p.kind == LoadKind::cooling ? temperature > p.lower() + kBandTolerance
                                       : temperature < p.upper() - kBandTolerance;
}

bool may_turn_off(const TclParams& p, double temperature) noexcept
{
    return p.kind == LoadKind::cooling ? temperature < p.upper() - kBandTolerance
                                       : temperature > p.lower() + kBandTolerance;
}

} // namespace

double SimulatedFleet::baseline_total() const
{
    return compensated_sum(baseline);
}

double SimulatedFleet::instantaneous_power() const
{
    CompensatedSum s;
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].on)
            s.add(params[i].rated_power);
    return s.value();
}

void SimulatedFleet::validate() const
{
    const std::size_t n = states.size();
    if (params.size() != n || ambient.size() != n || baseline.size() != n)
        throw ValidationError("simulated fleet vectors have inconsistent sizes");
    for (std::size_t i = 0; i < n; ++i) {
        params[i].validate();
        require_finite(ambient[i], "unit ambient");
        require_finite(states[i].temperature, "unit temperature");
    }
}

SimulatedFleet make_homogeneous_fleet(const TclParams& params, double ambient, std::size_t units,
                                      std::uint64_t seed)
{
    SimulatedFleet f;
    f.params.assign(units, params);
    f.ambient.assign(units, ambient);
    f.states = sample_population(params, ambient, units, seed);
    f.baseline.assign(units, duty_cycle_power(params, ambient).exact);
    return f;
}

DispatchResult track(SimulatedFleet fleet, const SignalSeries& setpoint, const DispatchOptions& options)
{
    fleet.validate();
    setpoint.validate();
    if (setpoint.normalized || setpoint.unit != PowerUnit::kW)
        throw ValidationError("dispatch setpoints must be in kW");
    if (options.delay_steps < 0)
        throw ValidationError("delay must be non-negative");

    const std::size_t n = fleet.size();
    const double dt = setpoint.step_hours;
    const double dwell_hours = options.min_dwell_seconds / kSecondsPerHour;
    const double baseline = fleet.baseline_total();

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> noise(0.0, options.disturbance_std > 0.0 ? options.disturbance_std : 1.0);

    std::vector<double> last_change(n, -INFINITY);
    std::vector<std::size_t> order(n);
    std::vector<std::size_t> candidates;
    candidates.reserve(n);

    DispatchResult result;
    result.steps.reserve(setpoint.samples.size());
    if (options.record_commands)
        result.commands.resize(setpoint.samples.size());

    double power = fleet.instantaneous_power();
    for (std::size_t k = 0; k < setpoint.samples.size(); ++k) {
        const double t = static_cast<double>(k) * dt;
        const auto delay = static_cast<std::size_t>(options.delay_steps);
        const double target = k >= delay ? setpoint.samples[k - delay] : 0.0;

        DispatchStep step;
        step.t_seconds = t * kSecondsPerHour;
        step.setpoint_kw = setpoint.samples[k];

        double gap = target - (power - baseline);
        const bool raise = gap > 0.0;
        candidates.clear();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& s = fleet.states[i];
            if (s.on == raise || t - last_change[i] < dwell_hours)
                continue;
            if (raise ? may_turn_on(fleet.params[i], s.temperature) : may_turn_off(fleet.params[i], s.temperature))
                candidates.push_back(i);
        }
        // raise: most urgent OFF units first; lower: least urgent ON units first
        std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t x, std::size_t y) {
            const double ux = on_urgency(fleet.params[x], fleet.states[x].temperature);
            const double uy = on_urgency(fleet.params[y], fleet.states[y].temperature);
            return raise ? ux > uy : ux < uy;
        });
        for (std::size_t i : candidates) {
            const double pm = fleet.params[i].rated_power;
            if (pm >= 2.0 * std::abs(gap))
                break;
            fleet.states[i].on = raise;
            last_change[i] = t;
            gap += raise ? -pm : pm;
            power += raise ? pm : -pm;
            ++step.toggles;
            if (options.record_commands)
                result.commands[k].push_back({i, raise});
        }
        result.mode_changes += step.toggles;
        power = fleet.instantaneous_power();
        step.achieved_kw = power - baseline;

        CompensatedSum energy;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = options.disturbance_std > 0.0 ? noise(rng) : 0.0;
            const TclStepResult r = advance_tcl(fleet.params[i], fleet.states[i], fleet.ambient[i], dt, w);
            fleet.states[i] = r.state;
            energy.add(fleet.params[i].rated_power * r.on_hours);
            if (r.switches > 0) {
                result.mode_changes += r.switches;
                last_change[i] = t + dt;
            }
            const double theta = r.state.temperature;
            if (theta < fleet.params[i].lower() - kBandTolerance || theta > fleet.params[i].upper() + kBandTolerance) {
                result.violations.push_back({k, i, theta});
                ++step.violations;
            }
        }
        step.delivered_kw = energy.value() / dt - baseline;
        power = fleet.instantaneous_power();
        check_numeric(step.achieved_kw, "achieved deviation");
        result.steps.push_back(step);
    }

    const double days = setpoint.duration_hours() / 24.0;
    if (n > 0 && days > 0.0)
        result.cycles_per_unit_per_day = static_cast<double>(result.mode_changes) / 2.0 / static_cast<double>(n) / days;
    CompensatedSum nominal;
    for (std::size_t i = 0; i < n; ++i) {
        const DutyCycle dc = duty_cycle_power(fleet.params[i], fleet.ambient[i]);
        if (dc.regime == CycleRegime::cycling)
            nominal.add(24.0 / (dc.on_hours + dc.off_hours));
    }
    if (n > 0)
        result.nominal_cycles_per_unit_per_day = nominal.value() / static_cast<double>(n);
    result.final_fleet = std::move(fleet);
    return result;
}

double window_score(double sum_abs_setpoint, double sum_abs_error)
{
    if (sum_abs_setpoint <= 0.0)
        return 1.0;
    return std::max(0.0, (sum_abs_setpoint - sum_abs_error) / sum_abs_setpoint);
}

AccuracyReport accuracy(std::span<const DispatchStep> steps, double step_seconds, double window_seconds)
{
    if (steps.empty())
        throw ValidationError("no dispatch steps to score");
    if (!(step_seconds > 0.0) || !(window_seconds >= step_seconds))
        throw ValidationError("accuracy window must be at least one step long");
    const auto per_window = static_cast<std::size_t>(std::llround(window_seconds / step_seconds));
    const std::size_t full = steps.size() / per_window;
    if (full == 0)
        throw ValidationError("dispatch steps do not cover a full accuracy window");

    AccuracyReport report;
    CompensatedSum total_sp, total_err;
    for (std::size_t w = 0; w < full; ++w) {
        AccuracyWindow win;
        win.first_step = w * per_window;
        win.step_count = per_window;
        CompensatedSum sp, err;
        for (std::size_t k = win.first_step; k < win.first_step + per_window; ++k) {
            sp.add(std::abs(steps[k].setpoint_kw));
            err.add(std::abs(steps[k].achieved_kw - steps[k].setpoint_kw));
        }
        win.sum_abs_setpoint = sp.value();
        win.sum_abs_error = err.value();
        win.score = window_score(win.sum_abs_setpoint, win.sum_abs_error);
        total_sp.add(win.sum_abs_setpoint);
        total_err.add(win.sum_abs_error);
        report.windows.push_back(win);
    }
    report.aggregate = window_score(total_sp.value(), total_err.value());
    return report;
}

RampResult ramp_check(const SimulatedFleet& fleet, double target_kw, double step_seconds, double max_seconds)
{
    fleet.validate();
    require_finite(target_kw, "ramp target");
    const double baseline = fleet.baseline_total();
    CompensatedSum rated;
    for (const auto& p : fleet.params)
        rated.add(p.rated_power);
    const double up_envelope = rated.value() - baseline;
    const double down_envelope = -baseline;
    if (target_kw > up_envelope || target_kw < down_envelope)
        throw ValidationError("ramp target " + format_number(target_kw) + " kW lies outside the fleet envelope ["
                              + format_number(down_envelope) + ", " + format_number(up_envelope) + "] kW");
    if (target_kw == 0.0)
        return {true, 0.0};

    const auto steps = static_cast<std::size_t>(std::ceil(max_seconds / step_seconds));
    SignalSeries command{step_seconds / kSecondsPerHour, std::vector<double>(steps, target_kw), false, PowerUnit::kW};
    const DispatchResult run = track(fleet, command);
    const double sign = target_kw > 0.0 ? 1.0 : -1.0;
    for (std::size_t k = 0; k < run.steps.size(); ++k)
        if (sign * run.steps[k].achieved_kw >= 0.95 * std::abs(target_kw))
            return {true, static_cast<double>(k + 1) * step_seconds};
    return {false, max_seconds};
}

void write_dispatch_trace(std::ostream& out, std::span<const DispatchStep> steps)
{
    out << "t_seconds,setpoint_kw,achieved_kw,toggles,violations\n";
    for (const auto& s : steps)
        out << format_number(s.t_seconds) << ',' << format_number(s.setpoint_kw) << ','
            << format_number(s.achieved_kw) << ',' << s.toggles << ',' << s.violations << '\n';
}

} // namespace tclflex

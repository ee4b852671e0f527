#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tclflex/battery.hpp"
#include "tclflex/tcl_dynamics.hpp"

namespace tclflex {

/// A population of individually simulated TCLs.
struct SimulatedFleet {
    std::vector<TclParams> params;
    std::vector<double> ambient;  ///< °C, per unit
    std::vector<TclState> states;
    std::vector<double> baseline; ///< exact duty-cycle power per unit, kW

    [[nodiscard]] std::size_t size() const noexcept { return states.size(); }
    [[nodiscard]] double baseline_total() const;
    /// Σ q·P_m over the fleet, kW.
    [[nodiscard]] double instantaneous_power() const;
    /// Σ q·P_m − Σ P_o, kW.
    [[nodiscard]] double deviation() const { return instantaneous_power() - baseline_total(); }
    void validate() const;
};

/// N identical units started uniformly along their limit cycle.
SimulatedFleet make_homogeneous_fleet(const TclParams& params, double ambient, std::size_t units,
                                      std::uint64_t seed);

struct DispatchOptions {
    int delay_steps = 0;              ///< controller acts on the setpoint this many steps late
    double min_dwell_seconds = 0.0;   ///< 0 disables the lockout
    double disturbance_std = 0.0;     ///< °C/h, per unit per step, zero-mean Gaussian
    std::uint64_t seed = 0;           ///< disturbance RNG seed
    bool record_commands = false;
};

struct DispatchStep {
    double t_seconds = 0.0;
    double setpoint_kw = 0.0; ///< deviation from baseline, positive = consume more
    double achieved_kw = 0.0; ///< Σ q P_m − Σ P_o right after the control action
    double delivered_kw = 0.0; ///< interval-average deviation over the step
    int toggles = 0;          ///< controller overrides issued
    int violations = 0;       ///< units outside the band at the end of the step
};

struct TemperatureViolation {
    std::size_t step = 0;
    std::size_t unit = 0;
    double temperature = 0.0;
};

struct ModeCommand {
    std::size_t unit = 0;
    bool on = false;
};

struct DispatchResult {
    std::vector<DispatchStep> steps;
    std::vector<TemperatureViolation> violations;
    /// Controller overrides per step, present when record_commands is set.
    std::vector<std::vector<ModeCommand>> commands;
    long long mode_changes = 0; ///< controller and thermostat combined
    double cycles_per_unit_per_day = 0.0;
    double nominal_cycles_per_unit_per_day = 0.0; ///< undisturbed limit cycle
    SimulatedFleet final_fleet;
};

/// Tracks `setpoint` (kW, one control action per sample) with a priority-stack
/// controller. Units closest to their natural switching point are toggled
/// first; units at a band edge are never pushed further out.
DispatchResult track(SimulatedFleet fleet, const SignalSeries& setpoint, const DispatchOptions& options = {});

struct AccuracyWindow {
    std::size_t first_step = 0;
    std::size_t step_count = 0;
    double sum_abs_setpoint = 0.0;
    double sum_abs_error = 0.0;
    double score = 1.0;
};

struct AccuracyReport {
    std::vector<AccuracyWindow> windows;
    double aggregate = 1.0;
};

/// Windowed score max(0, (Σ|setpoint| − Σ|error|) / Σ|setpoint|). Windows with
/// no commanded movement score 1. A trailing partial window is ignored.
AccuracyReport accuracy(std::span<const DispatchStep> steps, double step_seconds = 4.0,
                        double window_seconds = 900.0);

double window_score(double sum_abs_setpoint, double sum_abs_error);

struct RampResult {
    bool reached = false;
    double seconds = 0.0;
    [[nodiscard]] double minutes() const noexcept { return seconds / 60.0; }
};

/// Time for the fleet deviation to reach 95% of a step command. Throws
/// ValidationError when the target lies outside the all-ON / all-OFF envelope.
RampResult ramp_check(const SimulatedFleet& fleet, double target_kw, double step_seconds = 4.0,
                      double max_seconds = 600.0);

/// `t_seconds,setpoint_kw,achieved_kw,toggles,violations`
void write_dispatch_trace(std::ostream& out, std::span<const DispatchStep> steps);

} // namespace tclflex

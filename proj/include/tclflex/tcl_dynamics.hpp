#pragma once

#include <cstdint>
#include <vector>

#include "tclflex/timestamp.hpp"

namespace tclflex {

enum class LoadKind { cooling, heating };

/// Physical parameters of one thermostatically controlled load.
struct TclParams {
    double capacitance = 0.0; ///< kWh/°C
    double resistance = 0.0;  ///< °C/kW
    double rated_power = 0.0; ///< kW (electrical)
    double cop = 0.0;         ///< coefficient of performance
    double setpoint = 0.0;    ///< °C
    double deadband = 0.0;    ///< half-width of the band, °C
    LoadKind kind = LoadKind::cooling;

    /// Thermal decay rate 1/(C R), 1/h.
    [[nodiscard]] double a() const noexcept { return 1.0 / (capacitance * resistance); }
    /// Heat-transfer gain η/C, °C per kWh.
    [[nodiscard]] double b() const noexcept { return cop / capacitance; }
    [[nodiscard]] double lower() const noexcept { return setpoint - deadband; }
    [[nodiscard]] double upper() const noexcept { return setpoint + deadband; }
    /// +1 when running the unit lowers the temperature, -1 when it raises it.
    [[nodiscard]] double drive_sign() const noexcept { return kind == LoadKind::cooling ? 1.0 : -1.0; }

    /// Throws ValidationError unless every physical parameter is positive and finite.
    void validate() const;
};

struct TclState {
    double temperature = 0.0; ///< °C
    bool on = false;
    double clock = 0.0; ///< hours
};

/// Hourly (or other uniform step) ambient temperature series.
struct AmbientSeries {
    Timestamp start{};
    double step_hours = 1.0;
    std::vector<double> values; ///< °C

    void validate() const;
};

/// Temperatures within this distance of the band are still considered inside it.
constexpr double kBandTolerance = 1e-6;

/// Detailed result of advancing one unit over a time step.
struct TclStepResult {
    TclState state;
    int switches = 0;      ///< mode changes made by the local thermostat
    double on_hours = 0.0; ///< time spent ON during the step
};

/// Advances a unit by `dt_hours` with the closed-form solution of the affine
/// temperature ODE. Thermostat toggles are placed at the exact boundary
/// crossing time. `disturbance` is in °C/h and held constant over the step.
TclStepResult advance_tcl(const TclParams& params, const TclState& state, double ambient, double dt_hours,
                          double disturbance = 0.0);

/// Same as advance_tcl but returns only the new state.
TclState step_tcl(const TclParams& params, const TclState& state, double ambient, double dt_hours,
                  double disturbance = 0.0);

enum class CycleRegime {
    cycling,   ///< unit cycles between both band edges
    never_on,  ///< ambient keeps the unit satisfied without running
    always_on, ///< the unit cannot reach the far edge while running
};

/// Steady-state (duty-cycle) power of one unit at a fixed ambient.
struct DutyCycle {
    double exact = 0.0;      ///< P_m T_on / (T_on + T_off), kW
    double linearized = 0.0; ///< a |θ_a − θ_r| / b clamped to [0, P_m], kW
    double on_hours = 0.0;   ///< T_on (0 when not cycling)
    double off_hours = 0.0;  ///< T_off (0 when not cycling)
    CycleRegime regime = CycleRegime::cycling;
    bool linearized_clamped = false; ///< linearized value hit 0 or P_m
};

DutyCycle duty_cycle_power(const TclParams& params, double ambient);

/// Linearized baseline power a·s·(θ_a − θ_r)/b before clamping, kW.
double linearized_power_unclamped(const TclParams& params, double ambient);

/// State at fractional position `phase` ∈ [0, 1) along the steady-state limit
/// cycle. Phase 0 is the instant the unit switches ON.
TclState limit_cycle_state(const TclParams& params, double ambient, double phase);

/// Independent states drawn uniformly in cycle phase.
std::vector<TclState> sample_population(const TclParams& params, double ambient, std::size_t count,
                                        std::uint64_t seed);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
template <class Engine>
double unit_uniform(Engine& engine)
{
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

} // namespace tclflex

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tclflex/tcl_dynamics.hpp"
#include "tclflex/units.hpp"

namespace tclflex {

/// Four-parameter flexibility envelope of a TCL population.
///
/// A power-deviation signal u(t) (positive = consumption above baseline) is
/// admissible when −decrease_limit ≤ u ≤ increase_limit and the state of
/// charge x, with ẋ = −dissipation·x − u and x(0) = 0, stays within
/// ±capacity. Note the sign: x falls while the fleet draws above baseline.
///
/// decrease_limit is n₋ (available regulation up), increase_limit is n₊
/// (available regulation down).
struct GeneralizedBattery {
    double capacity = 0.0;       ///< unit·h
    double decrease_limit = 0.0; ///< n₋, unit
    double increase_limit = 0.0; ///< n₊, unit
    double dissipation = 0.0;    ///< α, 1/h
    PowerUnit unit = PowerUnit::kW;

    void validate() const;
    [[nodiscard]] GeneralizedBattery in(PowerUnit target) const;
};

/// Uniformly sampled signal held constant over each step.
struct SignalSeries {
    double step_hours = 0.0;
    std::vector<double> samples;
    /// Dimensionless samples in [−1, 1]; must be scaled before use against a battery.
    bool normalized = false;
    PowerUnit unit = PowerUnit::kW;

    void validate() const;
    [[nodiscard]] double duration_hours() const noexcept
    {
        return step_hours * static_cast<double>(samples.size());
    }
};

/// Multiplies a normalized series by `amplitude` expressed in `unit`.
SignalSeries scale_signal(const SignalSeries& normalized, double amplitude, PowerUnit unit);

/// Exact per-step coefficients of ẋ = −αx − u under sample-and-hold u:
/// x[k+1] = decay·x[k] − gain·u[k].
struct SocStep {
    double decay = 1.0;
    double gain = 0.0;
};
SocStep soc_step(double dissipation, double dt_hours);

/// State of charge on the signal grid, including x[0] = x0 (size = samples + 1).
std::vector<double> soc_trajectory(const GeneralizedBattery& battery, const SignalSeries& signal,
                                   double x0 = 0.0);

enum class ViolationKind { above_increase_limit, below_decrease_limit, energy };

struct AdmissibilityViolation {
    ViolationKind kind = ViolationKind::energy;
    /// Sample index for power violations, SoC grid index for energy violations.
    std::size_t index = 0;
    double value = 0.0;
    double limit = 0.0;
};

struct AdmissibilityReport {
    bool admissible = true;
    std::optional<AdmissibilityViolation> first_violation;
    double max_abs_soc = 0.0; ///< over the checked prefix
};

/// Grid-point admissibility check; stops at the first violation in time order.
AdmissibilityReport is_admissible(const GeneralizedBattery& battery, const SignalSeries& signal);

struct FleetBattery {
    GeneralizedBattery battery;
    double baseline_per_unit = 0.0; ///< linearized P_o, kW
    bool saturated = false;         ///< P_o was clamped to 0 or P_m
};

/// Battery of `units` identical TCLs at constant ambient, in kW/kWh.
FleetBattery battery_from_fleet(const TclParams& params, double ambient, double units);

/// Component-wise sum of homogeneous cluster batteries. Dissipation rates are
/// kept per cluster; there is no single merged α.
struct ClusteredBattery {
    double capacity = 0.0;
    double decrease_limit = 0.0;
    double increase_limit = 0.0;
    std::vector<double> dissipation;
    PowerUnit unit = PowerUnit::kW;
};
ClusteredBattery sum_clusters(std::span<const GeneralizedBattery> clusters);

/// max |x| over the series for ẋ = −α x − amplitude·r with x(0) = 0.
/// `r` must be normalized; the result is in amplitude-unit·h.
double max_energy_requirement(double dissipation, double amplitude, const SignalSeries& r);

} // namespace tclflex

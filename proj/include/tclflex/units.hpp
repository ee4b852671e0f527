#pragma once

#include <string_view>

namespace tclflex {

/// Power unit tag. Energies carry the same tag and are in unit-hours.
enum class PowerUnit { kW, MW, GW };

constexpr double kw_per(PowerUnit u) noexcept
{
    switch (u) {
    case PowerUnit::kW: return 1.0;
    case PowerUnit::MW: return 1e3;
    case PowerUnit::GW: return 1e6;
    }
    return 1.0;
}

/// Multiplicative factor converting a value in `from` into `to`.
constexpr double unit_factor(PowerUnit from, PowerUnit to) noexcept
{
    return kw_per(from) / kw_per(to);
}

constexpr std::string_view to_string(PowerUnit u) noexcept
{
    switch (u) {
    case PowerUnit::kW: return "kW";
    case PowerUnit::MW: return "MW";
    case PowerUnit::GW: return "GW";
    }
    return "?";
}

constexpr double kSecondsPerHour = 3600.0;
constexpr double kKwToMw = 1e-3;
constexpr double kKwToGw = 1e-6;

} // namespace tclflex

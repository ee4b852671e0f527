#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tclflex/fleet.hpp"

namespace tclflex {

struct CostRange {
    double low = 0.0;
    double high = 0.0;

    void validate(const std::string& what) const;
    [[nodiscard]] CostRange scaled(double factor) const noexcept { return {low * factor, high * factor}; }
};

/// Per-unit instrumentation cost, $/unit.
using CapitalCost = CostRange;

/// Reference storage technology row (data, not computed).
struct StorageTech {
    std::string name;
    std::string maturity;
    std::string cycles_per_year;
    CostRange round_trip_efficiency; ///< fraction
    CostRange cost_per_kwh;
    CostRange cost_per_kw;
    std::string source;

    void validate() const;
};

/// Cost figures for one TCL class. Empty optionals mean the class offered no
/// flexibility on average and the figure is unavailable.
struct TclCostFigures {
    std::string name;
    std::string profile; ///< temperature profile the figures assume
    std::string cycles_per_year;
    std::optional<CostRange> per_kwh;
    std::optional<CostRange> per_kw_up;   ///< over average n₋
    std::optional<CostRange> per_kw_down; ///< over average n₊
    double avg_decrease_per_unit_kw = 0.0;
    double avg_increase_per_unit_kw = 0.0;
    double avg_capacity_per_unit_kwh = 0.0;
};

/// Capital cost divided by per-unit average power limits and energy capacity
/// over the horizon. Per-unit averages use the installed count.
TclCostFigures tcl_cost_figures(const ClassFlexibility& flex, const CapitalCost& cost, const std::string& profile);

struct CostRow {
    std::string name;
    std::string profile; ///< empty for reference technologies
    bool is_tcl = false;
    std::string maturity;
    std::string cycles_per_year;
    std::optional<CostRange> round_trip_efficiency;
    std::optional<CostRange> per_kwh;
    std::optional<CostRange> per_kw_up;
    std::optional<CostRange> per_kw_down;
};

struct CostReport {
    std::vector<CostRow> rows;
};

/// Merges TCL figures with reference technologies, sorted by ascending $/kWh
/// (unavailable figures last, ties by name).
CostReport comparison_table(std::span<const TclCostFigures> tcl_figures, std::span<const StorageTech> techs);

void write_cost_csv(std::ostream& out, const CostReport& report);
void write_cost_table(std::ostream& out, const CostReport& report);

} // namespace tclflex

#include "tclflex/economics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <tuple>

#include "tclflex/format.hpp"
#include "tclflex/numeric.hpp"

namespace tclflex {

namespace {

double mean(const std::vector<double>& v)
{
    return v.empty() ? 0.0 : compensated_sum(v) / static_cast<double>(v.size());
}

std::optional<CostRange> divide(const CapitalCost& cost, double per_unit)
{
    if (!(per_unit > 0.0))
        return std::nullopt;
    return CostRange{cost.low / per_unit, cost.high / per_unit};
}

std::string range_text(const std::optional<CostRange>& r, int digits)
{
    if (!r)
        return "n/a";
    if (r->low == r->high)
        return format_fixed(r->low, digits);
    return format_fixed(r->low, digits) + "-" + format_fixed(r->high, digits);
}

std::string range_csv(const std::optional<CostRange>& r, bool high)
{
    if (!r)
        return "";
    return format_number(high ? r->high : r->low);
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

void CostRange::validate(const std::string& what) const
{
    if (!(std::isfinite(low) && std::isfinite(high) && low >= 0.0 && low <= high))
        throw ValidationError(what + ": range must satisfy 0 <= low <= high");
}

void StorageTech::validate() const
{
    cost_per_kwh.validate(name + " $/kWh");
    cost_per_kw.validate(name + " $/kW");
    round_trip_efficiency.validate(name + " efficiency");
    if (!(round_trip_efficiency.low > 0.0 && round_trip_efficiency.high <= 1.1))
        throw ValidationError(name + ": round-trip efficiency must lie in (0, 1.1]");
}

TclCostFigures tcl_cost_figures(const ClassFlexibility& flex, const CapitalCost& cost, const std::string& profile)
{
    cost.validate(flex.name + " capital cost");
    TclCostFigures f;
    f.name = flex.name;
    f.profile = profile;
    if (flex.installed_units > 0.0) {
        f.avg_decrease_per_unit_kw = mean(flex.decrease_limit) / flex.installed_units;
        f.avg_increase_per_unit_kw = mean(flex.increase_limit) / flex.installed_units;
        f.avg_capacity_per_unit_kwh = mean(flex.capacity) / flex.installed_units;
    }
    f.per_kwh = divide(cost, f.avg_capacity_per_unit_kwh);
    f.per_kw_up = divide(cost, f.avg_decrease_per_unit_kw);
    f.per_kw_down = divide(cost, f.avg_increase_per_unit_kw);
    return f;
}

CostReport comparison_table(std::span<const TclCostFigures> tcl_figures, std::span<const StorageTech> techs)
{
    if (techs.empty())
        throw ValidationError("comparison needs at least one reference technology");
    CostReport report;
    for (const auto& t : techs) {
        t.validate();
        CostRow row;
        row.name = t.name;
        row.maturity = t.maturity;
        row.cycles_per_year = t.cycles_per_year;
        row.round_trip_efficiency = t.round_trip_efficiency;
        row.per_kwh = t.cost_per_kwh;
        row.per_kw_up = t.cost_per_kw;
        row.per_kw_down = t.cost_per_kw;
        report.rows.push_back(std::move(row));
    }
    for (const auto& f : tcl_figures) {
        CostRow row;
        row.name = f.name;
        row.profile = f.profile;
        row.is_tcl = true;
        row.maturity = "R&D";
        row.cycles_per_year = f.cycles_per_year;
        row.round_trip_efficiency = CostRange{1.0, 1.0};
        row.per_kwh = f.per_kwh;
        row.per_kw_up = f.per_kw_up;
        row.per_kw_down = f.per_kw_down;
        report.rows.push_back(std::move(row));
    }
    std::stable_sort(report.rows.begin(), report.rows.end(), [](const CostRow& a, const CostRow& b) {
        if (a.per_kwh.has_value() != b.per_kwh.has_value())
            return a.per_kwh.has_value();
        if (a.per_kwh && a.per_kwh->low != b.per_kwh->low)
            return a.per_kwh->low < b.per_kwh->low;
        return std::tie(a.name, a.profile) < std::tie(b.name, b.profile);
    });
    return report;
}

void write_cost_csv(std::ostream& out, const CostReport& report)
{
    out << "technology,profile,is_tcl,maturity,cycles_per_year,efficiency_low,efficiency_high,"
           "cost_per_kwh_low,cost_per_kwh_high,cost_per_kw_up_low,cost_per_kw_up_high,"
           "cost_per_kw_down_low,cost_per_kw_down_high\n";
    for (const auto& r : report.rows) {
        out << csv_field(r.name) << ',' << csv_field(r.profile) << ',' << (r.is_tcl ? 1 : 0) << ','
            << csv_field(r.maturity) << ',' << csv_field(r.cycles_per_year) << ','
            << range_csv(r.round_trip_efficiency, false) << ',' << range_csv(r.round_trip_efficiency, true) << ','
            << range_csv(r.per_kwh, false) << ',' << range_csv(r.per_kwh, true) << ','
            << range_csv(r.per_kw_up, false) << ',' << range_csv(r.per_kw_up, true) << ','
            << range_csv(r.per_kw_down, false) << ',' << range_csv(r.per_kw_down, true) << '\n';
    }
}

void write_cost_table(std::ostream& out, const CostReport& report)
{
    struct Line {
        std::string cells[6];
    };
    std::vector<Line> lines;
    lines.push_back({{"Technology", "Maturity", "Cycles/year", "Efficiency", "Cost ($/kWh)", "Cost ($/kW)"}});
    for (const auto& r : report.rows) {
        Line l;
        l.cells[0] = r.profile.empty() ? r.name : r.name + " (" + r.profile + ")";
        l.cells[1] = r.maturity;
        l.cells[2] = r.cycles_per_year;
        l.cells[3] = r.round_trip_efficiency ? range_text(r.round_trip_efficiency->scaled(100.0), 0) + "%" : "n/a";
        l.cells[4] = range_text(r.per_kwh, 0);
        const bool split = r.is_tcl || !r.per_kw_up || !r.per_kw_down || r.per_kw_up->low != r.per_kw_down->low
                           || r.per_kw_up->high != r.per_kw_down->high;
        l.cells[5] = split ? range_text(r.per_kw_up, 0) + " (RU) / " + range_text(r.per_kw_down, 0) + " (RD)"
                           : range_text(r.per_kw_up, 0);
        lines.push_back(std::move(l));
    }
    std::size_t width[6] = {};
    for (const auto& l : lines)
        for (int c = 0; c < 6; ++c)
            width[c] = std::max(width[c], l.cells[c].size());
    for (const auto& l : lines) {
        for (int c = 0; c < 6; ++c) {
            out << std::left << std::setw(static_cast<int>(width[c])) << l.cells[c];
            out << (c == 5 ? "\n" : "  ");
        }
    }
}

} // namespace tclflex

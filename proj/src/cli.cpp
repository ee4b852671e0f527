#include "tclflex/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "tclflex/config.hpp"
#include "tclflex/dispatch.hpp"
#include "tclflex/economics.hpp"
#include "tclflex/fleet.hpp"
#include "tclflex/format.hpp"
#include "tclflex/ingest.hpp"
#include "tclflex/market.hpp"
#include "tclflex/numeric.hpp"
#include "tclflex/synth.hpp"

namespace tclflex {

namespace fs = std::filesystem;

namespace {

constexpr const char* kSchemaHelp = R"(Input schemas
  --fleet  JSON object:
      households_total      number
      classes[]             name, kind ("cooling"|"heating"), capacitance (kWh/C),
                            resistance (C/kW), rated_power (kW), cop, setpoint (C),
                            deadband (half-width, C); each a number or [low, high]
                            (midpoint used); saturation_rate (units per household);
                            optional fixed_ambient (C), participation {p_min, p_max,
                            midpoint, slope, direction "increasing"|"decreasing"},
                            capital_cost [low, high] ($/unit), cycles_per_year (text)
      cities[]              name, households, optional temperature_file
                            (default <name>.csv inside --temps)
      market                mileage_multiplier (2.5), accuracy (0.95)
      track                 class, units, ambient, horizon_hours, ramp_fraction,
                            delay_steps, min_dwell_seconds, disturbance_std,
                            signal {type "sinusoid"|"step"|"zero"|"file",
                            amplitude_fraction, period_minutes, step_fraction}
      energy_requirement    dissipation [1/h...], amplitudes_mw [MW...]
      storage_reference     path of the storage technology JSON, relative to --fleet
  storage reference JSON: technologies[] with name, maturity, cycles_per_year,
      round_trip_efficiency, cost_per_kwh, cost_per_kw ([low, high] or number), source
  --temps  directory of CSV files, header timestamp_utc,temp_c, hourly, UTC
           timestamps YYYY-MM-DDTHH:MM:SSZ, no gaps or duplicates
  --prices CSV, header timestamp_utc,ru_cap,rd_cap,ru_mil,rd_mil, hourly, $/MW
  --signal CSV, header t_seconds,value, uniform step; a leading comment line
           "# normalized=true" declares dimensionless samples in [-1, 1]
Lines starting with '#' before the header are comments.
Every output file starts with "# tclflex <command> config_hash=<hex> seed=<n>".
Exit codes: 0 success, 2 input validation failure, 3 numerical failure.)";

/// Identity of a run: FNV-1a over the command name and every input it reads.
struct RunContext {
    const RunConfig& run;
    std::uint64_t hash = 0;

    [[nodiscard]] std::string header() const
    {
        return "# tclflex " + run.subcommand + " config_hash=" + hex64(hash) + " seed=" + std::to_string(run.seed)
               + "\n";
    }
};

std::uint64_t hash_inputs(const RunConfig& run)
{
    std::uint64_t h = fnv1a64(run.subcommand);
    h = fnv1a64(run.diurnal ? "diurnal" : "hourly", h);
    auto add_file = [&](const fs::path& p) {
        h = fnv1a64(p.filename().string(), h);
        h = fnv1a64(read_text_file(p), h);
    };
    if (run.fleet) {
        add_file(*run.fleet);
        if (run.temps) {
            const FleetConfig cfg = load_fleet_config(*run.fleet);
            for (const auto& c : cfg.cities) {
                const fs::path p = *run.temps / c.temperature_file;
                if (fs::exists(p))
                    add_file(p);
            }
        }
    }
    if (run.prices)
        add_file(*run.prices);
    if (run.signal)
        add_file(*run.signal);
    return h;
}

void write_output(const RunContext& ctx, const std::string& name, const std::string& body)
{
    fs::create_directories(ctx.run.out);
    const fs::path path = ctx.run.out / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ValidationError("cannot write " + path.string());
    out << ctx.header() << body;
    if (!out)
        throw ValidationError("failed writing " + path.string());
}

FleetConfig require_fleet(const RunConfig& run)
{
    if (!run.fleet)
        throw ValidationError(run.subcommand + ": --fleet is required");
    return load_fleet_config(*run.fleet);
}

std::vector<CityProfile> load_cities(const FleetConfig& cfg, const RunConfig& run)
{
    std::vector<CityProfile> cities;
    for (const auto& c : cfg.cities) {
        CityProfile p;
        p.name = c.name;
        p.households = c.households;
        p.ambient = load_temperature_csv(*run.temps / c.temperature_file);
        if (run.diurnal)
            p.ambient = diurnal_profile(p.ambient);
        cities.push_back(std::move(p));
    }
    return cities;
}

bool needs_weather(const FleetConfig& cfg)
{
    return std::any_of(cfg.classes.begin(), cfg.classes.end(),
                       [](const ClassConfig& c) { return !c.device.fixed_ambient; });
}

/// Flexibility of every configured class. Without --temps only fixed-ambient
/// classes are allowed, evaluated over `fallback_hours` starting at `fallback_start`.
FlexibilitySeries class_flexibility(const FleetConfig& cfg, const RunConfig& run, Timestamp fallback_start,
                                    std::size_t fallback_hours)
{
    const std::vector<DeviceClass> classes = cfg.device_classes();
    if (run.temps) {
        if (cfg.cities.empty())
            throw ValidationError("fleet config lists no cities for --temps");
        const std::vector<CityProfile> cities = load_cities(cfg, run);
        return hourly_flexibility(classes, cities, cfg.households_total);
    }
    if (needs_weather(cfg))
        throw ValidationError(run.subcommand + ": --temps is required for temperature-dependent classes");
    CityProfile constant;
    constant.name = "constant";
    constant.households = 1.0;
    constant.ambient.start = fallback_start;
    constant.ambient.step_hours = 1.0;
    constant.ambient.values.assign(std::max<std::size_t>(fallback_hours, 1), 20.0);
    const CityProfile one[] = {constant};
    return hourly_flexibility(classes, one, cfg.households_total);
}

std::string profile_name(const ClassFlexibility& f, const RunConfig& run)
{
    if (f.temperature_independent)
        return "fixed_ambient";
    return run.diurnal ? "diurnal" : "hourly";
}

} // namespace

void RunConfig::validate() const
{
    auto check = [](const std::optional<fs::path>& p, const char* flag, bool dir) {
        if (!p)
            return;
        if (!fs::exists(*p))
            throw ValidationError(std::string(flag) + ": " + p->string() + " does not exist");
        if (dir != fs::is_directory(*p))
            throw ValidationError(std::string(flag) + ": " + p->string()
                                  + (dir ? " is not a directory" : " is not a regular file"));
    };
    check(fleet, "--fleet", false);
    check(temps, "--temps", true);
    check(prices, "--prices", false);
    check(signal, "--signal", false);
}

void cmd_capacity(const RunConfig& run, std::ostream& log)
{
    const FleetConfig cfg = require_fleet(run);
    const RunContext ctx{run, hash_inputs(run)};
    const FlexibilitySeries flex = class_flexibility(cfg, run, Timestamp{}, 1);
    const FlexibilitySummary summary = summary_stats(flex);

    std::ostringstream hourly;
    hourly << "timestamp_utc";
    for (const auto& c : flex.classes)
        hourly << ',' << c.name << "_decrease_mw," << c.name << "_increase_mw," << c.name << "_capacity_mwh";
    hourly << ",total_decrease_mw,total_increase_mw,total_capacity_mwh\n";
    for (std::size_t h = 0; h < flex.hours(); ++h) {
        hourly << format_timestamp(flex.start + std::chrono::hours(static_cast<long>(h)));
        for (const auto& c : flex.classes)
            hourly << ',' << format_number(c.decrease_limit[h] * kKwToMw) << ','
                   << format_number(c.increase_limit[h] * kKwToMw) << ',' << format_number(c.capacity[h] * kKwToMw);
        hourly << ',' << format_number(flex.total_decrease_limit[h] * kKwToMw) << ','
               << format_number(flex.total_increase_limit[h] * kKwToMw) << ','
               << format_number(flex.total_capacity[h] * kKwToMw) << '\n';
    }
    write_output(ctx, "capacity_hourly.csv", hourly.str());

    std::ostringstream sum;
    sum << "row,installed_units,decrease_gw,increase_gw,capacity_gwh,dissipation_per_h,timestamp_utc\n";
    for (std::size_t i = 0; i < summary.peaks.size(); ++i) {
        const ClassPeak& p = summary.peaks[i];
        sum << "peak_" << p.name << ',' << format_number(flex.classes[i].installed_units) << ','
            << format_number(p.decrease_limit * kKwToGw) << ',' << format_number(p.increase_limit * kKwToGw) << ','
            << format_number(p.capacity * kKwToGw) << ',' << format_number(p.dissipation) << ",\n";
    }
    auto min_row = [&](const char* label, std::size_t h) {
        sum << label << ",," << format_number(flex.total_decrease_limit[h] * kKwToGw) << ','
            << format_number(flex.total_increase_limit[h] * kKwToGw) << ','
            << format_number(flex.total_capacity[h] * kKwToGw) << ",,"
            << format_timestamp(flex.start + std::chrono::hours(static_cast<long>(h))) << '\n';
    };
    min_row("min_total_decrease", summary.min_decrease_hour);
    min_row("min_total_increase", summary.min_increase_hour);
    min_row("min_total_capacity", summary.min_capacity_hour);
    write_output(ctx, "capacity_summary.csv", sum.str());

    log << "class          n-(GW)   n+(GW)   C(GWh)   a(1/h)\n";
    for (const auto& p : summary.peaks)
        log << p.name << std::string(p.name.size() < 14 ? 14 - p.name.size() : 1, ' ')
            << format_fixed(p.decrease_limit * kKwToGw, 3) << "    " << format_fixed(p.increase_limit * kKwToGw, 3)
            << "    " << format_fixed(p.capacity * kKwToGw, 3) << "    " << format_fixed(p.dissipation, 4) << '\n';
    log << "min total: n- " << format_fixed(summary.min_total_decrease_limit * kKwToGw, 3) << " GW, n+ "
        << format_fixed(summary.min_total_increase_limit * kKwToGw, 3) << " GW, C "
        << format_fixed(summary.min_total_capacity * kKwToGw, 3) << " GWh\n";
}

void cmd_track(const RunConfig& run, std::ostream& log)
{
    const FleetConfig cfg = require_fleet(run);
    const RunContext ctx{run, hash_inputs(run)};
    const TrackConfig& tc = cfg.track;
    const ClassConfig* cls = cfg.find_class(tc.device_class);
    if (!cls)
        throw ValidationError("track: unknown class '" + tc.device_class + "'");
    if (tc.units == 0)
        throw ValidationError("track: units must be positive");
    if (!(tc.horizon_hours > 0.0))
        throw ValidationError("track: horizon_hours must be positive");

    const TclParams& params = cls->device.params;
    const double units = static_cast<double>(tc.units);
    const FleetBattery fb = battery_from_fleet(params, tc.ambient, units);
    const GeneralizedBattery& batt = fb.battery;
    const double power_limit = std::min(batt.decrease_limit, batt.increase_limit);

    SignalSeries setpoint;
    setpoint.unit = PowerUnit::kW;
    if (tc.signal == TrackSignalType::file) {
        if (!run.signal)
            throw ValidationError("track: signal type 'file' needs --signal");
        SignalSeries raw = load_signal_csv(*run.signal);
        const auto keep = static_cast<std::size_t>(std::llround(tc.horizon_hours / raw.step_hours));
        if (raw.samples.size() > keep)
            raw.samples.resize(keep);
        setpoint = raw.normalized ? scale_signal(raw, tc.amplitude_fraction * power_limit, PowerUnit::kW) : raw;
        setpoint.unit = PowerUnit::kW;
    } else {
        setpoint.step_hours = 4.0 / kSecondsPerHour;
        const auto n = static_cast<std::size_t>(std::llround(tc.horizon_hours * kSecondsPerHour / 4.0));
        setpoint.samples.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double t_min = static_cast<double>(k) * 4.0 / 60.0;
            switch (tc.signal) {
            case TrackSignalType::sinusoid:
                setpoint.samples[k] = tc.amplitude_fraction * power_limit
                                      * std::sin(2.0 * std::numbers::pi * t_min / tc.period_minutes);
                break;
            case TrackSignalType::step:
                setpoint.samples[k] = tc.step_fraction >= 0.0 ? tc.step_fraction * batt.increase_limit
                                                              : tc.step_fraction * batt.decrease_limit;
                break;
            default:
                setpoint.samples[k] = 0.0;
            }
        }
    }
    setpoint.validate();
    const AdmissibilityReport adm = is_admissible(batt, setpoint);

    const SimulatedFleet fleet = make_homogeneous_fleet(params, tc.ambient, tc.units, run.seed);
    DispatchOptions opt;
    opt.delay_steps = tc.delay_steps;
    opt.min_dwell_seconds = tc.min_dwell_seconds;
    opt.disturbance_std = tc.disturbance_std;
    opt.seed = run.seed ^ 0x9e3779b97f4a7c15ULL;
    const DispatchResult res = track(fleet, setpoint, opt);
    const double step_seconds = setpoint.step_hours * kSecondsPerHour;
    const AccuracyReport acc = accuracy(res.steps, step_seconds);

    double max_err = 0.0;
    std::size_t saturated = 0;
    for (const auto& s : res.steps) {
        const double err = std::abs(s.achieved_kw - s.setpoint_kw);
        max_err = std::max(max_err, err);
        if (err > params.rated_power)
            ++saturated;
    }
    double min_window = 1.0;
    for (const auto& w : acc.windows)
        min_window = std::min(min_window, w.score);

    const double ramp_target = tc.ramp_fraction * batt.increase_limit;
    const RampResult ramp = ramp_check(fleet, ramp_target, step_seconds);

    std::ostringstream trace;
    write_dispatch_trace(trace, res.steps);
    write_output(ctx, "track_trace.csv", trace.str());

    std::ostringstream windows;
    windows << "window,start_seconds,steps,sum_abs_setpoint_kw,sum_abs_error_kw,score\n";
    for (std::size_t i = 0; i < acc.windows.size(); ++i) {
        const AccuracyWindow& w = acc.windows[i];
        windows << i << ',' << format_number(static_cast<double>(w.first_step) * step_seconds) << ',' << w.step_count
                << ',' << format_number(w.sum_abs_setpoint) << ',' << format_number(w.sum_abs_error) << ','
                << format_number(w.score) << '\n';
    }
    write_output(ctx, "track_accuracy.csv", windows.str());

    const char* violation_kind = "none";
    std::string violation_index;
    if (adm.first_violation) {
        switch (adm.first_violation->kind) {
        case ViolationKind::above_increase_limit: violation_kind = "above_increase_limit"; break;
        case ViolationKind::below_decrease_limit: violation_kind = "below_decrease_limit"; break;
        case ViolationKind::energy: violation_kind = "energy"; break;
        }
        violation_index = std::to_string(adm.first_violation->index);
    }
    const double cycle_ratio = res.nominal_cycles_per_unit_per_day > 0.0
                                   ? res.cycles_per_unit_per_day / res.nominal_cycles_per_unit_per_day
                                   : 0.0;

    std::ostringstream summary;
    summary << "key,value\n"
            << "class," << tc.device_class << '\n'
            << "units," << tc.units << '\n'
            << "ambient_c," << format_number(tc.ambient) << '\n'
            << "baseline_kw," << format_number(fleet.baseline_total()) << '\n'
            << "battery_decrease_limit_kw," << format_number(batt.decrease_limit) << '\n'
            << "battery_increase_limit_kw," << format_number(batt.increase_limit) << '\n'
            << "battery_capacity_kwh," << format_number(batt.capacity) << '\n'
            << "battery_dissipation_per_h," << format_number(batt.dissipation) << '\n'
            << "signal_admissible," << (adm.admissible ? "true" : "false") << '\n'
            << "first_violation," << violation_kind << '\n'
            << "first_violation_index," << violation_index << '\n'
            << "max_abs_soc_kwh," << format_number(adm.max_abs_soc) << '\n'
            << "steps," << res.steps.size() << '\n'
            << "temperature_violations," << res.violations.size() << '\n'
            << "max_abs_tracking_error_kw," << format_number(max_err) << '\n'
            << "saturated_steps," << saturated << '\n'
            << "accuracy_windows," << acc.windows.size() << '\n'
            << "accuracy_aggregate," << format_number(acc.aggregate) << '\n'
            << "accuracy_min_window," << format_number(min_window) << '\n'
            << "ramp_target_kw," << format_number(ramp_target) << '\n'
            << "ramp_reached," << (ramp.reached ? "true" : "false") << '\n'
            << "ramp_seconds," << format_number(ramp.seconds) << '\n'
            << "cycles_per_unit_per_day," << format_number(res.cycles_per_unit_per_day) << '\n'
            << "nominal_cycles_per_unit_per_day," << format_number(res.nominal_cycles_per_unit_per_day) << '\n'
            << "cycle_ratio," << format_number(cycle_ratio) << '\n';
    write_output(ctx, "track_summary.csv", summary.str());

    log << "tracked " << res.steps.size() << " steps with " << tc.units << " units; signal "
        << (adm.admissible ? "admissible" : "NOT admissible (saturation expected)") << '\n'
        << "accuracy aggregate " << format_fixed(acc.aggregate, 4) << ", worst window " << format_fixed(min_window, 4)
        << ", temperature violations " << res.violations.size() << ", saturated steps " << saturated << '\n'
        << "ramp to " << format_fixed(ramp_target, 1) << " kW: "
        << (ramp.reached ? format_fixed(ramp.seconds, 0) + " s" : std::string("not reached")) << '\n';
}

void cmd_revenue(const RunConfig& run, std::ostream& log)
{
    const FleetConfig cfg = require_fleet(run);
    if (!run.prices)
        throw ValidationError("revenue: --prices is required");
    const RunContext ctx{run, hash_inputs(run)};
    const PriceSeries prices = load_price_csv(*run.prices);
    const FlexibilitySeries flex = class_flexibility(cfg, run, prices.start, prices.hours());
    if (flex.start != prices.start || flex.hours() != prices.hours())
        throw ValidationError("revenue: temperature series and prices cover different hours");

    std::ostringstream out;
    out << "class,installed_units,stream,fleet_usd,per_unit_usd\n";
    auto pad = [](std::string s, std::size_t width) {
        if (s.size() < width)
            s.append(width - s.size(), ' ');
        return s + ' ';
    };
    log << pad("class", 14) << pad("stream", 14) << pad("fleet ($)", 14) << "per unit ($)\n";
    for (const auto& c : flex.classes) {
        const std::vector<Award> awards =
            award_from_flexibility(c, cfg.market.mileage_multiplier, cfg.market.accuracy);
        const RevenueReport fleet_rev = revenue(awards, prices);
        const RevenueReport unit_rev = per_unit(fleet_rev, c.installed_units);
        for (int s = 0; s < 4; ++s) {
            out << c.name << ',' << format_number(c.installed_units) << ',' << kRevenueStreamNames[s] << ','
                << format_number(fleet_rev.annual[s]) << ',' << format_number(unit_rev.annual[s]) << '\n';
            log << pad(c.name, 14) << pad(kRevenueStreamNames[s], 14) << pad(format_fixed(fleet_rev.annual[s], 0), 14)
                << format_fixed(unit_rev.annual[s], 2) << '\n';
        }
        out << c.name << ',' << format_number(c.installed_units) << ",total," << format_number(fleet_rev.total) << ','
            << format_number(unit_rev.total) << '\n';
    }
    write_output(ctx, "revenue.csv", out.str());
}

void cmd_energy_requirement(const RunConfig& run, std::ostream& log)
{
    if (!run.signal)
        throw ValidationError("energy-requirement: --signal is required");
    const FleetConfig cfg = run.fleet ? load_fleet_config(*run.fleet) : FleetConfig{};
    const RunContext ctx{run, hash_inputs(run)};
    const SignalSeries signal = load_signal_csv(*run.signal);
    if (!signal.normalized)
        throw ValidationError("energy-requirement: --signal must declare '# normalized=true'");

    std::ostringstream out;
    out << "dissipation_per_h,amplitude_mw,max_energy_mwh\n";
    for (double alpha : cfg.energy_requirement.dissipation) {
        for (double amp : cfg.energy_requirement.amplitudes_mw) {
            const double e = max_energy_requirement(alpha, amp, signal);
            out << format_number(alpha) << ',' << format_number(amp) << ',' << format_number(e) << '\n';
            log << "alpha " << format_number(alpha) << " 1/h, amplitude " << format_number(amp) << " MW: "
                << format_fixed(e, 1) << " MWh\n";
        }
    }
    write_output(ctx, "energy_requirement.csv", out.str());
}

void cmd_compare(const RunConfig& run, std::ostream& log)
{
    const FleetConfig cfg = require_fleet(run);
    if (cfg.storage_reference.empty())
        throw ValidationError("compare: fleet config has no storage_reference");
    const RunContext ctx{run, hash_inputs(run)};
    const std::vector<StorageTech> techs = load_storage_techs(cfg.base_dir / cfg.storage_reference);
    const FlexibilitySeries flex = class_flexibility(cfg, run, Timestamp{}, 1);

    std::vector<TclCostFigures> figures;
    auto add_figures = [&](const ClassFlexibility& c, const std::string& profile) {
        const ClassConfig* cc = cfg.find_class(c.name);
        TclCostFigures f = tcl_cost_figures(c, cc->capital_cost, profile);
        f.cycles_per_year = cc->cycles_per_year;
        figures.push_back(std::move(f));
    };
    for (const auto& c : flex.classes)
        add_figures(c, profile_name(c, run));

    // Temperature-dependent classes also get one row per city profile.
    if (run.temps && needs_weather(cfg)) {
        std::vector<DeviceClass> weather_classes;
        for (const auto& c : cfg.classes)
            if (!c.device.fixed_ambient)
                weather_classes.push_back(c.device);
        for (const CityProfile& city : load_cities(cfg, run)) {
            const CityProfile one[] = {city};
            const FlexibilitySeries local = hourly_flexibility(weather_classes, one, cfg.households_total);
            for (const auto& c : local.classes)
                add_figures(c, city.name);
        }
    }
    const CostReport report = comparison_table(figures, techs);

    std::ostringstream csv;
    write_cost_csv(csv, report);
    write_output(ctx, "compare.csv", csv.str());
    std::ostringstream table;
    write_cost_table(table, report);
    write_output(ctx, "compare.txt", table.str());
    log << table.str();
}

void cmd_validate(const RunConfig& run, std::ostream& log)
{
    auto line = [&](const Dataset& d) {
        log << to_string(d.kind) << ' ' << d.source << " rows=" << d.rows << " step_hours=" << format_number(d.step_hours)
            << " fnv1a=" << hex64(d.checksum) << '\n';
    };
    std::optional<FleetConfig> cfg;
    if (run.fleet) {
        cfg = load_fleet_config(*run.fleet);
        log << "fleet " << run.fleet->string() << " classes=" << cfg->classes.size() << " cities=" << cfg->cities.size()
            << " fnv1a=" << hex64(fnv1a64(read_text_file(*run.fleet))) << '\n';
        if (!cfg->storage_reference.empty()) {
            const auto techs = load_storage_techs(cfg->base_dir / cfg->storage_reference);
            log << "storage_reference " << cfg->storage_reference << " technologies=" << techs.size() << '\n';
        }
    }
    if (run.temps) {
        if (!cfg)
            throw ValidationError("validate: --temps needs --fleet to name the city files");
        std::optional<AmbientSeries> first;
        for (const auto& c : cfg->cities) {
            Dataset d;
            const AmbientSeries s = load_temperature_csv(*run.temps / c.temperature_file, &d);
            line(d);
            if (!first)
                first = s;
            else if (s.start != first->start || s.values.size() != first->values.size())
                throw ValidationError("validate: city " + c.name + " is not aligned with " + cfg->cities.front().name);
        }
    }
    if (run.prices) {
        Dataset d;
        load_price_csv(*run.prices, &d);
        line(d);
    }
    if (run.signal) {
        Dataset d;
        load_signal_csv(*run.signal, &d);
        line(d);
    }
    log << "ok\n";
}

void cmd_synth(const RunConfig& run, std::ostream& log)
{
    const std::vector<CityClimate> cities = default_california_cities();
    const SynthFixtures fx = synth_fixtures(run.seed, cities);
    const fs::path dir = run.out / "fixtures" / "synthetic";
    write_fixtures(fx, dir, run.seed);
    log << "wrote synthetic fixtures for " << fx.city_names.size() << " cities to " << dir.string() << '\n';
}

int run_command(const RunConfig& run, std::ostream& log, std::ostream& err)
{
    try {
        run.validate();
        if (run.validate_only && run.subcommand != "synth") {
            cmd_validate(run, log);
            return exit_ok;
        }
        if (run.subcommand == "capacity")
            cmd_capacity(run, log);
        else if (run.subcommand == "track")
            cmd_track(run, log);
        else if (run.subcommand == "revenue")
            cmd_revenue(run, log);
        else if (run.subcommand == "energy-requirement")
            cmd_energy_requirement(run, log);
        else if (run.subcommand == "compare")
            cmd_compare(run, log);
        else if (run.subcommand == "validate")
            cmd_validate(run, log);
        else if (run.subcommand == "synth")
            cmd_synth(run, log);
        else
            throw ValidationError("unknown subcommand '" + run.subcommand + "'");
        return exit_ok;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
}

int main_cli(const std::vector<std::string>& args, std::ostream& log, std::ostream& err)
{
    CLI::App app{"tclflex: aggregate flexibility of thermostatically controlled loads"};
    app.footer(kSchemaHelp);
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig run;
    std::string fleet, temps, prices, signal;
    app.add_option("--fleet", fleet, "fleet configuration JSON");
    app.add_option("--temps", temps, "directory of per-city temperature CSV files");
    app.add_option("--prices", prices, "hourly regulation price CSV");
    app.add_option("--signal", signal, "regulation signal CSV");
    app.add_option("--seed", run.seed, "random seed (u64)");
    app.add_option("--out", run.out, "output directory");
    app.add_flag("--validate-only", run.validate_only, "validate the inputs and exit");
    app.add_flag("--diurnal", run.diurnal, "use each city's hour-of-day mean temperature profile");

    const std::pair<const char*, const char*> commands[] = {
        {"capacity", "hourly battery envelope per class and peak/minimum summary"},
        {"track", "simulate a homogeneous fleet tracking a regulation signal"},
        {"revenue", "capacity and mileage revenue from hourly prices"},
        {"energy-requirement", "maximum energy requirement over a dissipation x amplitude grid"},
        {"compare", "TCL instrumentation cost against reference storage technologies"},
        {"validate", "check every given input file and report checksums"},
        {"synth", "write synthetic (non-historical) test fixtures"},
    };
    for (const auto& [name, desc] : commands)
        app.add_subcommand(name, desc);

    std::vector<std::string> argv_store{"tclflex"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store)
        argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, log, err);
        return code == 0 ? exit_ok : exit_validation;
    }

    run.subcommand = app.get_subcommands().front()->get_name();
    if (!fleet.empty())
        run.fleet = fleet;
    if (!temps.empty())
        run.temps = temps;
    if (!prices.empty())
        run.prices = prices;
    if (!signal.empty())
        run.signal = signal;
    return run_command(run, log, err);
}

int main_cli(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return main_cli(args, std::cout, std::cerr);
}

} // namespace tclflex

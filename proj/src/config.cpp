#include "tclflex/config.hpp"

#include <json.hpp>

#include "tclflex/ingest.hpp"
#include "tclflex/numeric.hpp"

namespace tclflex {

namespace {

using nlohmann::json;

double number_or_midpoint(const json& j, const std::string& key, const std::string& where)
{
    if (!j.contains(key))
        throw ValidationError(where + ": missing '" + key + "'");
    const json& v = j.at(key);
    if (v.is_number())
        return v.get<double>();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        const double lo = v[0].get<double>();
        const double hi = v[1].get<double>();
        if (lo > hi)
            throw ValidationError(where + ": range '" + key + "' has low > high");
        return 0.5 * (lo + hi);
    }
    throw ValidationError(where + ": '" + key + "' must be a number or a [low, high] range");
}

CostRange range(const json& j, const std::string& key, const std::string& where)
{
    const json& v = j.at(key);
    if (v.is_number())
        return {v.get<double>(), v.get<double>()};
    if (v.is_array() && v.size() == 2)
        return {v[0].get<double>(), v[1].get<double>()};
    throw ValidationError(where + ": '" + key + "' must be a number or a [low, high] range");
}

LoadKind parse_kind(const std::string& s, const std::string& where)
{
    if (s == "cooling")
        return LoadKind::cooling;
    if (s == "heating")
        return LoadKind::heating;
    throw ValidationError(where + ": kind must be 'cooling' or 'heating'");
}

ParticipationCurve parse_curve(const json& j, const std::string& where)
{
    ParticipationCurve c;
    c.p_min = j.value("p_min", 0.0);
    c.p_max = j.value("p_max", 1.0);
    c.midpoint = j.at("midpoint").get<double>();
    c.slope = j.at("slope").get<double>();
    const std::string dir = j.value("direction", std::string("increasing"));
    if (dir == "increasing")
        c.direction = ParticipationDirection::increasing;
    else if (dir == "decreasing")
        c.direction = ParticipationDirection::decreasing;
    else
        throw ValidationError(where + ": participation direction must be 'increasing' or 'decreasing'");
    c.validate();
    return c;
}

TrackSignalType parse_signal_type(const std::string& s)
{
    if (s == "file")
        return TrackSignalType::file;
    if (s == "sinusoid")
        return TrackSignalType::sinusoid;
    if (s == "step")
        return TrackSignalType::step;
    if (s == "zero")
        return TrackSignalType::zero;
    throw ValidationError("track.signal.type must be one of file, sinusoid, step, zero");
}

} // namespace

std::vector<DeviceClass> FleetConfig::device_classes() const
{
    std::vector<DeviceClass> out;
    for (const auto& c : classes)
        out.push_back(c.device);
    return out;
}

const ClassConfig* FleetConfig::find_class(const std::string& name) const
{
    for (const auto& c : classes)
        if (c.device.name == name)
            return &c;
    return nullptr;
}

FleetConfig parse_fleet_config(std::string_view json_text, const std::filesystem::path& base_dir)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("fleet config: ") + e.what());
    }

    FleetConfig cfg;
    cfg.base_dir = base_dir;
    try {
        cfg.households_total = root.at("households_total").get<double>();
        for (const auto& jc : root.at("classes")) {
            ClassConfig cc;
            DeviceClass& d = cc.device;
            d.name = jc.at("name").get<std::string>();
            const std::string where = "class " + d.name;
            d.params.kind = parse_kind(jc.at("kind").get<std::string>(), where);
            d.params.capacitance = number_or_midpoint(jc, "capacitance", where);
            d.params.resistance = number_or_midpoint(jc, "resistance", where);
            d.params.rated_power = number_or_midpoint(jc, "rated_power", where);
            d.params.cop = number_or_midpoint(jc, "cop", where);
            d.params.setpoint = number_or_midpoint(jc, "setpoint", where);
            d.params.deadband = number_or_midpoint(jc, "deadband", where);
            d.saturation_rate = jc.at("saturation_rate").get<double>();
            if (jc.contains("fixed_ambient"))
                d.fixed_ambient = jc.at("fixed_ambient").get<double>();
            if (jc.contains("participation"))
                d.participation = parse_curve(jc.at("participation"), where);
            d.validate();
            cc.capital_cost = jc.contains("capital_cost") ? range(jc, "capital_cost", where) : CostRange{};
            cc.capital_cost.validate(where + " capital cost");
            cc.cycles_per_year = jc.value("cycles_per_year", std::string());
            cfg.classes.push_back(std::move(cc));
        }
        for (const auto& jc : root.at("cities")) {
            CityConfig c;
            c.name = jc.at("name").get<std::string>();
            c.households = jc.at("households").get<double>();
            c.temperature_file = jc.value("temperature_file", c.name + ".csv");
            if (!(c.households > 0.0))
                throw ValidationError("city " + c.name + ": households must be positive");
            cfg.cities.push_back(std::move(c));
        }
        if (root.contains("market")) {
            const json& m = root.at("market");
            cfg.market.mileage_multiplier = m.value("mileage_multiplier", cfg.market.mileage_multiplier);
            cfg.market.accuracy = m.value("accuracy", cfg.market.accuracy);
        }
        if (root.contains("track")) {
            const json& t = root.at("track");
            TrackConfig& tc = cfg.track;
            tc.device_class = t.value("class", tc.device_class);
            tc.units = t.value("units", tc.units);
            tc.ambient = t.value("ambient", tc.ambient);
            tc.horizon_hours = t.value("horizon_hours", tc.horizon_hours);
            tc.ramp_fraction = t.value("ramp_fraction", tc.ramp_fraction);
            tc.delay_steps = t.value("delay_steps", tc.delay_steps);
            tc.min_dwell_seconds = t.value("min_dwell_seconds", tc.min_dwell_seconds);
            tc.disturbance_std = t.value("disturbance_std", tc.disturbance_std);
            if (t.contains("signal")) {
                const json& s = t.at("signal");
                tc.signal = parse_signal_type(s.value("type", std::string("sinusoid")));
                tc.amplitude_fraction = s.value("amplitude_fraction", tc.amplitude_fraction);
                tc.period_minutes = s.value("period_minutes", tc.period_minutes);
                tc.step_fraction = s.value("step_fraction", tc.step_fraction);
            }
        }
        if (root.contains("energy_requirement")) {
            const json& e = root.at("energy_requirement");
            cfg.energy_requirement.dissipation = e.value("dissipation", cfg.energy_requirement.dissipation);
            cfg.energy_requirement.amplitudes_mw = e.value("amplitudes_mw", cfg.energy_requirement.amplitudes_mw);
        }
        cfg.storage_reference = root.value("storage_reference", std::string());
    } catch (const json::exception& e) {
        throw ValidationError(std::string("fleet config: ") + e.what());
    }

    if (!(cfg.households_total >= 0.0))
        throw ValidationError("fleet config: households_total must be non-negative");
    if (cfg.market.mileage_multiplier < 0.0 || cfg.market.accuracy < 0.0 || cfg.market.accuracy > 1.0)
        throw ValidationError("fleet config: market settings out of range");
    return cfg;
}

FleetConfig load_fleet_config(const std::filesystem::path& path)
{
    return parse_fleet_config(read_text_file(path), path.parent_path());
}

std::vector<StorageTech> parse_storage_techs(std::string_view json_text)
{
    std::vector<StorageTech> out;
    try {
        const json root = json::parse(json_text);
        for (const auto& j : root.at("technologies")) {
            StorageTech t;
            t.name = j.at("name").get<std::string>();
            t.maturity = j.value("maturity", std::string());
            t.cycles_per_year = j.value("cycles_per_year", std::string());
            t.round_trip_efficiency = range(j, "round_trip_efficiency", t.name);
            t.cost_per_kwh = range(j, "cost_per_kwh", t.name);
            t.cost_per_kw = range(j, "cost_per_kw", t.name);
            t.source = j.value("source", std::string());
            t.validate();
            out.push_back(std::move(t));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("storage reference data: ") + e.what());
    }
    return out;
}

std::vector<StorageTech> load_storage_techs(const std::filesystem::path& path)
{
    return parse_storage_techs(read_text_file(path));
}

} // namespace tclflex

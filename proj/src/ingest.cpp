#include "tclflex/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "tclflex/format.hpp"
#include "tclflex/numeric.hpp"

namespace tclflex {

namespace {

std::string_view trim(std::string_view s) noexcept
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

/// Line-oriented reader that tracks 1-based line numbers and leading comments.
class CsvReader {
public:
    CsvReader(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(std::size_t line, const std::string& why) const
    {
        throw ValidationError(source_ + ":" + std::to_string(line) + ": " + why);
    }

    bool next(std::string_view& line)
    {
        while (pos_ < text_.size()) {
            const std::size_t nl = text_.find('\n', pos_);
            std::string_view raw = text_.substr(pos_, nl == std::string_view::npos ? std::string_view::npos : nl - pos_);
            pos_ = nl == std::string_view::npos ? text_.size() : nl + 1;
            ++line_no_;
            raw = trim(raw);
            if (raw.empty())
                continue;
            if (raw.front() == '#') {
                if (!seen_header_)
                    comments_.emplace_back(trim(raw.substr(1)));
                continue;
            }
            line = raw;
            return true;
        }
        return false;
    }

    void expect_header(std::initializer_list<std::string_view> columns)
    {
        std::string_view line;
        if (!next(line))
            fail(line_no_, "missing header row");
        seen_header_ = true;
        const auto cells = split(line);
        bool ok = cells.size() == columns.size();
        std::size_t i = 0;
        for (auto c : columns)
            ok = ok && cells[i++] == c;
        if (!ok) {
            std::string want;
            for (auto c : columns)
                want += (want.empty() ? "" : ",") + std::string(c);
            fail(line_no_, "header mismatch: expected '" + want + "', found '" + std::string(line) + "'");
        }
    }

    std::vector<std::string_view> row(std::string_view line, std::size_t columns) const
    {
        auto cells = split(line);
        if (cells.size() != columns)
            fail(line_no_, "expected " + std::to_string(columns) + " columns, found " + std::to_string(cells.size()));
        return cells;
    }

    double number(std::string_view cell, const char* column) const
    {
        double v = 0.0;
        auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc{} || p != cell.data() + cell.size())
            fail(line_no_, std::string("column ") + column + ": '" + std::string(cell) + "' is not a number");
        if (!std::isfinite(v))
            fail(line_no_, std::string("column ") + column + ": non-finite value");
        return v;
    }

    Timestamp timestamp(std::string_view cell) const
    {
        auto ts = parse_timestamp(cell);
        if (!ts)
            fail(line_no_, "'" + std::string(cell) + "' is not an ISO-8601 UTC timestamp");
        return *ts;
    }

    void check_hourly(Timestamp prev, Timestamp cur) const
    {
        using namespace std::chrono;
        const auto diff = cur - prev;
        if (diff == seconds{0})
            fail(line_no_, "duplicate timestamp " + format_timestamp(cur));
        if (diff < seconds{0})
            fail(line_no_, "timestamp " + format_timestamp(cur) + " is not after " + format_timestamp(prev));
        if (diff != hours{1})
            fail(line_no_, "gap: missing timestamp " + format_timestamp(prev + hours{1}) + " (next row is "
                               + format_timestamp(cur) + ")");
    }

    [[nodiscard]] std::size_t line_no() const noexcept { return line_no_; }
    [[nodiscard]] const std::vector<std::string>& comments() const noexcept { return comments_; }

private:
    std::string_view text_;
    std::string source_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
    bool seen_header_ = false;
    std::vector<std::string> comments_;
};

void fill_meta(Dataset* meta, DatasetKind kind, const std::string& source, std::size_t rows, double step,
               std::string_view text)
{
    if (!meta)
        return;
    meta->kind = kind;
    meta->source = source;
    meta->rows = rows;
    meta->step_hours = step;
    meta->checksum = fnv1a64(text);
}

void write_comment(std::ostream& out, const std::string& comment)
{
    if (!comment.empty())
        out << "# " << comment << '\n';
}

} // namespace

std::string_view to_string(DatasetKind kind) noexcept
{
    switch (kind) {
    case DatasetKind::temperature: return "temperature";
    case DatasetKind::prices: return "prices";
    case DatasetKind::regulation_signal: return "regulation_signal";
    }
    return "?";
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state) noexcept
{
    for (unsigned char c : bytes) {
        state ^= c;
        state *= 0x100000001b3ULL;
    }
    return state;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError(path.string() + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

AmbientSeries parse_temperature_csv(std::string_view text, const std::string& source, Dataset* meta)
{
    CsvReader r(text, source);
    r.expect_header({"timestamp_utc", "temp_c"});
    AmbientSeries s;
    s.step_hours = 1.0;
    std::string_view line;
    Timestamp prev{};
    while (r.next(line)) {
        const auto cells = r.row(line, 2);
        const Timestamp ts = r.timestamp(cells[0]);
        if (s.values.empty())
            s.start = ts;
        else
            r.check_hourly(prev, ts);
        prev = ts;
        s.values.push_back(r.number(cells[1], "temp_c"));
    }
    if (s.values.empty())
        r.fail(r.line_no(), "no data rows");
    fill_meta(meta, DatasetKind::temperature, source, s.values.size(), 1.0, text);
    return s;
}

PriceSeries parse_price_csv(std::string_view text, const std::string& source, Dataset* meta)
{
    CsvReader r(text, source);
    r.expect_header({"timestamp_utc", "ru_cap", "rd_cap", "ru_mil", "rd_mil"});
    PriceSeries p;
    std::string_view line;
    Timestamp prev{};
    static constexpr const char* names[] = {"ru_cap", "rd_cap", "ru_mil", "rd_mil"};
    std::vector<double>* cols[] = {&p.up_capacity, &p.down_capacity, &p.up_mileage, &p.down_mileage};
    while (r.next(line)) {
        const auto cells = r.row(line, 5);
        const Timestamp ts = r.timestamp(cells[0]);
        if (p.up_capacity.empty())
            p.start = ts;
        else
            r.check_hourly(prev, ts);
        prev = ts;
        for (int c = 0; c < 4; ++c) {
            const double v = r.number(cells[c + 1], names[c]);
            if (v < 0.0)
                r.fail(r.line_no(), std::string("column ") + names[c] + ": negative price");
            cols[c]->push_back(v);
        }
    }
    if (p.up_capacity.empty())
        r.fail(r.line_no(), "no data rows");
    fill_meta(meta, DatasetKind::prices, source, p.hours(), 1.0, text);
    return p;
}

SignalSeries parse_signal_csv(std::string_view text, const std::string& source, Dataset* meta)
{
    CsvReader r(text, source);
    r.expect_header({"t_seconds", "value"});
    SignalSeries s;
    for (const auto& c : r.comments())
        if (c == "normalized=true")
            s.normalized = true;

    std::string_view line;
    double t0 = 0.0, prev = 0.0, dt = 0.0;
    while (r.next(line)) {
        const auto cells = r.row(line, 2);
        const double t = r.number(cells[0], "t_seconds");
        const double v = r.number(cells[1], "value");
        const std::size_t k = s.samples.size();
        if (k == 0) {
            t0 = t;
        } else {
            if (t <= prev)
                r.fail(r.line_no(), "duplicate or decreasing time " + format_number(t) + " s");
            if (k == 1)
                dt = t - t0;
            const double expected = t0 + static_cast<double>(k) * dt;
            if (std::abs(t - expected) > 1e-6 * dt)
                r.fail(r.line_no(), "non-uniform sampling: expected t = " + format_number(expected) + " s, found "
                                        + format_number(t) + " s");
        }
        if (s.normalized && std::abs(v) > 1.0)
            r.fail(r.line_no(), "value " + format_number(v) + " outside [-1, 1] in a normalized trace");
        prev = t;
        s.samples.push_back(v);
    }
    if (s.samples.size() < 2)
        r.fail(r.line_no(), "a regulation signal needs at least two rows to define its step");
    s.step_hours = dt / kSecondsPerHour;
    s.unit = PowerUnit::kW;
    fill_meta(meta, DatasetKind::regulation_signal, source, s.samples.size(), s.step_hours, text);
    return s;
}

AmbientSeries load_temperature_csv(const std::filesystem::path& path, Dataset* meta)
{
    return parse_temperature_csv(read_text_file(path), path.string(), meta);
}

PriceSeries load_price_csv(const std::filesystem::path& path, Dataset* meta)
{
    return parse_price_csv(read_text_file(path), path.string(), meta);
}

SignalSeries load_signal_csv(const std::filesystem::path& path, Dataset* meta)
{
    return parse_signal_csv(read_text_file(path), path.string(), meta);
}

LoadedSeries load_csv(DatasetKind kind, const std::filesystem::path& path, Dataset* meta)
{
    switch (kind) {
    case DatasetKind::temperature: return load_temperature_csv(path, meta);
    case DatasetKind::prices: return load_price_csv(path, meta);
    case DatasetKind::regulation_signal: return load_signal_csv(path, meta);
    }
    throw ValidationError("unknown dataset kind");
}

void write_temperature_csv(std::ostream& out, const AmbientSeries& series, const std::string& comment)
{
    write_comment(out, comment);
    out << "timestamp_utc,temp_c\n";
    const auto step = std::chrono::seconds(std::llround(series.step_hours * kSecondsPerHour));
    for (std::size_t i = 0; i < series.values.size(); ++i)
        out << format_timestamp(series.start + step * static_cast<long long>(i)) << ','
            << format_number(series.values[i]) << '\n';
}

void write_price_csv(std::ostream& out, const PriceSeries& prices, const std::string& comment)
{
    write_comment(out, comment);
    out << "timestamp_utc,ru_cap,rd_cap,ru_mil,rd_mil\n";
    for (std::size_t h = 0; h < prices.hours(); ++h)
        out << format_timestamp(prices.start + std::chrono::hours(static_cast<long long>(h))) << ','
            << format_number(prices.up_capacity[h]) << ',' << format_number(prices.down_capacity[h]) << ','
            << format_number(prices.up_mileage[h]) << ',' << format_number(prices.down_mileage[h]) << '\n';
}

void write_signal_csv(std::ostream& out, const SignalSeries& signal, const std::string& comment)
{
    if (signal.normalized)
        out << "# normalized=true\n";
    write_comment(out, comment);
    out << "t_seconds,value\n";
    // whole microseconds so the parsed step reproduces the original exactly
    const double step_s = std::round(signal.step_hours * kSecondsPerHour * 1e6) / 1e6;
    for (std::size_t k = 0; k < signal.samples.size(); ++k)
        out << format_number(static_cast<double>(k) * step_s) << ',' << format_number(signal.samples[k]) << '\n';
}

} // namespace tclflex

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "tclflex/battery.hpp"
#include "tclflex/market.hpp"
#include "tclflex/tcl_dynamics.hpp"

namespace tclflex {

enum class DatasetKind { temperature, prices, regulation_signal };

std::string_view to_string(DatasetKind kind) noexcept;

/// Metadata of a validated input file.
struct Dataset {
    DatasetKind kind = DatasetKind::temperature;
    std::string source;
    std::size_t rows = 0;
    double step_hours = 0.0;
    std::uint64_t checksum = 0; ///< FNV-1a of the raw bytes
};

/// 64-bit FNV-1a, optionally chained from a previous hash.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state = 0xcbf29ce484222325ULL) noexcept;
std::string hex64(std::uint64_t v);

std::string read_text_file(const std::filesystem::path& path);

// Schemas (header row after any leading `#` comment lines):
//   temperature        timestamp_utc,temp_c              hourly
//   prices             timestamp_utc,ru_cap,rd_cap,ru_mil,rd_mil   hourly, $/MW
//   regulation_signal  t_seconds,value                   uniform step;
//                      `# normalized=true` declares samples in [-1, 1]
// Errors are ValidationError with "<source>:<line>: <reason>".

AmbientSeries parse_temperature_csv(std::string_view text, const std::string& source, Dataset* meta = nullptr);
PriceSeries parse_price_csv(std::string_view text, const std::string& source, Dataset* meta = nullptr);
SignalSeries parse_signal_csv(std::string_view text, const std::string& source, Dataset* meta = nullptr);

AmbientSeries load_temperature_csv(const std::filesystem::path& path, Dataset* meta = nullptr);
PriceSeries load_price_csv(const std::filesystem::path& path, Dataset* meta = nullptr);
SignalSeries load_signal_csv(const std::filesystem::path& path, Dataset* meta = nullptr);

using LoadedSeries = std::variant<AmbientSeries, PriceSeries, SignalSeries>;
LoadedSeries load_csv(DatasetKind kind, const std::filesystem::path& path, Dataset* meta = nullptr);

/// Writers emit the same schema; `comment` (without '#') becomes a leading comment line.
void write_temperature_csv(std::ostream& out, const AmbientSeries& series, const std::string& comment = "");
void write_price_csv(std::ostream& out, const PriceSeries& prices, const std::string& comment = "");
void write_signal_csv(std::ostream& out, const SignalSeries& signal, const std::string& comment = "");

} // namespace tclflex

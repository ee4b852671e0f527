#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tclflex {

struct RunConfig {
    std::string subcommand;
    std::optional<std::filesystem::path> fleet;
    std::optional<std::filesystem::path> temps;  ///< directory of per-city CSV files
    std::optional<std::filesystem::path> prices;
    std::optional<std::filesystem::path> signal;
    std::filesystem::path out = ".";
    std::uint64_t seed = 0;
    bool validate_only = false;
    bool diurnal = false; ///< replace each city's series by its hour-of-day mean

    /// Throws ValidationError if any given path does not exist.
    void validate() const;
};

enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_validation = 2, exit_numerical = 3 };

// Each command writes its files into `out` and a short summary to `log`.
void cmd_capacity(const RunConfig& run, std::ostream& log);
void cmd_track(const RunConfig& run, std::ostream& log);
void cmd_revenue(const RunConfig& run, std::ostream& log);
void cmd_energy_requirement(const RunConfig& run, std::ostream& log);
void cmd_compare(const RunConfig& run, std::ostream& log);
void cmd_validate(const RunConfig& run, std::ostream& log);
void cmd_synth(const RunConfig& run, std::ostream& log);

/// Dispatches one subcommand and maps errors to exit codes.
int run_command(const RunConfig& run, std::ostream& log, std::ostream& err);

/// Full command-line entry point.
int main_cli(int argc, char** argv);
int main_cli(const std::vector<std::string>& args, std::ostream& log, std::ostream& err);

} // namespace tclflex

#pragma once

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ringmod::cli {

enum class Command { modulus, criterion, bounds_volume, bounds_limsup, verify_extremal, sweep };
enum class Format { json, csv };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command command);

/// Parameter keys accepted by each command (flag names without "--").
const std::vector<std::string>& allowed_keys(Command command);

inline constexpr int exit_success = 0;
inline constexpr int exit_bound_failure = 1;
inline constexpr int exit_validation = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* output_dir_env = "RINGMOD_OUTPUT_DIR";

struct RunConfig {
    Command command = Command::modulus;
    std::map<std::string, std::string> params;
    std::vector<std::string> grids; ///< sweep only: "key=v1,v2,..."
    std::filesystem::path output;   ///< empty: $RINGMOD_OUTPUT_DIR/<command>.<ext>, else stdout
    Format format = Format::json;
};

struct RunResult {
    int exit_code = exit_success;
    std::string verdict; ///< "pass", "fail" or "advisory-fail"
    nlohmann::json report;
    std::string csv;
    /// Flat metrics, in column order, used for sweep rows.
    std::vector<std::pair<std::string, std::string>> summary;
};

/// Validates and runs one command. Throws ringmod::ValidationError on bad input.
RunResult execute(const RunConfig& config);

/// Grid expansion for sweeps. Each spec is "key=v1,v2,..."; a value may refer
/// to an earlier grid key or a base parameter as "n+1", "n*2", "2*n" or "2n".
/// Combinations are sorted by their tuple in spec order and deduplicated.
std::vector<std::map<std::string, std::string>> expand_grid(const std::vector<std::string>& specs,
                                                            const std::map<std::string, std::string>& base,
                                                            std::size_t cap);

inline constexpr std::size_t default_sweep_cap = 10000;

RunResult execute_sweep(const RunConfig& config);

/// execute() plus error handling and report emission; returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ringmod::cli

#pragma once

// Subcommands of the redlab tool. Every command is a pure function from a
// JSON parameter object to named output streams, so a run manifest holding
// the parameters is enough to replay it.

#include <json.hpp>

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace redlab::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "redlab";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchema = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

/// Round-trippable decimal form (17 significant digits).
std::string format_double(double v);

/// 64-bit FNV-1a digest, as 16 hex digits.
std::string digest(const std::string& bytes);

/// Output stream name ("csv", "json", "eigenvalues", "report") to content.
struct CommandResult {
    std::map<std::string, std::string> streams;
    int exit_code = kExitOk;
};

/// Runs `subcommand` with fully resolved parameters. Library errors propagate.
CommandResult execute(const std::string& subcommand, const Json& parameters);

CommandResult cmd_moments(const Json& parameters);
CommandResult cmd_density(const Json& parameters);
CommandResult cmd_thresholds(const Json& parameters);
CommandResult cmd_simulate(const Json& parameters);
CommandResult cmd_verify(const Json& parameters);

struct OutputRecord {
    std::string stream;
    std::string path;  ///< "-" for stdout
    std::string fnv1a64;
};

struct RunManifest {
    std::string subcommand;
    Json parameters;
    std::uint64_t master_seed = 0;
    std::string version = kVersion;
    std::vector<OutputRecord> outputs;

    Json to_json() const;
    static RunManifest from_json(const Json& j);
};

void write_manifest(const std::string& path, const RunManifest& manifest);
RunManifest read_manifest(const std::string& path);

/// Stream destinations named by the parameters ("csv", "json", "eigenvalues"
/// keys; "-" is stdout, empty means not written).
std::map<std::string, std::string> output_paths(const Json& parameters);

// Verification suites.

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Check {
    std::string name;
    /// Returns a human-readable detail; throws or returns false via `passed`.
    std::function<bool(std::string& detail)> run;
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
    Json to_json() const;
};

std::vector<Check> suite_checks(const std::string& suite);

/// Runs every check, catching exceptions as failures.
VerifyReport run_checks(const std::string& suite, const std::vector<Check>& checks);

/// 0 when every check passed, 1 otherwise.
int verify_exit_code(const VerifyReport& report);

/// Entry point of the tool; returns the process exit code.
int run(int argc, char** argv);

} // namespace redlab::cli

// Copyright 2026 The qpair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPAIR_CLI_H
#define QPAIR_CLI_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpair/algorithms.h"
#include "qpair/noise.h"
#include "qpair/oracles.h"
#include "qpair/verify.h"

namespace qpair::cli {

inline constexpr const char *kToolVersion = "0.1.0";
inline constexpr const char *kSeedEnvVar = "QPAIR_SEED";
inline constexpr const char *kErrorPrefix = "qpair: error: ";
inline constexpr const char *kInternalErrorPrefix = "qpair: internal error: ";

enum ExitCode : int {
    kExitOk = 0,
    /// A check (verify, audit-theorem) ran and found a failure.
    kExitCheckFailed = 1,
    kExitUsage = 2,
    kExitInternal = 3,
};

/// Bad command line, malformed oracle or config, promise violation.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class Command { kRun, kVerify, kAuditTheorem, kFidelity, kSweepNoise };
enum class OutputFormat { kJson, kCsv };
enum class NoiseKind { kOff, kTable2, kConfig };

std::string command_name(Command command);

struct RunRequest {
    Command command = Command::kRun;
    Algorithm algorithm = Algorithm::kEntangledPair;
    BoolFn f = named::B1;
    BoolFn g = named::B1;
    /// Empty means exact probabilities.
    std::optional<std::int64_t> shots;
    NoiseKind noise = NoiseKind::kOff;
    std::string noise_path;
    std::uint64_t seed = 0;
    OutputFormat output = OutputFormat::kJson;

    // fidelity
    std::string counts_path;
    Algorithm theory_algorithm = Algorithm::kEntangledPair;
    // verify
    std::string decode_table_path;
    // audit-theorem
    int audit_samples = 1000;
    int audit_grid = 50;
    // sweep-noise
    std::vector<double> scales = {0.0, 0.5, 1.0, 2.0};
    /// Unset runs the four reference cases (B1,B1), (B1,B2), (C1,C1), (C1,C2).
    bool single_case = false;
    /// Unset sweeps both pair algorithms.
    bool single_algorithm = false;
};

/// Parses argv (without the program name). Throws UsageError whose message
/// names the offending flag or token. `--help` returns std::nullopt after
/// writing usage to `help_out`.
std::optional<RunRequest> parse_request(const std::vector<std::string> &args, std::string *help_out = nullptr);

using Json = nlohmann::ordered_json;

struct ResultEnvelope {
    RunRequest request;
    /// Command payload, including the request echo; keys in stable order.
    Json payload;
    int exit_code = kExitOk;
    std::string timestamp;

    /// payload plus tool_version and timestamp.
    Json to_json() const;
};

/// Runs the command. Domain errors from the library surface as UsageError;
/// anything else escapes as an internal error.
ResultEnvelope execute(const RunRequest &request);

/// JSON (two-space indent, trailing newline) or CSV. CSV is available for
/// run, fidelity and sweep-noise.
std::string emit(const ResultEnvelope &envelope, OutputFormat format);

/// Full command-line entry point; returns the process exit code.
int main_with_args(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Reads counts as a JSON object {"100": 51, ...} or CSV lines "bitstring,count"
/// (an optional header row is skipped).
ShotResult parse_counts(const std::string &text);

/// Lines "bits balanced different", e.g. "100 1 0"; all eight outcomes required.
Decoder parse_decode_table(const std::string &text);

/// JSON view of a RunRecord's probabilities.
Json distribution_json(const std::map<std::string, double> &dist);

}  // namespace qpair::cli

#endif  // QPAIR_CLI_H

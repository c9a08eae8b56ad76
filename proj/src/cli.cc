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

#include "qpair/cli.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

using namespace qpair;
using namespace qpair::cli;

std::string qpair::cli::command_name(Command command) {
    switch (command) {
        case Command::kRun:
            return "run";
        case Command::kVerify:
            return "verify";
        case Command::kAuditTheorem:
            return "audit-theorem";
        case Command::kFidelity:
            return "fidelity";
        case Command::kSweepNoise:
            return "sweep-noise";
    }
    throw std::logic_error("unknown command");
}

namespace {

std::string read_file(const std::string &path, const std::string &what) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open " + what + " '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <typename T>
bool parse_integer(std::string_view text, T &value) {
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

BoolFn parse_fn_flag(const std::string &flag, const std::string &text) {
    try {
        return parse_bool_fn(text);
    } catch (const std::invalid_argument &e) {
        throw UsageError(flag + ": " + e.what());
    }
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t end = text.find(sep, start);
        out.emplace_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) {
            return out;
        }
        start = end + 1;
    }
}

/// "ALG:F,G" with F and G either names or truth tables ("entangled:0:0,1:1,0:1,1:0").
void parse_theory(const std::string &text, RunRequest &req) {
    const size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw UsageError("--theory: expected 'algorithm:f,g', got '" + text + "'");
    }
    try {
        req.theory_algorithm = parse_algorithm(text.substr(0, colon));
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("--theory: ") + e.what());
    }
    const auto parts = split(std::string_view(text).substr(colon + 1), ',');
    if (parts.size() == 2) {
        req.f = parse_fn_flag("--theory", parts[0]);
        req.g = parse_fn_flag("--theory", parts[1]);
    } else if (parts.size() == 4) {
        req.f = parse_fn_flag("--theory", parts[0] + "," + parts[1]);
        req.g = parse_fn_flag("--theory", parts[2] + "," + parts[3]);
    } else {
        throw UsageError("--theory: expected two functions after '" + text.substr(0, colon + 1) + "', got '" +
                         text.substr(colon + 1) + "'");
    }
}

void check_promise(const RunRequest &req, Algorithm algorithm) {
    if (algorithm == Algorithm::kDeutsch) {
        return;
    }
    try {
        PromisePair(req.f, req.g);
    } catch (const std::domain_error &e) {
        throw UsageError(e.what());
    }
}

}  // namespace

std::optional<RunRequest> qpair::cli::parse_request(const std::vector<std::string> &args, std::string *help_out) {
    RunRequest req;

    std::uint64_t env_seed = 0;
    if (const char *env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
        if (!parse_integer(std::string_view(env), env_seed)) {
            throw UsageError(std::string(kSeedEnvVar) + ": expected a non-negative integer, got '" + env + "'");
        }
    }

    CLI::App app{"Exact simulation of the paired Deutsch problem with and without entanglement", "qpair"};
    app.require_subcommand(1, 1);

    std::string algorithm = "entangled";
    std::string f = "B1";
    std::string g = "B1";
    std::string shots = "exact";
    std::string noise = "off";
    std::string output = "json";
    std::string theory;
    std::string scales;
    std::uint64_t seed = env_seed;

    auto add_output = [&](CLI::App *sub) {
        sub->add_option("--output", output, "json or csv")->capture_default_str();
    };
    auto add_seed = [&](CLI::App *sub) {
        sub->add_option("--seed", seed, std::string("RNG seed (default from ") + kSeedEnvVar + ", else 0)");
    };

    CLI::App *run = app.add_subcommand("run", "Run one algorithm on a pair of oracles");
    run->add_option("--algorithm", algorithm, "deutsch, entangled or product")->capture_default_str();
    run->add_option("--f", f, "B1, B2, C1, C2 or truth table '0:b,1:b'")->capture_default_str();
    run->add_option("--g", g, "B1, B2, C1, C2 or truth table '0:b,1:b'")->capture_default_str();
    run->add_option("--shots", shots, "'exact' or a positive shot count")->capture_default_str();
    run->add_option("--noise", noise, "off, table2 or a key=value config path")->capture_default_str();
    add_seed(run);
    add_output(run);

    CLI::App *verify = app.add_subcommand("verify", "Exhaustive correctness and separability check");
    verify->add_option("--decode-table", req.decode_table_path, "Replacement decode table (lines 'bits balanced different')");
    add_output(verify);

    CLI::App *audit = app.add_subcommand("audit-theorem", "Audit the no-entanglement impossibility argument");
    audit->add_option("--samples", req.audit_samples, "Random product states for the CNOT criterion")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    audit->add_option("--grid", req.audit_grid, "Grid points per free parameter")
        ->capture_default_str()
        ->check(CLI::Range(2, 1000));
    add_seed(audit);
    add_output(audit);

    CLI::App *fidelity = app.add_subcommand("fidelity", "Statistical fidelity of measured counts against theory");
    fidelity->add_option("--counts", req.counts_path, "Counts file (JSON object or CSV bitstring,count)")->required();
    fidelity->add_option("--theory", theory, "algorithm:f,g, e.g. entangled:B1,B1")->required();
    add_seed(fidelity);
    add_output(fidelity);

    CLI::App *sweep = app.add_subcommand("sweep-noise", "Fidelity versus scaled noise rates");
    CLI::Option *sweep_algorithm =
        sweep->add_option("--algorithm", algorithm, "entangled or product (default: both)");
    CLI::Option *sweep_f = sweep->add_option("--f", f, "Oracle f (default: the four reference cases)");
    CLI::Option *sweep_g = sweep->add_option("--g", g, "Oracle g");
    CLI::Option *sweep_noise = sweep->add_option("--noise", noise, "table2 (default) or a config path");
    sweep->add_option("--scales", scales, "Comma-separated rate multipliers (default 0,0.5,1,2)");
    add_output(sweep);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        if (help_out != nullptr) {
            *help_out = app.help();
        }
        return std::nullopt;
    } catch (const CLI::CallForAllHelp &) {
        if (help_out != nullptr) {
            *help_out = app.help("", CLI::AppFormatMode::All);
        }
        return std::nullopt;
    } catch (const CLI::ParseError &e) {
        std::string msg = e.what();
        if (msg.empty()) {
            msg = e.get_name();
        }
        throw UsageError(msg + " (run 'qpair --help' for the grammar)");
    }

    req.seed = seed;
    if (run->parsed()) {
        req.command = Command::kRun;
    } else if (verify->parsed()) {
        req.command = Command::kVerify;
    } else if (audit->parsed()) {
        req.command = Command::kAuditTheorem;
    } else if (fidelity->parsed()) {
        req.command = Command::kFidelity;
    } else {
        req.command = Command::kSweepNoise;
    }

    if (output == "json") {
        req.output = OutputFormat::kJson;
    } else if (output == "csv") {
        req.output = OutputFormat::kCsv;
    } else {
        throw UsageError("--output: expected json or csv, got '" + output + "'");
    }
    if (req.output == OutputFormat::kCsv &&
        (req.command == Command::kVerify || req.command == Command::kAuditTheorem)) {
        throw UsageError("--output csv is not available for " + command_name(req.command));
    }

    if (req.command == Command::kRun || req.command == Command::kSweepNoise) {
        try {
            req.algorithm = parse_algorithm(algorithm);
        } catch (const std::invalid_argument &e) {
            throw UsageError(std::string("--algorithm: ") + e.what());
        }
        req.f = parse_fn_flag("--f", f);
        req.g = parse_fn_flag("--g", g);
    }

    if (req.command == Command::kSweepNoise) {
        req.single_algorithm = sweep_algorithm->count() > 0;
        req.single_case = sweep_f->count() > 0 || sweep_g->count() > 0;
        if (req.single_algorithm && req.algorithm == Algorithm::kDeutsch) {
            throw UsageError("--algorithm: sweep-noise runs entangled or product");
        }
        if (sweep_noise->count() == 0) {
            noise = "table2";
        }
        if (!scales.empty()) {
            req.scales.clear();
            for (const auto &token : split(scales, ',')) {
                double v = 0;
                auto res = std::from_chars(token.data(), token.data() + token.size(), v);
                if (res.ec != std::errc() || res.ptr != token.data() + token.size() || v < 0) {
                    throw UsageError("--scales: bad multiplier '" + token + "'");
                }
                req.scales.push_back(v);
            }
        }
    }

    if (req.command == Command::kRun || req.command == Command::kSweepNoise) {
        if (noise == "off") {
            req.noise = NoiseKind::kOff;
        } else if (noise == "table2") {
            req.noise = NoiseKind::kTable2;
        } else {
            req.noise = NoiseKind::kConfig;
            req.noise_path = noise;
        }
    }

    if (req.command == Command::kRun) {
        if (shots != "exact") {
            std::int64_t n = 0;
            if (!parse_integer(std::string_view(shots), n) || n <= 0) {
                throw UsageError("--shots: expected 'exact' or a positive integer, got '" + shots + "'");
            }
            req.shots = n;
        }
        check_promise(req, req.algorithm);
    }
    if (req.command == Command::kSweepNoise && req.single_case) {
        check_promise(req, Algorithm::kEntangledPair);
    }
    if (req.command == Command::kFidelity) {
        parse_theory(theory, req);
        check_promise(req, req.theory_algorithm);
    }
    return req;
}

ShotResult qpair::cli::parse_counts(const std::string &text) {
    ShotResult result;
    size_t width = 0;
    auto add = [&](const std::string &bits, std::int64_t n) {
        try {
            from_bitstring(bits);
        } catch (const std::domain_error &e) {
            throw UsageError(std::string("counts: ") + e.what());
        }
        if (width != 0 && bits.size() != width) {
            throw UsageError("counts: bitstring '" + bits + "' has a different length from the others");
        }
        width = bits.size();
        if (n < 0) {
            throw UsageError("counts: negative count for '" + bits + "'");
        }
        if (result.counts.contains(bits)) {
            throw UsageError("counts: bitstring '" + bits + "' listed twice");
        }
        if (n > 0) {
            result.counts[bits] = n;
        }
        result.shots += n;
    };

    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error &e) {
            throw UsageError(std::string("counts: invalid JSON: ") + e.what());
        }
        for (const auto &[key, value] : j.items()) {
            if (!value.is_number_integer()) {
                throw UsageError("counts: value for '" + key + "' is not an integer");
            }
            add(key, value.get<std::int64_t>());
        }
    } else {
        std::istringstream in(text);
        std::string line;
        bool first_row = true;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty()) {
                continue;
            }
            const auto cells = split(line, ',');
            if (first_row && !cells.empty() && cells[0] == "bitstring") {
                first_row = false;
                continue;
            }
            first_row = false;
            if (cells.size() != 2) {
                throw UsageError("counts: expected 'bitstring,count', got '" + line + "'");
            }
            std::int64_t n = 0;
            if (!parse_integer(std::string_view(cells[1]), n)) {
                throw UsageError("counts: bad count '" + cells[1] + "'");
            }
            add(cells[0], n);
        }
    }
    if (result.shots <= 0) {
        throw UsageError("counts: no shots recorded");
    }
    return result;
}

Decoder qpair::cli::parse_decode_table(const std::string &text) {
    std::map<std::string, DecodedAnswer> table;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream fields(line);
        std::string bits;
        int balanced = -1;
        int different = -1;
        if (!(fields >> bits)) {
            continue;
        }
        if (!(fields >> balanced >> different) || bits.size() != 3 || (balanced != 0 && balanced != 1) ||
            (different != 0 && different != 1)) {
            throw UsageError("decode table: expected 'bits balanced different', got '" + line + "'");
        }
        try {
            from_bitstring(bits);
        } catch (const std::domain_error &e) {
            throw UsageError(std::string("decode table: ") + e.what());
        }
        table[bits] = DecodedAnswer{balanced == 1, different == 1};
    }
    if (table.size() != 8) {
        throw UsageError("decode table must list all 8 outcomes, got " + std::to_string(table.size()));
    }
    return [table](std::string_view bits) { return table.at(std::string(bits)); };
}

Json qpair::cli::distribution_json(const std::map<std::string, double> &dist) {
    Json j = Json::object();
    for (const auto &[bits, p] : dist) {
        j[bits] = p;
    }
    return j;
}

namespace {

Json request_json(const RunRequest &req) {
    Json j;
    j["command"] = command_name(req.command);
    switch (req.command) {
        case Command::kRun:
            j["algorithm"] = algorithm_name(req.algorithm);
            j["f"] = req.f.label();
            if (req.algorithm != Algorithm::kDeutsch) {
                j["g"] = req.g.label();
            }
            if (req.shots) {
                j["shots"] = *req.shots;
            } else {
                j["shots"] = "exact";
            }
            j["noise"] = req.noise == NoiseKind::kOff ? "off" : req.noise == NoiseKind::kTable2 ? "table2" : req.noise_path;
            j["seed"] = req.seed;
            break;
        case Command::kVerify:
            j["decode_table"] = req.decode_table_path.empty() ? "builtin" : req.decode_table_path;
            break;
        case Command::kAuditTheorem:
            j["samples"] = req.audit_samples;
            j["grid"] = req.audit_grid;
            j["seed"] = req.seed;
            break;
        case Command::kFidelity:
            j["counts"] = req.counts_path;
            j["theory"] = std::string(algorithm_name(req.theory_algorithm)) + ":" + req.f.label() + "," + req.g.label();
            j["seed"] = req.seed;
            break;
        case Command::kSweepNoise:
            j["algorithm"] = req.single_algorithm ? std::string(algorithm_name(req.algorithm)) : std::string("all");
            if (req.single_case) {
                j["f"] = req.f.label();
                j["g"] = req.g.label();
            }
            j["noise"] = req.noise == NoiseKind::kOff ? "off" : req.noise == NoiseKind::kTable2 ? "table2" : req.noise_path;
            j["scales"] = req.scales;
            break;
    }
    j["output"] = req.output == OutputFormat::kJson ? "json" : "csv";
    return j;
}

NoiseModel noise_model_for(const RunRequest &req) {
    switch (req.noise) {
        case NoiseKind::kOff:
            return NoiseModel::noiseless(3);
        case NoiseKind::kTable2:
            return NoiseModel::table2();
        case NoiseKind::kConfig:
            try {
                return load_noise_model(req.noise_path);
            } catch (const std::invalid_argument &e) {
                throw UsageError(std::string("--noise: ") + e.what());
            }
    }
    throw std::logic_error("unknown noise kind");
}

Json decoded_json(const DecodedAnswer &d) {
    Json j;
    j["balanced"] = static_cast<int>(d.balanced);
    if (d.different) {
        j["different"] = static_cast<int>(*d.different);
    }
    return j;
}

DecodedAnswer argmax_decode(Algorithm algorithm, const std::map<std::string, double> &dist) {
    auto best = std::max_element(
        dist.begin(), dist.end(), [](const auto &a, const auto &b) { return a.second < b.second; });
    if (best == dist.end()) {
        throw std::logic_error("empty distribution");
    }
    if (algorithm == Algorithm::kDeutsch) {
        return DecodedAnswer{best->first[0] == '1', std::nullopt};
    }
    return decode(best->first);
}

Json execute_run(const RunRequest &req) {
    const PromisePair pair = req.algorithm == Algorithm::kDeutsch ? PromisePair(req.f, req.f) : PromisePair(req.f, req.g);
    const RunRecord record = run_algorithm(req.algorithm, pair);

    std::map<std::string, double> reported = record.final_distribution;
    if (req.noise != NoiseKind::kOff) {
        reported = run_noisy(req.algorithm, pair, noise_model_for(req));
    }
    std::optional<ShotResult> shots;
    std::optional<FidelityReport> fidelity;
    if (req.shots) {
        shots = sample_shots(reported, *req.shots, req.seed);
        fidelity = statistical_fidelity(*shots, record.final_distribution, req.seed);
        reported = fidelity->p_exp;
    } else if (req.noise != NoiseKind::kOff) {
        fidelity = FidelityReport{std::min(1.0, classical_fidelity(reported, record.final_distribution)), 0.0, reported,
                                  record.final_distribution};
    }

    Json j;
    j["request"] = request_json(req);
    Json queries = Json::object();
    for (const auto &[label, n] : record.query_counts) {
        queries[label] = n;
    }
    j["queries"] = queries;
    j["probabilities"] = distribution_json(reported);
    if (shots) {
        Json counts = Json::object();
        for (const auto &[bits, n] : shots->counts) {
            counts[bits] = n;
        }
        j["counts"] = counts;
    }
    const bool ideal = !shots && req.noise == NoiseKind::kOff;
    j["decoded"] = decoded_json(ideal ? record.decoded : argmax_decode(req.algorithm, reported));
    Json steps = Json::array();
    for (const auto &s : trace_run_separability(record)) {
        Json step;
        step["step"] = s.label;
        step["product"] = s.product;
        steps.push_back(step);
    }
    j["separability"] = steps;
    if (fidelity) {
        Json fj;
        fj["value"] = fidelity->fidelity;
        fj["stderr"] = fidelity->standard_error;
        j["fidelity"] = fj;
    }
    j["gate_count"] = record.gate_count;
    return j;
}

Json execute_verify(const RunRequest &req, int &exit_code) {
    Decoder decoder = decode;
    if (!req.decode_table_path.empty()) {
        decoder = parse_decode_table(read_file(req.decode_table_path, "decode table"));
    }
    const VerificationReport report = verify_all(decoder);

    Json j;
    j["request"] = request_json(req);
    Json checks = Json::array();
    for (const auto &c : report.checks) {
        Json cj;
        cj["algorithm"] = algorithm_name(c.algorithm);
        cj["f"] = c.f.label();
        if (c.g) {
            cj["g"] = c.g->label();
        }
        cj["correct_probability"] = c.correct_mass;
        Json q = Json::object();
        for (const auto &[label, n] : c.query_counts) {
            q[label] = n;
        }
        cj["queries"] = q;
        cj["decode_ok"] = c.decode_ok;
        cj["queries_ok"] = c.queries_ok;
        cj["separability_ok"] = c.separability_ok;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    Json summary;
    Json gate_counts;
    for (auto algorithm : {Algorithm::kDeutsch, Algorithm::kEntangledPair, Algorithm::kProductPair}) {
        const std::string name(algorithm_name(algorithm));
        summary[name] = std::to_string(report.passed(algorithm)) + "/" + std::to_string(report.total(algorithm));
        gate_counts[name] = circuit_for(algorithm).gate_count();
    }
    j["summary"] = summary;
    j["gate_counts"] = gate_counts;
    j["passed"] = report.all_passed();
    exit_code = report.all_passed() ? kExitOk : kExitCheckFailed;
    return j;
}

Json execute_audit(const RunRequest &req, int &exit_code) {
    const TheoremAudit audit = audit_theorem(req.audit_samples, req.audit_grid, req.seed);
    Json j;
    j["request"] = request_json(req);
    Json cnot;
    cnot["random_samples"] = audit.random_samples;
    cnot["family_samples"] = audit.family_samples;
    cnot["disagreements"] = audit.disagreements;
    j["cnot_condition"] = cnot;
    Json families = Json::array();
    for (const auto &f : audit.families) {
        Json fj;
        fj["family"] = family_name(f.family);
        fj["samples"] = f.samples.size();
        Json decidable = Json::array();
        for (auto q : f.ever_decidable) {
            decidable.push_back(quantity_name(q));
        }
        fj["ever_decidable"] = decidable;
        fj["max_simultaneous"] = f.max_simultaneous;
        families.push_back(fj);
    }
    j["families"] = families;
    j["passed"] = audit.passed();
    exit_code = audit.passed() ? kExitOk : kExitCheckFailed;
    return j;
}

Json execute_fidelity(const RunRequest &req) {
    const ShotResult counts = parse_counts(read_file(req.counts_path, "counts file"));
    const PromisePair pair =
        req.theory_algorithm == Algorithm::kDeutsch ? PromisePair(req.f, req.f) : PromisePair(req.f, req.g);
    const RunRecord theory = run_algorithm(req.theory_algorithm, pair);
    const size_t width = counts.counts.begin()->first.size();
    if (width != theory.final_distribution.begin()->first.size()) {
        throw UsageError("counts use " + std::to_string(width) + "-bit outcomes but " +
                         std::string(algorithm_name(req.theory_algorithm)) + " measures " +
                         std::to_string(theory.final_distribution.begin()->first.size()));
    }
    const FidelityReport report = statistical_fidelity(counts, theory.final_distribution, req.seed);

    Json j;
    j["request"] = request_json(req);
    Json cj = Json::object();
    for (const auto &[bits, n] : counts.counts) {
        cj[bits] = n;
    }
    j["shots"] = counts.shots;
    j["counts"] = cj;
    j["probabilities"] = distribution_json(report.p_exp);
    j["theory"] = distribution_json(report.p_th);
    Json fj;
    fj["value"] = report.fidelity;
    fj["stderr"] = report.standard_error;
    j["fidelity"] = fj;
    return j;
}

Json execute_sweep(const RunRequest &req) {
    std::vector<PromisePair> cases;
    if (req.single_case) {
        cases.emplace_back(req.f, req.g);
    } else {
        cases = {
            PromisePair(named::B1, named::B1),
            PromisePair(named::B1, named::B2),
            PromisePair(named::C1, named::C1),
            PromisePair(named::C1, named::C2),
        };
    }
    std::vector<Algorithm> algorithms;
    if (req.single_algorithm) {
        algorithms = {req.algorithm};
    } else {
        algorithms = {Algorithm::kEntangledPair, Algorithm::kProductPair};
    }
    const NoiseModel base = noise_model_for(req);

    Json rows = Json::array();
    for (auto algorithm : algorithms) {
        for (const auto &pair : cases) {
            const RunRecord ideal = run_algorithm(algorithm, pair);
            Json row;
            row["algorithm"] = algorithm_name(algorithm);
            row["f"] = pair.f().label();
            row["g"] = pair.g().label();
            Json points = Json::array();
            bool monotone = true;
            double previous = 2.0;
            for (double scale : req.scales) {
                NoiseModel model;
                try {
                    model = base.scaled(scale);
                } catch (const std::domain_error &e) {
                    throw UsageError("--scales: multiplier " + std::to_string(scale) + " pushes a rate outside [0, 1]");
                }
                const auto noisy = run_noisy(algorithm, pair, model);
                const double f = std::min(1.0, classical_fidelity(noisy, ideal.final_distribution));
                const DecodedAnswer d = argmax_decode(algorithm, noisy);
                Json pt;
                pt["scale"] = scale;
                pt["fidelity"] = f;
                pt["decoded_correct"] = d == ideal.decoded;
                points.push_back(pt);
                // Monotonicity only applies to increasing scales.
                if (f > previous + kExactTol) {
                    monotone = false;
                }
                previous = f;
            }
            row["points"] = points;
            row["monotone"] = monotone && std::is_sorted(req.scales.begin(), req.scales.end());
            rows.push_back(row);
        }
    }
    Json j;
    j["request"] = request_json(req);
    j["sweep"] = rows;
    return j;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_probability(double p) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%#.17g", p);
    return buf;
}

std::string single_line(std::string msg) {
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    return msg;
}

}  // namespace

Json ResultEnvelope::to_json() const {
    Json j = payload;
    j["tool_version"] = kToolVersion;
    j["timestamp"] = timestamp;
    return j;
}

ResultEnvelope qpair::cli::execute(const RunRequest &request) {
    ResultEnvelope env{request, {}, kExitOk, utc_timestamp()};
    try {
        switch (request.command) {
            case Command::kRun:
                env.payload = execute_run(request);
                break;
            case Command::kVerify:
                env.payload = execute_verify(request, env.exit_code);
                break;
            case Command::kAuditTheorem:
                env.payload = execute_audit(request, env.exit_code);
                break;
            case Command::kFidelity:
                env.payload = execute_fidelity(request);
                break;
            case Command::kSweepNoise:
                env.payload = execute_sweep(request);
                break;
        }
    } catch (const std::domain_error &e) {
        throw UsageError(e.what());
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    return env;
}

std::string qpair::cli::emit(const ResultEnvelope &envelope, OutputFormat format) {
    if (format == OutputFormat::kJson) {
        return envelope.to_json().dump(2) + "\n";
    }
    const Json &p = envelope.payload;
    std::ostringstream out;
    switch (envelope.request.command) {
        case Command::kRun:
        case Command::kFidelity: {
            out << "bitstring,probability,count\n";
            const bool has_counts = p.contains("counts");
            for (const auto &[bits, prob] : p.at("probabilities").items()) {
                out << bits << "," << format_probability(prob.get<double>()) << ",";
                if (has_counts) {
                    out << (p.at("counts").contains(bits) ? p.at("counts").at(bits).get<std::int64_t>() : 0);
                }
                out << "\n";
            }
            break;
        }
        case Command::kSweepNoise:
            out << "algorithm,f,g,scale,fidelity,decoded_correct\n";
            for (const auto &row : p.at("sweep")) {
                for (const auto &pt : row.at("points")) {
                    out << row.at("algorithm").get<std::string>() << "," << row.at("f").get<std::string>() << ","
                        << row.at("g").get<std::string>() << "," << pt.at("scale").get<double>() << ","
                        << format_probability(pt.at("fidelity").get<double>()) << ","
                        << (pt.at("decoded_correct").get<bool>() ? 1 : 0) << "\n";
                }
            }
            break;
        case Command::kVerify:
        case Command::kAuditTheorem:
            throw UsageError("--output csv is not available for " + command_name(envelope.request.command));
    }
    return out.str();
}

int qpair::cli::main_with_args(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    try {
        std::string help;
        const auto request = parse_request(args, &help);
        if (!request) {
            out << help;
            return kExitOk;
        }
        const ResultEnvelope envelope = execute(*request);
        out << emit(envelope, request->output);
        return envelope.exit_code;
    } catch (const UsageError &e) {
        err << kErrorPrefix << single_line(e.what()) << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << kInternalErrorPrefix << single_line(e.what()) << "\n";
        return kExitInternal;
    }
}

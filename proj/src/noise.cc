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

#include "qpair/noise.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qpair/gates.h"

using namespace qpair;

NoiseModel NoiseModel::table2() {
    NoiseModel m;
    m.single_qubit_gate_error = {1.72e-3, 1.46e-3, 1.80e-3};
    m.readout_error = {4.20e-2, 7.00e-2, 1.40e-2};
    m.two_qubit_gate_error = {
        {{0, 1}, 3.17e-2},
        {{1, 2}, 2.87e-2},
        {{0, 2}, 2.67e-2},
    };
    return m;
}

NoiseModel NoiseModel::noiseless(int num_qubits) {
    NoiseModel m;
    m.single_qubit_gate_error.assign(static_cast<size_t>(num_qubits), 0.0);
    m.readout_error.assign(static_cast<size_t>(num_qubits), 0.0);
    for (int a = 0; a < num_qubits; a++) {
        for (int b = a + 1; b < num_qubits; b++) {
            m.two_qubit_gate_error[{a, b}] = 0.0;
        }
    }
    return m;
}

namespace {

void check_probability(double p, const std::string &what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error(what + " must be a probability in [0, 1]");
    }
}

}  // namespace

void NoiseModel::validate() const {
    if (readout_error.size() != single_qubit_gate_error.size()) {
        throw std::domain_error("noise model has gate errors for " + std::to_string(single_qubit_gate_error.size()) +
                                " qubits but readout errors for " + std::to_string(readout_error.size()));
    }
    for (size_t q = 0; q < single_qubit_gate_error.size(); q++) {
        check_probability(single_qubit_gate_error[q], "gate_error." + std::to_string(q));
        check_probability(readout_error[q], "readout_error." + std::to_string(q));
    }
    for (const auto &[pair, p] : two_qubit_gate_error) {
        const auto key = std::to_string(pair.first) + "-" + std::to_string(pair.second);
        if (pair.first == pair.second || pair.first < 0 || pair.second < 0 || pair.first >= num_qubits() ||
            pair.second >= num_qubits()) {
            throw std::domain_error("cnot_error." + key + " names an invalid qubit pair");
        }
        check_probability(p, "cnot_error." + key);
    }
}

NoiseModel NoiseModel::scaled(double factor) const {
    NoiseModel m = *this;
    for (auto &p : m.single_qubit_gate_error) {
        p *= factor;
    }
    for (auto &p : m.readout_error) {
        p *= factor;
    }
    for (auto &[pair, p] : m.two_qubit_gate_error) {
        p *= factor;
    }
    m.validate();
    return m;
}

double NoiseModel::gate_error(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits()) {
        throw std::domain_error("noise model has no gate error for qubit " + std::to_string(qubit));
    }
    return single_qubit_gate_error[static_cast<size_t>(qubit)];
}

double NoiseModel::pair_error(int control, int target) const {
    if (auto it = two_qubit_gate_error.find({control, target}); it != two_qubit_gate_error.end()) {
        return it->second;
    }
    if (auto it = two_qubit_gate_error.find({target, control}); it != two_qubit_gate_error.end()) {
        return it->second;
    }
    throw std::domain_error(
        "noise model has no two-qubit error for pair " + std::to_string(control) + "-" + std::to_string(target));
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

template <typename T>
T parse_number(std::string_view text, const std::string &context) {
    T value{};
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument(context + ": cannot parse number '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

std::string qpair::to_config(const NoiseModel &model) {
    std::ostringstream out;
    out << "num_qubits = " << model.num_qubits() << "\n";
    for (int q = 0; q < model.num_qubits(); q++) {
        out << "gate_error." << q << " = " << format_double(model.single_qubit_gate_error[static_cast<size_t>(q)])
            << "\n";
    }
    for (int q = 0; q < model.num_qubits(); q++) {
        out << "readout_error." << q << " = " << format_double(model.readout_error[static_cast<size_t>(q)]) << "\n";
    }
    for (const auto &[pair, p] : model.two_qubit_gate_error) {
        out << "cnot_error." << pair.first << "-" << pair.second << " = " << format_double(p) << "\n";
    }
    return out.str();
}

NoiseModel qpair::parse_noise_config(std::string_view text) {
    NoiseModel model;
    int num_qubits = -1;
    std::map<int, double> gate;
    std::map<int, double> readout;
    int line_no = 0;
    while (!text.empty()) {
        size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        line_no++;
        const std::string context = "noise config line " + std::to_string(line_no);
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument(context + ": expected 'key = value', got '" + std::string(line) + "'");
        }
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));

        if (key == "num_qubits") {
            num_qubits = parse_number<int>(value, context);
        } else if (key.starts_with("gate_error.")) {
            gate[parse_number<int>(key.substr(11), context)] = parse_number<double>(value, context);
        } else if (key.starts_with("readout_error.")) {
            readout[parse_number<int>(key.substr(14), context)] = parse_number<double>(value, context);
        } else if (key.starts_with("cnot_error.")) {
            std::string_view pair = key.substr(11);
            size_t dash = pair.find('-');
            if (dash == std::string_view::npos) {
                throw std::invalid_argument(context + ": cnot_error key needs 'control-target', got '" +
                                            std::string(key) + "'");
            }
            int a = parse_number<int>(pair.substr(0, dash), context);
            int b = parse_number<int>(pair.substr(dash + 1), context);
            model.two_qubit_gate_error[{a, b}] = parse_number<double>(value, context);
        } else {
            throw std::invalid_argument(context + ": unknown key '" + std::string(key) + "'");
        }
    }
    if (num_qubits < 1) {
        throw std::invalid_argument("noise config must set num_qubits to a positive integer");
    }
    model.single_qubit_gate_error.assign(static_cast<size_t>(num_qubits), 0.0);
    model.readout_error.assign(static_cast<size_t>(num_qubits), 0.0);
    for (const auto &[q, p] : gate) {
        if (q < 0 || q >= num_qubits) {
            throw std::invalid_argument("gate_error." + std::to_string(q) + " is outside num_qubits");
        }
        model.single_qubit_gate_error[static_cast<size_t>(q)] = p;
    }
    for (const auto &[q, p] : readout) {
        if (q < 0 || q >= num_qubits) {
            throw std::invalid_argument("readout_error." + std::to_string(q) + " is outside num_qubits");
        }
        model.readout_error[static_cast<size_t>(q)] = p;
    }
    try {
        model.validate();
    } catch (const std::domain_error &e) {
        throw std::invalid_argument(std::string("noise config: ") + e.what());
    }
    return model;
}

NoiseModel qpair::load_noise_model(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open noise config '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_noise_config(buf.str());
}

DensityMatrix qpair::depolarize(const DensityMatrix &rho, std::span<const int> qubits, double p) {
    check_probability(p, "depolarizing probability");
    const int n = rho.num_qubits();
    detail::check_targets(qubits, n);
    if (p == 0.0 || qubits.empty()) {
        return rho;
    }
    std::uint64_t target_mask = 0;
    for (int q : qubits) {
        target_mask |= qubit_mask(n, q);
    }
    const auto target_masks = detail::masks_of(qubits, n);
    const std::uint64_t tdim = std::uint64_t{1} << qubits.size();
    const Eigen::Index dim = rho.dim();

    Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; i++) {
        for (Eigen::Index j = 0; j < dim; j++) {
            const auto ui = static_cast<std::uint64_t>(i);
            const auto uj = static_cast<std::uint64_t>(j);
            if ((ui & target_mask) != (uj & target_mask)) {
                continue;
            }
            std::complex<double> acc = 0;
            for (std::uint64_t t = 0; t < tdim; t++) {
                const auto bits = detail::scatter_bits(t, target_masks);
                acc += rho.matrix()(static_cast<Eigen::Index>((ui & ~target_mask) | bits),
                                    static_cast<Eigen::Index>((uj & ~target_mask) | bits));
            }
            mixed(i, j) = acc / static_cast<double>(tdim);
        }
    }
    return DensityMatrix(n, (1 - p) * rho.matrix() + p * mixed);
}

DensityMatrix qpair::depolarize(const DensityMatrix &rho, std::initializer_list<int> qubits, double p) {
    return depolarize(rho, std::span<const int>(qubits.begin(), qubits.size()), p);
}

DensityMatrix qpair::apply_gate(const DensityMatrix &rho, const Unitary &gate, std::span<const int> targets) {
    const Eigen::MatrixXcd full = embed(gate, targets, rho.num_qubits());
    Eigen::MatrixXcd out = full * rho.matrix() * full.adjoint();
    // Restore exact Hermiticity lost to rounding.
    out = (out + out.adjoint().eval()) / 2.0;
    return DensityMatrix(rho.num_qubits(), std::move(out));
}

std::vector<double> qpair::apply_readout_error(std::vector<double> probabilities, std::span<const double> flip_rates) {
    const int n = static_cast<int>(flip_rates.size());
    if (probabilities.size() != (size_t{1} << n)) {
        throw std::domain_error("readout error needs one flip rate per qubit");
    }
    for (int q = 0; q < n; q++) {
        const double eps = flip_rates[static_cast<size_t>(q)];
        check_probability(eps, "readout error");
        const std::uint64_t mask = qubit_mask(n, q);
        std::vector<double> next(probabilities.size());
        for (std::uint64_t i = 0; i < probabilities.size(); i++) {
            next[i] = (1 - eps) * probabilities[i] + eps * probabilities[i ^ mask];
        }
        probabilities = std::move(next);
    }
    return probabilities;
}

namespace {

/// Native-gate noisy evolution shared by gates and compiled oracle queries.
struct NoisyRegister {
    const NoiseModel &model;
    DensityMatrix rho;

    void gate(const Unitary &u, std::span<const int> targets) {
        rho = apply_gate(rho, u, targets);
        double p = 0;
        if (targets.size() == 1) {
            p = model.gate_error(targets[0]);
        } else if (targets.size() == 2) {
            p = model.pair_error(targets[0], targets[1]);
        } else {
            throw std::domain_error("noise model only covers one- and two-qubit gates");
        }
        rho = depolarize(rho, targets, p);
    }
};

}  // namespace

std::map<std::string, double> qpair::run_noisy(Algorithm algorithm, const PromisePair &pair, const NoiseModel &model) {
    model.validate();
    const Circuit circuit = circuit_for(algorithm);
    if (model.num_qubits() < circuit.num_qubits) {
        throw std::domain_error("noise model covers " + std::to_string(model.num_qubits()) + " qubits but " +
                                std::string(algorithm_name(algorithm)) + " needs " +
                                std::to_string(circuit.num_qubits));
    }
    NoisyRegister reg{model, density_matrix(basis_state(circuit.num_qubits, 0))};
    const Unitary cx = gates::cnot();
    const Unitary x = gates::pauli_x();
    for (const auto &op : circuit.ops) {
        if (const auto *g = std::get_if<GateOp>(&op)) {
            reg.gate(g->gate, g->targets);
            continue;
        }
        const auto &q = std::get<QueryOp>(op);
        const BoolFn &fn = q.oracle == OracleSlot::kF ? pair.f() : pair.g();
        for (const auto &native : oracle_decomposition(fn)) {
            if (native.kind == OracleGate::Kind::kCnot) {
                const int targets[] = {q.input, q.output};
                reg.gate(cx, targets);
            } else {
                const int targets[] = {q.output};
                reg.gate(x, targets);
            }
        }
    }

    std::vector<double> probs(static_cast<size_t>(reg.rho.dim()));
    for (Eigen::Index i = 0; i < reg.rho.dim(); i++) {
        probs[static_cast<size_t>(i)] = std::max(0.0, reg.rho.matrix()(i, i).real());
    }
    std::vector<double> flips(model.readout_error.begin(), model.readout_error.begin() + circuit.num_qubits);
    probs = apply_readout_error(std::move(probs), flips);

    std::map<std::string, double> out;
    for (size_t i = 0; i < probs.size(); i++) {
        out.emplace(to_bitstring(i, circuit.num_qubits), probs[i]);
    }
    return out;
}

ShotResult qpair::sample_shots(const std::map<std::string, double> &dist, std::int64_t shots, std::uint64_t seed) {
    if (shots <= 0) {
        throw std::domain_error("shots must be positive");
    }
    double total = 0;
    for (const auto &[bits, p] : dist) {
        if (!(p >= 0)) {
            throw std::domain_error("distribution has a negative probability at " + bits);
        }
        total += p;
    }
    if (std::abs(total - 1) > kSpectralTol) {
        throw std::domain_error("distribution sums to " + std::to_string(total) + ", not 1");
    }

    std::mt19937_64 rng(seed);
    ShotResult result{shots, {}};
    std::int64_t remaining = shots;
    double remaining_mass = total;
    for (auto it = dist.begin(); it != dist.end() && remaining > 0; ++it) {
        std::int64_t k;
        if (std::next(it) == dist.end() || it->second >= remaining_mass) {
            k = remaining;
        } else {
            const double q = std::clamp(it->second / remaining_mass, 0.0, 1.0);
            std::binomial_distribution<std::int64_t> binom(remaining, q);
            k = binom(rng);
        }
        if (k > 0) {
            result.counts[it->first] = k;
        }
        remaining -= k;
        remaining_mass -= it->second;
    }
    return result;
}

double qpair::classical_fidelity(const std::map<std::string, double> &p, const std::map<std::string, double> &q) {
    double f = 0;
    for (const auto &[bits, pk] : p) {
        if (auto it = q.find(bits); it != q.end()) {
            f += std::sqrt(pk * it->second);
        }
    }
    return f;
}

std::map<std::string, double> qpair::empirical_distribution(const ShotResult &result) {
    if (result.shots <= 0) {
        throw std::domain_error("shots must be positive");
    }
    std::map<std::string, double> p;
    for (const auto &[bits, n] : result.counts) {
        p[bits] = static_cast<double>(n) / static_cast<double>(result.shots);
    }
    return p;
}

FidelityReport qpair::statistical_fidelity(
    const ShotResult &result, const std::map<std::string, double> &p_th, std::uint64_t bootstrap_seed, int resamples) {
    FidelityReport report;
    report.p_exp = empirical_distribution(result);
    report.p_th = p_th;
    report.fidelity = std::min(1.0, classical_fidelity(report.p_exp, p_th));

    std::mt19937_64 rng(bootstrap_seed);
    std::vector<double> values;
    values.reserve(static_cast<size_t>(resamples));
    for (int r = 0; r < resamples; r++) {
        std::map<std::string, double> counts;
        double total = 0;
        for (const auto &[bits, n] : result.counts) {
            std::poisson_distribution<std::int64_t> poisson(static_cast<double>(n));
            const auto k = static_cast<double>(poisson(rng));
            counts[bits] = k;
            total += k;
        }
        if (total == 0) {
            continue;
        }
        for (auto &[bits, c] : counts) {
            c /= total;
        }
        values.push_back(std::min(1.0, classical_fidelity(counts, p_th)));
    }
    if (values.size() > 1) {
        double mean = 0;
        for (double v : values) {
            mean += v;
        }
        mean /= static_cast<double>(values.size());
        double var = 0;
        for (double v : values) {
            var += (v - mean) * (v - mean);
        }
        report.standard_error = std::sqrt(var / static_cast<double>(values.size() - 1));
    }
    return report;
}

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

#ifndef QPAIR_NOISE_H
#define QPAIR_NOISE_H

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpair/algorithms.h"
#include "qpair/oracles.h"
#include "qpair/state.h"

namespace qpair {

/// Per-qubit and per-pair error probabilities. Qubit indices follow the
/// register order (qubit 0 = A).
struct NoiseModel {
    std::vector<double> single_qubit_gate_error;
    /// Keyed by (control, target). Lookups fall back to the reversed pair.
    std::map<std::pair<int, int>, double> two_qubit_gate_error;
    std::vector<double> readout_error;

    /// Three-qubit superconducting calibration: gate errors 1.72e-3,
    /// 1.46e-3, 1.80e-3; readout 4.20e-2, 7.00e-2, 1.40e-2; CNOT (0,1)
    /// 3.17e-2, (1,2) 2.87e-2, (0,2) 2.67e-2.
    static NoiseModel table2();
    static NoiseModel noiseless(int num_qubits);

    int num_qubits() const {
        return static_cast<int>(single_qubit_gate_error.size());
    }
    /// Throws std::domain_error on probabilities outside [0, 1] or
    /// mismatched per-qubit vectors.
    void validate() const;
    /// Every rate multiplied by `factor`; the result is validated.
    NoiseModel scaled(double factor) const;

    double gate_error(int qubit) const;
    double pair_error(int control, int target) const;

    friend bool operator==(const NoiseModel &, const NoiseModel &) = default;
};

/// key = value text, one rate per line; '#' starts a comment.
///   num_qubits = 3
///   gate_error.0 = 0.00172
///   readout_error.0 = 0.042
///   cnot_error.0-1 = 0.0317
/// Values are written in shortest round-trip form.
std::string to_config(const NoiseModel &model);
/// Throws std::invalid_argument naming the offending line.
NoiseModel parse_noise_config(std::string_view text);
NoiseModel load_noise_model(const std::string &path);

/// (1 - p) rho + p (I/d on `qubits`) ⊗ Tr_qubits(rho), with the identity
/// placed on the listed qubits in their original positions.
DensityMatrix depolarize(const DensityMatrix &rho, std::span<const int> qubits, double p);
DensityMatrix depolarize(const DensityMatrix &rho, std::initializer_list<int> qubits, double p);

/// rho -> G rho G^dagger with G acting on `targets`.
DensityMatrix apply_gate(const DensityMatrix &rho, const Unitary &gate, std::span<const int> targets);

/// Pushes a distribution (indexed by basis index) through independent
/// symmetric bit-flip readout channels.
std::vector<double> apply_readout_error(std::vector<double> probabilities, std::span<const double> flip_rates);

/// Density-matrix run of the algorithm's circuit. Every gate is followed by
/// depolarizing noise at its rate; oracles are compiled to CNOT / X gates
/// first. Returns every outcome bitstring, including zeros.
std::map<std::string, double> run_noisy(Algorithm algorithm, const PromisePair &pair, const NoiseModel &model);

struct ShotResult {
    std::int64_t shots = 0;
    /// Outcomes with zero counts are omitted.
    std::map<std::string, std::int64_t> counts;

    friend bool operator==(const ShotResult &, const ShotResult &) = default;
};

/// Multinomial draw, reproducible for a fixed seed. Throws std::domain_error
/// if shots <= 0 or the distribution does not sum to 1 within 1e-9.
ShotResult sample_shots(const std::map<std::string, double> &dist, std::int64_t shots, std::uint64_t seed);

/// Bhattacharyya coefficient sum_k sqrt(p_k q_k) over the union of supports.
double classical_fidelity(const std::map<std::string, double> &p, const std::map<std::string, double> &q);

std::map<std::string, double> empirical_distribution(const ShotResult &result);

struct FidelityReport {
    double fidelity = 0;
    double standard_error = 0;
    std::map<std::string, double> p_exp;
    std::map<std::string, double> p_th;
};

inline constexpr int kBootstrapResamples = 1000;

/// F between the observed frequencies and `p_th`; the error bar is the
/// standard deviation of F over Poisson resamples of every count.
FidelityReport statistical_fidelity(
    const ShotResult &result,
    const std::map<std::string, double> &p_th,
    std::uint64_t bootstrap_seed = 0,
    int resamples = kBootstrapResamples);

}  // namespace qpair

#endif  // QPAIR_NOISE_H

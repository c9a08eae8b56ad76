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

#include "qpair/entanglement.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qpair/gates.h"
#include "qpair/oracles.h"

using namespace qpair;

SeparabilityVerdict qpair::schmidt_analyze(const StateVector &state, std::span<const int> left) {
    const int n = state.num_qubits();
    if (left.empty() || static_cast<int>(left.size()) >= n) {
        throw std::domain_error("schmidt_analyze needs a non-empty proper subset of the qubits");
    }
    detail::check_targets(left, n);
    const auto right = detail::complement_of(left, n);
    const auto left_masks = detail::masks_of(left, n);
    const auto right_masks = detail::masks_of(right, n);

    const Eigen::Index rows = Eigen::Index{1} << left.size();
    const Eigen::Index cols = Eigen::Index{1} << right.size();
    Eigen::MatrixXcd reshaped(rows, cols);
    for (Eigen::Index i = 0; i < rows; i++) {
        const auto row_bits = detail::scatter_bits(static_cast<std::uint64_t>(i), left_masks);
        for (Eigen::Index j = 0; j < cols; j++) {
            reshaped(i, j) = state[row_bits | detail::scatter_bits(static_cast<std::uint64_t>(j), right_masks)];
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(reshaped);
    const Eigen::VectorXd &sv = svd.singularValues();

    SeparabilityVerdict verdict;
    verdict.left.assign(left.begin(), left.end());
    verdict.right = right;
    verdict.schmidt_coefficients.assign(sv.data(), sv.data() + sv.size());
    std::sort(verdict.schmidt_coefficients.begin(), verdict.schmidt_coefficients.end(), std::greater<>());
    verdict.is_product = verdict.second_coefficient() < kSpectralTol;
    return verdict;
}

SeparabilityVerdict qpair::schmidt_analyze(const StateVector &state, std::initializer_list<int> left) {
    return schmidt_analyze(state, std::span<const int>(left.begin(), left.size()));
}

double qpair::max_second_schmidt(const StateVector &state) {
    double worst = 0;
    for (int q = 0; q < state.num_qubits() && state.num_qubits() > 1; q++) {
        worst = std::max(worst, schmidt_analyze(state, {q}).second_coefficient());
    }
    return worst;
}

bool qpair::fully_product(const StateVector &state) {
    return max_second_schmidt(state) < kSpectralTol;
}

void ProductStateParams::validate() const {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1) > kExactTol) {
        throw std::domain_error("|alpha|^2 + |beta|^2 must be 1");
    }
    if (std::abs(std::norm(gamma) + std::norm(delta) - 1) > kExactTol) {
        throw std::domain_error("|gamma|^2 + |delta|^2 must be 1");
    }
}

StateVector ProductStateParams::state() const {
    validate();
    Eigen::VectorXcd amps(4);
    amps << alpha * gamma, alpha * delta, beta * gamma, beta * delta;
    return StateVector(2, std::move(amps));
}

namespace {

std::pair<std::complex<double>, std::complex<double>> random_qubit(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    std::complex<double> a(normal(rng), normal(rng));
    std::complex<double> b(normal(rng), normal(rng));
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    return {a / norm, b / norm};
}

}  // namespace

ProductStateParams qpair::random_product_params(std::mt19937_64 &rng) {
    auto [alpha, beta] = random_qubit(rng);
    auto [gamma, delta] = random_qubit(rng);
    return {alpha, beta, gamma, delta};
}

CnotProductCheck qpair::cnot_product_condition(const ProductStateParams &params) {
    const StateVector out = apply_gate(params.state(), gates::cnot(), {0, 1});
    const double criterion =
        std::abs(params.alpha * params.beta * (params.gamma * params.gamma - params.delta * params.delta));
    const SeparabilityVerdict verdict = schmidt_analyze(out, {0});
    return {criterion < kSpectralTol, verdict.is_product, criterion, verdict.second_coefficient()};
}

std::string_view qpair::family_name(ProductFamily family) {
    switch (family) {
        case ProductFamily::kKet0TensorAny:
            return "ket0-tensor-any";
        case ProductFamily::kKet1TensorAny:
            return "ket1-tensor-any";
        case ProductFamily::kAnyTensorPlus:
            return "any-tensor-plus";
        case ProductFamily::kAnyTensorMinus:
            return "any-tensor-minus";
    }
    throw std::logic_error("unknown family");
}

ProductFamily qpair::parse_family(std::string_view text) {
    for (auto family : kAllFamilies) {
        if (text == family_name(family)) {
            return family;
        }
    }
    throw std::domain_error("unknown product-state family '" + std::string(text) + "'");
}

ProductStateParams qpair::family_member(ProductFamily family, const ProductStateParams &sample) {
    const double s = std::numbers::sqrt2 / 2;
    ProductStateParams p = sample;
    switch (family) {
        case ProductFamily::kKet0TensorAny:
            p.alpha = 1;
            p.beta = 0;
            break;
        case ProductFamily::kKet1TensorAny:
            p.alpha = 0;
            p.beta = 1;
            break;
        case ProductFamily::kAnyTensorPlus:
            p.gamma = s;
            p.delta = s;
            break;
        case ProductFamily::kAnyTensorMinus:
            p.gamma = s;
            p.delta = -s;
            break;
    }
    p.validate();
    return p;
}

std::string_view qpair::quantity_name(Quantity quantity) {
    switch (quantity) {
        case Quantity::kF0:
            return "f(0)";
        case Quantity::kF1:
            return "f(1)";
        case Quantity::kF0XorF1:
            return "f(0)^f(1)";
    }
    throw std::logic_error("unknown quantity");
}

namespace {

bool quantity_value(Quantity quantity, const BoolFn &fn) {
    switch (quantity) {
        case Quantity::kF0:
            return fn.f0;
        case Quantity::kF1:
            return fn.f1;
        case Quantity::kF0XorF1:
            return fn.f0 != fn.f1;
    }
    throw std::logic_error("unknown quantity");
}

}  // namespace

FamilyAudit qpair::audit_family_distinguishability(ProductFamily family, std::span<const ProductStateParams> samples) {
    const auto functions = all_functions();
    std::vector<Unitary> oracles;
    for (const auto &fn : functions) {
        oracles.push_back(oracle_unitary(fn));
    }

    FamilyAudit audit{family, {}, {}, 0};
    for (const auto &sample : samples) {
        SampleDistinguishability row{family_member(family, sample), {}, {}};
        const StateVector input = row.input.state();
        std::vector<StateVector> outputs;
        for (const auto &u : oracles) {
            outputs.push_back(apply_gate(input, u, {0, 1}));
        }
        for (size_t i = 0; i < 4; i++) {
            for (size_t j = 0; j < 4; j++) {
                row.overlaps[i][j] = overlap_magnitude(outputs[i], outputs[j]);
            }
        }
        for (auto quantity : kAllQuantities) {
            bool separated = true;
            for (size_t i = 0; i < 4 && separated; i++) {
                for (size_t j = 0; j < 4; j++) {
                    if (quantity_value(quantity, functions[i]) != quantity_value(quantity, functions[j]) &&
                        row.overlaps[i][j] >= kSpectralTol) {
                        separated = false;
                        break;
                    }
                }
            }
            if (separated) {
                row.decidable.push_back(quantity);
                if (std::find(audit.ever_decidable.begin(), audit.ever_decidable.end(), quantity) ==
                    audit.ever_decidable.end()) {
                    audit.ever_decidable.push_back(quantity);
                }
            }
        }
        audit.max_simultaneous = std::max(audit.max_simultaneous, static_cast<int>(row.decidable.size()));
        audit.samples.push_back(std::move(row));
    }
    std::sort(audit.ever_decidable.begin(), audit.ever_decidable.end());
    return audit;
}

std::vector<ProductStateParams> qpair::family_grid(int points) {
    if (points < 2) {
        throw std::domain_error("family_grid needs at least 2 points per parameter");
    }
    std::vector<double> thetas;
    for (int i = 0; i < points; i++) {
        thetas.push_back((std::numbers::pi / 2) * i / (points - 1));
    }
    // Always include the equal-magnitude row.
    if (points % 2 == 0) {
        thetas.insert(thetas.begin() + points / 2, std::numbers::pi / 4);
    }
    const double half = std::numbers::sqrt2 / 2;
    std::vector<ProductStateParams> grid;
    grid.reserve(thetas.size() * static_cast<size_t>(points));
    for (size_t i = 0; i < thetas.size(); i++) {
        const double theta = thetas[i];
        for (int j = 0; j < points; j++) {
            const double phi = 2 * std::numbers::pi * j / points;
            // Pin the endpoints exactly so the basis states are in the grid.
            double c = i + 1 == thetas.size() ? 0.0 : std::cos(theta);
            double s = i == 0 ? 0.0 : std::sin(theta);
            if (theta == std::numbers::pi / 4) {
                c = s = half;
            }
            const std::complex<double> a = c;
            const std::complex<double> b = std::polar(s, phi);
            grid.push_back({a, b, a, b});
        }
    }
    return grid;
}

std::vector<StepSeparability> qpair::trace_run_separability(const RunRecord &record) {
    std::vector<StepSeparability> out;
    out.reserve(record.step_states.size());
    for (const auto &step : record.step_states) {
        const double second = max_second_schmidt(step.state);
        out.push_back({step.label, second < kSpectralTol, second});
    }
    return out;
}

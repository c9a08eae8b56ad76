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

#ifndef QPAIR_ENTANGLEMENT_H
#define QPAIR_ENTANGLEMENT_H

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qpair/algorithms.h"
#include "qpair/state.h"

namespace qpair {

struct SeparabilityVerdict {
    std::vector<int> left;
    std::vector<int> right;
    /// Descending, nonnegative, squares sum to one.
    std::vector<double> schmidt_coefficients;
    bool is_product = false;

    double second_coefficient() const {
        return schmidt_coefficients.size() > 1 ? schmidt_coefficients[1] : 0.0;
    }
};

/// Schmidt coefficients of `state` across (left, complement). The bipartition
/// must be a non-empty proper subset, else std::domain_error.
SeparabilityVerdict schmidt_analyze(const StateVector &state, std::span<const int> left);
SeparabilityVerdict schmidt_analyze(const StateVector &state, std::initializer_list<int> left);

/// Largest second Schmidt coefficient over all single-qubit-vs-rest cuts.
double max_second_schmidt(const StateVector &state);

/// True iff every single-qubit-vs-rest cut is product. For pure states that
/// is equivalent to the state being a full tensor product.
bool fully_product(const StateVector &state);

/// Amplitudes of a two-qubit product state (alpha|0> + beta|1>)(gamma|0> + delta|1>).
struct ProductStateParams {
    std::complex<double> alpha;
    std::complex<double> beta;
    std::complex<double> gamma;
    std::complex<double> delta;

    /// Throws std::domain_error unless both factors are normalized within 1e-10.
    void validate() const;
    StateVector state() const;
};

/// Uniformly random (Haar) single-qubit factors.
ProductStateParams random_product_params(std::mt19937_64 &rng);

struct CnotProductCheck {
    /// |alpha beta (gamma^2 - delta^2)| < 1e-9.
    bool predicted_product;
    /// Schmidt test on CNOT (control qubit 0) applied to the product state.
    bool actual_product;
    double criterion;
    double second_schmidt;
};

CnotProductCheck cnot_product_condition(const ProductStateParams &params);

/// The four input families that keep CNOT from entangling.
enum class ProductFamily {
    kKet0TensorAny,
    kKet1TensorAny,
    kAnyTensorPlus,
    kAnyTensorMinus,
};

inline constexpr std::array<ProductFamily, 4> kAllFamilies = {
    ProductFamily::kKet0TensorAny,
    ProductFamily::kKet1TensorAny,
    ProductFamily::kAnyTensorPlus,
    ProductFamily::kAnyTensorMinus,
};

/// "ket0-tensor-any", "ket1-tensor-any", "any-tensor-plus", "any-tensor-minus".
std::string_view family_name(ProductFamily family);
/// Throws std::domain_error on unknown labels.
ProductFamily parse_family(std::string_view text);

/// Forces the amplitudes the family fixes and keeps the free ones from
/// `sample` (gamma, delta for the ket families; alpha, beta otherwise).
ProductStateParams family_member(ProductFamily family, const ProductStateParams &sample);

/// Quantities a single query can hope to reveal about f.
enum class Quantity { kF0, kF1, kF0XorF1 };
inline constexpr std::array<Quantity, 3> kAllQuantities = {Quantity::kF0, Quantity::kF1, Quantity::kF0XorF1};
std::string_view quantity_name(Quantity quantity);

struct SampleDistinguishability {
    ProductStateParams input;
    /// |<out_i|out_j>| for oracles ordered C1, C2, B1, B2.
    std::array<std::array<double, 4>, 4> overlaps;
    std::vector<Quantity> decidable;
};

struct FamilyAudit {
    ProductFamily family;
    std::vector<SampleDistinguishability> samples;
    /// Quantities decidable at one or more samples.
    std::vector<Quantity> ever_decidable;
    /// Most quantities decidable simultaneously at any single sample.
    int max_simultaneous = 0;
};

/// Applies each of C1, C2, B1, B2 to every family member built from the
/// samples and records which of f(0), f(1), f(0)^f(1) split the four outputs
/// into mutually orthogonal groups (cross-group overlaps below 1e-9).
FamilyAudit audit_family_distinguishability(ProductFamily family, std::span<const ProductStateParams> samples);

/// Grid over one normalized single-qubit factor: cos(theta), e^{i phi} sin(theta)
/// with theta in [0, pi/2] and phi in [0, 2 pi), `points` values each.
/// The theta = pi/4 row is always present, so even counts get one extra row.
std::vector<ProductStateParams> family_grid(int points);

struct StepSeparability {
    std::string label;
    bool product;
    double max_second_schmidt;
};

std::vector<StepSeparability> trace_run_separability(const RunRecord &record);

}  // namespace qpair

#endif  // QPAIR_ENTANGLEMENT_H

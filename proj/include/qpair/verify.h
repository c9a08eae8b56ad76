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

#ifndef QPAIR_VERIFY_H
#define QPAIR_VERIFY_H

#include <cstdint>
#include <string>
#include <vector>

#include "qpair/algorithms.h"
#include "qpair/entanglement.h"
#include "qpair/oracles.h"

namespace qpair {

struct PairCheck {
    Algorithm algorithm;
    BoolFn f;
    /// Absent for Deutsch runs.
    std::optional<BoolFn> g;
    /// Probability mass on outcomes the decoder maps to the true answer.
    double correct_mass = 0;
    std::map<std::string, int> query_counts;
    bool decode_ok = false;
    bool queries_ok = false;
    /// Product runs: no entangled step. Entangled runs: at least one.
    /// Deutsch runs: always true.
    bool separability_ok = false;
    std::vector<StepSeparability> steps;

    bool ok() const {
        return decode_ok && queries_ok && separability_ok;
    }
};

struct VerificationReport {
    std::vector<PairCheck> checks;

    int passed(Algorithm algorithm) const;
    int total(Algorithm algorithm) const;
    bool all_passed() const;
};

/// Runs Deutsch on all four functions and both pair algorithms on all eight
/// promise pairs, checking decoding (through `decoder`), query counts and
/// per-step separability.
VerificationReport verify_all(const Decoder &decoder = decode);

struct TheoremAudit {
    int random_samples = 0;
    int family_samples = 0;
    int disagreements = 0;
    std::vector<FamilyAudit> families;

    bool passed() const;
};

/// CNOT product-criterion agreement on `random_samples` Haar samples plus
/// every family member of a `grid_points`^2 grid, and the distinguishability
/// audit of each family on the same grid.
TheoremAudit audit_theorem(int random_samples, int grid_points, std::uint64_t seed);

}  // namespace qpair

#endif  // QPAIR_VERIFY_H

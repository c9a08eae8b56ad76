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

#ifndef QPAIR_ALGORITHMS_H
#define QPAIR_ALGORITHMS_H

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qpair/oracles.h"
#include "qpair/state.h"

namespace qpair {

enum class Algorithm {
    kDeutsch,
    kEntangledPair,
    kProductPair,
};

/// "deutsch", "entangled_pair", "product_pair".
std::string_view algorithm_name(Algorithm algorithm);
/// Accepts the canonical names plus the short forms "entangled" and "product".
Algorithm parse_algorithm(std::string_view text);

/// Which black box a query addresses.
enum class OracleSlot { kF, kG };

struct GateOp {
    std::string label;
    Unitary gate;
    std::vector<int> targets;
};

/// One application of U_f or U_g with the given input and output wires.
struct QueryOp {
    std::string label;
    OracleSlot oracle;
    int input;
    int output;
};

using Instruction = std::variant<GateOp, QueryOp>;

/// Fixed gate sequence of an algorithm. The circuit does not depend on the
/// oracles; they are bound only when it runs.
struct Circuit {
    Algorithm algorithm;
    int num_qubits;
    std::vector<Instruction> ops;

    /// Number of non-query gates.
    int gate_count() const;
    int query_count(OracleSlot slot) const;
};

/// Two qubits (input, output). X on output, H on both, U_f, H on input.
Circuit deutsch_circuit();
/// Three qubits (A, a1, a2). H on A, (X, H) on a1 and CNOT a1->a2 prepare
/// |+>(|00>-|11>)/sqrt2, then U_f on (A, a1), U_g on (A, a2), H on A.
Circuit entangled_pair_circuit();
/// Three qubits (A, a1, a2) that never leave a product state:
/// kickback query of f with a1 in |->, H on A leaves |f0^f1>, a1 returned to
/// |0>, then f and g are queried classically at that bit.
Circuit product_pair_circuit();
Circuit circuit_for(Algorithm algorithm);

/// Oracle wrapper that counts its applications and refuses to exceed a budget.
class CountingOracle {
   public:
    CountingOracle(BoolFn fn, std::string label, int budget);

    /// Applies |x>|y> -> |x>|y ^ fn(x)> on (input, output). Throws
    /// std::logic_error once the budget is exhausted.
    StateVector query(const StateVector &state, int input, int output);

    int count() const {
        return count_;
    }
    const std::string &label() const {
        return label_;
    }
    const BoolFn &fn() const {
        return fn_;
    }

   private:
    BoolFn fn_;
    Unitary unitary_;
    std::string label_;
    int budget_;
    int count_ = 0;
};

/// Table I: qubit A carries f(0)^f(1), a1^a2 carries f(0)^g(0).
/// Deutsch runs leave `different` empty.
struct DecodedAnswer {
    bool balanced = false;
    std::optional<bool> different;

    friend bool operator==(const DecodedAnswer &, const DecodedAnswer &) = default;
};

/// Decodes a 3-bit outcome "A a1 a2". Throws std::domain_error on any other length.
DecodedAnswer decode(std::string_view bitstring);

using Decoder = std::function<DecodedAnswer(std::string_view)>;

struct Step {
    std::string label;
    StateVector state;
};

struct RunRecord {
    Algorithm algorithm;
    /// Keyed by bitstring with qubit 0 first; entries below 1e-12 omitted.
    std::map<std::string, double> final_distribution;
    /// Keyed by oracle label "f" / "g".
    std::map<std::string, int> query_counts;
    /// "init" followed by the state after every instruction.
    std::vector<Step> step_states;
    DecodedAnswer decoded;
    int gate_count = 0;

    int total_queries() const;
};

/// Executes a circuit against the given oracles. `g` may be absent for
/// circuits that never query it. Budgets are taken from the circuit itself.
RunRecord run_circuit(const Circuit &circuit, const BoolFn &f, const std::optional<BoolFn> &g);

RunRecord run_deutsch(const BoolFn &fn);
RunRecord run_entangled_pair(const PromisePair &pair);
RunRecord run_product_pair(const PromisePair &pair);
/// Dispatch on algorithm; Deutsch runs use pair.f().
RunRecord run_algorithm(Algorithm algorithm, const PromisePair &pair);

/// Marginal probability that qubit `qubit` reads 1.
double marginal_one(const std::map<std::string, double> &dist, int qubit);

}  // namespace qpair

#endif  // QPAIR_ALGORITHMS_H

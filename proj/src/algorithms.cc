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

#include "qpair/algorithms.h"

#include <stdexcept>

#include "qpair/gates.h"

using namespace qpair;

std::string_view qpair::algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::kDeutsch:
            return "deutsch";
        case Algorithm::kEntangledPair:
            return "entangled_pair";
        case Algorithm::kProductPair:
            return "product_pair";
    }
    throw std::logic_error("unknown algorithm");
}

Algorithm qpair::parse_algorithm(std::string_view text) {
    if (text == "deutsch") {
        return Algorithm::kDeutsch;
    }
    if (text == "entangled" || text == "entangled_pair") {
        return Algorithm::kEntangledPair;
    }
    if (text == "product" || text == "product_pair") {
        return Algorithm::kProductPair;
    }
    throw std::invalid_argument(
        "unknown algorithm '" + std::string(text) + "' (expected deutsch, entangled or product)");
}

int Circuit::gate_count() const {
    int n = 0;
    for (const auto &op : ops) {
        n += std::holds_alternative<GateOp>(op);
    }
    return n;
}

int Circuit::query_count(OracleSlot slot) const {
    int n = 0;
    for (const auto &op : ops) {
        if (const auto *q = std::get_if<QueryOp>(&op)) {
            n += q->oracle == slot;
        }
    }
    return n;
}

namespace {

GateOp gate(std::string label, Unitary u, std::vector<int> targets) {
    return GateOp{std::move(label), std::move(u), std::move(targets)};
}

}  // namespace

Circuit qpair::deutsch_circuit() {
    Circuit c{Algorithm::kDeutsch, 2, {}};
    c.ops.emplace_back(gate("x_output", gates::pauli_x(), {1}));
    c.ops.emplace_back(gate("h_input", gates::hadamard(), {0}));
    c.ops.emplace_back(gate("h_output", gates::hadamard(), {1}));
    c.ops.emplace_back(QueryOp{"query_f", OracleSlot::kF, 0, 1});
    c.ops.emplace_back(gate("h_input_final", gates::hadamard(), {0}));
    return c;
}

Circuit qpair::entangled_pair_circuit() {
    Circuit c{Algorithm::kEntangledPair, 3, {}};
    c.ops.emplace_back(gate("h_A", gates::hadamard(), {0}));
    c.ops.emplace_back(gate("x_a1", gates::pauli_x(), {1}));
    c.ops.emplace_back(gate("h_a1", gates::hadamard(), {1}));
    // After this gate the register holds |+>_A (|00> - |11>)/sqrt2.
    c.ops.emplace_back(gate("initialized", gates::cnot(), {1, 2}));
    c.ops.emplace_back(QueryOp{"query_f", OracleSlot::kF, 0, 1});
    c.ops.emplace_back(QueryOp{"query_g", OracleSlot::kG, 0, 2});
    c.ops.emplace_back(gate("h_A_final", gates::hadamard(), {0}));
    return c;
}

Circuit qpair::product_pair_circuit() {
    Circuit c{Algorithm::kProductPair, 3, {}};
    c.ops.emplace_back(gate("h_A", gates::hadamard(), {0}));
    c.ops.emplace_back(gate("x_a1", gates::pauli_x(), {1}));
    c.ops.emplace_back(gate("h_a1", gates::hadamard(), {1}));
    c.ops.emplace_back(QueryOp{"query_f_kickback", OracleSlot::kF, 0, 1});
    // A is now exactly |f0 ^ f1>; a1 is still |->.
    c.ops.emplace_back(gate("h_A_collapse", gates::hadamard(), {0}));
    c.ops.emplace_back(gate("h_a1_reset", gates::hadamard(), {1}));
    c.ops.emplace_back(gate("x_a1_reset", gates::pauli_x(), {1}));
    c.ops.emplace_back(QueryOp{"query_f_classical", OracleSlot::kF, 0, 1});
    c.ops.emplace_back(QueryOp{"query_g_classical", OracleSlot::kG, 0, 2});
    return c;
}

Circuit qpair::circuit_for(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::kDeutsch:
            return deutsch_circuit();
        case Algorithm::kEntangledPair:
            return entangled_pair_circuit();
        case Algorithm::kProductPair:
            return product_pair_circuit();
    }
    throw std::logic_error("unknown algorithm");
}

CountingOracle::CountingOracle(BoolFn fn, std::string label, int budget)
    : fn_(std::move(fn)), unitary_(oracle_unitary(fn_)), label_(std::move(label)), budget_(budget) {
}

StateVector CountingOracle::query(const StateVector &state, int input, int output) {
    if (count_ >= budget_) {
        throw std::logic_error(
            "oracle " + label_ + " queried more than its budget of " + std::to_string(budget_));
    }
    count_++;
    return apply_gate(state, unitary_, {input, output});
}

DecodedAnswer qpair::decode(std::string_view bitstring) {
    if (bitstring.size() != 3) {
        throw std::domain_error(
            "decode expects a 3-bit outcome 'A a1 a2', got '" + std::string(bitstring) + "'");
    }
    for (char c : bitstring) {
        if (c != '0' && c != '1') {
            throw std::domain_error("decode got non-binary outcome '" + std::string(bitstring) + "'");
        }
    }
    return DecodedAnswer{bitstring[0] == '1', bitstring[1] != bitstring[2]};
}

int RunRecord::total_queries() const {
    int n = 0;
    for (const auto &[label, count] : query_counts) {
        n += count;
    }
    return n;
}

namespace {

DecodedAnswer decode_outcome(Algorithm algorithm, const std::string &bits) {
    if (algorithm == Algorithm::kDeutsch) {
        return DecodedAnswer{bits[0] == '1', std::nullopt};
    }
    return decode(bits);
}

}  // namespace

RunRecord qpair::run_circuit(const Circuit &circuit, const BoolFn &f, const std::optional<BoolFn> &g) {
    CountingOracle oracle_f(f, "f", circuit.query_count(OracleSlot::kF));
    std::optional<CountingOracle> oracle_g;
    if (g) {
        oracle_g.emplace(*g, "g", circuit.query_count(OracleSlot::kG));
    }

    RunRecord record{circuit.algorithm, {}, {}, {}, {}, circuit.gate_count()};
    StateVector state = basis_state(circuit.num_qubits, 0);
    record.step_states.push_back({"init", state});
    for (const auto &op : circuit.ops) {
        if (const auto *g_op = std::get_if<GateOp>(&op)) {
            state = apply_gate(state, g_op->gate, g_op->targets);
            record.step_states.push_back({g_op->label, state});
            continue;
        }
        const auto &q = std::get<QueryOp>(op);
        if (q.oracle == OracleSlot::kF) {
            state = oracle_f.query(state, q.input, q.output);
        } else {
            if (!oracle_g) {
                throw std::logic_error("circuit queries g but no g was supplied");
            }
            state = oracle_g->query(state, q.input, q.output);
        }
        record.step_states.push_back({q.label, state});
    }

    record.query_counts["f"] = oracle_f.count();
    if (oracle_g) {
        record.query_counts["g"] = oracle_g->count();
    }
    for (const auto &[index, p] : measurement_distribution(state)) {
        record.final_distribution.emplace(to_bitstring(index, circuit.num_qubits), p);
    }

    // Every outcome in the support must decode to the same answer.
    bool first = true;
    for (const auto &[bits, p] : record.final_distribution) {
        DecodedAnswer d = decode_outcome(circuit.algorithm, bits);
        if (first) {
            record.decoded = d;
            first = false;
        } else if (!(d == record.decoded)) {
            throw std::logic_error(
                std::string(algorithm_name(circuit.algorithm)) + " run decoded ambiguously at outcome " + bits);
        }
    }
    return record;
}

RunRecord qpair::run_deutsch(const BoolFn &fn) {
    return run_circuit(deutsch_circuit(), fn, std::nullopt);
}

RunRecord qpair::run_entangled_pair(const PromisePair &pair) {
    return run_circuit(entangled_pair_circuit(), pair.f(), pair.g());
}

RunRecord qpair::run_product_pair(const PromisePair &pair) {
    return run_circuit(product_pair_circuit(), pair.f(), pair.g());
}

RunRecord qpair::run_algorithm(Algorithm algorithm, const PromisePair &pair) {
    switch (algorithm) {
        case Algorithm::kDeutsch:
            return run_deutsch(pair.f());
        case Algorithm::kEntangledPair:
            return run_entangled_pair(pair);
        case Algorithm::kProductPair:
            return run_product_pair(pair);
    }
    throw std::logic_error("unknown algorithm");
}

double qpair::marginal_one(const std::map<std::string, double> &dist, int qubit) {
    double p = 0;
    for (const auto &[bits, prob] : dist) {
        if (qubit < 0 || static_cast<size_t>(qubit) >= bits.size()) {
            throw std::domain_error("qubit " + std::to_string(qubit) + " out of range for outcome " + bits);
        }
        if (bits[static_cast<size_t>(qubit)] == '1') {
            p += prob;
        }
    }
    return p;
}

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

#include "qpair/oracles.h"

#include <stdexcept>

#include "qpair/gates.h"

using namespace qpair;

std::string BoolFn::truth_table() const {
    std::string out = "0:0,1:0";
    out[2] = f0 ? '1' : '0';
    out[6] = f1 ? '1' : '0';
    return out;
}

std::string BoolFn::label() const {
    return name.empty() ? truth_table() : name;
}

std::vector<BoolFn> qpair::all_functions() {
    return {named::C1, named::C2, named::B1, named::B2};
}

PromisePair::PromisePair(BoolFn f, BoolFn g) : f_(std::move(f)), g_(std::move(g)) {
    if (is_balanced(f_) != is_balanced(g_)) {
        throw std::domain_error(
            "promise violated: f=" + f_.label() + " is " + (is_balanced(f_) ? "balanced" : "constant") +
            " but g=" + g_.label() + " is " + (is_balanced(g_) ? "balanced" : "constant"));
    }
}

Unitary qpair::oracle_unitary(const BoolFn &fn) {
    Unitary::Matrix m = Unitary::Matrix::Zero(4, 4);
    for (int x = 0; x < 2; x++) {
        for (int y = 0; y < 2; y++) {
            const int in = 2 * x + y;
            const int out = 2 * x + (y ^ static_cast<int>(fn(x != 0)));
            m(out, in) = 1;
        }
    }
    return Unitary(std::move(m));
}

std::vector<OracleGate> qpair::oracle_decomposition(const BoolFn &fn) {
    std::vector<OracleGate> gates;
    if (is_balanced(fn)) {
        gates.push_back({OracleGate::Kind::kCnot});
    }
    if (fn.f0) {
        gates.push_back({OracleGate::Kind::kFlipTarget});
    }
    return gates;
}

Unitary qpair::compose_decomposition(const std::vector<OracleGate> &gates) {
    Unitary total = gates::identity(2);
    for (const auto &g : gates) {
        const Unitary step = g.kind == OracleGate::Kind::kCnot ? gates::cnot() : gates::kron(gates::identity(), gates::pauli_x());
        total = step * total;
    }
    return total;
}

std::vector<PromisePair> qpair::all_promise_pairs() {
    std::vector<PromisePair> pairs;
    for (const auto &f : all_functions()) {
        for (const auto &g : all_functions()) {
            if (is_balanced(f) == is_balanced(g)) {
                pairs.emplace_back(f, g);
            }
        }
    }
    return pairs;
}

namespace {

bool parse_bit(std::string_view token, std::string_view bit) {
    if (bit == "0") {
        return false;
    }
    if (bit == "1") {
        return true;
    }
    throw std::invalid_argument(
        "bad truth-table token '" + std::string(token) + "': output must be 0 or 1 (expected '0:b,1:b')");
}

}  // namespace

BoolFn qpair::parse_bool_fn(std::string_view text) {
    for (const auto &fn : all_functions()) {
        if (text == fn.name) {
            return fn;
        }
    }
    if (text.find(':') == std::string_view::npos) {
        throw std::invalid_argument(
            "unknown function '" + std::string(text) + "' (expected B1, B2, C1, C2 or a truth table '0:b,1:b')");
    }

    BoolFn fn;
    bool seen[2] = {false, false};
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find(',', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view token = text.substr(start, end - start);
        size_t colon = token.find(':');
        if (colon == std::string_view::npos) {
            throw std::invalid_argument(
                "bad truth-table token '" + std::string(token) + "': missing ':' (expected '0:b,1:b')");
        }
        std::string_view input = token.substr(0, colon);
        std::string_view output = token.substr(colon + 1);
        int x;
        if (input == "0") {
            x = 0;
        } else if (input == "1") {
            x = 1;
        } else {
            throw std::invalid_argument(
                "bad truth-table token '" + std::string(token) + "': input must be 0 or 1 (expected '0:b,1:b')");
        }
        if (seen[x]) {
            throw std::invalid_argument(
                "bad truth-table token '" + std::string(token) + "': input " + std::to_string(x) + " given twice");
        }
        seen[x] = true;
        (x == 0 ? fn.f0 : fn.f1) = parse_bit(token, output);
        start = end + 1;
    }
    if (!seen[0] || !seen[1]) {
        throw std::invalid_argument(
            "truth table '" + std::string(text) + "' must define both inputs (expected '0:b,1:b')");
    }
    for (const auto &named_fn : all_functions()) {
        if (fn == named_fn) {
            fn.name = named_fn.name;
        }
    }
    return fn;
}

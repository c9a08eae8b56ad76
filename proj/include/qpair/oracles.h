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

#ifndef QPAIR_ORACLES_H
#define QPAIR_ORACLES_H

#include <string>
#include <string_view>
#include <vector>

#include "qpair/state.h"

namespace qpair {

/// A one-bit Boolean function {0,1} -> {0,1}, stored as its truth table.
struct BoolFn {
    bool f0 = false;
    bool f1 = false;
    std::string name;

    bool operator()(bool x) const {
        return x ? f1 : f0;
    }
    /// Equality compares truth tables only; the label is cosmetic.
    friend bool operator==(const BoolFn &a, const BoolFn &b) {
        return a.f0 == b.f0 && a.f1 == b.f1;
    }
    /// Canonical "0:b,1:b" rendering.
    std::string truth_table() const;
    /// Name if set, otherwise the truth table.
    std::string label() const;
};

namespace named {
inline const BoolFn B1{false, true, "B1"};
inline const BoolFn B2{true, false, "B2"};
inline const BoolFn C1{false, false, "C1"};
inline const BoolFn C2{true, true, "C2"};
}  // namespace named

/// The four one-bit functions in the order C1, C2, B1, B2.
std::vector<BoolFn> all_functions();

/// f(0) xor f(1).
inline bool is_balanced(const BoolFn &fn) {
    return fn.f0 != fn.f1;
}

/// Two functions promised to be both constant or both balanced.
class PromisePair {
   public:
    /// Throws std::domain_error if the promise f0^f1 == g0^g1 fails.
    PromisePair(BoolFn f, BoolFn g);

    const BoolFn &f() const {
        return f_;
    }
    const BoolFn &g() const {
        return g_;
    }
    friend bool operator==(const PromisePair &a, const PromisePair &b) {
        return a.f_ == b.f_ && a.g_ == b.g_;
    }

   private:
    BoolFn f_;
    BoolFn g_;
};

/// f(0) xor g(0); equals f(1) xor g(1) under the promise.
inline bool same_at_zero(const PromisePair &pair) {
    return pair.f().f0 != pair.g().f0;
}

/// The XOR oracle |x>|y> -> |x>|y ^ fn(x)> as a 4x4 permutation matrix
/// (input wire first).
Unitary oracle_unitary(const BoolFn &fn);

/// Gate-level realization of an oracle: empty for constant 0, X on the
/// output wire for constant 1, CNOT for the identity function, CNOT then X
/// for negation.
struct OracleGate {
    enum class Kind { kCnot, kFlipTarget };
    Kind kind;
};
std::vector<OracleGate> oracle_decomposition(const BoolFn &fn);

/// Product of the decomposition, as a 4x4 matrix over (input, output).
Unitary compose_decomposition(const std::vector<OracleGate> &gates);

/// All 8 ordered pairs of {C1, C2, B1, B2} satisfying the promise.
std::vector<PromisePair> all_promise_pairs();

/// Parses a named function (B1, B2, C1, C2) or a truth table "0:b,1:b".
/// Throws std::invalid_argument naming the offending token.
BoolFn parse_bool_fn(std::string_view text);

}  // namespace qpair

#endif  // QPAIR_ORACLES_H

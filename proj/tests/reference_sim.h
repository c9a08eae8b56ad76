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

// Test-only reference simulator. Builds every circuit step as an explicit
// full-register matrix (Kronecker products for single-qubit gates, basis
// permutations for CNOT and XOR oracles) and never touches apply_gate, the
// circuit builders or the oracle constructors of the library.

#ifndef QPAIR_TESTS_REFERENCE_SIM_H
#define QPAIR_TESTS_REFERENCE_SIM_H

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <map>
#include <string>

namespace qpair_test {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat h2() {
    const double s = 1 / std::sqrt(2.0);
    Mat m(2, 2);
    m << s, s, s, -s;
    return m;
}

inline Mat x2() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

/// Single-qubit gate on `qubit` of an n-qubit register, qubit 0 leftmost.
inline Mat on_qubit(const Mat &g, int qubit, int n) {
    Mat out = Mat::Identity(1, 1);
    for (int q = 0; q < n; q++) {
        const Mat factor = q == qubit ? g : Mat::Identity(2, 2);
        out = Eigen::kroneckerProduct(out, factor).eval();
    }
    return out;
}

inline int bit_of(int index, int qubit, int n) {
    return (index >> (n - 1 - qubit)) & 1;
}

/// |..x..y..> -> |..x..y ^ table[x]..> as a full-register permutation.
inline Mat xor_oracle(int table0, int table1, int input, int output, int n) {
    const int dim = 1 << n;
    Mat m = Mat::Zero(dim, dim);
    for (int col = 0; col < dim; col++) {
        const int x = bit_of(col, input, n);
        const int fx = x ? table1 : table0;
        const int row = col ^ (fx << (n - 1 - output));
        m(row, col) = 1;
    }
    return m;
}

inline Mat cnot_full(int control, int target, int n) {
    return xor_oracle(0, 1, control, target, n);
}

inline Vec ket0(int n) {
    Vec v = Vec::Zero(1 << n);
    v(0) = 1;
    return v;
}

inline std::map<std::string, double> probabilities(const Vec &v, int n) {
    std::map<std::string, double> out;
    for (int i = 0; i < v.size(); i++) {
        const double p = std::norm(v(i));
        if (p >= 1e-12) {
            std::string bits;
            for (int q = 0; q < n; q++) {
                bits += bit_of(i, q, n) ? '1' : '0';
            }
            out[bits] = p;
        }
    }
    return out;
}

/// Entangled two-query circuit with truth tables (f0, f1), (g0, g1).
inline Vec entangled_reference(int f0, int f1, int g0, int g1) {
    const int n = 3;
    Vec v = ket0(n);
    v = on_qubit(h2(), 0, n) * v;
    v = on_qubit(x2(), 1, n) * v;
    v = on_qubit(h2(), 1, n) * v;
    v = cnot_full(1, 2, n) * v;
    v = xor_oracle(f0, f1, 0, 1, n) * v;
    v = xor_oracle(g0, g1, 0, 2, n) * v;
    v = on_qubit(h2(), 0, n) * v;
    return v;
}

/// Three-query product-state circuit.
inline Vec product_reference(int f0, int f1, int g0, int g1) {
    const int n = 3;
    Vec v = ket0(n);
    v = on_qubit(h2(), 0, n) * v;
    v = on_qubit(x2(), 1, n) * v;
    v = on_qubit(h2(), 1, n) * v;
    v = xor_oracle(f0, f1, 0, 1, n) * v;
    v = on_qubit(h2(), 0, n) * v;
    v = on_qubit(h2(), 1, n) * v;
    v = on_qubit(x2(), 1, n) * v;
    v = xor_oracle(f0, f1, 0, 1, n) * v;
    v = xor_oracle(g0, g1, 0, 2, n) * v;
    return v;
}

inline Vec deutsch_reference(int f0, int f1) {
    const int n = 2;
    Vec v = ket0(n);
    v = on_qubit(x2(), 1, n) * v;
    v = on_qubit(h2(), 0, n) * v;
    v = on_qubit(h2(), 1, n) * v;
    v = xor_oracle(f0, f1, 0, 1, n) * v;
    v = on_qubit(h2(), 0, n) * v;
    return v;
}

}  // namespace qpair_test

#endif  // QPAIR_TESTS_REFERENCE_SIM_H

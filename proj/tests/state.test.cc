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

#include "qpair/state.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "qpair/gates.h"
#include "test_util.h"

using namespace qpair;
using qpair_test::random_state;
using qpair_test::random_unitary;

TEST(state, basis_state) {
    auto s = basis_state(1, 0);
    EXPECT_EQ(s.amplitudes(), (Eigen::VectorXcd(2) << 1, 0).finished());

    s = basis_state(2, 3);
    EXPECT_EQ(s.amplitudes(), (Eigen::VectorXcd(4) << 0, 0, 0, 1).finished());

    s = basis_state(3, 4);
    EXPECT_EQ(s[4], std::complex<double>(1));
    EXPECT_EQ(to_bitstring(4, 3), "100");

    EXPECT_THROW(basis_state(2, 4), std::domain_error);
    EXPECT_THROW(basis_state(0, 0), std::domain_error);
}

TEST(state, rejects_unnormalized) {
    Eigen::VectorXcd v(2);
    v << 1, 1;
    EXPECT_THROW(StateVector(1, v), std::domain_error);
    EXPECT_THROW(StateVector(2, Eigen::VectorXcd::Unit(2, 0)), std::domain_error);
}

TEST(state, bitstrings) {
    EXPECT_EQ(from_bitstring("100"), 4u);
    EXPECT_EQ(from_bitstring("011"), 3u);
    EXPECT_EQ(to_bitstring(3, 3), "011");
    EXPECT_THROW(from_bitstring("10x"), std::domain_error);
    EXPECT_THROW(from_bitstring(""), std::domain_error);
}

TEST(state, unitary_validation) {
    Eigen::MatrixXcd m(2, 2);
    m << 1, 1, 0, 1;
    EXPECT_THROW(Unitary{m}, std::domain_error);
    EXPECT_THROW(Unitary{Eigen::MatrixXcd::Identity(3, 3)}, std::domain_error);
    EXPECT_NO_THROW(Unitary{Eigen::MatrixXcd::Identity(4, 4)});
}

TEST(apply_gate, hadamard_on_zero) {
    auto s = apply_gate(basis_state(1, 0), gates::hadamard(), {0});
    const double r = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(s[0] - r), 0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - r), 0, 1e-15);
}

TEST(apply_gate, cnot_on_10) {
    auto s = apply_gate(basis_state(2, 0b10), gates::cnot(), {0, 1});
    EXPECT_EQ(s.amplitudes(), basis_state(2, 0b11).amplitudes());
    // Reversed target order makes qubit 1 the control.
    s = apply_gate(basis_state(2, 0b10), gates::cnot(), {1, 0});
    EXPECT_EQ(s.amplitudes(), basis_state(2, 0b10).amplitudes());
}

TEST(apply_gate, x_on_last_qubit) {
    auto s = apply_gate(basis_state(3, 0), gates::pauli_x(), {2});
    EXPECT_EQ(s.amplitudes(), basis_state(3, 0b001).amplitudes());
}

TEST(apply_gate, errors) {
    auto s = basis_state(2, 0);
    EXPECT_THROW(apply_gate(s, gates::cnot(), {0}), std::domain_error);
    EXPECT_THROW(apply_gate(s, gates::cnot(), {1, 1}), std::domain_error);
    EXPECT_THROW(apply_gate(s, gates::pauli_x(), {2}), std::domain_error);
}

TEST(controlled, builds_cnot_and_identity) {
    EXPECT_TRUE(controlled(gates::pauli_x()).matrix().isApprox(gates::cnot().matrix()));
    Eigen::MatrixXcd cx(4, 4);
    cx << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
    EXPECT_EQ(controlled(gates::pauli_x()).matrix(), cx);
    EXPECT_EQ(controlled(gates::identity()).matrix(), Eigen::MatrixXcd::Identity(4, 4));
    EXPECT_THROW(controlled(gates::cnot()), std::domain_error);
}

TEST(controlled, phase_kickback) {
    // (|0> + |1>)|1> / sqrt2 -> (|0> - |1>)|1> / sqrt2
    auto s = apply_gate(basis_state(2, 0b01), gates::hadamard(), {0});
    s = apply_gate(s, controlled(gates::pauli_z()), {0, 1});
    const double r = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(s[0b01] - r), 0, 1e-15);
    EXPECT_NEAR(std::abs(s[0b11] + r), 0, 1e-15);
}

TEST(measurement_distribution, born_rule) {
    auto d = measurement_distribution(apply_gate(basis_state(1, 0), gates::hadamard(), {0}));
    ASSERT_EQ(d.size(), 2u);
    EXPECT_NEAR(d[0], 0.5, 1e-15);
    EXPECT_NEAR(d[1], 0.5, 1e-15);

    d = measurement_distribution(basis_state(2, 3));
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[3], 1.0);

    // (|100> + |111>)/sqrt2
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    v(4) = v(7) = 1 / std::sqrt(2.0);
    d = measurement_distribution(StateVector(3, v));
    ASSERT_EQ(d.size(), 2u);
    EXPECT_NEAR(d[4], 0.5, 1e-15);
    EXPECT_NEAR(d[7], 0.5, 1e-15);
}

TEST(partial_trace, examples) {
    auto rho = partial_trace(density_matrix(basis_state(2, 0b01)), {0});
    EXPECT_TRUE(rho.matrix().isApprox((Eigen::MatrixXcd(2, 2) << 1, 0, 0, 0).finished()));

    // (|00> - |11>)/sqrt2
    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell(0) = 1 / std::sqrt(2.0);
    bell(3) = -1 / std::sqrt(2.0);
    for (int keep : {0, 1}) {
        auto reduced = partial_trace(density_matrix(StateVector(2, bell)), {keep});
        EXPECT_NEAR((reduced.matrix() - Eigen::MatrixXcd::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 0, 1e-15);
    }

    auto plus0 = apply_gate(basis_state(2, 0), gates::hadamard(), {0});
    auto reduced = partial_trace(density_matrix(plus0), {0});
    EXPECT_NEAR((reduced.matrix() - Eigen::MatrixXcd::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff(), 0, 1e-15);

    EXPECT_THROW(partial_trace(density_matrix(plus0), std::span<const int>{}), std::domain_error);
}

TEST(partial_trace, keeps_listed_order) {
    // |01> keeping (1, 0) should give |10>.
    auto rho = partial_trace(density_matrix(basis_state(2, 0b01)), {1, 0});
    EXPECT_EQ(rho.matrix()(0b10, 0b10), std::complex<double>(1));
}

TEST(purity, examples) {
    EXPECT_NEAR(purity(density_matrix(basis_state(2, 1))), 1.0, 1e-15);
    EXPECT_NEAR(purity(DensityMatrix(1, Eigen::MatrixXcd::Identity(2, 2) / 2.0)), 0.5, 1e-15);
    EXPECT_NEAR(purity(DensityMatrix(2, Eigen::MatrixXcd::Identity(4, 4) / 4.0)), 0.25, 1e-15);
}

TEST(density_matrix, validation) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix(1, m), std::domain_error);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    m(0, 1) = 0.2;
    EXPECT_THROW(DensityMatrix(1, m), std::domain_error);
}

TEST(state_properties, norm_preservation) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; trial++) {
        auto s = random_state(3, rng);
        const int k = 1 + static_cast<int>(rng() % 2);
        std::vector<int> targets = {0, 1, 2};
        std::shuffle(targets.begin(), targets.end(), rng);
        targets.resize(static_cast<size_t>(k));
        auto out = apply_gate(s, random_unitary(k, rng), targets);
        EXPECT_NEAR(out.amplitudes().norm(), 1.0, 1e-10);
    }
}

TEST(state_properties, disjoint_gates_commute) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; trial++) {
        auto s = random_state(3, rng);
        auto a = random_unitary(1, rng);
        auto b = random_unitary(2, rng);
        const int ta[] = {1};
        const int tb[] = {2, 0};
        auto ab = apply_gate(apply_gate(s, a, ta), b, tb);
        auto ba = apply_gate(apply_gate(s, b, tb), a, ta);
        EXPECT_LT((ab.amplitudes() - ba.amplitudes()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(state_properties, inverse_recovers_input) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; trial++) {
        auto s = random_state(3, rng);
        auto u = random_unitary(2, rng);
        const int t[] = {2, 1};
        auto back = apply_gate(apply_gate(s, u, t), u.adjoint(), t);
        EXPECT_LT((back.amplitudes() - s.amplitudes()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(state_properties, product_state_reduces_to_pure) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; trial++) {
        auto s = tensor(random_state(1, rng), random_state(2, rng));
        EXPECT_NEAR(purity(partial_trace(density_matrix(s), {0})), 1.0, 1e-9);
        EXPECT_NEAR(purity(partial_trace(density_matrix(s), {1, 2})), 1.0, 1e-9);
    }
}

TEST(state_properties, matches_embedded_operator) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 50; trial++) {
        auto s = random_state(3, rng);
        auto u = random_unitary(2, rng);
        const int t[] = {2, 0};
        Eigen::VectorXcd expected = embed(u, t, 3) * s.amplitudes();
        EXPECT_LT((apply_gate(s, u, t).amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(state, float_scalar_instantiates) {
    auto s = basis_state<float>(2, 1);
    auto h = gates::hadamard<float>();
    auto out = apply_gate(s, h, {0});
    EXPECT_NEAR(std::norm(out[1]), 0.5f, 1e-6f);
}

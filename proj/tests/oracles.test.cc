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

#include <algorithm>

#include "gtest/gtest.h"
#include "qpair/gates.h"

using namespace qpair;

TEST(oracles, named_truth_tables) {
    EXPECT_EQ(named::B1.truth_table(), "0:0,1:1");
    EXPECT_EQ(named::B2.truth_table(), "0:1,1:0");
    EXPECT_EQ(named::C1.truth_table(), "0:0,1:0");
    EXPECT_EQ(named::C2.truth_table(), "0:1,1:1");
}

TEST(oracles, is_balanced) {
    EXPECT_TRUE(is_balanced(named::B1));
    EXPECT_TRUE(is_balanced(named::B2));
    EXPECT_FALSE(is_balanced(named::C1));
    EXPECT_FALSE(is_balanced(named::C2));
}

TEST(oracles, same_at_zero) {
    EXPECT_FALSE(same_at_zero(PromisePair(named::B1, named::B1)));
    EXPECT_TRUE(same_at_zero(PromisePair(named::B1, named::B2)));
    EXPECT_TRUE(same_at_zero(PromisePair(named::C1, named::C2)));
}

TEST(oracles, promise_enforced) {
    EXPECT_THROW(PromisePair(named::B1, named::C1), std::domain_error);
    EXPECT_THROW(PromisePair(named::C2, named::B2), std::domain_error);
}

TEST(oracle_unitary, named_matrices) {
    EXPECT_EQ(oracle_unitary(named::C1).matrix(), Eigen::MatrixXcd::Identity(4, 4));
    EXPECT_EQ(oracle_unitary(named::B1).matrix(), gates::cnot().matrix());
    EXPECT_EQ(oracle_unitary(named::C2).matrix(), gates::kron(gates::identity(), gates::pauli_x()).matrix());
}

TEST(oracle_unitary, self_inverse) {
    for (const auto &fn : all_functions()) {
        const Eigen::MatrixXcd u = oracle_unitary(fn).matrix();
        EXPECT_LT((u * u - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12) << fn.name;
    }
}

TEST(oracle_unitary, reproduces_truth_table) {
    for (const auto &fn : all_functions()) {
        for (int x = 0; x < 2; x++) {
            for (int y = 0; y < 2; y++) {
                auto out = apply_gate(basis_state(2, static_cast<std::uint64_t>(2 * x + y)), oracle_unitary(fn), {0, 1});
                auto dist = measurement_distribution(out);
                ASSERT_EQ(dist.size(), 1u);
                const auto index = dist.begin()->first;
                EXPECT_EQ(static_cast<int>(index >> 1), x);
                EXPECT_EQ(static_cast<int>(index & 1), y ^ static_cast<int>(fn(x != 0))) << fn.name;
            }
        }
    }
}

TEST(oracle_unitary, b2_is_x_after_cnot) {
    auto composed = gates::kron(gates::identity(), gates::pauli_x()) * gates::cnot();
    EXPECT_LT((oracle_unitary(named::B2).matrix() - composed.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(oracle_unitary, gate_decompositions_match_direct_matrix) {
    EXPECT_TRUE(oracle_decomposition(named::C1).empty());
    EXPECT_EQ(oracle_decomposition(named::C2).size(), 1u);
    EXPECT_EQ(oracle_decomposition(named::B1).size(), 1u);
    EXPECT_EQ(oracle_decomposition(named::B2).size(), 2u);
    for (const auto &fn : all_functions()) {
        auto composed = compose_decomposition(oracle_decomposition(fn));
        EXPECT_LT((composed.matrix() - oracle_unitary(fn).matrix()).cwiseAbs().maxCoeff(), 1e-12) << fn.name;
    }
}

TEST(all_promise_pairs, enumeration) {
    auto pairs = all_promise_pairs();
    EXPECT_EQ(pairs.size(), 8u);
    EXPECT_NE(std::find(pairs.begin(), pairs.end(), PromisePair(named::B1, named::B2)), pairs.end());
    for (const auto &p : pairs) {
        EXPECT_FALSE(p.f() == named::C1 && p.g() == named::B1);
        EXPECT_EQ(is_balanced(p.f()), is_balanced(p.g()));
    }
    int constant = 0;
    for (const auto &p : pairs) {
        constant += !is_balanced(p.f());
    }
    EXPECT_EQ(constant, 4);
}

TEST(parse_bool_fn, names_and_tables) {
    EXPECT_EQ(parse_bool_fn("B1"), named::B1);
    auto fn = parse_bool_fn("0:0,1:1");
    EXPECT_EQ(fn, named::B1);
    EXPECT_EQ(fn.name, "B1");
    EXPECT_EQ(parse_bool_fn("1:1,0:0"), named::B1);
    EXPECT_EQ(parse_bool_fn("0:1,1:1"), named::C2);
}

TEST(parse_bool_fn, errors_name_the_token) {
    auto message_of = [](std::string_view text) {
        try {
            parse_bool_fn(text);
        } catch (const std::invalid_argument &e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message_of("0:2,1:0").find("'0:2'"), std::string::npos);
    EXPECT_NE(message_of("0:0,2:1").find("'2:1'"), std::string::npos);
    EXPECT_NE(message_of("0:0,1").find("'1'"), std::string::npos);
    EXPECT_NE(message_of("0:0,0:1").find("given twice"), std::string::npos);
    EXPECT_NE(message_of("0:0").find("both inputs"), std::string::npos);
    EXPECT_NE(message_of("B3").find("'B3'"), std::string::npos);
}

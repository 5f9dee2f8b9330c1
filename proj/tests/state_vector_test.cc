// Copyright 2026 The qnn-lens Authors
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


#include "state_vector.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "errors.hpp"
#include "oracle.hpp"

using namespace qnn_lens;

namespace {

void expect_amplitudes_near(std::span<const Amplitude> got, const std::vector<Amplitude> &want, double tol) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_NEAR(got[i].real(), want[i].real(), tol) << "i=" << i;
        EXPECT_NEAR(got[i].imag(), want[i].imag(), tol) << "i=" << i;
    }
}

}  // namespace

TEST(StateVector, ZeroState) {
    const StateVector s = StateVector::zero(3);
    EXPECT_EQ(s.num_qubits(), 3);
    ASSERT_EQ(s.dimension(), 8u);
    EXPECT_EQ(s[0], Amplitude(1.0));
    for (std::size_t i = 1; i < 8; ++i) {
        EXPECT_EQ(s[i], Amplitude(0.0));
    }
}

TEST(StateVector, QubitCountBounds) {
    EXPECT_THROW(StateVector::zero(0), InvalidArgument);
    EXPECT_THROW(StateVector::zero(kMaxQubits + 1), InvalidArgument);
    EXPECT_EQ(StateVector::zero(kMaxQubits).dimension(), 1024u);
}

TEST(StateVector, FromAmplitudesValidates) {
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NO_THROW(StateVector::from_amplitudes(1, {r, r}));
    EXPECT_THROW(StateVector::from_amplitudes(1, {1.0, 1.0}), InvalidArgument);
    EXPECT_THROW(StateVector::from_amplitudes(2, {1.0, 0.0}), InvalidArgument);
    EXPECT_THROW(StateVector::from_amplitudes(1, {std::nan(""), 0.0}), InvalidArgument);
}

TEST(StateVector, BasisLabelsQubitZeroFirst) {
    EXPECT_EQ(basis_label(0, 3), "000");
    EXPECT_EQ(basis_label(4, 3), "100");
    EXPECT_EQ(basis_label(1, 3), "001");
    EXPECT_EQ(qubit_mask(3, 0), 4u);
    EXPECT_EQ(qubit_mask(3, 2), 1u);
}

TEST(StateVector, GateNames) {
    for (GateType t : {GateType::RX, GateType::RY, GateType::RZ, GateType::H, GateType::CNOT}) {
        EXPECT_EQ(gate_type_from_name(gate_type_name(t)), t);
    }
    EXPECT_THROW(gate_type_from_name("CZ"), InvalidArgument);
}

TEST(StateVector, SingleRotationProbability) {
    // RY(-0.58)|0> has P(0) = cos^2(0.29).
    const StateVector s = apply_gate(zero_state(1), Gate::ry(0, -0.58));
    const auto p = probabilities(s);
    EXPECT_NEAR(p[0], std::pow(std::cos(0.29), 2), 1e-15);
    EXPECT_NEAR(p[0], 0.918231, 1e-6);
    EXPECT_NEAR(p[1], 0.081769, 1e-6);
}

TEST(StateVector, MatchesDenseOperatorOnEveryPosition) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-7.0, 7.0);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            const StateVector start = oracle::random_state(n, 6, rng);
            const std::vector<Amplitude> v(start.amplitudes().begin(), start.amplitudes().end());
            std::vector<Gate> gates;
            for (int t = 0; t < n; ++t) {
                const double a = angle(rng);
                gates.insert(gates.end(), {Gate::rx(t, a), Gate::ry(t, a), Gate::rz(t, a), Gate::h(t)});
                for (int c = 0; c < n; ++c) {
                    if (c != t) {
                        gates.push_back(Gate::cnot(c, t));
                    }
                }
            }
            for (const Gate &g : gates) {
                SCOPED_TRACE(std::string(gate_type_name(g.type)) + " n=" + std::to_string(n) +
                             " target=" + std::to_string(g.target) + " control=" + std::to_string(g.control));
                const StateVector got = apply_gate(start, g);
                expect_amplitudes_near(got.amplitudes(), oracle::multiply(oracle::dense_operator(g, n), v), 1e-10);
            }
        }
    }
}

TEST(StateVector, RotationInverseRestoresState) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const StateVector start = oracle::random_state(4, 10, rng);
        const Gate g = oracle::random_gate(4, rng);
        StateVector s = apply_gate(start, g);
        Gate inverse = g;
        inverse.angle = -g.angle;
        s.apply(inverse);
        const std::vector<Amplitude> want(start.amplitudes().begin(), start.amplitudes().end());
        expect_amplitudes_near(s.amplitudes(), want, 1e-12);
    }
}

TEST(StateVector, NormPreservedByRandomCircuits) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 5;
        const StateVector s = oracle::random_state(n, 30, rng);
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    }
}

TEST(StateVector, MarginalMatchesBruteForce) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 5;
        const auto probs = probabilities(oracle::random_state(n, 20, rng));
        for (int q = 0; q < n; ++q) {
            for (int v = 0; v < 2; ++v) {
                EXPECT_NEAR(marginal_probability(probs, n, q, v), oracle::brute_marginal(probs, n, q, v), 1e-12);
            }
        }
    }
}

TEST(StateVector, TwoQubitMarginalIdentity) {
    std::mt19937_64 rng(9);
    const auto p = probabilities(oracle::random_state(2, 12, rng));
    // Qubit 0 reads 0 on |00> and |01>.
    EXPECT_NEAR(marginal_probability(p, 2, 0, 0), p[0] + p[1], 1e-15);
    EXPECT_NEAR(marginal_probability(p, 2, 1, 0), p[0] + p[2], 1e-15);
}

TEST(StateVector, RejectsBadOperands) {
    StateVector s = zero_state(3);
    EXPECT_THROW(s.apply(Gate::h(3)), InvalidArgument);
    EXPECT_THROW(s.apply(Gate::h(-1)), InvalidArgument);
    EXPECT_THROW(s.apply(Gate::cnot(1, 1)), InvalidArgument);
    EXPECT_THROW(s.apply(Gate::cnot(5, 1)), InvalidArgument);
    EXPECT_THROW(s.apply(Gate::ry(0, std::numeric_limits<double>::infinity())), InvalidArgument);
    EXPECT_EQ(s, zero_state(3));
}

TEST(StateVector, BellState) {
    StateVector s = zero_state(2);
    s.apply(Gate::h(0));
    s.apply(Gate::cnot(0, 1));
    const auto p = probabilities(s);
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[3], 0.5, 1e-15);
    EXPECT_NEAR(p[1] + p[2], 0.0, 1e-15);
}

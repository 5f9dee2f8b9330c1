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


#include "circuit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "errors.hpp"
#include "oracle.hpp"

using namespace qnn_lens;

namespace {

// Layer and qubit of the rotation gate reading parameter slot `slot`.
std::pair<int, int> locate_slot(const CircuitSpec &spec, int slot) {
    int layer = 0;
    for (const Step &step : spec.steps()) {
        if (step.kind != StepKind::RotationLayer) {
            continue;
        }
        for (const CircuitGate &g : step.gates) {
            if (g.source == AngleSource::Parameter && g.index == slot) {
                return {layer, g.target};
            }
        }
        ++layer;
    }
    return {-1, -1};
}

std::vector<double> random_params(int count, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
    std::vector<double> p(static_cast<std::size_t>(count));
    for (double &x : p) {
        x = u(rng);
    }
    return p;
}

}  // namespace

TEST(Circuit, DefaultShape) {
    const CircuitSpec spec = build_default_circuit(3, 2, 4);
    EXPECT_EQ(spec.num_parameters(), 12);
    EXPECT_EQ(spec.measured_qubit(), 0);
    // Encoding, then rotation/entangling alternating, ending on rotation.
    ASSERT_EQ(spec.steps().size(), 8u);
    EXPECT_EQ(spec.steps()[0].kind, StepKind::Encoding);
    for (std::size_t s = 1; s < 8; ++s) {
        EXPECT_EQ(spec.steps()[s].kind, s % 2 == 1 ? StepKind::RotationLayer : StepKind::EntanglingLayer);
    }
    // CNOT ring i -> i+1 mod N.
    const Step &ring = spec.steps()[2];
    ASSERT_EQ(ring.gates.size(), 3u);
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(ring.gates[static_cast<std::size_t>(i)].type, GateType::CNOT);
        EXPECT_EQ(ring.gates[static_cast<std::size_t>(i)].control, i);
        EXPECT_EQ(ring.gates[static_cast<std::size_t>(i)].target, (i + 1) % 3);
    }
}

TEST(Circuit, SlotPositions) {
    EXPECT_EQ(locate_slot(build_default_circuit(3, 2, 4), 9), std::make_pair(3, 0));
    const CircuitSpec four = build_default_circuit(4, 2, 4);
    EXPECT_EQ(four.num_parameters(), 16);
    EXPECT_EQ(locate_slot(four, 12), std::make_pair(3, 0));
}

TEST(Circuit, SingleLayer) {
    const CircuitSpec spec = build_default_circuit(3, 2, 1);
    ASSERT_EQ(spec.steps().size(), 2u);
    EXPECT_EQ(spec.steps()[0].kind, StepKind::Encoding);
    EXPECT_EQ(spec.steps()[1].kind, StepKind::RotationLayer);
    EXPECT_EQ(spec.num_parameters(), 3);
}

TEST(Circuit, ParameterSlotsAppearOnce) {
    for (int n = 1; n <= 5; ++n) {
        for (int layers = 1; layers <= 5; ++layers) {
            const CircuitSpec spec = build_default_circuit(n, std::min(n, 2), layers);
            std::multiset<int> seen;
            for (const Step &step : spec.steps()) {
                for (const CircuitGate &g : step.gates) {
                    if (g.source == AngleSource::Parameter) {
                        seen.insert(g.index);
                    }
                }
            }
            ASSERT_EQ(seen.size(), static_cast<std::size_t>(spec.num_parameters()));
            for (int slot = 0; slot < spec.num_parameters(); ++slot) {
                EXPECT_EQ(seen.count(slot), 1u) << "n=" << n << " layers=" << layers << " slot=" << slot;
            }
        }
    }
}

TEST(Circuit, RejectsBadShapes) {
    EXPECT_THROW(build_default_circuit(0, 0, 1), InvalidArgument);
    EXPECT_THROW(build_default_circuit(11, 2, 1), InvalidArgument);
    EXPECT_THROW(build_default_circuit(3, 4, 1), InvalidArgument);
    EXPECT_THROW(build_default_circuit(3, 2, 0), InvalidArgument);
    EXPECT_THROW(CircuitSpec::build_default(3, 2, 4, 3), InvalidArgument);
}

TEST(Circuit, FromPartsRoundTrip) {
    const CircuitSpec spec = build_default_circuit(3, 2, 4);
    EXPECT_EQ(CircuitSpec::from_parts(3, 2, 4, 0, spec.steps()), spec);

    std::vector<Step> reordered = spec.steps();
    std::swap(reordered[0], reordered[1]);
    EXPECT_THROW(CircuitSpec::from_parts(3, 2, 4, 0, reordered), InvalidArgument);

    std::vector<Step> duplicated = spec.steps();
    duplicated[3].gates[0].index = 0;
    EXPECT_THROW(CircuitSpec::from_parts(3, 2, 4, 0, duplicated), InvalidArgument);

    std::vector<Step> rotated_ring = spec.steps();
    rotated_ring[2].gates[0].type = GateType::RY;
    EXPECT_THROW(CircuitSpec::from_parts(3, 2, 4, 0, rotated_ring), InvalidArgument);

    EXPECT_THROW(CircuitSpec::from_parts(3, 2, 3, 0, spec.steps()), InvalidArgument);
}

TEST(Circuit, EncodeZeroFeatures) {
    const CircuitSpec spec = build_default_circuit(3, 2, 4);
    const std::vector<double> x{0.0, 0.0};
    EXPECT_EQ(probabilities(encode(spec, x))[0], 1.0);
}

TEST(Circuit, EncodeMatchesHalfAngleProduct) {
    const CircuitSpec spec = build_default_circuit(3, 2, 4);
    const std::vector<double> x{-0.58, 0.10};
    const auto p = probabilities(encode(spec, x));
    const double c0 = std::pow(std::cos(0.29), 2), s0 = std::pow(std::sin(0.29), 2);
    const double c1 = std::pow(std::cos(0.05), 2), s1 = std::pow(std::sin(0.05), 2);
    EXPECT_NEAR(p[0b000], c0 * c1, 1e-15);
    EXPECT_NEAR(p[0b100], s0 * c1, 1e-15);
    EXPECT_NEAR(p[0b010], c0 * s1, 1e-15);
    EXPECT_NEAR(p[0b110], s0 * s1, 1e-15);
    // Frozen from the product above.
    EXPECT_NEAR(p[0b000], 0.91594, 1e-5);
    EXPECT_NEAR(p[0b100], 0.08156, 1e-5);
    EXPECT_NEAR(p[0b010], 0.002294, 1e-6);
    EXPECT_NEAR(p[0b110], 0.000204, 1e-6);
    for (std::size_t b = 1; b < 8; b += 2) {
        EXPECT_EQ(p[b], 0.0) << basis_label(b, 3);
    }
}

TEST(Circuit, UnencodedQubitsStayZero) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> feature(-1.0, 1.0);
    for (int n = 2; n <= 6; ++n) {
        const CircuitSpec spec = build_default_circuit(n, 2, 2);
        for (int trial = 0; trial < 20; ++trial) {
            const std::vector<double> x{feature(rng), feature(rng)};
            const auto p = probabilities(encode(spec, x));
            for (std::size_t b = 0; b < p.size(); ++b) {
                if (b & (qubit_mask(n, 0) | qubit_mask(n, 1))) {
                    continue;
                }
                if (b != 0) {
                    EXPECT_EQ(p[b], 0.0) << basis_label(b, n);
                }
            }
            for (std::size_t b = 0; b < p.size(); ++b) {
                for (int q = 2; q < n; ++q) {
                    if (b & qubit_mask(n, q)) {
                        EXPECT_EQ(p[b], 0.0) << basis_label(b, n);
                    }
                }
            }
        }
    }
}

TEST(Circuit, TraceLengthAndEndpoints) {
    const CircuitSpec spec = build_default_circuit(3, 2, 4);
    std::mt19937_64 rng(1);
    const auto params = random_params(12, rng);
    const std::vector<double> x{0.3, -0.7};
    const auto trace = run_with_trace(spec, x, params);
    ASSERT_EQ(trace.size(), 9u);
    EXPECT_EQ(trace.front(), zero_state(3));
    EXPECT_EQ(trace[1], encode(spec, x));
    EXPECT_EQ(trace.back(), run_circuit(spec, x, params));
}

TEST(Circuit, TraceComposesStepByStep) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> feature(-1.0, 1.0);
    for (int n = 1; n <= 4; ++n) {
        const CircuitSpec spec = build_default_circuit(n, std::min(n, 2), 3);
        const auto params = random_params(spec.num_parameters(), rng);
        std::vector<double> x;
        for (int k = 0; k < spec.feature_dim(); ++k) {
            x.push_back(feature(rng));
        }
        const auto trace = run_with_trace(spec, x, params);
        ASSERT_EQ(trace.size(), spec.steps().size() + 1);
        for (std::size_t s = 0; s < spec.steps().size(); ++s) {
            StateVector next = trace[s];
            apply_step(next, spec.steps()[s], x, params);
            EXPECT_EQ(next, trace[s + 1]) << "step " << s;
        }
    }
}

TEST(Circuit, ZeroParametersKeepGroundState) {
    const CircuitSpec spec = build_default_circuit(3, 2, 4);
    const std::vector<double> params(12, 0.0), x{0.0, 0.0};
    for (const StateVector &s : run_with_trace(spec, x, params)) {
        EXPECT_EQ(s, zero_state(3));
    }
}

TEST(Circuit, SingleQubitRotation) {
    const CircuitSpec spec = build_default_circuit(1, 0, 1);
    EXPECT_TRUE(spec.steps()[0].gates.empty());
    for (double theta : {0.0, 0.4, 1.3, M_PI, 5.0}) {
        const std::vector<double> params{theta};
        const auto p = probabilities(run_circuit(spec, {}, params));
        EXPECT_NEAR(p[1], std::pow(std::sin(theta / 2), 2), 1e-15);
    }
}

TEST(Circuit, RejectsBadInputs) {
    const CircuitSpec spec = build_default_circuit(3, 2, 4);
    const std::vector<double> params(12, 0.1);
    EXPECT_THROW(run_circuit(spec, std::vector<double>{0.1}, params), InvalidArgument);
    EXPECT_THROW(run_circuit(spec, std::vector<double>{0.1, 1.5}, params), InvalidArgument);
    EXPECT_THROW(run_circuit(spec, std::vector<double>{0.1, 0.2}, std::vector<double>(11, 0.0)), InvalidArgument);
    std::vector<double> nan_params = params;
    nan_params[4] = std::nan("");
    EXPECT_THROW(run_circuit(spec, std::vector<double>{0.1, 0.2}, nan_params), InvalidArgument);
}

TEST(Circuit, Deterministic) {
    const CircuitSpec spec = build_default_circuit(4, 2, 4);
    std::mt19937_64 rng(8);
    const auto params = random_params(16, rng);
    const std::vector<double> x{0.25, -0.5};
    EXPECT_EQ(run_with_trace(spec, x, params), run_with_trace(spec, x, params));
}

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

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "state_vector.hpp"
#include "train.hpp"

namespace qnn_lens {

inline constexpr int kGridSize = 15;

struct BasisProbability {
    std::string label;
    double probability = 0.0;

    bool operator==(const BasisProbability &) const = default;
};

struct Marginal {
    int qubit = 0;
    int value = 0;
    double total = 0.0;
    /// Basis states whose digit for `qubit` equals `value`, ascending index.
    std::vector<BasisProbability> contributions;

    bool operator==(const Marginal &) const = default;
};

/// Basis probabilities plus the per-qubit marginals they add up to.
/// Marginals are ordered (q0,0), (q0,1), (q1,0), ...
struct StateDecomposition {
    int num_qubits = 0;
    std::vector<BasisProbability> basis;
    std::vector<Marginal> marginals;
    /// Raw amplitudes, kept only for small registers.
    std::optional<std::vector<Amplitude>> amplitudes;

    const Marginal &marginal(int qubit, int value) const {
        return marginals[static_cast<std::size_t>(2 * qubit + value)];
    }

    bool operator==(const StateDecomposition &) const = default;
};

inline constexpr int kMaxQubitsWithAmplitudes = 4;

StateDecomposition decompose(const StateVector &state);
StateDecomposition decompose(const StateVector &state, bool keep_amplitudes);

/// Checks normalization, marginal totals and the contribution sets. Throws
/// SchemaError naming `context` on the first violation.
void validate_decomposition(const StateDecomposition &d, const std::string &context);

/// marginal(qubit, 0) - marginal(qubit, 1).
double expectation_z(const StateVector &state, int qubit);
double expectation_z(const StateDecomposition &d, int qubit);

struct FeatureGridCell {
    int i = 0;
    int j = 0;
    std::array<double, 2> center{};
    double expectation = 0.0;
    ClassLabel predicted_class = ClassLabel::A;
    double p0 = 0.0;
    double p1 = 0.0;
    std::vector<BasisProbability> basis;

    /// Heatmap confidence, |expectation|.
    double confidence() const;

    bool operator==(const FeatureGridCell &) const = default;
};

/// Center coordinate of slice `index` along one feature axis.
double grid_center(int index);

/// 15 x 15 lattice over [-1, 1]^2, row-major in i (first feature).
std::vector<FeatureGridCell> feature_grid(const CircuitSpec &spec, std::span<const double> params);
FeatureGridCell grid_cell(const CircuitSpec &spec, std::span<const double> params, int i, int j);

void validate_grid_cell(const FeatureGridCell &cell, const std::string &context);

struct AngleDelta {
    int param_slot = 0;
    int epoch = 0;
    /// theta(epoch) - theta(0), signed and unwrapped.
    double delta = 0.0;
    /// |delta| clamped to a full turn.
    double magnitude = 0.0;

    bool operator==(const AngleDelta &) const = default;
};

/// One inner vector per snapshot, one AngleDelta per parameter slot.
std::vector<std::vector<AngleDelta>> angle_deltas(std::span<const TrainingSnapshot> snapshots);

}  // namespace qnn_lens

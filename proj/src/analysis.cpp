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

#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace qnn_lens {

StateDecomposition decompose(const StateVector &state) {
    return decompose(state, state.num_qubits() <= kMaxQubitsWithAmplitudes);
}

StateDecomposition decompose(const StateVector &state, bool keep_amplitudes) {
    const int n = state.num_qubits();
    const std::vector<double> probs = probabilities(state);

    StateDecomposition d;
    d.num_qubits = n;
    d.basis.reserve(probs.size());
    for (std::size_t b = 0; b < probs.size(); ++b) {
        d.basis.push_back({basis_label(b, n), probs[b]});
    }
    d.marginals.reserve(static_cast<std::size_t>(2 * n));
    for (int q = 0; q < n; ++q) {
        const std::size_t mask = qubit_mask(n, q);
        for (int v = 0; v < 2; ++v) {
            Marginal m{q, v, marginal_probability(probs, n, q, v), {}};
            for (std::size_t b = 0; b < probs.size(); ++b) {
                if (((b & mask) != 0) == (v == 1)) {
                    m.contributions.push_back(d.basis[b]);
                }
            }
            d.marginals.push_back(std::move(m));
        }
    }
    if (keep_amplitudes) {
        d.amplitudes.emplace(state.amplitudes().begin(), state.amplitudes().end());
    }
    return d;
}

void validate_decomposition(const StateDecomposition &d, const std::string &context) {
    auto fail = [&](const std::string &what) { throw SchemaError(context + ": " + what); };

    const int n = d.num_qubits;
    if (n < 1 || n > kMaxQubits) {
        fail("num_qubits out of range");
    }
    const std::size_t dim = std::size_t{1} << n;
    if (d.basis.size() != dim) {
        fail("basis has " + std::to_string(d.basis.size()) + " entries, expected " + std::to_string(dim));
    }
    double sum = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
        const auto &entry = d.basis[b];
        if (entry.label != basis_label(b, n)) {
            fail("basis label '" + entry.label + "' at index " + std::to_string(b));
        }
        if (!std::isfinite(entry.probability) || entry.probability < 0.0 || entry.probability > 1.0 + kNormTolerance) {
            fail("basis probability of " + entry.label + " outside [0, 1]");
        }
        sum += entry.probability;
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
        fail("basis probabilities sum to " + std::to_string(sum));
    }
    if (d.marginals.size() != static_cast<std::size_t>(2 * n)) {
        fail("expected " + std::to_string(2 * n) + " marginals");
    }
    for (int q = 0; q < n; ++q) {
        const std::size_t mask = qubit_mask(n, q);
        for (int v = 0; v < 2; ++v) {
            const Marginal &m = d.marginal(q, v);
            if (m.qubit != q || m.value != v) {
                fail("marginals out of order at qubit " + std::to_string(q));
            }
            std::vector<BasisProbability> expected;
            double total = 0.0;
            for (std::size_t b = 0; b < dim; ++b) {
                if (((b & mask) != 0) == (v == 1)) {
                    expected.push_back(d.basis[b]);
                    total += d.basis[b].probability;
                }
            }
            if (m.contributions != expected) {
                fail("contributions of marginal (q" + std::to_string(q) + "=" + std::to_string(v) +
                     ") do not match the basis states");
            }
            if (std::abs(m.total - total) > 1e-12) {
                fail("marginal total (q" + std::to_string(q) + "=" + std::to_string(v) + ") mismatch");
            }
        }
        if (std::abs(d.marginal(q, 0).total + d.marginal(q, 1).total - 1.0) > kNormTolerance) {
            fail("marginals of qubit " + std::to_string(q) + " do not sum to 1");
        }
    }
    if (d.amplitudes) {
        if (d.amplitudes->size() != dim) {
            fail("amplitude count mismatch");
        }
        for (std::size_t b = 0; b < dim; ++b) {
            if (std::abs(std::norm((*d.amplitudes)[b]) - d.basis[b].probability) > 1e-12) {
                fail("amplitude of " + d.basis[b].label + " disagrees with its probability");
            }
        }
    }
}

double expectation_z(const StateVector &state, int qubit) {
    const std::vector<double> probs = probabilities(state);
    const int n = state.num_qubits();
    // Rounding in the marginal sums can step a hair past +-1.
    return std::clamp(marginal_probability(probs, n, qubit, 0) - marginal_probability(probs, n, qubit, 1), -1.0, 1.0);
}

double expectation_z(const StateDecomposition &d, int qubit) {
    if (qubit < 0 || qubit >= d.num_qubits) {
        throw InvalidArgument("qubit " + std::to_string(qubit) + " out of range");
    }
    return std::clamp(d.marginal(qubit, 0).total - d.marginal(qubit, 1).total, -1.0, 1.0);
}

double FeatureGridCell::confidence() const { return std::abs(expectation); }

double grid_center(int index) { return -1.0 + (index + 0.5) * (2.0 / kGridSize); }

FeatureGridCell grid_cell(const CircuitSpec &spec, std::span<const double> params, int i, int j) {
    if (spec.feature_dim() != 2) {
        throw InvalidArgument("feature grid needs a circuit with feature_dim 2, got " +
                              std::to_string(spec.feature_dim()));
    }
    if (i < 0 || i >= kGridSize || j < 0 || j >= kGridSize) {
        throw InvalidArgument("grid cell index out of range");
    }
    FeatureGridCell cell;
    cell.i = i;
    cell.j = j;
    cell.center = {grid_center(i), grid_center(j)};
    const StateVector state = run_circuit(spec, cell.center, params);
    const std::vector<double> probs = probabilities(state);
    const int n = state.num_qubits();
    const int q = spec.measured_qubit();
    cell.p0 = marginal_probability(probs, n, q, 0);
    cell.p1 = marginal_probability(probs, n, q, 1);
    cell.expectation = cell.p0 - cell.p1;
    cell.predicted_class = predict_class(cell.expectation);
    cell.basis.reserve(probs.size());
    for (std::size_t b = 0; b < probs.size(); ++b) {
        cell.basis.push_back({basis_label(b, n), probs[b]});
    }
    return cell;
}

std::vector<FeatureGridCell> feature_grid(const CircuitSpec &spec, std::span<const double> params) {
    std::vector<FeatureGridCell> cells;
    cells.reserve(kGridSize * kGridSize);
    for (int i = 0; i < kGridSize; ++i) {
        for (int j = 0; j < kGridSize; ++j) {
            cells.push_back(grid_cell(spec, params, i, j));
        }
    }
    return cells;
}

void validate_grid_cell(const FeatureGridCell &cell, const std::string &context) {
    auto fail = [&](const std::string &what) { throw SchemaError(context + ": " + what); };
    if (cell.i < 0 || cell.i >= kGridSize || cell.j < 0 || cell.j >= kGridSize) {
        fail("cell index out of range");
    }
    if (std::abs(cell.p0 + cell.p1 - 1.0) > kNormTolerance) {
        fail("p0 + p1 != 1");
    }
    if (std::abs(cell.expectation - (cell.p0 - cell.p1)) > kNormTolerance) {
        fail("expectation != p0 - p1");
    }
    if (cell.expectation < -1.0 - kNormTolerance || cell.expectation > 1.0 + kNormTolerance) {
        fail("expectation outside [-1, 1]");
    }
    if (cell.predicted_class != predict_class(cell.expectation)) {
        fail("predicted_class disagrees with the sign of expectation");
    }
    double sum = 0.0;
    for (const auto &b : cell.basis) {
        if (!std::isfinite(b.probability) || b.probability < 0.0) {
            fail("basis probability of " + b.label + " invalid");
        }
        sum += b.probability;
    }
    if (cell.basis.empty() || std::abs(sum - 1.0) > kNormTolerance) {
        fail("basis probabilities sum to " + std::to_string(sum));
    }
}

std::vector<std::vector<AngleDelta>> angle_deltas(std::span<const TrainingSnapshot> snapshots) {
    if (snapshots.empty() || snapshots.front().epoch != 0) {
        throw InvalidArgument("angle deltas need the epoch-0 snapshot");
    }
    const ParameterVector &initial = snapshots.front().thetas;
    constexpr double kFullTurn = 2 * std::numbers::pi;

    std::vector<std::vector<AngleDelta>> out;
    out.reserve(snapshots.size());
    for (const TrainingSnapshot &snap : snapshots) {
        if (snap.thetas.size() != initial.size()) {
            throw InvalidArgument("snapshot at epoch " + std::to_string(snap.epoch) + " has a different parameter count");
        }
        std::vector<AngleDelta> row;
        row.reserve(initial.size());
        for (std::size_t slot = 0; slot < initial.size(); ++slot) {
            const double delta = snap.thetas[slot] - initial[slot];
            row.push_back({static_cast<int>(slot), snap.epoch, delta, std::min(std::abs(delta), kFullTurn)});
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace qnn_lens

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
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qnn_lens {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 10;
inline constexpr double kNormTolerance = 1e-9;

enum class GateType { RX, RY, RZ, H, CNOT };

const char *gate_type_name(GateType type);
GateType gate_type_from_name(const std::string &name);
bool is_rotation(GateType type);

/// A concrete gate with its qubit operands bound. `control` is only
/// meaningful for CNOT and `angle` only for the rotation gates.
struct Gate {
    GateType type = GateType::H;
    int target = 0;
    int control = -1;
    double angle = 0.0;

    static Gate rx(int qubit, double theta) { return {GateType::RX, qubit, -1, theta}; }
    static Gate ry(int qubit, double theta) { return {GateType::RY, qubit, -1, theta}; }
    static Gate rz(int qubit, double theta) { return {GateType::RZ, qubit, -1, theta}; }
    static Gate h(int qubit) { return {GateType::H, qubit, -1, 0.0}; }
    static Gate cnot(int control, int target) { return {GateType::CNOT, target, control, 0.0}; }
};

/// Row-major 2x2 unitary of a single-qubit gate. Rotations follow
/// exp(-i theta P / 2).
std::array<Amplitude, 4> single_qubit_matrix(const Gate &gate);

/// Bit of basis index b that holds `qubit`. Qubit 0 is the most significant
/// bit, so the ket |q0 q1 ... q_{N-1}> reads left to right.
inline std::size_t qubit_mask(int num_qubits, int qubit) {
    return std::size_t{1} << (num_qubits - 1 - qubit);
}

/// Bitstring label of a basis index, qubit 0 first ("100" means q0 = 1).
std::string basis_label(std::size_t index, int num_qubits);

/// Dense pure state of up to kMaxQubits qubits. Every instance is
/// normalized: the only ways in are zero() and from_amplitudes(), and gate
/// application is unitary.
class StateVector {
  public:
    static StateVector zero(int num_qubits);
    static StateVector from_amplitudes(int num_qubits, std::vector<Amplitude> amplitudes);

    int num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    const Amplitude &operator[](std::size_t index) const { return amps_[index]; }

    /// In-place strided application; validates the operands first.
    void apply(const Gate &gate);

    double norm_squared() const;

    bool operator==(const StateVector &) const = default;

  private:
    StateVector(int num_qubits, std::vector<Amplitude> amps)
        : num_qubits_(num_qubits), amps_(std::move(amps)) {}

    void apply_single(const Gate &gate);
    void apply_cnot(int control, int target);

    int num_qubits_ = 0;
    std::vector<Amplitude> amps_;
};

StateVector zero_state(int num_qubits);
StateVector apply_gate(StateVector state, const Gate &gate);

/// |amp_b|^2 for every basis index b.
std::vector<double> probabilities(const StateVector &state);

/// Pr(qubit reads value), summed over matching basis probabilities.
double marginal_probability(std::span<const double> probs, int num_qubits, int qubit, int value);

}  // namespace qnn_lens

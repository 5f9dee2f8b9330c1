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

#include <cmath>
#include <utility>

#include "errors.hpp"

namespace qnn_lens {

namespace {

void check_qubit_count(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw InvalidArgument("num_qubits must be in [1, " + std::to_string(kMaxQubits) +
                              "], got " + std::to_string(num_qubits));
    }
}

void check_qubit(int qubit, int num_qubits, const char *role) {
    if (qubit < 0 || qubit >= num_qubits) {
        throw InvalidArgument(std::string(role) + " qubit " + std::to_string(qubit) +
                              " out of range for " + std::to_string(num_qubits) + " qubits");
    }
}

}  // namespace

const char *gate_type_name(GateType type) {
    switch (type) {
    case GateType::RX:
        return "RX";
    case GateType::RY:
        return "RY";
    case GateType::RZ:
        return "RZ";
    case GateType::H:
        return "H";
    case GateType::CNOT:
        return "CNOT";
    }
    return "?";
}

GateType gate_type_from_name(const std::string &name) {
    for (GateType t : {GateType::RX, GateType::RY, GateType::RZ, GateType::H, GateType::CNOT}) {
        if (name == gate_type_name(t)) {
            return t;
        }
    }
    throw InvalidArgument("unknown gate type '" + name + "'");
}

bool is_rotation(GateType type) {
    return type == GateType::RX || type == GateType::RY || type == GateType::RZ;
}

std::array<Amplitude, 4> single_qubit_matrix(const Gate &gate) {
    const double c = std::cos(gate.angle / 2);
    const double s = std::sin(gate.angle / 2);
    switch (gate.type) {
    case GateType::RX:
        return {Amplitude{c, 0}, Amplitude{0, -s}, Amplitude{0, -s}, Amplitude{c, 0}};
    case GateType::RY:
        return {Amplitude{c, 0}, Amplitude{-s, 0}, Amplitude{s, 0}, Amplitude{c, 0}};
    case GateType::RZ:
        return {Amplitude{c, -s}, Amplitude{0, 0}, Amplitude{0, 0}, Amplitude{c, s}};
    case GateType::H: {
        const double r = 1.0 / std::sqrt(2.0);
        return {Amplitude{r, 0}, Amplitude{r, 0}, Amplitude{r, 0}, Amplitude{-r, 0}};
    }
    case GateType::CNOT:
        break;
    }
    throw InvalidArgument("CNOT has no single-qubit matrix");
}

std::string basis_label(std::size_t index, int num_qubits) {
    std::string label(static_cast<std::size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; ++q) {
        if (index & qubit_mask(num_qubits, q)) {
            label[static_cast<std::size_t>(q)] = '1';
        }
    }
    return label;
}

StateVector StateVector::zero(int num_qubits) {
    check_qubit_count(num_qubits);
    std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
    amps[0] = 1.0;
    return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(int num_qubits, std::vector<Amplitude> amplitudes) {
    check_qubit_count(num_qubits);
    if (amplitudes.size() != (std::size_t{1} << num_qubits)) {
        throw InvalidArgument("expected " + std::to_string(std::size_t{1} << num_qubits) +
                              " amplitudes, got " + std::to_string(amplitudes.size()));
    }
    double norm = 0.0;
    for (const auto &a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw InvalidArgument("amplitude is not finite");
        }
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw InvalidArgument("state is not normalized (norm^2 = " + std::to_string(norm) + ")");
    }
    return StateVector(num_qubits, std::move(amplitudes));
}

void StateVector::apply(const Gate &gate) {
    if (gate.type == GateType::CNOT) {
        check_qubit(gate.control, num_qubits_, "control");
        check_qubit(gate.target, num_qubits_, "target");
        if (gate.control == gate.target) {
            throw InvalidArgument("CNOT control and target must differ");
        }
        apply_cnot(gate.control, gate.target);
        return;
    }
    check_qubit(gate.target, num_qubits_, "target");
    if (is_rotation(gate.type) && !std::isfinite(gate.angle)) {
        throw InvalidArgument("rotation angle is not finite");
    }
    apply_single(gate);
}

void StateVector::apply_single(const Gate &gate) {
    const auto m = single_qubit_matrix(gate);
    const std::size_t stride = qubit_mask(num_qubits_, gate.target);
    const std::size_t dim = amps_.size();
    // Pair every index with the target bit clear against its partner.
    for (std::size_t block = 0; block < dim; block += 2 * stride) {
        for (std::size_t i = block; i < block + stride; ++i) {
            const Amplitude a0 = amps_[i];
            const Amplitude a1 = amps_[i + stride];
            amps_[i] = m[0] * a0 + m[1] * a1;
            amps_[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void StateVector::apply_cnot(int control, int target) {
    const std::size_t cmask = qubit_mask(num_qubits_, control);
    const std::size_t tmask = qubit_mask(num_qubits_, target);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps_[i], amps_[i | tmask]);
        }
    }
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

StateVector zero_state(int num_qubits) { return StateVector::zero(num_qubits); }

StateVector apply_gate(StateVector state, const Gate &gate) {
    state.apply(gate);
    return state;
}

std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> out;
    out.reserve(state.dimension());
    for (const auto &a : state.amplitudes()) {
        out.push_back(std::norm(a));
    }
    return out;
}

double marginal_probability(std::span<const double> probs, int num_qubits, int qubit, int value) {
    check_qubit(qubit, num_qubits, "measured");
    if (value != 0 && value != 1) {
        throw InvalidArgument("qubit value must be 0 or 1");
    }
    const std::size_t mask = qubit_mask(num_qubits, qubit);
    double total = 0.0;
    for (std::size_t b = 0; b < probs.size(); ++b) {
        if (((b & mask) != 0) == (value == 1)) {
            total += probs[b];
        }
    }
    return total;
}

}  // namespace qnn_lens

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

#include <cmath>
#include <utility>

#include "errors.hpp"

namespace qnn_lens {

const char *step_kind_name(StepKind kind) {
    switch (kind) {
    case StepKind::Encoding:
        return "encoding";
    case StepKind::RotationLayer:
        return "rotation";
    case StepKind::EntanglingLayer:
        return "entangling";
    }
    return "?";
}

StepKind step_kind_from_name(const std::string &name) {
    for (StepKind k : {StepKind::Encoding, StepKind::RotationLayer, StepKind::EntanglingLayer}) {
        if (name == step_kind_name(k)) {
            return k;
        }
    }
    throw InvalidArgument("unknown step kind '" + name + "'");
}

CircuitSpec CircuitSpec::build_default(int num_qubits, int feature_dim, int layers, int measured_qubit) {
    CircuitSpec spec;
    spec.num_qubits_ = num_qubits;
    spec.feature_dim_ = feature_dim;
    spec.layers_ = layers;
    spec.measured_qubit_ = measured_qubit;
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw InvalidArgument("num_qubits must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (feature_dim < 0 || feature_dim > num_qubits) {
        throw InvalidArgument("feature_dim " + std::to_string(feature_dim) + " exceeds num_qubits " +
                              std::to_string(num_qubits));
    }
    if (layers < 1) {
        throw InvalidArgument("layers must be >= 1");
    }

    Step encoding{StepKind::Encoding, {}};
    for (int k = 0; k < feature_dim; ++k) {
        encoding.gates.push_back({GateType::RY, k, -1, AngleSource::Feature, k});
    }
    spec.steps_.push_back(std::move(encoding));

    for (int layer = 0; layer < layers; ++layer) {
        Step rotation{StepKind::RotationLayer, {}};
        for (int q = 0; q < num_qubits; ++q) {
            rotation.gates.push_back({GateType::RY, q, -1, AngleSource::Parameter, layer * num_qubits + q});
        }
        spec.steps_.push_back(std::move(rotation));
        if (layer + 1 == layers) {
            break;
        }
        // A single qubit has no ring; the layer stays as an empty column.
        Step ring{StepKind::EntanglingLayer, {}};
        if (num_qubits > 1) {
            for (int q = 0; q < num_qubits; ++q) {
                ring.gates.push_back({GateType::CNOT, (q + 1) % num_qubits, q, AngleSource::None, -1});
            }
        }
        spec.steps_.push_back(std::move(ring));
    }
    spec.validate();
    return spec;
}

CircuitSpec CircuitSpec::from_parts(int num_qubits, int feature_dim, int layers, int measured_qubit,
                                    std::vector<Step> steps) {
    CircuitSpec spec;
    spec.num_qubits_ = num_qubits;
    spec.feature_dim_ = feature_dim;
    spec.layers_ = layers;
    spec.measured_qubit_ = measured_qubit;
    spec.steps_ = std::move(steps);
    spec.validate();
    return spec;
}

void CircuitSpec::validate() const {
    if (num_qubits_ < 1 || num_qubits_ > kMaxQubits) {
        throw InvalidArgument("num_qubits must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (feature_dim_ < 0 || feature_dim_ > num_qubits_) {
        throw InvalidArgument("feature_dim must be in [0, num_qubits]");
    }
    if (layers_ < 1) {
        throw InvalidArgument("layers must be >= 1");
    }
    if (measured_qubit_ < 0 || measured_qubit_ >= num_qubits_) {
        throw InvalidArgument("measured_qubit out of range");
    }
    if (steps_.empty() || steps_.front().kind != StepKind::Encoding) {
        throw InvalidArgument("circuit must start with an encoding step");
    }

    auto check_qubit = [&](int q) {
        if (q < 0 || q >= num_qubits_) {
            throw InvalidArgument("gate qubit " + std::to_string(q) + " out of range");
        }
    };

    int next_slot = 0;
    int rotation_layers = 0;
    for (std::size_t s = 0; s < steps_.size(); ++s) {
        const Step &step = steps_[s];
        if (s > 0 && step.kind == StepKind::Encoding) {
            throw InvalidArgument("only the first step may be an encoding step");
        }
        std::vector<int> per_qubit(static_cast<std::size_t>(num_qubits_), 0);
        for (const CircuitGate &g : step.gates) {
            check_qubit(g.target);
            switch (step.kind) {
            case StepKind::Encoding:
                if (g.source == AngleSource::Parameter) {
                    throw InvalidArgument("encoding step cannot carry parameter slots");
                }
                if (g.source == AngleSource::Feature &&
                    (!is_rotation(g.type) || g.index < 0 || g.index >= feature_dim_)) {
                    throw InvalidArgument("encoding gate references feature " + std::to_string(g.index));
                }
                if (g.type == GateType::CNOT) {
                    throw InvalidArgument("encoding step cannot contain CNOT");
                }
                break;
            case StepKind::RotationLayer:
                if (!is_rotation(g.type) || g.source != AngleSource::Parameter) {
                    throw InvalidArgument("rotation layer gates must be parameterized rotations");
                }
                if (g.index != next_slot) {
                    throw InvalidArgument("parameter slots must be contiguous in circuit order; expected theta" +
                                          std::to_string(next_slot) + ", got theta" + std::to_string(g.index));
                }
                ++next_slot;
                ++per_qubit[static_cast<std::size_t>(g.target)];
                break;
            case StepKind::EntanglingLayer:
                if (g.type != GateType::CNOT || g.source != AngleSource::None) {
                    throw InvalidArgument("entangling layer may only contain unparameterized CNOT gates");
                }
                check_qubit(g.control);
                if (g.control == g.target) {
                    throw InvalidArgument("CNOT control and target must differ");
                }
                break;
            }
        }
        if (step.kind == StepKind::RotationLayer) {
            for (int count : per_qubit) {
                if (count != 1) {
                    throw InvalidArgument("rotation layer must hold exactly one rotation per qubit");
                }
            }
            ++rotation_layers;
        }
    }
    if (rotation_layers != layers_ || next_slot != num_parameters()) {
        throw InvalidArgument("circuit declares " + std::to_string(layers_) + " layers but has " +
                              std::to_string(rotation_layers) + " rotation layers");
    }
}

CircuitSpec build_default_circuit(int num_qubits, int feature_dim, int layers) {
    return CircuitSpec::build_default(num_qubits, feature_dim, layers);
}

Gate bind_gate(const CircuitGate &gate, std::span<const double> datapoint, std::span<const double> params) {
    Gate g{gate.type, gate.target, gate.control, 0.0};
    switch (gate.source) {
    case AngleSource::Feature:
        g.angle = datapoint[static_cast<std::size_t>(gate.index)];
        break;
    case AngleSource::Parameter:
        g.angle = params[static_cast<std::size_t>(gate.index)];
        break;
    case AngleSource::None:
        break;
    }
    return g;
}

void apply_step(StateVector &state, const Step &step, std::span<const double> datapoint,
                std::span<const double> params) {
    for (const CircuitGate &g : step.gates) {
        state.apply(bind_gate(g, datapoint, params));
    }
}

namespace {

void check_datapoint(const CircuitSpec &spec, std::span<const double> datapoint) {
    if (datapoint.size() != static_cast<std::size_t>(spec.feature_dim())) {
        throw InvalidArgument("datapoint has " + std::to_string(datapoint.size()) + " features, circuit encodes " +
                              std::to_string(spec.feature_dim()));
    }
    for (double x : datapoint) {
        if (!std::isfinite(x) || x < -1.0 || x > 1.0) {
            throw InvalidArgument("feature value " + std::to_string(x) + " outside [-1, 1]");
        }
    }
}

void check_params(const CircuitSpec &spec, std::span<const double> params) {
    if (params.size() != static_cast<std::size_t>(spec.num_parameters())) {
        throw InvalidArgument("expected " + std::to_string(spec.num_parameters()) + " parameters, got " +
                              std::to_string(params.size()));
    }
    for (double t : params) {
        if (!std::isfinite(t)) {
            throw InvalidArgument("parameter is not finite");
        }
    }
}

}  // namespace

StateVector encode(const CircuitSpec &spec, std::span<const double> datapoint) {
    check_datapoint(spec, datapoint);
    StateVector state = StateVector::zero(spec.num_qubits());
    apply_step(state, spec.steps().front(), datapoint, {});
    return state;
}

StateVector run_circuit(const CircuitSpec &spec, std::span<const double> datapoint, std::span<const double> params) {
    check_datapoint(spec, datapoint);
    check_params(spec, params);
    StateVector state = StateVector::zero(spec.num_qubits());
    for (const Step &step : spec.steps()) {
        apply_step(state, step, datapoint, params);
    }
    return state;
}

std::vector<StateVector> run_with_trace(const CircuitSpec &spec, std::span<const double> datapoint,
                                        std::span<const double> params) {
    check_datapoint(spec, datapoint);
    check_params(spec, params);
    std::vector<StateVector> trace;
    trace.reserve(spec.steps().size() + 1);
    trace.push_back(StateVector::zero(spec.num_qubits()));
    for (const Step &step : spec.steps()) {
        StateVector next = trace.back();
        apply_step(next, step, datapoint, params);
        trace.push_back(std::move(next));
    }
    return trace;
}

}  // namespace qnn_lens

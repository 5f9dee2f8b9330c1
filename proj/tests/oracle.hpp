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

// Test-only reference implementations. Nothing here calls into the
// simulator's gate kernels: operators are built as dense Kronecker products
// and applied by plain matrix-vector multiplication.

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "state_vector.hpp"

namespace qnn_lens::oracle {

using Matrix = std::vector<std::vector<Amplitude>>;

inline Matrix identity(std::size_t dim) {
    Matrix m(dim, std::vector<Amplitude>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
        m[k][k] = 1.0;
    }
    return m;
}

inline Matrix kron(const Matrix &a, const Matrix &b) {
    const std::size_t ra = a.size(), rb = b.size();
    Matrix out(ra * rb, std::vector<Amplitude>(ra * rb));
    for (std::size_t i = 0; i < ra; ++i) {
        for (std::size_t j = 0; j < ra; ++j) {
            for (std::size_t k = 0; k < rb; ++k) {
                for (std::size_t l = 0; l < rb; ++l) {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    return out;
}

inline Matrix add(Matrix a, const Matrix &b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            a[i][j] += b[i][j];
        }
    }
    return a;
}

/// Textbook 2x2 matrices, written out independently of the simulator.
inline Matrix one_qubit(GateType type, double theta) {
    using namespace std::complex_literals;
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    switch (type) {
    case GateType::RX:
        return {{c, -1i * s}, {-1i * s, c}};
    case GateType::RY:
        return {{c, -s}, {s, c}};
    case GateType::RZ:
        return {{std::exp(-0.5i * theta), 0.0}, {0.0, std::exp(0.5i * theta)}};
    case GateType::H: {
        const double r = 1.0 / std::sqrt(2.0);
        return {{r, r}, {r, -r}};
    }
    default:
        return identity(2);
    }
}

/// Tensor product over qubits 0..n-1, qubit 0 leftmost.
inline Matrix embed(const std::vector<Matrix> &factors) {
    Matrix out = factors[0];
    for (std::size_t q = 1; q < factors.size(); ++q) {
        out = kron(out, factors[q]);
    }
    return out;
}

inline Matrix dense_operator(const Gate &gate, int num_qubits) {
    const auto n = static_cast<std::size_t>(num_qubits);
    if (gate.type != GateType::CNOT) {
        std::vector<Matrix> f(n, identity(2));
        f[static_cast<std::size_t>(gate.target)] = one_qubit(gate.type, gate.angle);
        return embed(f);
    }
    // |0><0| (x) I + |1><1| (x) X on (control, target).
    const Matrix p0{{1.0, 0.0}, {0.0, 0.0}};
    const Matrix p1{{0.0, 0.0}, {0.0, 1.0}};
    const Matrix x{{0.0, 1.0}, {1.0, 0.0}};
    std::vector<Matrix> keep(n, identity(2)), flip(n, identity(2));
    keep[static_cast<std::size_t>(gate.control)] = p0;
    flip[static_cast<std::size_t>(gate.control)] = p1;
    flip[static_cast<std::size_t>(gate.target)] = x;
    return add(embed(keep), embed(flip));
}

inline std::vector<Amplitude> multiply(const Matrix &m, const std::vector<Amplitude> &v) {
    std::vector<Amplitude> out(v.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            out[i] += m[i][j] * v[j];
        }
    }
    return out;
}

/// Sum of |amp_b|^2 over indices whose bit for `qubit` equals `value`,
/// reading bits off the basis label.
inline double brute_marginal(const std::vector<double> &probs, int num_qubits, int qubit, int value) {
    double total = 0.0;
    for (std::size_t b = 0; b < probs.size(); ++b) {
        if (basis_label(b, num_qubits)[static_cast<std::size_t>(qubit)] == static_cast<char>('0' + value)) {
            total += probs[b];
        }
    }
    return total;
}

inline Gate random_gate(int num_qubits, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> angle(-2 * M_PI, 2 * M_PI);
    std::uniform_int_distribution<int> qubit(0, num_qubits - 1);
    std::uniform_int_distribution<int> kind(0, num_qubits > 1 ? 4 : 3);
    const int target = qubit(rng);
    switch (kind(rng)) {
    case 0:
        return Gate::rx(target, angle(rng));
    case 1:
        return Gate::ry(target, angle(rng));
    case 2:
        return Gate::rz(target, angle(rng));
    case 3:
        return Gate::h(target);
    default: {
        int control = qubit(rng);
        while (control == target) {
            control = qubit(rng);
        }
        return Gate::cnot(control, target);
    }
    }
}

/// |0...0> followed by `depth` random gates.
inline StateVector random_state(int num_qubits, int depth, std::mt19937_64 &rng) {
    StateVector s = StateVector::zero(num_qubits);
    for (int k = 0; k < depth; ++k) {
        s.apply(random_gate(num_qubits, rng));
    }
    return s;
}

}  // namespace qnn_lens::oracle

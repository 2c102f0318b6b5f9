// Copyright 2026 The qconv Authors
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

#include "qconv/states.hpp"

#include <array>
#include <cmath>

#include "qconv/circuits.hpp"
#include "qconv/errors.hpp"

namespace qconv {

namespace {

StateVector two_qubit(int a, int b, double sign) {
    CVector v = CVector::Zero(4);
    v[a] = 1.0;
    v[b] = sign;
    return StateVector::normalized({2, 2}, std::move(v));
}

StateVector qubits(std::array<int, 3> bits) {
    const std::array<int, 3> dims{2, 2, 2};
    return basis_state(dims, bits);
}

}  // namespace

StateVector bell_psi_plus() { return two_qubit(0, 3, 1.0); }
StateVector bell_psi_minus() { return two_qubit(0, 3, -1.0); }
StateVector bell_phi_plus() { return two_qubit(1, 2, 1.0); }
StateVector bell_phi_minus() { return two_qubit(1, 2, -1.0); }

StateVector ket_plus() { return StateVector::normalized({2}, CVector::Ones(2)); }

StateVector ket_minus() {
    CVector v(2);
    v << 1.0, -1.0;
    return StateVector::normalized({2}, std::move(v));
}

StateVector brown_state_reference() {
    const CVector sum = tensor(qubits({0, 0, 1}), bell_phi_minus()).amplitudes() +
                        tensor(qubits({0, 1, 0}), bell_psi_minus()).amplitudes() +
                        tensor(qubits({1, 0, 0}), bell_phi_plus()).amplitudes() +
                        tensor(qubits({1, 1, 1}), bell_psi_plus()).amplitudes();
    return StateVector({2, 2, 2, 2, 2}, 0.5 * sum);
}

const StateVector &brown_state() {
    static const StateVector state = brown_family_member(0);
    return state;
}

StateVector brown_family_member(int input_label) {
    if (input_label < 0 || input_label > 31) {
        throw DomainError("family label must be 0..31");
    }
    const std::array<int, 5> dims{2, 2, 2, 2, 2};
    std::array<int, 5> digits{};
    for (int k = 0; k < 5; ++k) {
        digits[static_cast<std::size_t>(k)] = (input_label >> (4 - k)) & 1;
    }
    return run(build_generation_circuit(), basis_state(dims, digits));
}

}  // namespace qconv

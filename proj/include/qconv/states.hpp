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

#pragma once

#include "qconv/statevec.hpp"

namespace qconv {

// Two-qubit Bell states in the naming used for the Brown state:
// psi+- = (|00> +- |11>)/sqrt2, phi+- = (|01> +- |10>)/sqrt2.
StateVector bell_psi_plus();
StateVector bell_psi_minus();
StateVector bell_phi_plus();
StateVector bell_phi_minus();

StateVector ket_plus();   // (|0> + |1>)/sqrt2
StateVector ket_minus();  // (|0> - |1>)/sqrt2

/// 1/2 (|001>|phi-> + |010>|psi-> + |100>|phi+> + |111>|psi+>), assembled
/// term by term from the Bell states; independent of any circuit.
StateVector brown_state_reference();

/// Output of the generation circuit on |00000>.
const StateVector &brown_state();

/// Generation circuit applied to the computational input |b1..b5>.
StateVector brown_family_member(int input_label);

}  // namespace qconv

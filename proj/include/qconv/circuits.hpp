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

#include <string>
#include <string_view>
#include <vector>

#include "qconv/statevec.hpp"

namespace qconv {

enum class GateKind { H, X, Y, Z, CNOT, CZ };

std::string_view mnemonic(GateKind kind);
int arity(GateKind kind);
/// 2x2 or 4x4 matrix; two-qubit matrices are ordered (control, target).
const CMatrix &gate_matrix(GateKind kind);

/// One gate on 1-based qubit indices; two-qubit kinds list (control, target).
struct Gate {
    GateKind kind;
    std::vector<int> qubits;

    Gate(GateKind kind, std::vector<int> qubits);

    friend bool operator==(const Gate &, const Gate &) = default;
};

class Circuit {
  public:
    explicit Circuit(int n_qubits, std::vector<Gate> gates = {});

    int n_qubits() const noexcept { return n_qubits_; }
    const std::vector<Gate> &gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }

    Circuit &append(Gate gate);

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    int n_qubits_;
    std::vector<Gate> gates_;
};

/// Prepares the five-qubit Brown state from |00000>; other computational
/// inputs give the 31 orthogonal partners.
Circuit build_generation_circuit();

/// Ten-qubit discrimination circuit: system qubits 1-5, ancillas 6-10 which
/// the caller initializes to |0>. Gates are read column by column from the
/// published diagram, including the X corrections on ancillas 7, 9, 10.
Circuit build_ndd_circuit();

/// Reverses gate order; every supported kind is self-inverse.
Circuit invert(const Circuit &c);

/// Applies the gates in order. Circuit qubit q acts on subsystem q of `input`,
/// which must be a qubit.
StateVector run(const Circuit &c, const StateVector &input);

/// One gate per line: mnemonic followed by 1-based indices. `#` starts a
/// comment, blank lines are ignored, and an optional `QUBITS n` line widens
/// the register beyond the largest index used.
Circuit parse_circuit(std::string_view text);
std::string serialize_circuit(const Circuit &c);

Circuit load_circuit_file(const std::string &path);

}  // namespace qconv

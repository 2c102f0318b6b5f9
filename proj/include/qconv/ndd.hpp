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

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qconv/circuits.hpp"
#include "qconv/densecode.hpp"
#include "qconv/statevec.hpp"

namespace qconv {

struct DiscriminationResult {
    /// Decoded message. For the reference decoder this is the smallest of `candidates`.
    Message message;
    /// Every message whose encoded state produces this readout.
    std::vector<Message> candidates;
    /// Raw ancilla bits, ancilla 6 first.
    Message readout;
    double outcome_probability = 0.0;
    /// Renormalized state of the system qubits (plus any trailing non-ancilla
    /// subsystems such as an eavesdropper register) after the ancillas are measured.
    StateVector post_state;
};

/// Measures the five system qubits non-destructively with `circuit` (10
/// qubits, ancillas 6-10 start in |0>) and reads ancilla bit k as m_k.
/// `state` must start with five qubits; extra trailing subsystems ride along.
DiscriminationResult discriminate_literal(const StateVector &state, Rng &rng,
                                          const Circuit &circuit = build_ndd_circuit());

/// Uncompute the generation circuit, copy each qubit to its ancilla, recompute.
Circuit build_reference_ndd_circuit();

/// Runs the reference circuit and translates the readout through the message table.
DiscriminationResult discriminate_reference(const StateVector &state, Rng &rng);

struct EquivalenceCase {
    Message message;
    Message literal;
    Message literal_readout;
    double literal_probability = 0.0;
    double literal_input_fidelity = 0.0;
    Message reference;
    double reference_probability = 0.0;
    double branch_fidelity = 0.0;
    bool equivalent = false;
    std::string detail;
};

struct EquivalenceReport {
    std::vector<EquivalenceCase> cases;
    int equivalent = 0;
    int mismatch = 0;
    /// Literal readouts split the 32 inputs into exactly the same classes as the reference.
    bool partition_agrees = false;
    /// Every literal outcome had probability 1 and left the input unchanged.
    bool literal_deterministic = false;
    bool literal_nondestructive = false;
};

/// Compares the literal circuit against the reference on all 32 encoded inputs.
EquivalenceReport equivalence_report(const Circuit &literal = build_ndd_circuit(), std::uint64_t seed = 0);

nlohmann::ordered_json to_json(const EquivalenceReport &report);

}  // namespace qconv

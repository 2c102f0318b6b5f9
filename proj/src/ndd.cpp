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

#include "qconv/ndd.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "qconv/errors.hpp"
#include "qconv/states.hpp"

namespace qconv {

namespace {

constexpr int kSystemQubits = 5;
constexpr std::array<int, 5> kAncillas{6, 7, 8, 9, 10};

struct RawDiscrimination {
    Message readout;
    double probability;
    StateVector post_state;
};

RawDiscrimination run_discrimination(const Circuit &circuit, const StateVector &state, Rng &rng) {
    if (circuit.n_qubits() != 2 * kSystemQubits) {
        throw DomainError("discrimination circuit must act on 10 qubits");
    }
    if (state.num_subsystems() < kSystemQubits) {
        throw DomainError("discrimination needs a state with at least five qubits");
    }
    const int extras = state.num_subsystems() - kSystemQubits;
    const std::array<int, 5> zeros{};
    const std::array<int, 5> qubit_dims{2, 2, 2, 2, 2};
    const StateVector joined = tensor(state, basis_state(qubit_dims, zeros));

    // Bring the ancillas to positions 6-10 and push any extra subsystems last.
    std::vector<int> order;
    for (int k = 1; k <= kSystemQubits; ++k) {
        order.push_back(k);
    }
    for (int a = 1; a <= kSystemQubits; ++a) {
        order.push_back(kSystemQubits + extras + a);
    }
    for (int e = 1; e <= extras; ++e) {
        order.push_back(kSystemQubits + e);
    }
    const StateVector evolved = run(circuit, permute(joined, order));

    static const MeasurementBasis ancilla_basis = MeasurementBasis::computational({2, 2, 2, 2, 2});
    const MeasurementOutcome outcome = measure_in_basis(evolved, ancilla_basis, kAncillas, rng);
    const PartialState rest = partial_inner(ancilla_basis.state(outcome.index), evolved, kAncillas);
    return {Message(static_cast<unsigned>(outcome.index)), outcome.probability,
            StateVector::normalized(rest.dims, rest.amplitudes)};
}

}  // namespace

DiscriminationResult discriminate_literal(const StateVector &state, Rng &rng, const Circuit &circuit) {
    RawDiscrimination raw = run_discrimination(circuit, state, rng);
    return {raw.readout, {raw.readout}, raw.readout, raw.probability, std::move(raw.post_state)};
}

Circuit build_reference_ndd_circuit() {
    const Circuit gen = build_generation_circuit();
    const Circuit undo = invert(gen);
    Circuit c(2 * kSystemQubits);
    for (const auto &g : undo.gates()) {
        c.append(g);
    }
    for (int k = 1; k <= kSystemQubits; ++k) {
        c.append(Gate(GateKind::CNOT, {k, k + kSystemQubits}));
    }
    for (const auto &g : gen.gates()) {
        c.append(g);
    }
    return c;
}

DiscriminationResult discriminate_reference(const StateVector &state, Rng &rng) {
    static const Circuit circuit = build_reference_ndd_circuit();
    RawDiscrimination raw = run_discrimination(circuit, state, rng);
    std::vector<Message> candidates = message_basis_table().messages_for(raw.readout);
    if (candidates.empty()) {
        // A readout no encoded state produces; only reachable for non-encoded inputs.
        candidates.push_back(raw.readout);
    }
    const Message decoded = *std::min_element(candidates.begin(), candidates.end());
    return {decoded, std::move(candidates), raw.readout, raw.probability, std::move(raw.post_state)};
}

EquivalenceReport equivalence_report(const Circuit &literal, std::uint64_t seed) {
    EquivalenceReport report;
    report.literal_deterministic = true;
    report.literal_nondestructive = true;
    std::map<unsigned, unsigned> literal_to_reference;
    std::map<unsigned, unsigned> reference_to_literal;
    bool partition = true;

    for (Message m : Message::all()) {
        const StateVector input = encode(brown_state(), m);
        Rng lit_rng(derive_seed(seed, 2 * m.value()));
        Rng ref_rng(derive_seed(seed, 2 * m.value() + 1));
        const auto lit = discriminate_literal(input, lit_rng, literal);
        const auto ref = discriminate_reference(input, ref_rng);

        EquivalenceCase c;
        c.message = m;
        c.literal = lit.message;
        c.literal_readout = lit.readout;
        c.literal_probability = lit.outcome_probability;
        c.literal_input_fidelity = fidelity(lit.post_state, input);
        c.reference = ref.message;
        c.reference_probability = ref.outcome_probability;
        c.branch_fidelity = fidelity(lit.post_state, ref.post_state);

        std::vector<std::string> issues;
        if (c.literal != c.reference) {
            issues.push_back("literal decodes " + c.literal.str() + ", reference decodes " + c.reference.str());
        }
        if (c.literal_probability < 1.0 - kAccumTol) {
            issues.push_back("literal outcome probability " + std::to_string(c.literal_probability));
            report.literal_deterministic = false;
        }
        if (c.literal_input_fidelity < 1.0 - kAccumTol) {
            issues.push_back("literal post-state fidelity " + std::to_string(c.literal_input_fidelity));
            report.literal_nondestructive = false;
        }
        if (c.branch_fidelity < 1.0 - kAccumTol) {
            issues.push_back("branch fidelity " + std::to_string(c.branch_fidelity));
        }
        c.equivalent = issues.empty();
        for (std::size_t i = 0; i < issues.size(); ++i) {
            c.detail += (i ? "; " : "") + issues[i];
        }

        const unsigned l = lit.readout.value();
        const unsigned r = ref.readout.value();
        if (auto [it, fresh] = literal_to_reference.emplace(l, r); !fresh && it->second != r) {
            partition = false;
        }
        if (auto [it, fresh] = reference_to_literal.emplace(r, l); !fresh && it->second != l) {
            partition = false;
        }

        (c.equivalent ? report.equivalent : report.mismatch) += 1;
        report.cases.push_back(std::move(c));
    }
    report.partition_agrees = partition && report.literal_deterministic;
    return report;
}

nlohmann::ordered_json to_json(const EquivalenceReport &report) {
    nlohmann::ordered_json cases = nlohmann::ordered_json::array();
    for (const auto &c : report.cases) {
        cases.push_back({
            {"message", c.message.str()},
            {"literal", c.literal.str()},
            {"reference", c.reference.str()},
            {"branch_fidelity", c.branch_fidelity},
            {"verdict", c.equivalent ? "EQUIVALENT" : "MISMATCH"},
            {"literal_probability", c.literal_probability},
            {"literal_input_fidelity", c.literal_input_fidelity},
            {"reference_probability", c.reference_probability},
            {"detail", c.detail},
        });
    }
    return {
        {"schema_version", 1},
        {"cases", std::move(cases)},
        {"summary",
         {
             {"equivalent", report.equivalent},
             {"mismatch", report.mismatch},
             {"partition_agrees", report.partition_agrees},
             {"literal_deterministic", report.literal_deterministic},
             {"literal_nondestructive", report.literal_nondestructive},
         }},
    };
}

}  // namespace qconv

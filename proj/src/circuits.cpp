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

#include "qconv/circuits.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qconv/errors.hpp"

namespace qconv {

namespace {

CMatrix make_matrix(GateKind kind) {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    CMatrix m;
    switch (kind) {
    case GateKind::H:
        m.resize(2, 2);
        m << r, r, r, -r;
        break;
    case GateKind::X:
        m.resize(2, 2);
        m << 0, 1, 1, 0;
        break;
    case GateKind::Y:
        m.resize(2, 2);
        m << 0, -i, i, 0;
        break;
    case GateKind::Z:
        m.resize(2, 2);
        m << 1, 0, 0, -1;
        break;
    case GateKind::CNOT:
        m = CMatrix::Identity(4, 4);
        m(2, 2) = 0;
        m(3, 3) = 0;
        m(2, 3) = 1;
        m(3, 2) = 1;
        break;
    case GateKind::CZ:
        m = CMatrix::Identity(4, 4);
        m(3, 3) = -1;
        break;
    }
    return m;
}

}  // namespace

std::string_view mnemonic(GateKind kind) {
    switch (kind) {
    case GateKind::H:
        return "H";
    case GateKind::X:
        return "X";
    case GateKind::Y:
        return "Y";
    case GateKind::Z:
        return "Z";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::CZ:
        return "CZ";
    }
    return "?";
}

int arity(GateKind kind) {
    return kind == GateKind::CNOT || kind == GateKind::CZ ? 2 : 1;
}

const CMatrix &gate_matrix(GateKind kind) {
    static const CMatrix table[] = {make_matrix(GateKind::H),    make_matrix(GateKind::X),
                                    make_matrix(GateKind::Y),    make_matrix(GateKind::Z),
                                    make_matrix(GateKind::CNOT), make_matrix(GateKind::CZ)};
    return table[static_cast<int>(kind)];
}

Gate::Gate(GateKind kind_, std::vector<int> qubits_) : kind(kind_), qubits(std::move(qubits_)) {
    if (static_cast<int>(qubits.size()) != arity(kind)) {
        throw DomainError(std::string(mnemonic(kind)) + " takes " + std::to_string(arity(kind)) + " qubit(s)");
    }
    for (int q : qubits) {
        if (q < 1) {
            throw DomainError("qubit indices are 1-based");
        }
    }
    if (qubits.size() == 2 && qubits[0] == qubits[1]) {
        throw DomainError("two-qubit gate needs distinct qubits");
    }
}

Circuit::Circuit(int n_qubits, std::vector<Gate> gates) : n_qubits_(n_qubits) {
    if (n_qubits < 1) {
        throw DomainError("circuit needs at least one qubit");
    }
    for (auto &g : gates) {
        append(std::move(g));
    }
}

Circuit &Circuit::append(Gate gate) {
    for (int q : gate.qubits) {
        if (q > n_qubits_) {
            throw DomainError("gate addresses qubit " + std::to_string(q) + " beyond register of " +
                              std::to_string(n_qubits_));
        }
    }
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit build_generation_circuit() {
    using K = GateKind;
    return Circuit(5, {
                          {K::H, {1}},
                          {K::X, {2}},
                          {K::H, {3}},
                          {K::X, {4}},
                          {K::X, {5}},
                          {K::CNOT, {1, 2}},
                          {K::CNOT, {3, 2}},
                          {K::CNOT, {1, 4}},
                          {K::CNOT, {2, 5}},
                          {K::H, {4}},
                          {K::CNOT, {4, 5}},
                      });
}

Circuit build_ndd_circuit() {
    using K = GateKind;
    // Diagram columns left to right. Where one column carries two disjoint
    // gates they are listed in row order. Columns 9-10 draw the target on the
    // system wire and the control on ancilla 7; that is kept as drawn.
    return Circuit(10, {
                           {K::CNOT, {4, 5}},   // col 1
                           {K::H, {4}},         // col 2
                           {K::CNOT, {2, 5}},   // col 3
                           {K::CNOT, {1, 4}},   // col 4
                           {K::CNOT, {5, 10}},  // col 4
                           {K::CNOT, {3, 2}},   // col 5
                           {K::H, {3}},         // col 6
                           {K::CNOT, {4, 9}},   // col 6
                           {K::CNOT, {1, 6}},   // col 7
                           {K::CNOT, {2, 6}},   // col 8
                           {K::CNOT, {7, 1}},   // col 9
                           {K::CNOT, {7, 2}},   // col 10
                           {K::CNOT, {3, 8}},   // col 11
                           {K::H, {3}},         // col 12
                           {K::CNOT, {3, 2}},   // col 13
                           {K::CNOT, {1, 4}},   // col 14
                           {K::CNOT, {2, 5}},   // col 15
                           {K::H, {4}},         // col 16
                           {K::X, {7}},         // col 16
                           {K::X, {9}},         // col 16
                           {K::X, {10}},        // col 16
                           {K::CNOT, {4, 5}},   // col 17
                       });
}

Circuit invert(const Circuit &c) {
    std::vector<Gate> gates(c.gates().rbegin(), c.gates().rend());
    return Circuit(c.n_qubits(), std::move(gates));
}

StateVector run(const Circuit &c, const StateVector &input) {
    if (input.num_subsystems() < c.n_qubits()) {
        throw DomainError("input has fewer subsystems than the circuit has qubits");
    }
    for (int q = 1; q <= c.n_qubits(); ++q) {
        if (input.dim(q) != 2) {
            throw DomainError("circuit qubit " + std::to_string(q) + " maps to a non-qubit subsystem");
        }
    }
    StateVector state = input;
    for (const auto &g : c.gates()) {
        state = apply_unitary(state, gate_matrix(g.kind), g.qubits);
    }
    return state;
}

Circuit parse_circuit(std::string_view text) {
    std::vector<std::pair<int, Gate>> parsed;
    int declared_qubits = 0;
    int max_index = 0;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream fields(raw);
        std::string word;
        if (!(fields >> word)) {
            continue;
        }
        std::vector<int> indices;
        std::string token;
        while (fields >> token) {
            std::size_t used = 0;
            int value = 0;
            try {
                value = std::stoi(token, &used);
            } catch (const std::exception &) {
                throw ParseError(line_no, "non-integer index '" + token + "'");
            }
            if (used != token.size()) {
                throw ParseError(line_no, "non-integer index '" + token + "'");
            }
            if (value < 1) {
                throw ParseError(line_no, "qubit indices are 1-based, got " + token);
            }
            indices.push_back(value);
        }

        if (word == "QUBITS") {
            if (indices.size() != 1) {
                throw ParseError(line_no, "QUBITS takes one count");
            }
            declared_qubits = indices[0];
            continue;
        }
        GateKind kind{};
        bool known = false;
        for (GateKind k : {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::CNOT, GateKind::CZ}) {
            if (word == mnemonic(k)) {
                kind = k;
                known = true;
            }
        }
        if (!known) {
            throw ParseError(line_no, "unknown mnemonic '" + word + "'");
        }
        if (static_cast<int>(indices.size()) != arity(kind)) {
            throw ParseError(line_no, word + " expects " + std::to_string(arity(kind)) + " index(es), got " +
                                          std::to_string(indices.size()));
        }
        try {
            parsed.emplace_back(line_no, Gate(kind, indices));
        } catch (const DomainError &e) {
            throw ParseError(line_no, e.what());
        }
        for (int q : indices) {
            max_index = std::max(max_index, q);
        }
    }
    if (declared_qubits != 0 && declared_qubits < max_index) {
        throw ParseError(line_no, "QUBITS " + std::to_string(declared_qubits) + " is smaller than index " +
                                      std::to_string(max_index));
    }
    const int n = std::max({declared_qubits, max_index, 1});
    Circuit c(n);
    for (auto &[line, gate] : parsed) {
        c.append(std::move(gate));
    }
    return c;
}

std::string serialize_circuit(const Circuit &c) {
    std::ostringstream out;
    int max_index = 0;
    for (const auto &g : c.gates()) {
        for (int q : g.qubits) {
            max_index = std::max(max_index, q);
        }
    }
    if (c.n_qubits() > max_index) {
        out << "QUBITS " << c.n_qubits() << '\n';
    }
    for (const auto &g : c.gates()) {
        out << mnemonic(g.kind);
        for (int q : g.qubits) {
            out << ' ' << q;
        }
        out << '\n';
    }
    return out.str();
}

Circuit load_circuit_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open circuit file " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

}  // namespace qconv

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

#include <cmath>
#include <fstream>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "qconv/circuits.hpp"
#include "qconv/errors.hpp"
#include "qconv/random.hpp"
#include "qconv/states.hpp"

using namespace qconv;

namespace {

CMatrix cnot_oracle() {
    // control is the first (more significant) qubit
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
}

// Full-register operator of a circuit, gate by gate, through Kronecker embedding.
CMatrix circuit_operator(const Circuit &c) {
    const std::vector<int> dims(static_cast<std::size_t>(c.n_qubits()), 2);
    const auto n = static_cast<Eigen::Index>(1) << c.n_qubits();
    CMatrix total = CMatrix::Identity(n, n);
    for (const auto &g : c.gates()) {
        CMatrix u;
        switch (g.kind) {
        case GateKind::H: u = oracle::pauli('H'); break;
        case GateKind::X: u = oracle::pauli('X'); break;
        case GateKind::Y: u = oracle::pauli('Y'); break;
        case GateKind::Z: u = oracle::pauli('Z'); break;
        case GateKind::CNOT: u = cnot_oracle(); break;
        case GateKind::CZ: u = CMatrix::Identity(4, 4); u(3, 3) = -1.0; break;
        }
        total = oracle::embed(u, g.qubits, dims) * total;
    }
    return total;
}

}  // namespace

TEST_CASE("gate matrices") {
    for (GateKind k : {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::CNOT, GateKind::CZ}) {
        CAPTURE(mnemonic(k));
        const CMatrix &m = gate_matrix(k);
        CHECK(m.rows() == (1 << arity(k)));
        CHECK(is_unitary(m));
        CHECK((m * m - CMatrix::Identity(m.rows(), m.rows())).norm() < 1e-14);
    }
    CHECK((gate_matrix(GateKind::CNOT) - cnot_oracle()).norm() == 0.0);
    CHECK((gate_matrix(GateKind::H) - oracle::pauli('H')).norm() < 1e-15);
}

TEST_CASE("gate and circuit validation") {
    CHECK_THROWS_AS(Gate(GateKind::CNOT, {1}), DomainError);
    CHECK_THROWS_AS(Gate(GateKind::CNOT, {2, 2}), DomainError);
    CHECK_THROWS_AS(Gate(GateKind::H, {0}), DomainError);
    CHECK_THROWS_AS(Circuit(0), DomainError);
    Circuit c(2);
    CHECK_THROWS_AS(c.append(Gate(GateKind::X, {3})), DomainError);
    c.append(Gate(GateKind::CNOT, {2, 1}));
    CHECK(c.size() == 1);
}

TEST_CASE("generation circuit on |00000> reproduces the term-by-term reference") {
    const Circuit gen = build_generation_circuit();
    CHECK(gen.n_qubits() == 5);
    CHECK(gen.size() == 11);
    const std::vector<int> dims(5, 2);
    const std::vector<int> zeros(5, 0);
    const StateVector out = run(gen, basis_state(dims, zeros));
    CHECK(oracle::fid(out.amplitudes(), oracle::brown()) > 1 - 1e-12);

    int nonzero = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double mag = std::abs(out[i]);
        if (mag > kExactTol) {
            ++nonzero;
            CHECK(mag == doctest::Approx(1 / (2 * std::sqrt(2.0))).epsilon(1e-12));
        }
    }
    CHECK(nonzero == 8);
}

TEST_CASE("run agrees with the full circuit operator") {
    Rng rng(8);
    for (const Circuit &c : {build_generation_circuit(), build_ndd_circuit()}) {
        const CMatrix op = circuit_operator(c);
        CHECK(is_unitary(op, 1e-10));
        const std::vector<int> dims(static_cast<std::size_t>(c.n_qubits()), 2);
        CVector v(op.rows());
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(standard_normal(rng), standard_normal(rng));
        const StateVector psi = StateVector::normalized(dims, v);
        const StateVector got = run(c, psi);
        CHECK((got.amplitudes() - op * psi.amplitudes()).norm() < 1e-11);
    }
}

TEST_CASE("invert undoes a circuit") {
    const Circuit gen = build_generation_circuit();
    CHECK(invert(invert(gen)) == gen);
    const std::vector<int> dims(5, 2);
    for (int b = 0; b < 32; ++b) {
        std::vector<int> digits(5);
        for (int k = 0; k < 5; ++k) digits[static_cast<std::size_t>(k)] = (b >> (4 - k)) & 1;
        const StateVector in = basis_state(dims, digits);
        CHECK(fidelity(run(invert(gen), run(gen, in)), in) > 1 - 1e-12);
    }
}

TEST_CASE("discrimination circuit shape") {
    const Circuit ndd = build_ndd_circuit();
    CHECK(ndd.n_qubits() == 10);
    CHECK(ndd.size() == 22);
    CHECK(ndd.gates().front() == Gate(GateKind::CNOT, {4, 5}));
    CHECK(ndd.gates().back() == Gate(GateKind::CNOT, {4, 5}));
}

TEST_CASE("parse and serialize round trip") {
    for (const Circuit &c : {build_generation_circuit(), build_ndd_circuit(), Circuit(4, {Gate(GateKind::Z, {1})})}) {
        CHECK(parse_circuit(serialize_circuit(c)) == c);
    }
    const Circuit parsed = parse_circuit("# bell pair\nQUBITS 3\n\nH 1   # first\nCNOT 1 2\nCZ 2 3\nY 3\n");
    CHECK(parsed.n_qubits() == 3);
    CHECK(parsed.size() == 4);
    CHECK(parsed.gates()[1] == Gate(GateKind::CNOT, {1, 2}));
}

TEST_CASE("parse errors carry the line number") {
    auto line_of = [](const char *text) {
        try {
            parse_circuit(text);
        } catch (const ParseError &e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("H 1\nFOO 2\n") == 2);
    CHECK(line_of("H 1\n\nCNOT 1\n") == 3);
    CHECK(line_of("X a\n") == 1);
    CHECK(line_of("X 1.5\n") == 1);
    CHECK(line_of("CNOT 2 2\n") == 1);
    CHECK(line_of("X 0\n") == 1);
    CHECK(line_of("QUBITS 2\nX 3\n") == 2);
    CHECK(line_of("H 1\nX 2\n") == -1);
}

TEST_CASE("circuit files") {
    const Circuit c = load_circuit_file(QCONV_DATA_DIR "/ndd_missing_h.txt");
    CHECK(c.size() == 21);
    CHECK(c.n_qubits() == 10);
    CHECK_THROWS_AS(load_circuit_file(QCONV_DATA_DIR "/bad_gate.txt"), ParseError);
    CHECK_THROWS_AS(load_circuit_file(QCONV_DATA_DIR "/does_not_exist.txt"), ValidationError);
}

TEST_CASE("states helpers") {
    CHECK(oracle::fid(bell_psi_plus().amplitudes(), oracle::bell("psi+")) > 1 - 1e-12);
    CHECK(oracle::fid(bell_phi_minus().amplitudes(), oracle::bell("phi-")) > 1 - 1e-12);
    CHECK((bell_phi_minus().amplitudes() - oracle::bell("phi-")).norm() < 1e-12);
    CHECK((bell_psi_minus().amplitudes() - oracle::bell("psi-")).norm() < 1e-12);
    CHECK((brown_state_reference().amplitudes() - oracle::brown()).norm() < 1e-12);
    CHECK(fidelity(brown_state(), brown_state_reference()) > 1 - 1e-12);
    CHECK(fidelity(brown_family_member(0), brown_state()) > 1 - 1e-12);
    CHECK(std::abs(inner_product(ket_plus(), ket_minus())) < 1e-15);
    CHECK_THROWS(brown_family_member(32));
}

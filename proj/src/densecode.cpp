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

#include "qconv/densecode.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qconv/circuits.hpp"
#include "qconv/errors.hpp"
#include "qconv/states.hpp"

namespace qconv {

Message::Message(unsigned value) {
    if (value >= static_cast<unsigned>(kCount)) {
        throw DomainError("message value " + std::to_string(value) + " does not fit in 5 bits");
    }
    value_ = static_cast<std::uint8_t>(value);
}

Message Message::parse(std::string_view bits) {
    if (bits.size() != static_cast<std::size_t>(kBits)) {
        throw DomainError("message must have exactly 5 bits, got '" + std::string(bits) + "'");
    }
    unsigned v = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw DomainError("message bits must be 0 or 1, got '" + std::string(bits) + "'");
        }
        v = (v << 1) | static_cast<unsigned>(c - '0');
    }
    return Message(v);
}

std::array<Message, Message::kCount> Message::all() {
    std::array<Message, kCount> out;
    for (unsigned v = 0; v < static_cast<unsigned>(kCount); ++v) {
        out[v] = Message(v);
    }
    return out;
}

int Message::bit(int k) const {
    if (k < 1 || k > kBits) {
        throw DomainError("message bit index must be 1..5");
    }
    return (value_ >> (kBits - k)) & 1;
}

std::string Message::str() const {
    std::string s(kBits, '0');
    for (int k = 1; k <= kBits; ++k) {
        s[static_cast<std::size_t>(k - 1)] = bit(k) ? '1' : '0';
    }
    return s;
}

namespace {

struct PauliProduct {
    Pauli result;
    int phase_power;
};

// Single-qubit a*b: XY = iZ, YZ = iX, ZX = iY and their reverses with -i.
PauliProduct multiply(Pauli a, Pauli b) {
    if (a == Pauli::I) {
        return {b, 0};
    }
    if (b == Pauli::I) {
        return {a, 0};
    }
    if (a == b) {
        return {Pauli::I, 0};
    }
    const auto idx = [](Pauli p) { return static_cast<int>(p) - 1; };  // X=0, Y=1, Z=2
    const int third = 3 - idx(a) - idx(b);
    const bool cyclic = (idx(b) - idx(a) + 3) % 3 == 1;
    return {static_cast<Pauli>(third + 1), cyclic ? 1 : 3};
}

CMatrix single(Pauli p) {
    CMatrix m(2, 2);
    const Complex i(0.0, 1.0);
    switch (p) {
    case Pauli::I:
        m << 1, 0, 0, 1;
        break;
    case Pauli::X:
        m << 0, 1, 1, 0;
        break;
    case Pauli::Y:
        m << 0, -i, i, 0;
        break;
    case Pauli::Z:
        m << 1, 0, 0, -1;
        break;
    }
    return m;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

}  // namespace

Complex PauliWord::phase() const {
    static const Complex powers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return powers[phase_power & 3];
}

CMatrix PauliWord::matrix() const {
    return phase() * kron(kron(single(factors[0]), single(factors[1])), single(factors[2]));
}

std::string PauliWord::str() const {
    static const char *prefixes[] = {"+", "+i", "-", "-i"};
    static const char letters[] = {'I', 'X', 'Y', 'Z'};
    std::string s = prefixes[phase_power & 3];
    for (Pauli p : factors) {
        s += letters[static_cast<int>(p)];
    }
    return s;
}

PauliWord operator*(const PauliWord &a, const PauliWord &b) {
    PauliWord out;
    int power = a.phase_power + b.phase_power;
    for (std::size_t q = 0; q < 3; ++q) {
        const auto [p, ph] = multiply(a.factors[q], b.factors[q]);
        out.factors[q] = p;
        power += ph;
    }
    out.phase_power = power & 3;
    return out;
}

PauliWord zeta(int position, int bit) {
    if (position < 1 || position > Message::kBits) {
        throw DomainError("zeta index must be 1..5");
    }
    if (bit != 0 && bit != 1) {
        throw DomainError("zeta bit must be 0 or 1");
    }
    if (bit == 0) {
        return PauliWord::identity();
    }
    using P = Pauli;
    static const std::array<std::array<Pauli, 3>, 5> words{{
        {P::X, P::I, P::I},
        {P::I, P::I, P::X},
        {P::Z, P::Z, P::I},
        {P::X, P::I, P::X},
        {P::I, P::X, P::X},
    }};
    return PauliWord{words[static_cast<std::size_t>(position - 1)], 0};
}

PauliWord encoding_word(Message m) {
    PauliWord word = PauliWord::identity();
    for (int k = 1; k <= Message::kBits; ++k) {
        word = word * zeta(k, m.bit(k));
    }
    return word;
}

StateVector encode(const StateVector &state, Message m) {
    static constexpr int kAlice[] = {1, 2, 3};
    return apply_unitary(state, encoding_word(m).matrix(), kAlice);
}

bool MessageBasisTable::is_bijection() const {
    return distinct_labels() == Message::kCount;
}

std::vector<Message> MessageBasisTable::messages_for(Message label) const {
    std::vector<Message> out;
    for (Message m : Message::all()) {
        if (label_of[m.value()] == label) {
            out.push_back(m);
        }
    }
    return out;
}

std::vector<std::pair<Message, Message>> MessageBasisTable::collisions() const {
    std::vector<std::pair<Message, Message>> out;
    for (unsigned a = 0; a < static_cast<unsigned>(Message::kCount); ++a) {
        for (unsigned b = a + 1; b < static_cast<unsigned>(Message::kCount); ++b) {
            if (label_of[a] == label_of[b]) {
                out.emplace_back(Message(a), Message(b));
            }
        }
    }
    return out;
}

int MessageBasisTable::distinct_labels() const {
    std::vector<Message> labels(label_of.begin(), label_of.end());
    std::sort(labels.begin(), labels.end());
    return static_cast<int>(std::unique(labels.begin(), labels.end()) - labels.begin());
}

void MessageBasisTable::require_bijection() const {
    const auto pairs = collisions();
    if (pairs.empty()) {
        return;
    }
    std::ostringstream msg;
    msg << "encoded family covers only " << distinct_labels() << " of 32 circuit outputs; colliding messages:";
    for (const auto &[a, b] : pairs) {
        msg << ' ' << a.str() << '=' << b.str();
    }
    throw IncompatibleFamilies(msg.str());
}

namespace {

MessageBasisTable scan_families() {
    std::vector<StateVector> family;
    family.reserve(Message::kCount);
    for (int b = 0; b < Message::kCount; ++b) {
        family.push_back(brown_family_member(b));
    }
    MessageBasisTable table;
    for (Message m : Message::all()) {
        const StateVector encoded = encode(brown_state(), m);
        bool found = false;
        for (int b = 0; b < Message::kCount; ++b) {
            const double f = fidelity(family[static_cast<std::size_t>(b)], encoded);
            if (f >= 1.0 - kExactTol) {
                table.label_of[m.value()] = Message(static_cast<unsigned>(b));
                table.match_fidelity[m.value()] = f;
                found = true;
                break;
            }
        }
        if (!found) {
            throw IncompatibleFamilies("encoded state for message " + m.str() +
                                       " matches no generation-circuit output");
        }
    }
    return table;
}

}  // namespace

const MessageBasisTable &message_basis_table() {
    static const MessageBasisTable table = scan_families();
    return table;
}

}  // namespace qconv

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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qconv/statevec.hpp"

namespace qconv {

/// Five-bit classical payload m1..m5; m1 is the most significant bit of value().
class Message {
  public:
    static constexpr int kBits = 5;
    static constexpr int kCount = 1 << kBits;

    constexpr Message() = default;
    /// Throws DomainError unless value < 32.
    explicit Message(unsigned value);
    /// Parses a 5-character string of '0'/'1'.
    static Message parse(std::string_view bits);
    static std::array<Message, kCount> all();

    unsigned value() const noexcept { return value_; }
    /// m_k for k in 1..5.
    int bit(int k) const;
    std::string str() const;

    friend Message operator^(Message a, Message b) { return Message(a.value_ ^ b.value_); }
    friend auto operator<=>(const Message &, const Message &) = default;

  private:
    std::uint8_t value_ = 0;
};

enum class Pauli { I, X, Y, Z };

/// Phase * P1 (x) P2 (x) P3 on qubits 1-3; phase = i^phase_power.
struct PauliWord {
    std::array<Pauli, 3> factors{Pauli::I, Pauli::I, Pauli::I};
    int phase_power = 0;

    static PauliWord identity() { return {}; }

    Complex phase() const;
    /// 8x8 matrix including the phase, qubit 1 most significant.
    CMatrix matrix() const;
    bool same_operator(const PauliWord &other) const { return factors == other.factors; }
    /// e.g. "+XIX", "-iZZI".
    std::string str() const;

    friend PauliWord operator*(const PauliWord &a, const PauliWord &b);
    friend bool operator==(const PauliWord &, const PauliWord &) = default;
};

/// The per-bit encoder: identity for bit 0, otherwise
/// X.I.I, I.I.X, Z.Z.I, X.I.X, I.X.X for positions 1..5.
PauliWord zeta(int position, int bit);

/// zeta^1 * zeta^2 * zeta^3 * zeta^4 * zeta^5 with each factor picked by its bit.
PauliWord encoding_word(Message m);

/// Applies encoding_word(m) to qubits 1-3 of `state`.
StateVector encode(const StateVector &state, Message m);

/// Correspondence between each message's encoded state and the generation
/// circuit output for a computational input.
struct MessageBasisTable {
    std::array<Message, Message::kCount> label_of{};
    std::array<double, Message::kCount> match_fidelity{};

    bool is_bijection() const;
    /// Messages whose encoded state equals that of `label` input.
    std::vector<Message> messages_for(Message label) const;
    /// Unordered pairs of distinct messages that share a label.
    std::vector<std::pair<Message, Message>> collisions() const;
    /// Number of distinct labels hit, i.e. distinguishable encoded states.
    int distinct_labels() const;
    /// Throws IncompatibleFamilies listing the collisions if not a bijection.
    void require_bijection() const;
};

/// Exhaustive 32x32 fidelity scan. Throws IncompatibleFamilies when some
/// encoded state matches no circuit output.
const MessageBasisTable &message_basis_table();

}  // namespace qconv

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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qconv/densecode.hpp"
#include "qconv/security.hpp"
#include "qconv/statevec.hpp"

namespace qconv {

enum class Direction { AB, BA };
enum class Party { Alice, Bob };

std::string_view to_string(Direction d);
Direction parse_direction(std::string_view text);

struct SessionConfig {
    int n_copies = 100;
    double sample_fraction = 0.25;
    /// ABORT iff error_rate > abort_threshold.
    double abort_threshold = 0.0;
    std::uint64_t rng_seed = 0;
    std::optional<Attack> attack;
    /// Run a second sampled check on unused copies before the first B->A leg.
    bool recheck_before_reply = false;

    /// Number of copies the check phase sacrifices out of `available`.
    int sample_count(int available) const;
    /// Throws ValidationError when the config cannot carry `n_messages` messages.
    void validate(std::size_t n_messages = 0) const;
};

/// N copies of the five-qubit state. Sequence S_k collects qubit k of every
/// copy; S1-S3 stay with Alice, S4-S5 go to Bob.
struct QubitSequences {
    std::vector<StateVector> copies;
    std::array<Party, 5> owner{Party::Alice, Party::Alice, Party::Alice, Party::Bob, Party::Bob};

    /// (copy index, qubit) pairs of S_k, copy indices 1-based.
    std::vector<std::pair<int, int>> sequence(int k) const;
};

struct ErrorReport {
    int sampled_rounds = 0;
    int inconsistent_rounds = 0;
    double error_rate = 0.0;
    bool abort = false;

    std::string_view verdict() const { return abort ? "ABORT" : "PROCEED"; }
};

struct CheckRecord {
    int basis = 1;
    std::string bob_label;
    std::string alice_label;
    bool consistent = true;
};

struct MessageRecord {
    Message sent;
    Message decoded;
    std::vector<Message> candidates;
    double outcome_probability = 0.0;
};

struct TranscriptEntry {
    int round_id = 0;
    /// Logical clock: counts quantum operations performed so far in the session.
    std::uint64_t tick = 0;
    Direction direction = Direction::AB;
    int copy_index = 0;
    std::variant<CheckRecord, MessageRecord> payload;

    bool is_check() const { return std::holds_alternative<CheckRecord>(payload); }
};

struct Transcript {
    std::vector<TranscriptEntry> entries;
    std::vector<ErrorReport> checks;
};

enum class SessionPhase { Distributed, Ready, Aborted };

class Session {
  public:
    /// Prepares the copies with the generation circuit and, if configured,
    /// lets the attack act on qubits 4,5 of every copy in transit.
    explicit Session(SessionConfig config);

    const SessionConfig &config() const noexcept { return config_; }
    const QubitSequences &sequences() const noexcept { return sequences_; }
    const Transcript &transcript() const noexcept { return transcript_; }
    SessionPhase phase() const noexcept { return phase_; }
    /// Copies never touched by a check or a message.
    int fresh_copies() const;

    /// Samples copies, measures them in randomly chosen correlated bases and
    /// judges the error rate. Throws StateError after an abort.
    ErrorReport run_eavesdrop_check();

    /// Sends one dense-coded message and decodes it at the receiver.
    const TranscriptEntry &send_message(Direction direction, Message m);

  private:
    enum class CopyUse { Fresh, Checked, Forward, Closed };

    int take_fresh_copy();
    const TranscriptEntry &append(Direction direction, int copy, std::variant<CheckRecord, MessageRecord> payload);

    SessionConfig config_;
    Rng rng_;
    QubitSequences sequences_;
    std::vector<CopyUse> use_;
    std::vector<Message> forward_message_;
    std::optional<int> open_copy_;
    Transcript transcript_;
    SessionPhase phase_ = SessionPhase::Distributed;
    std::uint64_t tick_ = 0;
};

struct ScriptStep {
    Direction direction;
    Message message;
};

/// One step per line, "AB 10010" or "BA 01100"; '#' comments and blank lines ignored.
std::vector<ScriptStep> parse_script(std::string_view text);

/// Check phase, then the scripted exchange (stopping at an abort).
Transcript run_conversation(Session &session, std::span<const ScriptStep> script);

nlohmann::ordered_json to_json(const SessionConfig &config, const Transcript &transcript);

}  // namespace qconv

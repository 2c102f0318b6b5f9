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

#include "qconv/session.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qconv/errors.hpp"
#include "qconv/ndd.hpp"
#include "qconv/states.hpp"

namespace qconv {

std::string_view to_string(Direction d) {
    return d == Direction::AB ? "AB" : "BA";
}

Direction parse_direction(std::string_view text) {
    if (text == "AB") {
        return Direction::AB;
    }
    if (text == "BA") {
        return Direction::BA;
    }
    throw DomainError("direction must be AB or BA, got '" + std::string(text) + "'");
}

int SessionConfig::sample_count(int available) const {
    return static_cast<int>(std::ceil(sample_fraction * available - 1e-12));
}

void SessionConfig::validate(std::size_t n_messages) const {
    if (n_copies < 1) {
        throw ValidationError("n_copies must be positive");
    }
    if (!(sample_fraction > 0.0 && sample_fraction < 1.0)) {
        throw ValidationError("sample_fraction must lie in (0, 1)");
    }
    if (!(abort_threshold >= 0.0 && abort_threshold <= 1.0)) {
        throw ValidationError("abort_threshold must lie in [0, 1]");
    }
    if (sample_fraction * n_copies < 1.0) {
        throw ValidationError("sample_fraction * n_copies must be at least 1");
    }
    const int spare = n_copies - sample_count(n_copies);
    if (static_cast<std::size_t>(spare) < n_messages) {
        throw ValidationError("only " + std::to_string(spare) + " copies remain after sampling for " +
                              std::to_string(n_messages) + " messages");
    }
}

std::vector<std::pair<int, int>> QubitSequences::sequence(int k) const {
    if (k < 1 || k > 5) {
        throw DomainError("sequence index must be 1..5");
    }
    std::vector<std::pair<int, int>> out;
    out.reserve(copies.size());
    for (std::size_t c = 0; c < copies.size(); ++c) {
        out.emplace_back(static_cast<int>(c + 1), k);
    }
    return out;
}

Session::Session(SessionConfig config) : config_(std::move(config)), rng_(config_.rng_seed) {
    config_.validate();
    const auto n = static_cast<std::size_t>(config_.n_copies);
    sequences_.copies.reserve(n);
    for (std::size_t c = 0; c < n; ++c) {
        sequences_.copies.push_back(config_.attack ? apply_attack(brown_state(), *config_.attack) : brown_state());
    }
    use_.assign(n, CopyUse::Fresh);
    forward_message_.assign(n, Message());
}

int Session::fresh_copies() const {
    return static_cast<int>(std::count(use_.begin(), use_.end(), CopyUse::Fresh));
}

const TranscriptEntry &Session::append(Direction direction, int copy, std::variant<CheckRecord, MessageRecord> payload) {
    TranscriptEntry e;
    e.round_id = static_cast<int>(transcript_.entries.size()) + 1;
    e.tick = tick_;
    e.direction = direction;
    e.copy_index = copy + 1;
    e.payload = std::move(payload);
    transcript_.entries.push_back(std::move(e));
    return transcript_.entries.back();
}

ErrorReport Session::run_eavesdrop_check() {
    if (phase_ == SessionPhase::Aborted) {
        throw StateError("session was aborted; no further checks");
    }
    std::vector<int> pool;
    for (std::size_t c = 0; c < use_.size(); ++c) {
        if (use_[c] == CopyUse::Fresh) {
            pool.push_back(static_cast<int>(c));
        }
    }
    const int wanted = config_.sample_count(static_cast<int>(pool.size()));
    if (wanted < 1 || wanted > static_cast<int>(pool.size())) {
        throw ResourceExhausted("not enough unused copies for a check");
    }
    // Partial Fisher-Yates: the first `wanted` slots become the sample.
    for (int k = 0; k < wanted; ++k) {
        const std::size_t j = static_cast<std::size_t>(k) + uniform_index(rng_, pool.size() - static_cast<std::size_t>(k));
        std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
    }
    std::vector<int> sample(pool.begin(), pool.begin() + wanted);
    std::sort(sample.begin(), sample.end());

    ErrorReport report;
    for (int copy : sample) {
        const BasisChoice choice = uniform_index(rng_, 2) == 0 ? BasisChoice::Bell : BasisChoice::Conjugate;
        const BasisPair &pair = basis_pair(choice);
        StateVector &state = sequences_.copies[static_cast<std::size_t>(copy)];
        const MeasurementOutcome bob = measure_in_basis(state, pair.bob, kBobQubits, rng_);
        const MeasurementOutcome alice = measure_in_basis(bob.post_state, pair.alice, kAliceQubits, rng_);
        state = alice.post_state;
        tick_ += 2;
        use_[static_cast<std::size_t>(copy)] = CopyUse::Checked;

        const bool ok = bob.index == alice.index;
        report.sampled_rounds += 1;
        report.inconsistent_rounds += ok ? 0 : 1;
        append(Direction::BA, copy, CheckRecord{to_int(choice), bob.label, alice.label, ok});
    }
    report.error_rate = static_cast<double>(report.inconsistent_rounds) / report.sampled_rounds;
    report.abort = report.error_rate > config_.abort_threshold;
    phase_ = report.abort ? SessionPhase::Aborted : SessionPhase::Ready;
    transcript_.checks.push_back(report);
    return report;
}

int Session::take_fresh_copy() {
    const auto it = std::find(use_.begin(), use_.end(), CopyUse::Fresh);
    if (it == use_.end()) {
        throw ResourceExhausted("no unused copies left for messaging");
    }
    return static_cast<int>(it - use_.begin());
}

const TranscriptEntry &Session::send_message(Direction direction, Message m) {
    if (phase_ == SessionPhase::Aborted) {
        throw StateError("session was aborted; messaging is disabled");
    }
    if (phase_ != SessionPhase::Ready) {
        throw StateError("the eavesdropping check must pass before messaging");
    }

    int copy = 0;
    if (direction == Direction::AB) {
        copy = take_fresh_copy();
    } else if (open_copy_) {
        copy = *open_copy_;
    } else {
        // Alice forwards qubits 1-3 unencoded so Bob holds the whole copy.
        copy = take_fresh_copy();
    }
    const auto slot = static_cast<std::size_t>(copy);
    StateVector state = sequences_.copies[slot];

    if (direction == Direction::BA && use_[slot] == CopyUse::Forward) {
        // Undo the forward leg's encoding; every zeta word is an involution up to phase.
        state = encode(state, forward_message_[slot]);
        tick_ += 1;
    }
    state = encode(state, m);
    tick_ += 1;
    const DiscriminationResult result = discriminate_reference(state, rng_);
    tick_ += 1;
    sequences_.copies[slot] = result.post_state;

    if (direction == Direction::AB) {
        use_[slot] = CopyUse::Forward;
        forward_message_[slot] = m;
        open_copy_ = copy;
    } else {
        use_[slot] = CopyUse::Closed;
        open_copy_.reset();
    }
    return append(direction, copy,
                  MessageRecord{m, result.message, result.candidates, result.outcome_probability});
}

std::vector<ScriptStep> parse_script(std::string_view text) {
    std::vector<ScriptStep> steps;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream fields(raw);
        std::string dir, bits, extra;
        if (!(fields >> dir)) {
            continue;
        }
        if (!(fields >> bits) || (fields >> extra)) {
            throw ParseError(line_no, "expected '<AB|BA> <5 bits>'");
        }
        try {
            steps.push_back({parse_direction(dir), Message::parse(bits)});
        } catch (const DomainError &e) {
            throw ParseError(line_no, e.what());
        }
    }
    return steps;
}

Transcript run_conversation(Session &session, std::span<const ScriptStep> script) {
    session.config().validate(script.size());
    if (session.run_eavesdrop_check().abort) {
        return session.transcript();
    }
    bool rechecked = false;
    for (const auto &step : script) {
        if (step.direction == Direction::BA && session.config().recheck_before_reply && !rechecked) {
            rechecked = true;
            if (session.run_eavesdrop_check().abort) {
                break;
            }
        }
        session.send_message(step.direction, step.message);
    }
    return session.transcript();
}

namespace {

nlohmann::ordered_json check_json(const ErrorReport &r) {
    return {
        {"sampled", r.sampled_rounds},
        {"inconsistent", r.inconsistent_rounds},
        {"error_rate", r.error_rate},
        {"verdict", std::string(r.verdict())},
    };
}

}  // namespace

nlohmann::ordered_json to_json(const SessionConfig &config, const Transcript &transcript) {
    using json = nlohmann::ordered_json;
    json out;
    out["schema_version"] = 1;
    out["config"] = {
        {"n_copies", config.n_copies},
        {"sample_fraction", config.sample_fraction},
        {"abort_threshold", config.abort_threshold},
        {"attack", config.attack ? json(config.attack->name()) : json(nullptr)},
        {"recheck_before_reply", config.recheck_before_reply},
    };
    out["check"] = transcript.checks.empty() ? json(nullptr) : check_json(transcript.checks.front());
    json rechecks = json::array();
    for (std::size_t k = 1; k < transcript.checks.size(); ++k) {
        rechecks.push_back(check_json(transcript.checks[k]));
    }
    out["rechecks"] = std::move(rechecks);

    json messages = json::array();
    json entries = json::array();
    for (const auto &e : transcript.entries) {
        json entry = {
            {"round_id", e.round_id},
            {"tick", e.tick},
            {"phase", e.is_check() ? "CHECK" : "MESSAGE"},
            {"direction", std::string(to_string(e.direction))},
            {"copy_index", e.copy_index},
        };
        if (const auto *c = std::get_if<CheckRecord>(&e.payload)) {
            entry["basis"] = c->basis;
            entry["bob"] = c->bob_label;
            entry["alice"] = c->alice_label;
            entry["consistent"] = c->consistent;
        } else {
            const auto &m = std::get<MessageRecord>(e.payload);
            json candidates = json::array();
            for (Message cand : m.candidates) {
                candidates.push_back(cand.str());
            }
            entry["sent"] = m.sent.str();
            entry["decoded"] = m.decoded.str();
            messages.push_back({
                {"direction", std::string(to_string(e.direction))},
                {"sent", m.sent.str()},
                {"decoded", m.decoded.str()},
                {"copy_index", e.copy_index},
                {"candidates", std::move(candidates)},
                {"outcome_probability", m.outcome_probability},
            });
        }
        entries.push_back(std::move(entry));
    }
    out["messages"] = std::move(messages);
    out["entries"] = std::move(entries);
    out["seed"] = config.rng_seed;
    return out;
}

}  // namespace qconv

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

#include "qconv/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qconv/circuits.hpp"
#include "qconv/densecode.hpp"
#include "qconv/errors.hpp"
#include "qconv/ndd.hpp"
#include "qconv/security.hpp"
#include "qconv/session.hpp"
#include "qconv/states.hpp"

namespace qconv {

namespace {

using json = nlohmann::ordered_json;

struct GlobalOptions {
    std::uint64_t seed = 1;
    bool json_output = false;
    std::string out_path;
};

// Writes `doc` to --out if given; returns false when the file cannot be written.
bool write_output(const GlobalOptions &g, const json &doc, std::ostream &err) {
    if (g.out_path.empty()) {
        return true;
    }
    std::ofstream file(g.out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot write " << g.out_path << '\n';
        return false;
    }
    file << doc.dump(2) << '\n';
    if (!file) {
        err << "error: failed writing " << g.out_path << '\n';
        return false;
    }
    return true;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::optional<Attack> resolve_attack(const std::string &file, const std::string &named) {
    if (!file.empty() && !named.empty()) {
        throw ValidationError("give either --attack or --named, not both");
    }
    if (!file.empty()) {
        return load_attack_file(file);
    }
    if (!named.empty()) {
        return Attack::named(named);
    }
    return std::nullopt;
}

int cmd_generate(const GlobalOptions &g, const std::string &input, bool verify, std::ostream &out, std::ostream &err) {
    const Message label = Message::parse(input);
    const StateVector state = brown_family_member(static_cast<int>(label.value()));

    json amps = json::array();
    int nonzero = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        amps.push_back({{"index", i}, {"re", state[i].real()}, {"im", state[i].imag()}});
        nonzero += std::abs(state[i]) > kExactTol ? 1 : 0;
    }
    json doc;
    doc["schema_version"] = 1;
    doc["input"] = label.str();
    doc["amplitudes"] = std::move(amps);
    doc["nonzero"] = nonzero;
    double f = 0.0;
    if (verify) {
        f = fidelity(state, brown_state_reference());
        doc["fidelity_vs_reference"] = f;
    }
    if (!write_output(g, doc, err)) {
        return kExitInput;
    }

    if (g.json_output) {
        out << doc.dump(2) << '\n';
    } else {
        out << "input |" << label.str() << ">: " << nonzero << " nonzero amplitudes\n";
        out << std::setprecision(10);
        for (std::size_t i = 0; i < state.size(); ++i) {
            if (std::abs(state[i]) > kExactTol) {
                out << "  " << Message(static_cast<unsigned>(i)).str() << "  " << std::showpos << state[i].real()
                    << std::noshowpos << '\n';
            }
        }
        if (verify) {
            out << "fidelity vs reference: " << std::setprecision(15) << f << '\n';
        }
    }
    return kExitOk;
}

int cmd_ndd_verify(const GlobalOptions &g, const std::string &circuit_path, std::ostream &out, std::ostream &err) {
    const Circuit literal = circuit_path.empty() ? build_ndd_circuit() : load_circuit_file(circuit_path);
    const EquivalenceReport report = equivalence_report(literal, g.seed);
    const json doc = to_json(report);
    if (!write_output(g, doc, err)) {
        return kExitInput;
    }
    if (g.json_output) {
        out << doc.dump(2) << '\n';
    } else {
        for (const auto &c : report.cases) {
            out << c.message.str() << "  literal " << c.literal.str() << "  reference " << c.reference.str() << "  "
                << (c.equivalent ? "EQUIVALENT" : "MISMATCH");
            if (!c.detail.empty()) {
                out << "  (" << c.detail << ")";
            }
            out << '\n';
        }
        out << "equivalent: " << report.equivalent << "  mismatch: " << report.mismatch
            << "  partition agrees: " << (report.partition_agrees ? "yes" : "no") << '\n';
    }
    return report.mismatch == 0 ? kExitOk : kExitProtocol;
}

int cmd_attack(const GlobalOptions &g, const std::string &file, const std::string &named, std::ostream &out,
               std::ostream &err) {
    const std::optional<Attack> attack = resolve_attack(file, named.empty() && file.empty() ? "identity" : named);
    const double p1 = detection_probability(*attack, BasisChoice::Bell);
    const double p2 = detection_probability(*attack, BasisChoice::Conjugate);
    const ConstraintReport constraints = constraint_report(*attack);
    const bool factorized = verify_factorization(*attack);

    json doc;
    doc["schema_version"] = 1;
    doc["attack"] = attack->name();
    doc["eve_dim"] = attack->eve_dim();
    doc["detection_basis_1"] = p1;
    doc["detection_basis_2"] = p2;
    doc["constraint_max_residual"] = constraints.max_residual;
    doc["constraints_satisfied"] = constraints.satisfied;
    doc["factorized"] = factorized;
    if (!write_output(g, doc, err)) {
        return kExitInput;
    }
    if (g.json_output) {
        out << doc.dump(2) << '\n';
    } else {
        out << "attack " << attack->name() << " (eve_dim " << attack->eve_dim() << ")\n"
            << std::setprecision(12) << "  detection probability, basis 1: " << p1 << '\n'
            << "  detection probability, basis 2: " << p2 << '\n'
            << "  max constraint residual:        " << constraints.max_residual << '\n'
            << "  factorized:                     " << (factorized ? "true" : "false") << '\n';
    }
    return kExitOk;
}

struct ConverseOptions {
    std::string script_path;
    int n = 100;
    double sample_fraction = 0.25;
    double threshold = 0.0;
    std::string attack_file;
    std::string attack_named;
    bool recheck = false;
};

int cmd_converse(const GlobalOptions &g, const ConverseOptions &o, std::ostream &out, std::ostream &err) {
    std::vector<ScriptStep> script;
    if (!o.script_path.empty()) {
        script = parse_script(read_file(o.script_path));
    }
    SessionConfig cfg;
    cfg.n_copies = o.n;
    cfg.sample_fraction = o.sample_fraction;
    cfg.abort_threshold = o.threshold;
    cfg.rng_seed = g.seed;
    cfg.attack = resolve_attack(o.attack_file, o.attack_named);
    cfg.recheck_before_reply = o.recheck;
    cfg.validate(script.size());

    Session session(cfg);
    const Transcript transcript = run_conversation(session, script);
    const json doc = to_json(cfg, transcript);
    if (!write_output(g, doc, err)) {
        return kExitInput;
    }

    const bool aborted = session.phase() == SessionPhase::Aborted;
    if (g.json_output) {
        out << doc.dump(2) << '\n';
    } else {
        for (const auto &c : transcript.checks) {
            out << "check: " << c.inconsistent_rounds << "/" << c.sampled_rounds << " inconsistent, error rate "
                << c.error_rate << " -> " << c.verdict() << '\n';
        }
        for (const auto &e : transcript.entries) {
            if (const auto *m = std::get_if<MessageRecord>(&e.payload)) {
                out << to_string(e.direction) << " copy " << e.copy_index << ": sent " << m->sent.str() << " decoded "
                    << m->decoded.str() << (m->sent == m->decoded ? "" : "  (differs)") << '\n';
            }
        }
    }
    return aborted ? kExitProtocol : kExitOk;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum conversation simulator over the five-qubit Brown state"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
    app.add_flag("--json", g.json_output, "Print JSON to stdout");
    app.add_option("--out", g.out_path, "Also write the JSON document to this path");

    auto *generate = app.add_subcommand("generate", "Run the generation circuit and dump amplitudes");
    generate->fallthrough();
    std::string input = "00000";
    bool verify = false;
    generate->add_option("--input", input, "Computational input b1..b5")->capture_default_str();
    generate->add_flag("--verify", verify, "Report fidelity against the term-by-term reference state");

    auto *ndd = app.add_subcommand("ndd-verify", "Compare the literal discrimination circuit with the reference");
    ndd->fallthrough();
    std::string circuit_path;
    ndd->add_option("--circuit", circuit_path, "Circuit text file replacing the built-in literal circuit");

    auto *attack = app.add_subcommand("attack", "Security analysis of one attack");
    attack->fallthrough();
    std::string attack_file, attack_named;
    attack->add_option("--attack", attack_file, "Attack JSON file");
    attack->add_option("--named", attack_named, "Built-in attack: identity, intercept, parity");

    auto *converse = app.add_subcommand("converse", "Run a full conversation session");
    converse->fallthrough();
    ConverseOptions co;
    converse->add_option("--script", co.script_path, "Script file, lines like 'AB 10010'");
    converse->add_option("--n", co.n, "Number of shared copies")->capture_default_str();
    converse->add_option("--sample-fraction", co.sample_fraction, "Fraction of copies sacrificed to the check")
        ->capture_default_str();
    converse->add_option("--threshold", co.threshold, "Abort when the error rate exceeds this")->capture_default_str();
    converse->add_option("--attack", co.attack_file, "Attack JSON file");
    converse->add_option("--named", co.attack_named, "Built-in attack: identity, intercept, parity");
    converse->add_flag("--recheck", co.recheck, "Check again before the first reply leg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        if (generate->parsed()) {
            return cmd_generate(g, input, verify, out, err);
        }
        if (ndd->parsed()) {
            return cmd_ndd_verify(g, circuit_path, out, err);
        }
        if (attack->parsed()) {
            return cmd_attack(g, attack_file, attack_named, out, err);
        }
        return cmd_converse(g, co, out, err);
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << '\n';
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
    } catch (const ResourceExhausted &e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitInput;
}

}  // namespace qconv

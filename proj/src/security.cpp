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

#include "qconv/security.hpp"

#include <cmath>
#include <fstream>

#include "qconv/errors.hpp"
#include "qconv/states.hpp"

namespace qconv {

BasisChoice basis_choice_from_int(int choice) {
    if (choice != 1 && choice != 2) {
        throw DomainError("basis choice must be 1 or 2");
    }
    return static_cast<BasisChoice>(choice);
}

namespace {

StateVector qubits3(int a, int b, int c) {
    const std::array<int, 3> dims{2, 2, 2};
    const std::array<int, 3> digits{a, b, c};
    return basis_state(dims, digits);
}

StateVector ket(int bit) {
    const std::array<int, 1> dims{2};
    const std::array<int, 1> digits{bit};
    return basis_state(dims, digits);
}

// s1 * (pair (x) |1>) + s0 * (pair0 (x) |0>) on qubits (1,3,2), returned in (1,2,3) order.
StateVector amb2_state(const StateVector &with_one, double s1, const StateVector &with_zero, double s0) {
    static constexpr int kFrom132[] = {1, 3, 2};
    const CVector amps = s1 * tensor(with_one, ket(1)).amplitudes() + s0 * tensor(with_zero, ket(0)).amplitudes();
    return permute(StateVector::normalized({2, 2, 2}, amps), kFrom132);
}

}  // namespace

MeasurementBasis bmb1() {
    return MeasurementBasis({"phi-", "psi-", "phi+", "psi+"},
                            {bell_phi_minus(), bell_psi_minus(), bell_phi_plus(), bell_psi_plus()});
}

MeasurementBasis amb1() {
    return MeasurementBasis({"001", "010", "100", "111"},
                            {qubits3(0, 0, 1), qubits3(0, 1, 0), qubits3(1, 0, 0), qubits3(1, 1, 1)});
}

MeasurementBasis bmb2() {
    return MeasurementBasis({"0+", "0-", "1+", "1-"}, {tensor(ket(0), ket_plus()), tensor(ket(0), ket_minus()),
                                                       tensor(ket(1), ket_plus()), tensor(ket(1), ket_minus())});
}

MeasurementBasis amb2() {
    // In this expansion the Bell symbols follow the other common labelling
    // (phi = |00>+-|11>, psi = |01>+-|10>); only that reading reproduces |psi5>.
    const StateVector phi_p = bell_psi_plus();
    const StateVector phi_m = bell_psi_minus();
    const StateVector psi_p = bell_phi_plus();
    const StateVector psi_m = bell_phi_minus();
    return MeasurementBasis({"phi+1+psi+0", "phi+1-psi+0", "-phi-1-psi-0", "phi-1-psi-0"},
                            {
                                amb2_state(phi_p, 1.0, psi_p, 1.0),
                                amb2_state(phi_p, 1.0, psi_p, -1.0),
                                amb2_state(phi_m, -1.0, psi_m, -1.0),
                                amb2_state(phi_m, 1.0, psi_m, -1.0),
                            });
}

const BasisPair &basis_pair(BasisChoice choice) {
    static const BasisPair first{amb1(), bmb1()};
    static const BasisPair second{amb2(), bmb2()};
    return choice == BasisChoice::Bell ? first : second;
}

std::set<std::pair<std::string, std::string>> correlation_table(BasisChoice choice) {
    const BasisPair &pair = basis_pair(choice);
    std::set<std::pair<std::string, std::string>> table;
    for (std::size_t k = 0; k < pair.bob.size(); ++k) {
        table.emplace(pair.bob.label(k), pair.alice.label(k));
    }
    return table;
}

bool is_consistent(BasisChoice choice, const std::string &bob_label, const std::string &alice_label) {
    const BasisPair &pair = basis_pair(choice);
    return pair.bob.index_of(bob_label) == pair.alice.index_of(alice_label);
}

Attack::Attack(std::string name, CMatrix unitary, StateVector initial_eve_state)
    : name_(std::move(name)), unitary_(std::move(unitary)), initial_eve_state_(std::move(initial_eve_state)) {
    if (initial_eve_state_.num_subsystems() != 1) {
        throw DomainError("Eve's initial state must be a single subsystem");
    }
    const Eigen::Index expected = 4 * static_cast<Eigen::Index>(eve_dim());
    if (unitary_.rows() != expected || unitary_.cols() != expected) {
        throw DomainError("attack unitary must be " + std::to_string(expected) + "x" + std::to_string(expected));
    }
    if (!is_unitary(unitary_)) {
        throw ValidationError("attack matrix is not unitary within 1e-10");
    }
}

namespace {

StateVector eve_zero(int d) {
    const std::array<int, 1> dims{d};
    const std::array<int, 1> digits{0};
    return basis_state(dims, digits);
}

// Permutation matrix on (q4, q5, e1, e2) from a map of basis labels.
template <typename F>
CMatrix classical_map(F f) {
    CMatrix u = CMatrix::Zero(16, 16);
    for (int in = 0; in < 16; ++in) {
        u(f(in), in) = 1.0;
    }
    return u;
}

}  // namespace

Attack Attack::identity(int eve_dim) {
    if (eve_dim < 1) {
        throw DomainError("Eve dimension must be positive");
    }
    return Attack("identity", CMatrix::Identity(4 * eve_dim, 4 * eve_dim), eve_zero(eve_dim));
}

Attack Attack::intercept() {
    auto copy = [](int in) {
        const int a = (in >> 3) & 1, b = (in >> 2) & 1, e1 = (in >> 1) & 1, e2 = in & 1;
        return (a << 3) | (b << 2) | ((e1 ^ a) << 1) | (e2 ^ b);
    };
    return Attack("intercept", classical_map(copy), eve_zero(4));
}

Attack Attack::parity() {
    auto copy = [](int in) {
        const int a = (in >> 3) & 1, b = (in >> 2) & 1, e1 = (in >> 1) & 1, e2 = in & 1;
        return (a << 3) | (b << 2) | ((e1 ^ a ^ b) << 1) | e2;
    };
    return Attack("parity", classical_map(copy), eve_zero(4));
}

Attack Attack::named(const std::string &name) {
    if (name == "identity") {
        return identity();
    }
    if (name == "intercept") {
        return intercept();
    }
    if (name == "parity") {
        return parity();
    }
    throw DomainError("unknown named attack '" + name + "' (expected identity, intercept or parity)");
}

namespace {

std::vector<double> real_array(const nlohmann::ordered_json &j, const char *key) {
    if (!j.contains(key)) {
        return {};
    }
    if (!j.at(key).is_array()) {
        throw ValidationError(std::string(key) + " must be an array");
    }
    std::vector<double> out;
    for (const auto &v : j.at(key)) {
        if (!v.is_number()) {
            throw ValidationError(std::string(key) + " entries must be numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::vector<double>> real_matrix(const nlohmann::ordered_json &j, const char *key, std::size_t n) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    if (!j.contains(key)) {
        return rows;
    }
    const auto &m = j.at(key);
    if (!m.is_array() || m.size() != n) {
        throw ValidationError(std::string(key) + " must have " + std::to_string(n) + " rows");
    }
    for (std::size_t r = 0; r < n; ++r) {
        if (!m[r].is_array() || m[r].size() != n) {
            throw ValidationError(std::string(key) + " row " + std::to_string(r) + " must have " + std::to_string(n) +
                                  " entries");
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (!m[r][c].is_number()) {
                throw ValidationError(std::string(key) + " entries must be numbers");
            }
            rows[r][c] = m[r][c].get<double>();
        }
    }
    return rows;
}

}  // namespace

Attack Attack::from_json(const nlohmann::ordered_json &j, std::string name) {
    if (!j.is_object() || !j.contains("eve_dim") || !j.at("eve_dim").is_number_integer()) {
        throw ValidationError("attack JSON needs an integer eve_dim");
    }
    const int d = j.at("eve_dim").get<int>();
    if (d < 1) {
        throw ValidationError("eve_dim must be positive");
    }
    if (!j.contains("unitary_re")) {
        throw ValidationError("attack JSON needs unitary_re");
    }
    const auto n = static_cast<std::size_t>(4 * d);
    const auto re = real_matrix(j, "unitary_re", n);
    const auto im = real_matrix(j, "unitary_im", n);
    CMatrix u(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(re[r][c], im[r][c]);
        }
    }
    if (!is_unitary(u)) {
        throw ValidationError("attack matrix is not unitary within 1e-10");
    }

    auto eve_re = real_array(j, "eve_state_re");
    auto eve_im = real_array(j, "eve_state_im");
    CVector eta = CVector::Zero(d);
    if (eve_re.empty() && eve_im.empty()) {
        eta[0] = 1.0;
    } else {
        eve_re.resize(static_cast<std::size_t>(d), 0.0);
        eve_im.resize(static_cast<std::size_t>(d), 0.0);
        if (j.contains("eve_state_re") && j.at("eve_state_re").size() != static_cast<std::size_t>(d)) {
            throw ValidationError("eve_state_re must have eve_dim entries");
        }
        if (j.contains("eve_state_im") && j.at("eve_state_im").size() != static_cast<std::size_t>(d)) {
            throw ValidationError("eve_state_im must have eve_dim entries");
        }
        for (int k = 0; k < d; ++k) {
            eta[k] = Complex(eve_re[static_cast<std::size_t>(k)], eve_im[static_cast<std::size_t>(k)]);
        }
        if (std::abs(eta.norm() - 1.0) > kAccumTol) {
            throw ValidationError("Eve's initial state is not normalized");
        }
    }
    return Attack(std::move(name), std::move(u), StateVector::normalized({d}, std::move(eta)));
}

nlohmann::ordered_json Attack::to_json() const {
    nlohmann::ordered_json j;
    j["eve_dim"] = eve_dim();
    auto part = [&](auto pick) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (Eigen::Index r = 0; r < unitary_.rows(); ++r) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (Eigen::Index c = 0; c < unitary_.cols(); ++c) {
                row.push_back(pick(unitary_(r, c)));
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };
    j["unitary_re"] = part([](Complex z) { return z.real(); });
    j["unitary_im"] = part([](Complex z) { return z.imag(); });
    nlohmann::ordered_json eve_re = nlohmann::ordered_json::array();
    nlohmann::ordered_json eve_im = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < initial_eve_state_.size(); ++k) {
        eve_re.push_back(initial_eve_state_[k].real());
        eve_im.push_back(initial_eve_state_[k].imag());
    }
    j["eve_state_re"] = std::move(eve_re);
    j["eve_state_im"] = std::move(eve_im);
    return j;
}

Attack load_attack_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open attack file " + path);
    }
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::ordered_json::exception &e) {
        throw ValidationError("attack file is not valid JSON: " + std::string(e.what()));
    }
    return Attack::from_json(j, path);
}

CMatrix haar_unitary(Rng &rng, int n) {
    CMatrix g(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const double re = standard_normal(rng);
            const double im = standard_normal(rng);
            g(r, c) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) {
            q.col(k) *= r(k, k) / mag;
        }
    }
    return q;
}

namespace {

StateVector random_eve_state(Rng &rng, int d) {
    CVector v(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const double re = standard_normal(rng);
        const double im = standard_normal(rng);
        v[k] = Complex(re, im);
    }
    return StateVector::normalized({d}, std::move(v));
}

}  // namespace

Attack random_attack(Rng &rng, int eve_dim) {
    CMatrix u = haar_unitary(rng, 4 * eve_dim);
    return Attack("random", std::move(u), random_eve_state(rng, eve_dim));
}

Attack constraint_satisfying_attack(Rng &rng, int eve_dim) {
    const int d = eve_dim;
    const int n = 4 * d;
    const StateVector eta = random_eve_state(rng, d);

    // Eve-local frame whose first column is eta.
    CMatrix seed_cols = haar_unitary(rng, d);
    seed_cols.col(0) = eta.amplitudes();
    Eigen::HouseholderQR<CMatrix> qr(seed_cols);
    CMatrix frame = qr.householderQ() * CMatrix::Identity(d, d);
    const Complex phase = frame.col(0).dot(eta.amplitudes());  // <frame0|eta>
    frame.col(0) *= phase / std::abs(phase);

    CMatrix lifted = CMatrix::Zero(n, n);  // I_4 (x) frame
    for (int i = 0; i < 4; ++i) {
        lifted.block(i * d, i * d, d, d) = frame;
    }

    // Identity on span{|i>|frame0>}, Haar on its complement.
    std::vector<Eigen::Index> complement;
    for (int i = 0; i < 4; ++i) {
        for (int k = 1; k < d; ++k) {
            complement.push_back(i * d + k);
        }
    }
    CMatrix core = CMatrix::Identity(n, n);
    if (!complement.empty()) {
        const CMatrix r = haar_unitary(rng, static_cast<int>(complement.size()));
        for (std::size_t a = 0; a < complement.size(); ++a) {
            for (std::size_t b = 0; b < complement.size(); ++b) {
                core(complement[a], complement[b]) = r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            }
        }
    }

    const CMatrix v = haar_unitary(rng, d);
    CMatrix eve_local = CMatrix::Zero(n, n);
    for (int i = 0; i < 4; ++i) {
        eve_local.block(i * d, i * d, d, d) = v;
    }
    CMatrix u = eve_local * lifted * core * lifted.adjoint();
    return Attack("constrained", std::move(u), eta);
}

StateVector apply_attack(const StateVector &state, const Attack &attack) {
    if (state.num_subsystems() != 5) {
        throw DomainError("attacks apply to a bare five-qubit state");
    }
    for (int q = 1; q <= 5; ++q) {
        if (state.dim(q) != 2) {
            throw DomainError("attacks apply to a bare five-qubit state");
        }
    }
    static constexpr int kTargets[] = {4, 5, 6};
    return apply_unitary(tensor(state, attack.initial_eve_state()), attack.unitary(), kTargets);
}

Eigen::Matrix4d joint_probabilities(const StateVector &state, BasisChoice choice) {
    static constexpr int kTargets[] = {1, 2, 3, 4, 5};
    const BasisPair &pair = basis_pair(choice);
    Eigen::Matrix4d p;
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            const StateVector bra = tensor(pair.alice.state(a), pair.bob.state(b));
            p(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                partial_inner(bra, state, kTargets).probability();
        }
    }
    return p;
}

double detection_probability(const StateVector &state, BasisChoice choice) {
    const Eigen::Matrix4d p = joint_probabilities(state, choice);
    return p.sum() - p.trace();
}

double detection_probability(const Attack &attack, BasisChoice choice) {
    return detection_probability(apply_attack(brown_state(), attack), choice);
}

Eigen::Vector4d AncillaDecomposition::row_norms() const {
    Eigen::Vector4d out;
    for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int j = 0; j < 4; ++j) {
            s += (*this)(i, j).squaredNorm();
        }
        out[i] = s;
    }
    return out;
}

StateVector AncillaDecomposition::reconstruct(const StateVector &state) const {
    if (state.num_subsystems() != 5) {
        throw DomainError("reconstruct expects a bare five-qubit state");
    }
    const Eigen::Index d = eve_dim;
    CVector out = CVector::Zero(32 * d);
    for (Eigen::Index alice = 0; alice < 8; ++alice) {
        for (int i = 0; i < 4; ++i) {
            const Complex c = state.amplitudes()[alice * 4 + i];
            if (c == Complex(0.0)) {
                continue;
            }
            for (int j = 0; j < 4; ++j) {
                out.segment((alice * 4 + j) * d, d) += c * (*this)(i, j);
            }
        }
    }
    return StateVector({2, 2, 2, 2, 2, eve_dim}, std::move(out));
}

AncillaDecomposition decompose_ancillas(const Attack &attack) {
    AncillaDecomposition dec;
    dec.eve_dim = attack.eve_dim();
    const Eigen::Index d = dec.eve_dim;
    const CVector &eta = attack.initial_eve_state().amplitudes();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            dec.eta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = attack.unitary().block(j * d, i * d, d, d) * eta;
        }
    }
    return dec;
}

namespace {

struct Condition {
    int a_i, a_j;
    int b_i, b_j;  // b_i < 0 marks a nullity condition on (a_i, a_j)
};

std::string condition_name(const Condition &c) {
    auto eta = [](int i, int j) { return "eta" + std::to_string(i) + std::to_string(j); };
    return c.b_i < 0 ? eta(c.a_i, c.a_j) + "=0" : eta(c.a_i, c.a_j) + "=" + eta(c.b_i, c.b_j);
}

void evaluate(const AncillaDecomposition &dec, std::initializer_list<Condition> conditions,
              std::vector<std::string> &names, std::vector<double> &residuals) {
    for (const auto &c : conditions) {
        names.push_back(condition_name(c));
        const CVector &a = dec(c.a_i, c.a_j);
        residuals.push_back(c.b_i < 0 ? a.norm() : (a - dec(c.b_i, c.b_j)).norm());
    }
}

}  // namespace

ConstraintReport constraint_report(const Attack &attack, double tol) {
    const AncillaDecomposition dec = decompose_ancillas(attack);
    ConstraintReport report;
    // First set, as published.
    evaluate(dec,
             {{0, 0, 3, 3}, {0, 3, 1, 0}, {2, 2, 1, 1}, {2, 1, 1, 2},
              {2, 0, -1, -1}, {2, 3, -1, -1}, {1, 0, -1, -1}, {1, 3, -1, -1},
              {0, 2, -1, -1}, {0, 1, -1, -1}, {3, 2, -1, -1}, {3, 1, -1, -1}},
             report.names_1, report.residual_set_1);
    // Second set, as published.
    evaluate(dec,
             {{0, 0, 2, 2}, {1, 3, 3, 1}, {1, 1, 3, 3}, {0, 2, 2, 0},
              {0, 1, -1, -1}, {0, 3, -1, -1}, {2, 1, -1, -1}, {2, 3, -1, -1},
              {1, 0, -1, -1}, {1, 2, -1, -1}, {3, 0, -1, -1}, {3, 2, -1, -1}},
             report.names_2, report.residual_set_2);
    for (double r : report.residual_set_1) {
        report.max_residual = std::max(report.max_residual, r);
    }
    for (double r : report.residual_set_2) {
        report.max_residual = std::max(report.max_residual, r);
    }
    report.satisfied = report.max_residual < tol;
    return report;
}

bool verify_factorization(const Attack &attack, double tol) {
    static constexpr int kQubits[] = {1, 2, 3, 4, 5};
    const StateVector joint = apply_attack(brown_state(), attack);
    if (schmidt_rank(joint, kQubits, tol) != 1) {
        return false;
    }
    const DensityMatrix rho = partial_trace(joint, kQubits);
    const CVector &psi = brown_state().amplitudes();
    const double overlap = psi.dot(rho.entries() * psi).real();
    return overlap >= 1.0 - tol;
}

}  // namespace qconv

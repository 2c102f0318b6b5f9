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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qconv/statevec.hpp"

namespace qconv {

/// Which correlated basis pair a check round uses.
enum class BasisChoice { Bell = 1, Conjugate = 2 };

BasisChoice basis_choice_from_int(int choice);
inline int to_int(BasisChoice c) { return static_cast<int>(c); }

/// Bell basis on qubits 4,5: phi-, psi-, phi+, psi+.
MeasurementBasis bmb1();
/// |001>, |010>, |100>, |111> on qubits 1,2,3.
MeasurementBasis amb1();
/// |0+>, |0->, |1+>, |1-> on qubits 4,5.
MeasurementBasis bmb2();
/// The four three-qubit partners of bmb2() on qubits 1,2,3 (built on the
/// 1,3,2 ordering and permuted back), normalized.
MeasurementBasis amb2();

/// Bob's and Alice's bases for one choice; element k of one is correlated with element k of the other.
struct BasisPair {
    MeasurementBasis alice;
    MeasurementBasis bob;
};
const BasisPair &basis_pair(BasisChoice choice);

inline constexpr std::array<int, 3> kAliceQubits{1, 2, 3};
inline constexpr std::array<int, 2> kBobQubits{4, 5};

/// Lawful (bob_label, alice_label) pairs.
std::set<std::pair<std::string, std::string>> correlation_table(BasisChoice choice);
bool is_consistent(BasisChoice choice, const std::string &bob_label, const std::string &alice_label);

struct CheckOutcome {
    BasisChoice basis;
    std::string bob_label;
    std::string alice_label;
    bool consistent;
};

/// Eve's interaction with the transmitted qubits: a unitary on
/// (qubit 4) (x) (qubit 5) (x) (Eve, dimension d) and her initial register state.
class Attack {
  public:
    Attack(std::string name, CMatrix unitary, StateVector initial_eve_state);

    static Attack identity(int eve_dim = 4);
    /// Copies qubits 4 and 5 into Eve's two qubits with CNOTs.
    static Attack intercept();
    /// Copies the parity of qubits 4 and 5 into Eve's first qubit.
    static Attack parity();
    /// identity | intercept | parity
    static Attack named(const std::string &name);

    static Attack from_json(const nlohmann::ordered_json &j, std::string name = "file");
    nlohmann::ordered_json to_json() const;

    const std::string &name() const noexcept { return name_; }
    int eve_dim() const noexcept { return initial_eve_state_.dim(1); }
    const CMatrix &unitary() const noexcept { return unitary_; }
    const StateVector &initial_eve_state() const noexcept { return initial_eve_state_; }

  private:
    std::string name_;
    CMatrix unitary_;
    StateVector initial_eve_state_;
};

Attack load_attack_file(const std::string &path);

/// Haar-random unitary and random Eve state.
Attack random_attack(Rng &rng, int eve_dim = 4);

/// A random attack that acts as |i>|eta> -> |i>|e> for all i (and arbitrarily
/// on the orthogonal complement), i.e. one that meets every zero-error condition.
Attack constraint_satisfying_attack(Rng &rng, int eve_dim = 4);

/// Haar-random unitary of size n (QR of a complex Ginibre matrix with phases fixed).
CMatrix haar_unitary(Rng &rng, int n);

/// Adjoins Eve's register to a five-qubit state and applies the attack unitary
/// to (4, 5, Eve). Result dims are {2,2,2,2,2,d}.
StateVector apply_attack(const StateVector &state, const Attack &attack);

/// Exact P(alice = k, bob = j) for the joint measurement, rows indexed by Alice.
Eigen::Matrix4d joint_probabilities(const StateVector &state, BasisChoice choice);

/// Total probability of label pairs outside the correlation table.
double detection_probability(const StateVector &state, BasisChoice choice);
double detection_probability(const Attack &attack, BasisChoice choice);

/// eta(i, j) is the Eve component of U(|i>|eta>) on outcome |j> of qubits 4,5,
/// with i, j in {00, 01, 10, 11} = 0..3.
struct AncillaDecomposition {
    int eve_dim = 0;
    std::array<std::array<CVector, 4>, 4> eta;

    const CVector &operator()(int i, int j) const { return eta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    /// sum_j ||eta_ij||^2 for each input i; all ones for a unitary attack.
    Eigen::Vector4d row_norms() const;
    /// Applies the attack to a five-qubit state using only the eta vectors.
    StateVector reconstruct(const StateVector &state) const;
};

AncillaDecomposition decompose_ancillas(const Attack &attack);

struct ConstraintReport {
    std::vector<std::string> names_1;
    std::vector<double> residual_set_1;
    std::vector<std::string> names_2;
    std::vector<double> residual_set_2;
    double max_residual = 0.0;
    bool satisfied = false;
};

/// Evaluates the two published ancilla constraint sets as norms of vector
/// differences (equalities) and of vectors (nullities).
ConstraintReport constraint_report(const Attack &attack, double tol = kAccumTol);

/// True when apply_attack(|psi5>, attack) is a product across qubits | Eve and
/// its qubit factor is |psi5>, both at `tol`.
bool verify_factorization(const Attack &attack, double tol = kAccumTol);

}  // namespace qconv

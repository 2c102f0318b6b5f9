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

/**
 * @file
 * Dense state-vector and density-matrix kernel.
 *
 * Subsystems are addressed by 1-based position. The first subsystem is the
 * most significant digit of the amplitude index, so the ket |b1 b2 ... bn>
 * over qubits lives at index sum_k b_k * 2^(n-k). A non-qubit subsystem
 * (Eve's register) is always placed last by the protocol code.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qconv/random.hpp"

namespace qconv {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Exact-math comparisons (norms, orthonormality, Hermiticity).
inline constexpr double kExactTol = 1e-12;
/// Checks over accumulated arithmetic (probabilities, fidelities after circuits).
inline constexpr double kAccumTol = 1e-9;
/// Unitarity of caller-supplied matrices.
inline constexpr double kUnitaryTol = 1e-10;

std::size_t dims_product(std::span<const int> dims);

class StateVector {
  public:
    /// Takes amplitudes as given; throws DomainError on a length mismatch
    /// and ValidationError if the norm is off by more than kExactTol.
    StateVector(std::vector<int> dims, CVector amplitudes);

    /// Rescales to unit norm first. Throws ValidationError on a zero vector.
    static StateVector normalized(std::vector<int> dims, CVector amplitudes);

    const std::vector<int> &dims() const noexcept { return dims_; }
    int num_subsystems() const noexcept { return static_cast<int>(dims_.size()); }
    int dim(int subsystem) const;
    std::size_t size() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

    const CVector &amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](std::size_t index) const { return amplitudes_[static_cast<Eigen::Index>(index)]; }
    double norm() const { return amplitudes_.norm(); }

  private:
    std::vector<int> dims_;
    CVector amplitudes_;
};

/// Amplitudes over a subset of subsystems that are not necessarily normalized,
/// e.g. what is left after contracting some subsystems against a bra.
struct PartialState {
    std::vector<int> dims;
    CVector amplitudes;

    double probability() const { return amplitudes.squaredNorm(); }
};

class DensityMatrix {
  public:
    DensityMatrix(std::vector<int> dims, CMatrix entries);

    const std::vector<int> &dims() const noexcept { return dims_; }
    Eigen::Index dim() const noexcept { return entries_.rows(); }
    const CMatrix &entries() const noexcept { return entries_; }
    Complex operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }

    Complex trace() const { return entries_.trace(); }
    /// Ascending eigenvalues of the Hermitian part.
    Eigen::VectorXd eigenvalues() const;
    double purity() const;
    /// Hermitian, unit trace and positive semidefinite, all within `tol`.
    bool is_valid(double tol = kExactTol) const;

  private:
    std::vector<int> dims_;
    CMatrix entries_;
};

class MeasurementBasis {
  public:
    /// Validates pairwise orthonormality at kExactTol and that all states share
    /// the same dims with count <= dimension.
    MeasurementBasis(std::vector<std::string> labels, std::vector<StateVector> states);

    /// Computational basis over the given dims, labels are digit strings ("010").
    static MeasurementBasis computational(std::vector<int> dims);

    std::size_t size() const noexcept { return states_.size(); }
    const std::vector<std::string> &labels() const noexcept { return labels_; }
    const std::vector<StateVector> &states() const noexcept { return states_; }
    const std::string &label(std::size_t i) const { return labels_.at(i); }
    const StateVector &state(std::size_t i) const { return states_.at(i); }
    std::size_t index_of(const std::string &label) const;

  private:
    std::vector<std::string> labels_;
    std::vector<StateVector> states_;
};

struct MeasurementOutcome {
    std::size_t index = 0;
    std::string label;
    double probability = 0.0;
    StateVector post_state;
};

StateVector basis_state(std::span<const int> dims, std::span<const int> digits);

/// |a> (x) |b>, dims concatenated.
StateVector tensor(const StateVector &a, const StateVector &b);

/// True if u is square and ||u^dagger u - I||_max <= tol.
bool is_unitary(const CMatrix &u, double tol = kUnitaryTol);

/// Applies u to the listed subsystems (in the listed order, most significant
/// first within u's index) and the identity elsewhere.
StateVector apply_unitary(const StateVector &state, const CMatrix &u, std::span<const int> targets);

/// <a|b>, conjugating a.
Complex inner_product(const StateVector &a, const StateVector &b);

/// |<a|b>|^2; the only state-equality test used across the project.
double fidelity(const StateVector &a, const StateVector &b);

/// Reorders subsystems: subsystem k of the result is subsystem order[k-1] of the input.
StateVector permute(const StateVector &state, std::span<const int> order);

/// (<bra|_targets (x) I) |state>; the result spans the remaining subsystems in
/// their original order.
PartialState partial_inner(const StateVector &bra, const StateVector &state, std::span<const int> targets);

/// Reduced density matrix on `keep`, ordered as listed.
DensityMatrix partial_trace(const StateVector &state, std::span<const int> keep);

/// Schmidt coefficients (singular values, descending) for the cut partition | rest.
Eigen::VectorXd schmidt_coefficients(const StateVector &state, std::span<const int> partition);

int schmidt_rank(const StateVector &state, std::span<const int> partition, double tol = 1e-9);

/// Born probabilities of each basis element on `targets`, no completeness check.
std::vector<double> outcome_probabilities(const StateVector &state, const MeasurementBasis &basis,
                                          std::span<const int> targets);

/// Samples a projective measurement. Throws ValidationError when the basis does
/// not cover the target marginal (probabilities sum away from 1 by > kAccumTol).
MeasurementOutcome measure_in_basis(const StateVector &state, const MeasurementBasis &basis,
                                    std::span<const int> targets, Rng &rng);

}  // namespace qconv

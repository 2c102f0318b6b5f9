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

#include "qconv/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qconv/errors.hpp"

namespace qconv {

namespace {

// Row-major strides for MSB-first indexing.
std::vector<std::size_t> strides_of(const std::vector<int> &dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) {
        strides[k - 1] = strides[k] * static_cast<std::size_t>(dims[k]);
    }
    return strides;
}

// Converts 1-based targets to 0-based positions, rejecting out-of-range and repeats.
std::vector<int> zero_based_targets(std::span<const int> targets, int num_subsystems) {
    std::vector<int> out;
    out.reserve(targets.size());
    std::vector<bool> seen(static_cast<std::size_t>(num_subsystems), false);
    for (int t : targets) {
        if (t < 1 || t > num_subsystems) {
            throw DomainError("subsystem index " + std::to_string(t) + " out of range 1.." +
                              std::to_string(num_subsystems));
        }
        if (seen[static_cast<std::size_t>(t - 1)]) {
            throw DomainError("repeated subsystem index " + std::to_string(t));
        }
        seen[static_cast<std::size_t>(t - 1)] = true;
        out.push_back(t - 1);
    }
    return out;
}

// Index layout for a (targets | rest) split: `offsets[s]` is the flat-index
// contribution of target sub-index s, `bases[r]` the flat index of rest
// sub-index r with all target digits zero. Both enumerate MSB-first.
struct Split {
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> bases;
    std::vector<int> target_dims;
    std::vector<int> rest_dims;
};

Split make_split(const std::vector<int> &dims, const std::vector<int> &targets0) {
    const auto strides = strides_of(dims);
    Split split;
    std::vector<bool> is_target(dims.size(), false);
    for (int t : targets0) {
        is_target[static_cast<std::size_t>(t)] = true;
        split.target_dims.push_back(dims[static_cast<std::size_t>(t)]);
    }
    std::vector<int> rest0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (!is_target[k]) {
            rest0.push_back(static_cast<int>(k));
            split.rest_dims.push_back(dims[k]);
        }
    }

    auto enumerate = [&](const std::vector<int> &positions) {
        std::vector<std::size_t> flat{0};
        for (int pos : positions) {
            const auto p = static_cast<std::size_t>(pos);
            std::vector<std::size_t> next;
            next.reserve(flat.size() * static_cast<std::size_t>(dims[p]));
            for (std::size_t f : flat) {
                for (int digit = 0; digit < dims[p]; ++digit) {
                    next.push_back(f + static_cast<std::size_t>(digit) * strides[p]);
                }
            }
            flat = std::move(next);
        }
        return flat;
    };
    split.offsets = enumerate(targets0);
    split.bases = enumerate(rest0);
    return split;
}

}  // namespace

std::size_t dims_product(std::span<const int> dims) {
    std::size_t total = 1;
    for (int d : dims) {
        if (d < 1) {
            throw DomainError("subsystem dimensions must be positive");
        }
        total *= static_cast<std::size_t>(d);
    }
    return total;
}

StateVector::StateVector(std::vector<int> dims, CVector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    if (dims_.empty()) {
        throw DomainError("state needs at least one subsystem");
    }
    if (dims_product(dims_) != static_cast<std::size_t>(amplitudes_.size())) {
        throw DomainError("amplitude count " + std::to_string(amplitudes_.size()) +
                          " does not match the product of subsystem dims");
    }
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > kExactTol) {
        throw ValidationError("state is not normalized (norm^2 = " + std::to_string(amplitudes_.squaredNorm()) +
                              ")");
    }
}

StateVector StateVector::normalized(std::vector<int> dims, CVector amplitudes) {
    const double n = amplitudes.norm();
    if (n == 0.0) {
        throw ValidationError("cannot normalize the zero vector");
    }
    amplitudes /= n;
    return StateVector(std::move(dims), std::move(amplitudes));
}

int StateVector::dim(int subsystem) const {
    if (subsystem < 1 || subsystem > num_subsystems()) {
        throw DomainError("subsystem index out of range");
    }
    return dims_[static_cast<std::size_t>(subsystem - 1)];
}

DensityMatrix::DensityMatrix(std::vector<int> dims, CMatrix entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() ||
        static_cast<std::size_t>(entries_.rows()) != dims_product(dims_)) {
        throw DomainError("density matrix shape does not match its dims");
    }
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    const CMatrix hermitian = 0.5 * (entries_ + entries_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double DensityMatrix::purity() const {
    return (entries_ * entries_).trace().real();
}

bool DensityMatrix::is_valid(double tol) const {
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    if (std::abs(trace() - Complex(1.0, 0.0)) > tol) {
        return false;
    }
    return eigenvalues().minCoeff() >= -tol;
}

MeasurementBasis::MeasurementBasis(std::vector<std::string> labels, std::vector<StateVector> states)
    : labels_(std::move(labels)), states_(std::move(states)) {
    if (labels_.size() != states_.size() || states_.empty()) {
        throw DomainError("basis needs one label per state and at least one state");
    }
    const auto &dims = states_.front().dims();
    if (states_.size() > dims_product(dims)) {
        throw DomainError("more basis states than the subsystem dimension");
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (states_[i].dims() != dims) {
            throw DomainError("basis states must share subsystem dims");
        }
        for (std::size_t j = i; j < states_.size(); ++j) {
            const Complex g = inner_product(states_[i], states_[j]);
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(g - expected) > kExactTol) {
                throw ValidationError("basis states " + labels_[i] + " and " + labels_[j] +
                                      " are not orthonormal");
            }
        }
    }
}

MeasurementBasis MeasurementBasis::computational(std::vector<int> dims) {
    const std::size_t total = dims_product(dims);
    std::vector<std::string> labels;
    std::vector<StateVector> states;
    labels.reserve(total);
    states.reserve(total);
    const auto strides = strides_of(dims);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::string label;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            label += std::to_string((idx / strides[k]) % static_cast<std::size_t>(dims[k]));
        }
        CVector amps = CVector::Zero(static_cast<Eigen::Index>(total));
        amps[static_cast<Eigen::Index>(idx)] = 1.0;
        labels.push_back(std::move(label));
        states.emplace_back(dims, std::move(amps));
    }
    return MeasurementBasis(std::move(labels), std::move(states));
}

std::size_t MeasurementBasis::index_of(const std::string &label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw DomainError("unknown basis label '" + label + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

StateVector basis_state(std::span<const int> dims, std::span<const int> digits) {
    if (dims.size() != digits.size()) {
        throw DomainError("need one digit per subsystem");
    }
    std::vector<int> d(dims.begin(), dims.end());
    const auto strides = strides_of(d);
    std::size_t index = 0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (digits[k] < 0 || digits[k] >= d[k]) {
            throw DomainError("digit " + std::to_string(digits[k]) + " out of range for subsystem " +
                              std::to_string(k + 1));
        }
        index += static_cast<std::size_t>(digits[k]) * strides[k];
    }
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(dims_product(d)));
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(std::move(d), std::move(amps));
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    CVector amps(static_cast<Eigen::Index>(a.size() * b.size()));
    const auto nb = static_cast<Eigen::Index>(b.size());
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.size()); ++i) {
        amps.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
    }
    return StateVector::normalized(std::move(dims), std::move(amps));
}

bool is_unitary(const CMatrix &u, double tol) {
    if (u.rows() != u.cols() || u.rows() == 0) {
        return false;
    }
    const CMatrix residual = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
    return residual.cwiseAbs().maxCoeff() <= tol;
}

StateVector apply_unitary(const StateVector &state, const CMatrix &u, std::span<const int> targets) {
    const auto targets0 = zero_based_targets(targets, state.num_subsystems());
    const Split split = make_split(state.dims(), targets0);
    if (static_cast<std::size_t>(u.rows()) != split.offsets.size() || u.rows() != u.cols()) {
        throw DomainError("unitary dimension does not match the product of target dims");
    }
    if (!is_unitary(u)) {
        throw ValidationError("matrix is not unitary within tolerance");
    }

    CVector out(state.amplitudes().size());
    CVector block(u.rows());
    for (std::size_t base : split.bases) {
        for (std::size_t s = 0; s < split.offsets.size(); ++s) {
            block[static_cast<Eigen::Index>(s)] = state.amplitudes()[static_cast<Eigen::Index>(base + split.offsets[s])];
        }
        const CVector mixed = u * block;
        for (std::size_t s = 0; s < split.offsets.size(); ++s) {
            out[static_cast<Eigen::Index>(base + split.offsets[s])] = mixed[static_cast<Eigen::Index>(s)];
        }
    }
    return StateVector::normalized(state.dims(), std::move(out));
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.dims() != b.dims()) {
        throw DomainError("inner product of states with different subsystem dims");
    }
    return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(inner_product(a, b));
}

StateVector permute(const StateVector &state, std::span<const int> order) {
    if (static_cast<int>(order.size()) != state.num_subsystems()) {
        throw DomainError("permutation must list every subsystem once");
    }
    const auto order0 = zero_based_targets(order, state.num_subsystems());
    // Enumerating the old layout in the new subsystem order yields, for each
    // new flat index, the old flat index it reads from.
    const Split split = make_split(state.dims(), order0);
    CVector out(state.amplitudes().size());
    for (std::size_t i = 0; i < split.offsets.size(); ++i) {
        out[static_cast<Eigen::Index>(i)] = state.amplitudes()[static_cast<Eigen::Index>(split.offsets[i])];
    }
    return StateVector(split.target_dims, std::move(out));
}

PartialState partial_inner(const StateVector &bra, const StateVector &state, std::span<const int> targets) {
    const auto targets0 = zero_based_targets(targets, state.num_subsystems());
    const Split split = make_split(state.dims(), targets0);
    if (bra.dims() != split.target_dims) {
        throw DomainError("bra dims do not match the target subsystems");
    }
    PartialState out{split.rest_dims, CVector::Zero(static_cast<Eigen::Index>(split.bases.size()))};
    const CVector &b = bra.amplitudes();
    for (std::size_t r = 0; r < split.bases.size(); ++r) {
        Complex acc = 0.0;
        for (std::size_t s = 0; s < split.offsets.size(); ++s) {
            acc += std::conj(b[static_cast<Eigen::Index>(s)]) *
                   state.amplitudes()[static_cast<Eigen::Index>(split.bases[r] + split.offsets[s])];
        }
        out.amplitudes[static_cast<Eigen::Index>(r)] = acc;
    }
    return out;
}

namespace {

// Coefficient matrix with rows indexed by `partition` and columns by the rest.
CMatrix bipartite_matrix(const StateVector &state, std::span<const int> partition) {
    const auto part0 = zero_based_targets(partition, state.num_subsystems());
    const Split split = make_split(state.dims(), part0);
    CMatrix m(static_cast<Eigen::Index>(split.offsets.size()), static_cast<Eigen::Index>(split.bases.size()));
    for (std::size_t s = 0; s < split.offsets.size(); ++s) {
        for (std::size_t r = 0; r < split.bases.size(); ++r) {
            m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r)) =
                state.amplitudes()[static_cast<Eigen::Index>(split.bases[r] + split.offsets[s])];
        }
    }
    return m;
}

}  // namespace

DensityMatrix partial_trace(const StateVector &state, std::span<const int> keep) {
    if (keep.empty()) {
        throw DomainError("partial trace must keep at least one subsystem");
    }
    const CMatrix m = bipartite_matrix(state, keep);
    std::vector<int> dims;
    for (int k : keep) {
        dims.push_back(state.dim(k));
    }
    return DensityMatrix(std::move(dims), m * m.adjoint());
}

Eigen::VectorXd schmidt_coefficients(const StateVector &state, std::span<const int> partition) {
    if (partition.empty() || static_cast<int>(partition.size()) >= state.num_subsystems()) {
        throw DomainError("Schmidt partition must be a proper nonempty subset");
    }
    const CMatrix m = bipartite_matrix(state, partition);
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues();
}

int schmidt_rank(const StateVector &state, std::span<const int> partition, double tol) {
    const Eigen::VectorXd sv = schmidt_coefficients(state, partition);
    return static_cast<int>((sv.array() > tol).count());
}

std::vector<double> outcome_probabilities(const StateVector &state, const MeasurementBasis &basis,
                                          std::span<const int> targets) {
    std::vector<double> probs;
    probs.reserve(basis.size());
    for (const auto &b : basis.states()) {
        probs.push_back(partial_inner(b, state, targets).probability());
    }
    return probs;
}

MeasurementOutcome measure_in_basis(const StateVector &state, const MeasurementBasis &basis,
                                    std::span<const int> targets, Rng &rng) {
    const auto probs = outcome_probabilities(state, basis, targets);
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(total - 1.0) > kAccumTol) {
        throw ValidationError("basis does not cover the measured marginal (total probability " +
                              std::to_string(total) + ")");
    }

    const double draw = uniform01(rng) * total;
    std::size_t chosen = probs.size();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) {
            continue;
        }
        chosen = i;  // falls through to the last populated outcome on rounding
        cumulative += probs[i];
        if (draw < cumulative) {
            break;
        }
    }

    const StateVector &ket = basis.state(chosen);
    const PartialState rest = partial_inner(ket, state, targets);
    // Rebuild (ket on targets) (x) (rest elsewhere), then restore subsystem order.
    std::vector<int> order(static_cast<std::size_t>(state.num_subsystems()));
    std::vector<bool> is_target(order.size(), false);
    for (int t : targets) {
        is_target[static_cast<std::size_t>(t - 1)] = true;
    }
    std::vector<int> layout(targets.begin(), targets.end());
    for (int k = 1; k <= state.num_subsystems(); ++k) {
        if (!is_target[static_cast<std::size_t>(k - 1)]) {
            layout.push_back(k);
        }
    }
    for (std::size_t pos = 0; pos < layout.size(); ++pos) {
        order[static_cast<std::size_t>(layout[pos] - 1)] = static_cast<int>(pos + 1);
    }
    StateVector joined = rest.dims.empty()
                             ? ket
                             : tensor(ket, StateVector::normalized(rest.dims, rest.amplitudes));
    return MeasurementOutcome{chosen, basis.label(chosen), probs[chosen], permute(joined, order)};
}

}  // namespace qconv

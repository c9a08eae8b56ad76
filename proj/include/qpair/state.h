// Copyright 2026 The qpair Authors
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

#ifndef QPAIR_STATE_H
#define QPAIR_STATE_H

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qpair {

/// Tolerance for identities that hold exactly in exact arithmetic.
inline constexpr double kExactTol = 1e-10;
/// Tolerance for checks that go through an eigen- or singular-value solver.
inline constexpr double kSpectralTol = 1e-9;
/// Probabilities below this are dropped from measurement distributions.
inline constexpr double kProbabilityFloor = 1e-12;
/// Largest register the dense simulator accepts.
inline constexpr int kMaxQubits = 12;

/// Qubit q of an n-qubit register lives at bit (n - 1 - q) of the basis
/// index, so qubit 0 is the most significant bit and |100> has index 4.
inline constexpr std::uint64_t qubit_mask(int num_qubits, int qubit) {
    return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

/// Renders a basis index as a bitstring with qubit 0 first.
inline std::string to_bitstring(std::uint64_t index, int num_qubits) {
    std::string out(static_cast<size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; q++) {
        if (index & qubit_mask(num_qubits, q)) {
            out[static_cast<size_t>(q)] = '1';
        }
    }
    return out;
}

/// Inverse of to_bitstring. Throws std::domain_error on characters other than 0/1.
inline std::uint64_t from_bitstring(const std::string &bits) {
    if (bits.empty() || bits.size() > static_cast<size_t>(kMaxQubits)) {
        throw std::domain_error("bitstring '" + bits + "' must have 1.." + std::to_string(kMaxQubits) + " characters");
    }
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::domain_error("bitstring '" + bits + "' contains a character other than 0 or 1");
        }
        index = (index << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return index;
}

namespace detail {

/// `tol` widened to what the scalar type can actually resolve.
template <typename Real>
constexpr Real tolerance(double tol) {
    return std::max(Real(tol), Real(64) * std::numeric_limits<Real>::epsilon());
}

inline void check_num_qubits(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::domain_error(
            "num_qubits must be in [1, " + std::to_string(kMaxQubits) + "], got " + std::to_string(num_qubits));
    }
}

inline int log2_exact(Eigen::Index dim) {
    if (dim < 1 || (dim & (dim - 1)) != 0) {
        throw std::domain_error("dimension " + std::to_string(dim) + " is not a power of two");
    }
    int k = 0;
    while ((Eigen::Index{1} << k) < dim) {
        k++;
    }
    return k;
}

inline void check_targets(std::span<const int> targets, int num_qubits) {
    for (size_t i = 0; i < targets.size(); i++) {
        if (targets[i] < 0 || targets[i] >= num_qubits) {
            throw std::domain_error(
                "qubit " + std::to_string(targets[i]) + " out of range for " + std::to_string(num_qubits) +
                "-qubit register");
        }
        for (size_t j = 0; j < i; j++) {
            if (targets[i] == targets[j]) {
                throw std::domain_error("qubit " + std::to_string(targets[i]) + " listed twice");
            }
        }
    }
}

/// Masks of the listed qubits, first listed qubit first.
inline std::vector<std::uint64_t> masks_of(std::span<const int> qubits, int num_qubits) {
    std::vector<std::uint64_t> masks;
    masks.reserve(qubits.size());
    for (int q : qubits) {
        masks.push_back(qubit_mask(num_qubits, q));
    }
    return masks;
}

/// Qubits not in `qubits`, ascending.
inline std::vector<int> complement_of(std::span<const int> qubits, int num_qubits) {
    std::vector<int> rest;
    for (int q = 0; q < num_qubits; q++) {
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) {
            rest.push_back(q);
        }
    }
    return rest;
}

/// Full-register index whose listed qubits carry the bits of `local`
/// (first listed qubit = most significant bit of `local`).
inline std::uint64_t scatter_bits(std::uint64_t local, std::span<const std::uint64_t> masks) {
    std::uint64_t out = 0;
    const size_t k = masks.size();
    for (size_t i = 0; i < k; i++) {
        if (local & (std::uint64_t{1} << (k - 1 - i))) {
            out |= masks[i];
        }
    }
    return out;
}

/// Inverse of scatter_bits restricted to the listed qubits.
inline std::uint64_t gather_bits(std::uint64_t full, std::span<const std::uint64_t> masks) {
    std::uint64_t out = 0;
    for (std::uint64_t m : masks) {
        out = (out << 1) | static_cast<std::uint64_t>((full & m) != 0);
    }
    return out;
}

}  // namespace detail

/// Square unitary matrix of power-of-two dimension. Validated on construction.
template <typename Real>
class UnitaryT {
   public:
    using Scalar = std::complex<Real>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    explicit UnitaryT(Matrix entries) : entries_(std::move(entries)) {
        if (entries_.rows() != entries_.cols()) {
            throw std::domain_error("unitary must be square");
        }
        num_qubits_ = detail::log2_exact(entries_.rows());
        Matrix defect = entries_ * entries_.adjoint() - Matrix::Identity(entries_.rows(), entries_.cols());
        if (defect.cwiseAbs().maxCoeff() > detail::tolerance<Real>(kExactTol)) {
            throw std::domain_error("matrix is not unitary (max |U U^dagger - I| entry exceeds 1e-10)");
        }
    }

    Eigen::Index dim() const {
        return entries_.rows();
    }
    int num_qubits() const {
        return num_qubits_;
    }
    const Matrix &matrix() const {
        return entries_;
    }
    UnitaryT adjoint() const {
        return UnitaryT(entries_.adjoint());
    }

    friend UnitaryT operator*(const UnitaryT &a, const UnitaryT &b) {
        if (a.dim() != b.dim()) {
            throw std::domain_error("cannot multiply unitaries of different dimension");
        }
        return UnitaryT(a.entries_ * b.entries_);
    }

   private:
    Matrix entries_;
    int num_qubits_ = 0;
};

/// Normalized pure state of a small register.
template <typename Real>
class StateVectorT {
   public:
    using Scalar = std::complex<Real>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    StateVectorT(int num_qubits, Vector amplitudes) : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
        detail::check_num_qubits(num_qubits_);
        if (amplitudes_.size() != (Eigen::Index{1} << num_qubits_)) {
            throw std::domain_error(
                "expected " + std::to_string(Eigen::Index{1} << num_qubits_) + " amplitudes, got " +
                std::to_string(amplitudes_.size()));
        }
        using std::abs;
        if (abs(amplitudes_.squaredNorm() - Real(1)) > detail::tolerance<Real>(kExactTol)) {
            throw std::domain_error("state is not normalized");
        }
    }

    int num_qubits() const {
        return num_qubits_;
    }
    Eigen::Index dim() const {
        return amplitudes_.size();
    }
    const Vector &amplitudes() const {
        return amplitudes_;
    }
    Scalar operator[](std::uint64_t index) const {
        return amplitudes_(static_cast<Eigen::Index>(index));
    }

   private:
    int num_qubits_;
    Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix. Validated on construction.
template <typename Real>
class DensityMatrixT {
   public:
    using Scalar = std::complex<Real>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    DensityMatrixT(int num_qubits, Matrix entries) : num_qubits_(num_qubits), entries_(std::move(entries)) {
        detail::check_num_qubits(num_qubits_);
        const Eigen::Index dim = Eigen::Index{1} << num_qubits_;
        if (entries_.rows() != dim || entries_.cols() != dim) {
            throw std::domain_error("density matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
        }
        if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > detail::tolerance<Real>(kExactTol)) {
            throw std::domain_error("density matrix is not Hermitian");
        }
        using std::abs;
        if (abs(entries_.trace() - Scalar(1)) > detail::tolerance<Real>(kExactTol)) {
            throw std::domain_error("density matrix trace is not 1");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -detail::tolerance<Real>(kSpectralTol)) {
            throw std::domain_error("density matrix has a negative eigenvalue");
        }
    }

    int num_qubits() const {
        return num_qubits_;
    }
    Eigen::Index dim() const {
        return entries_.rows();
    }
    const Matrix &matrix() const {
        return entries_;
    }

   private:
    int num_qubits_;
    Matrix entries_;
};

using Unitary = UnitaryT<double>;
using StateVector = StateVectorT<double>;
using DensityMatrix = DensityMatrixT<double>;

template <typename Real = double>
StateVectorT<Real> basis_state(int num_qubits, std::uint64_t index) {
    detail::check_num_qubits(num_qubits);
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    if (index >= dim) {
        throw std::domain_error(
            "basis index " + std::to_string(index) + " out of range for " + std::to_string(num_qubits) + " qubits");
    }
    typename StateVectorT<Real>::Vector amps = StateVectorT<Real>::Vector::Zero(static_cast<Eigen::Index>(dim));
    amps(static_cast<Eigen::Index>(index)) = 1;
    return StateVectorT<Real>(num_qubits, std::move(amps));
}

/// Tensor product a ⊗ b; a's qubits come first.
template <typename Real>
StateVectorT<Real> tensor(const StateVectorT<Real> &a, const StateVectorT<Real> &b) {
    typename StateVectorT<Real>::Vector amps(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); i++) {
        amps.segment(i * b.dim(), b.dim()) = a.amplitudes()(i) * b.amplitudes();
    }
    return StateVectorT<Real>(a.num_qubits() + b.num_qubits(), std::move(amps));
}

/// Applies `gate` to the listed qubits. The first target is the most
/// significant axis of the gate matrix.
template <typename Real>
StateVectorT<Real> apply_gate(const StateVectorT<Real> &state, const UnitaryT<Real> &gate, std::span<const int> targets) {
    const int n = state.num_qubits();
    if (gate.num_qubits() != static_cast<int>(targets.size())) {
        throw std::domain_error(
            "gate acts on " + std::to_string(gate.num_qubits()) + " qubits but " + std::to_string(targets.size()) +
            " targets were given");
    }
    detail::check_targets(targets, n);
    const auto masks = detail::masks_of(targets, n);
    std::uint64_t target_mask = 0;
    for (auto m : masks) {
        target_mask |= m;
    }
    const Eigen::Index gdim = gate.dim();
    std::vector<std::uint64_t> offsets(static_cast<size_t>(gdim));
    for (Eigen::Index k = 0; k < gdim; k++) {
        offsets[static_cast<size_t>(k)] = detail::scatter_bits(static_cast<std::uint64_t>(k), masks);
    }

    typename StateVectorT<Real>::Vector out = state.amplitudes();
    typename StateVectorT<Real>::Vector local(gdim);
    const std::uint64_t dim = static_cast<std::uint64_t>(state.dim());
    for (std::uint64_t base = 0; base < dim; base++) {
        if (base & target_mask) {
            continue;
        }
        for (Eigen::Index k = 0; k < gdim; k++) {
            local(k) = state.amplitudes()(static_cast<Eigen::Index>(base | offsets[static_cast<size_t>(k)]));
        }
        local = gate.matrix() * local;
        for (Eigen::Index k = 0; k < gdim; k++) {
            out(static_cast<Eigen::Index>(base | offsets[static_cast<size_t>(k)])) = local(k);
        }
    }
    return StateVectorT<Real>(n, std::move(out));
}

template <typename Real>
StateVectorT<Real> apply_gate(
    const StateVectorT<Real> &state, const UnitaryT<Real> &gate, std::initializer_list<int> targets) {
    return apply_gate(state, gate, std::span<const int>(targets.begin(), targets.size()));
}

/// Lifts `gate` on the listed qubits to the full 2^n x 2^n operator.
template <typename Real>
typename UnitaryT<Real>::Matrix embed(const UnitaryT<Real> &gate, std::span<const int> targets, int num_qubits) {
    detail::check_num_qubits(num_qubits);
    if (gate.num_qubits() != static_cast<int>(targets.size())) {
        throw std::domain_error("gate arity does not match number of targets");
    }
    detail::check_targets(targets, num_qubits);
    const auto masks = detail::masks_of(targets, num_qubits);
    std::uint64_t target_mask = 0;
    for (auto m : masks) {
        target_mask |= m;
    }
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    typename UnitaryT<Real>::Matrix full = UnitaryT<Real>::Matrix::Zero(dim, dim);
    for (std::uint64_t row = 0; row < static_cast<std::uint64_t>(dim); row++) {
        for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(dim); col++) {
            if ((row & ~target_mask) != (col & ~target_mask)) {
                continue;
            }
            full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = gate.matrix()(
                static_cast<Eigen::Index>(detail::gather_bits(row, masks)),
                static_cast<Eigen::Index>(detail::gather_bits(col, masks)));
        }
    }
    return full;
}

/// Single-qubit gate promoted to a controlled gate; the control is the first (most significant) qubit.
template <typename Real>
UnitaryT<Real> controlled(const UnitaryT<Real> &gate) {
    if (gate.dim() != 2) {
        throw std::domain_error("controlled() expects a single-qubit gate");
    }
    typename UnitaryT<Real>::Matrix m = UnitaryT<Real>::Matrix::Identity(4, 4);
    m.bottomRightCorner(2, 2) = gate.matrix();
    return UnitaryT<Real>(std::move(m));
}

/// Born-rule distribution keyed by basis index; entries below 1e-12 omitted.
template <typename Real>
std::map<std::uint64_t, Real> measurement_distribution(const StateVectorT<Real> &state) {
    std::map<std::uint64_t, Real> dist;
    for (Eigen::Index i = 0; i < state.dim(); i++) {
        Real p = std::norm(state.amplitudes()(i));
        if (p >= Real(kProbabilityFloor)) {
            dist.emplace(static_cast<std::uint64_t>(i), p);
        }
    }
    return dist;
}

template <typename Real>
DensityMatrixT<Real> density_matrix(const StateVectorT<Real> &state) {
    return DensityMatrixT<Real>(state.num_qubits(), state.amplitudes() * state.amplitudes().adjoint());
}

/// Reduced state on `keep`; the kept qubits appear in the listed order.
template <typename Real>
DensityMatrixT<Real> partial_trace(const DensityMatrixT<Real> &rho, std::span<const int> keep) {
    const int n = rho.num_qubits();
    if (keep.empty()) {
        throw std::domain_error("partial_trace needs at least one qubit to keep");
    }
    detail::check_targets(keep, n);
    const auto rest = detail::complement_of(keep, n);
    const auto keep_masks = detail::masks_of(keep, n);
    const auto rest_masks = detail::masks_of(rest, n);
    const Eigen::Index kdim = Eigen::Index{1} << keep.size();
    const std::uint64_t rdim = std::uint64_t{1} << rest.size();

    typename DensityMatrixT<Real>::Matrix out = DensityMatrixT<Real>::Matrix::Zero(kdim, kdim);
    for (Eigen::Index i = 0; i < kdim; i++) {
        const auto row_base = detail::scatter_bits(static_cast<std::uint64_t>(i), keep_masks);
        for (Eigen::Index j = 0; j < kdim; j++) {
            const auto col_base = detail::scatter_bits(static_cast<std::uint64_t>(j), keep_masks);
            std::complex<Real> acc = 0;
            for (std::uint64_t t = 0; t < rdim; t++) {
                const auto r = detail::scatter_bits(t, rest_masks);
                acc += rho.matrix()(static_cast<Eigen::Index>(row_base | r), static_cast<Eigen::Index>(col_base | r));
            }
            out(i, j) = acc;
        }
    }
    return DensityMatrixT<Real>(static_cast<int>(keep.size()), std::move(out));
}

template <typename Real>
DensityMatrixT<Real> partial_trace(const DensityMatrixT<Real> &rho, std::initializer_list<int> keep) {
    return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

/// Tr(rho^2).
template <typename Real>
Real purity(const DensityMatrixT<Real> &rho) {
    // Tr(rho rho) = sum_ij |rho_ij|^2 for Hermitian rho.
    return rho.matrix().squaredNorm();
}

/// |<a|b>|, the phase-insensitive overlap magnitude.
template <typename Real>
Real overlap_magnitude(const StateVectorT<Real> &a, const StateVectorT<Real> &b) {
    if (a.dim() != b.dim()) {
        throw std::domain_error("overlap of states with different dimension");
    }
    return std::abs(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace qpair

#endif  // QPAIR_STATE_H

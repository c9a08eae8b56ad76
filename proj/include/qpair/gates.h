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

#ifndef QPAIR_GATES_H
#define QPAIR_GATES_H

#include <cmath>

#include "qpair/state.h"

namespace qpair::gates {

template <typename Real = double>
UnitaryT<Real> identity(int num_qubits = 1) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    return UnitaryT<Real>(UnitaryT<Real>::Matrix::Identity(dim, dim));
}

template <typename Real = double>
UnitaryT<Real> hadamard() {
    const Real s = Real(1) / std::sqrt(Real(2));
    typename UnitaryT<Real>::Matrix m(2, 2);
    m << s, s, s, -s;
    return UnitaryT<Real>(std::move(m));
}

template <typename Real = double>
UnitaryT<Real> pauli_x() {
    typename UnitaryT<Real>::Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return UnitaryT<Real>(std::move(m));
}

template <typename Real = double>
UnitaryT<Real> pauli_z() {
    typename UnitaryT<Real>::Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return UnitaryT<Real>(std::move(m));
}

/// Control on the first target, flip on the second.
template <typename Real = double>
UnitaryT<Real> cnot() {
    return controlled(pauli_x<Real>());
}

/// a ⊗ b; a acts on the more significant qubits.
template <typename Real>
UnitaryT<Real> kron(const UnitaryT<Real> &a, const UnitaryT<Real> &b) {
    typename UnitaryT<Real>::Matrix m(a.dim() * b.dim(), a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); i++) {
        for (Eigen::Index j = 0; j < a.dim(); j++) {
            m.block(i * b.dim(), j * b.dim(), b.dim(), b.dim()) = a.matrix()(i, j) * b.matrix();
        }
    }
    return UnitaryT<Real>(std::move(m));
}

}  // namespace qpair::gates

#endif  // QPAIR_GATES_H

#pragma once

#include "effham/linalg.hpp"
#include "effham/philox.hpp"

#include <cmath>

namespace effham::testing {

inline ComplexMatrix random_hermitian(Philox& rng, Index dim) {
  ComplexMatrix h(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    h(i, i) = rng.next_gaussian();
    for (Index j = i + 1; j < dim; ++j) {
      const Complex z(rng.next_gaussian() / std::sqrt(2.0), rng.next_gaussian() / std::sqrt(2.0));
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

inline ComplexMatrix pauli_x() {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  return x;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix y = ComplexMatrix::Zero(2, 2);
  y(0, 1) = Complex(0.0, -1.0);
  y(1, 0) = Complex(0.0, 1.0);
  return y;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace effham::testing

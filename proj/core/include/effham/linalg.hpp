#pragma once

#include "effham/types.hpp"

namespace effham {

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Column k of `vectors` is the normalized eigenvector of `values[k]`.
/// Columns are gauge-fixed: the largest-magnitude entry of each column is
/// real positive (ties broken by lowest row index).
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;
};

/// Relative Frobenius hermiticity defect, ||A - A^dag||_F / max(1, ||A||_F).
double hermiticity_defect(const ComplexMatrix& a);

/// True when `a` is Hermitian within the library-wide 1e-10 relative bound.
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-10);

/// Throws NonHermitianInput when the hermiticity bound fails.
void require_hermitian(const ComplexMatrix& a, const char* who);

HermitianEigen hermitian_eig(const ComplexMatrix& h);

/// A^{-1/2} for Hermitian positive definite A via eigendecomposition.
/// Throws SingularBlock when the smallest eigenvalue falls at or below
/// rel_tol times the largest (non-invertible S_BD upstream).
ComplexMatrix inv_sqrt_psd(const ComplexMatrix& a, double rel_tol = 1e-10);

/// Hermitian PSD square root via eigendecomposition (negative rounding
/// clipped at zero).
ComplexMatrix sqrt_psd(const ComplexMatrix& a);

/// U(t) = S exp(-i 2pi E t) S^dag with H in GHz and t in ns.
ComplexMatrix evolve_operator(const ComplexMatrix& h, double t_ns);

/// Same propagator from a precomputed eigendecomposition.
ComplexMatrix evolve_operator(const HermitianEigen& eig, double t_ns);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

struct Svd {
  ComplexMatrix u;
  RealVector singular_values;
  ComplexMatrix v;  // A = U * diag(s) * V^dag
};

Svd svd(const ComplexMatrix& a);

}  // namespace effham

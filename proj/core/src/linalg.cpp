#include "effham/linalg.hpp"

#include <cmath>
#include <string>

namespace effham {

double hermiticity_defect(const ComplexMatrix& a) {
  const double scale = std::max(1.0, a.norm());
  return (a - a.adjoint()).norm() / scale;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.rows() == a.cols() && hermiticity_defect(a) <= tol;
}

void require_hermitian(const ComplexMatrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw NonHermitianInput(std::string(who) + ": matrix is not square");
  }
  const double defect = hermiticity_defect(a);
  if (defect > 1e-10) {
    throw NonHermitianInput(std::string(who) + ": hermiticity defect " + std::to_string(defect));
  }
}

namespace {

void fix_column_gauge(ComplexMatrix& vectors) {
  for (Index k = 0; k < vectors.cols(); ++k) {
    Index imax = 0;
    double best = -1.0;
    for (Index i = 0; i < vectors.rows(); ++i) {
      const double m = std::abs(vectors(i, k));
      if (m > best + 1e-15) {  // ties keep the lowest index
        best = m;
        imax = i;
      }
    }
    const Complex pivot = vectors(imax, k);
    if (std::abs(pivot) > 0.0) {
      vectors.col(k) *= std::conj(pivot) / std::abs(pivot);
    }
  }
}

}  // namespace

HermitianEigen hermitian_eig(const ComplexMatrix& h) {
  require_hermitian(h, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw EffhamError("hermitian_eig: eigensolver failed");
  }
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
  fix_column_gauge(out.vectors);
  return out;
}

ComplexMatrix inv_sqrt_psd(const ComplexMatrix& a, double rel_tol) {
  const HermitianEigen eig = hermitian_eig(a);
  const double largest = eig.values.maxCoeff();
  const double smallest = eig.values.minCoeff();
  if (largest <= 0.0 || smallest <= rel_tol * largest) {
    throw SingularBlock("inv_sqrt_psd: eigenvalue ratio " +
                        std::to_string(largest > 0.0 ? smallest / largest : 0.0) +
                        " below rel_tol " + std::to_string(rel_tol));
  }
  const RealVector scaled = eig.values.array().rsqrt();
  return eig.vectors * scaled.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix sqrt_psd(const ComplexMatrix& a) {
  const HermitianEigen eig = hermitian_eig(a);
  RealVector root = eig.values;
  for (Index i = 0; i < root.size(); ++i) {
    root[i] = root[i] > 0.0 ? std::sqrt(root[i]) : 0.0;
  }
  return eig.vectors * root.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix evolve_operator(const HermitianEigen& eig, double t_ns) {
  const Index d = eig.values.size();
  ComplexVector phases(d);
  for (Index i = 0; i < d; ++i) {
    const double angle = -2.0 * M_PI * eig.values[i] * t_ns;
    phases[i] = Complex(std::cos(angle), std::sin(angle));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix evolve_operator(const ComplexMatrix& h, double t_ns) {
  return evolve_operator(hermitian_eig(h), t_ns);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw EffhamError("frobenius_distance: dimension mismatch");
  }
  return (a - b).norm();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw EffhamError("commutator: dimension mismatch");
  }
  return a * b - b * a;
}

Svd svd(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return Svd{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

}  // namespace effham

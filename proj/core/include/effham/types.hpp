#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace effham {

// Dense complex matrices carry every operator in this library. Hamiltonian
// entries are ordinary frequencies f = omega/2pi in GHz; time is in ns, so
// phases are exp(-i 2pi f t).
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

struct EffhamError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonHermitianInput : EffhamError {
  explicit NonHermitianInput(const std::string& what) : EffhamError(what) {}
};

struct SingularBlock : EffhamError {
  explicit SingularBlock(const std::string& what) : EffhamError(what) {}
};

// Carries the offending pair of unperturbed levels and their gap in GHz.
struct ResonantDenominator : EffhamError {
  ResonantDenominator(const std::string& what, Index inside, Index outside, double gap_ghz)
      : EffhamError(what), inside(inside), outside(outside), gap(gap_ghz) {}
  Index inside = -1;
  Index outside = -1;
  double gap = 0.0;
};

struct SpectrumMismatch : EffhamError {
  explicit SpectrumMismatch(const std::string& what) : EffhamError(what) {}
};

struct NoConvergence : EffhamError {
  explicit NoConvergence(const std::string& what) : EffhamError(what) {}
};

struct NoPeak : EffhamError {
  explicit NoPeak(const std::string& what) : EffhamError(what) {}
};

struct DimensionCap : EffhamError {
  explicit DimensionCap(const std::string& what) : EffhamError(what) {}
};

struct ZeroDetuning : EffhamError {
  explicit ZeroDetuning(const std::string& what) : EffhamError(what) {}
};

struct NonPositiveJosephson : EffhamError {
  explicit NonPositiveJosephson(const std::string& what) : EffhamError(what) {}
};

struct ConfigError : EffhamError {
  explicit ConfigError(const std::string& what) : EffhamError(what) {}
};

}  // namespace effham

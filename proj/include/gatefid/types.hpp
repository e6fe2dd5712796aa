#pragma once

#include <complex>
#include <map>
#include <string>

#include <Eigen/Dense>

namespace gatefid {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr cd I_UNIT{0.0, 1.0};

// Infidelity contributions, one slot per perturbative order/source.
// All entries are dimensionless; `total` is the sum of whichever
// components a given scheme actually computes.
struct ErrorBreakdown {
  double eps_L1 = 0.0;   // first order, collapse operators
  double eps_H1 = 0.0;   // first order, non-Hermitian Hamiltonian part
  double eps_HH2 = 0.0;  // second order, Hermitian Hamiltonian part
  double eps_LH2 = 0.0;  // second order, mixed
  double total = 0.0;

  void sum_up() { total = eps_L1 + eps_H1 + eps_HH2 + eps_LH2; }
};

// Result of a fidelity evaluation for one parameter point of one scheme.
// `metadata` carries scheme-specific diagnostics (cooperativity, Purcell
// factor, success probability, truncation residuals, warnings...).
struct FidelityReport {
  double fidelity = 1.0;
  double gate_time = 0.0;  // seconds
  ErrorBreakdown breakdown;
  std::map<std::string, double> metadata;
};

}  // namespace gatefid

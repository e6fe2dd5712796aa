#pragma once

// Perturbative infidelity terms computed from the ideal gate evolution
// alone. Nothing in this translation unit builds a d^2-dimensional
// superoperator: every quantity is assembled from d-dimensional propagator
// products sampled at quadrature nodes.

#include <array>
#include <stdexcept>
#include <vector>

#include "gatefid/lindblad.hpp"
#include "gatefid/types.hpp"

namespace gatefid {

struct QuadratureConfig {
  int points_per_segment = 32;   // Gauss-Legendre order per segment
  double tolerance_target = 0.0; // >0 enables a doubled-order consistency check

  void validate() const {
    if (points_per_segment < 8)
      throw std::invalid_argument("quadrature needs at least 8 points/segment");
  }
};

// Thrown when the doubled-order quadrature estimate disagrees with the
// requested tolerance; carries the best available value.
struct QuadratureError : std::runtime_error {
  QuadratureError(double est, double delta_)
      : std::runtime_error("quadrature did not reach the requested tolerance"),
        estimate(est), delta(delta_) {}
  double estimate;
  double delta;
};

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w);

// <psi(t)| obs |psi(t)> along the ideal evolution, |psi(t)> = U_g(t,0)|psi0>.
cd expectation_trajectory(const GateSchedule& schedule, const Vec& psi0,
                          const Mat& obs, double t);

// First order in the collapse rates:
//   sum_k int_0^Tg gamma_k ( <L_k^dag L_k>(t) - |<L_k>(t)|^2 ) dt.
double eps_L_first_order(const GateSchedule& schedule, const Vec& psi0,
                         const std::vector<LindbladTerm>& terms,
                         const QuadratureConfig& quad = {});

// First order in a (possibly non-Hermitian) Hamiltonian perturbation:
//   -2 int_0^Tg delta(t) Im <H_e(t)> dt.   Zero for Hermitian H_e.
double eps_H_first_order(const GateSchedule& schedule, const Vec& psi0,
                         const QuadratureConfig& quad = {});

// Second order in the Hermitized perturbation H = (H_e + H_e^dag)/2:
//   2 int_0^Tg int_0^t delta(t) delta(t') Re( <H(t)H(t')> - <H(t)><H(t')> ).
double eps_HH_second_order(const GateSchedule& schedule, const Vec& psi0,
                           const QuadratureConfig& quad = {});

// Mixed second order (one collapse insertion, one Hamiltonian insertion);
// vanishes when all rates or all deltas are zero.
double eps_LH_second_order(const GateSchedule& schedule, const Vec& psi0,
                           const std::vector<LindbladTerm>& terms,
                           const QuadratureConfig& quad = {});

// Entanglement fidelity of the scheduled channel restricted to a two-qubit
// subspace, via the perturbative terms evaluated on the doubled space
// (two 2-level ancillae (x) system) with the tensor product of two Bell
// pairs as initial state. `qubit_levels` lists the system basis indices of
// |q_ab> for (a,b) = (00,01,10,11).
double entanglement_fidelity(const GateSchedule& schedule,
                             const std::vector<LindbladTerm>& terms,
                             const QuadratureConfig& quad,
                             const std::array<int, 4>& qubit_levels);

// (D f_ent + 1) / (D + 1).
double average_gate_fidelity(double f_ent, int D);

}  // namespace gatefid

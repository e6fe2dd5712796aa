#pragma once

// Cavity-mediated two-qubit gates: photon scattering off a single-sided
// cavity (analytic fidelity plus a cascaded-master-equation simulation),
// the photon-interference protocol (closed forms, optional cavity via the
// Purcell factor, MUB-measurement CZ construction), and the virtual-photon
// exchange gate (non-Hermitian perturbative closed forms plus an exact
// three-body oracle).

#include <array>
#include <vector>

#include "gatefid/constants.hpp"
#include "gatefid/lindblad.hpp"
#include "gatefid/types.hpp"

namespace gatefid::cav {

// ---------------------------------------------------------------------------
// Photon scattering
// ---------------------------------------------------------------------------

struct ScatteringParams {
  double g = consts::yvo::g_cav;       // cavity-ion coupling, rad/s
  double kappa = consts::yvo::kappa;   // cavity decay, rad/s
  // Optical decay split over the two transitions (up' -> up, up' -> down);
  // the cooperativity uses the total gamma1 = gamma1_up + gamma1_down.
  double gamma1_up = consts::yvo::gamma1 / 2.0;
  double gamma1_down = consts::yvo::gamma1 / 2.0;
  double delta_p = 0.0;    // cavity-photon detuning, rad/s
  double delta_yb1 = 0.0;  // cavity-ion detunings, rad/s
  double delta_yb2 = 0.0;
  double sigma_p = 0.0;    // photon bandwidth 1/T1p, rad/s; 0 = unset
  double gamma_spin = 1.0 / consts::yvo::T2s_ground;  // Gamma, rad/s
  double gamma_star =
      1.0 / consts::yvo::T2o_cavity - consts::yvo::gamma1 / 2.0;
  double gamma2 = consts::yvo::gamma2;  // ground spin decay
  double gamma4 = consts::yvo::gamma4;  // ground spin pure dephasing
  double t1o = consts::yvo::T1o;        // optical lifetime (C_eff)
  double t2o = consts::yvo::T2o_cavity; // optical coherence (C_eff)
  double w = 0.7;                       // C_eff weight
  bool use_c_eff = true;  // substitute C -> C_eff when alpha < 0.01

  double gamma1() const { return gamma1_up + gamma1_down; }
  double cooperativity() const {
    return 4.0 * g * g / (kappa * gamma1());
  }
  double alpha() const { return g / kappa; }
  // C / (1 + w (T1o/T2o - 1)).
  double c_eff() const {
    return cooperativity() / (1.0 + w * (t1o / t2o - 1.0));
  }
};

// High-cooperativity closed form. Requires sigma_p > 0 unless gamma_spin
// is zero (then the photon may be arbitrarily narrow and the gate-time term
// is dropped). Warns (metadata "warning_low_C") below C = 10.
FidelityReport ps_analytic_fidelity(const ScatteringParams& p);

struct BandwidthOpt {
  double sigma_p = 0.0;
  double fidelity = 0.0;
};
// Bandwidth balancing the spectral-broadening term against the spin
// decoherence term (cubic, closed form); Gamma = 0 reports sigma_p = 0 and
// the narrow-photon fidelity floor.
BandwidthOpt ps_optimize_bandwidth(const ScatteringParams& p);

// Cascaded source -> cavity+ions system: source (2) x cavity (2) x
// ion (3) x ion (3), 36-dimensional, with the series-product interaction
// and the combined waveguide collapse operator.
struct CascadeModel {
  Mat hamiltonian;  // 36 x 36, rad/s
  std::vector<LindbladTerm> terms;
  Vec psi0;       // |1>_s |0>_c |+>|+>
  double t_gate;  // 7 T1p = 7 / sigma_p
  int dim() const { return 36; }
  int liouville_dim() const { return 36 * 36; }
};
CascadeModel ps_build_cascade(const ScatteringParams& p);

// State fidelity of the scattered two-ion state against the ideal CZ output,
// with deterministic local phase corrections taken from a decoherence-free
// reference solve when any detuning is nonzero. Set optimize_sigma to scan
// the photon bandwidth numerically (several cascade solves).
FidelityReport ps_numeric_fidelity(const ScatteringParams& p,
                                   bool optimize_sigma = false);

// ---------------------------------------------------------------------------
// Photon interference
// ---------------------------------------------------------------------------

struct InterferenceParams {
  double gamma1 = consts::yvo::gamma1;  // optical decay, rad/s
  double gamma1r = -1.0;                // radiative part; <0 means = gamma1
  double gamma_star = consts::yvo::gamma_star(consts::yvo::T2o_bulk);
  double delta_omega = 0.0;  // ion-ion optical detuning, rad/s
  double g = 0.0;            // optional cavity; g = 0 -> bulk formula
  double kappa = 0.0;

  double gamma1r_eff() const { return gamma1r < 0.0 ? gamma1 : gamma1r; }
};

double pi_purcell_factor(const InterferenceParams& p);
FidelityReport pi_fidelity(const InterferenceParams& p);

// Post-selected MUB measurement map diag(e^{-i phi_1} ... e^{-i phi_4});
// is_cz is true iff the diagonal equals CZ up to a global phase.
struct MubResult {
  Mat gate;  // 4 x 4 diagonal unitary
  bool is_cz = false;
};
MubResult pi_mub_cz_check(const std::array<double, 4>& phases);

// ---------------------------------------------------------------------------
// Virtual photon exchange
// ---------------------------------------------------------------------------

struct VirtualExchangeParams {
  double g = consts::yvo::g_cav;      // cavity coupling, rad/s
  double kappa = consts::yvo::kappa;  // cavity decay, rad/s
  double delta = 0.0;                 // cavity detuning Delta, rad/s
  double delta_eg = 0.0;              // detuning of the far transition, rad/s
  double gamma1 = consts::yvo::gamma1;
  double gamma_star = consts::yvo::gamma_star(consts::yvo::T2o_cavity);
  double gamma5 = consts::yvo::gamma5;

  double cooperativity() const { return 4.0 * g * g / (kappa * gamma1); }
  double gate_time() const { return M_PI * delta / (g * g); }
};

// eps_L1 = pi kappa / (2 Delta) + Tg gamma5 + (21/32) Tg gamma*,
// eps_H1 = 2 pi Delta / (C kappa), Tg = pi Delta / g^2. Metadata carries
// hierarchy warnings (wants delta_eg >= 10 Delta >= 100 g).
FidelityReport vx_perturbative_fidelity(const VirtualExchangeParams& p);

// Exact Lindblad solve of ion (3) x ion (3) x cavity (2 Fock) over Tg with
// the single-excitation protocol (ion 1 optically excited on its up
// component); reduced two-ion fidelity against the ideal phase gate after
// local phase corrections from a noise-free reference solve.
FidelityReport vx_exact_fidelity(const VirtualExchangeParams& p);

}  // namespace gatefid::cav

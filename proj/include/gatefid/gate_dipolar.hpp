#pragma once

// Magnetic dipole-dipole phase gate between two Yb ions.
//
// Each ion is a 4-level system ordered (up, down, up', down') = (0,1,2,3):
// the passive qubit lives on the ground pair (up, down), the active qubit on
// the excited pair (up', down'). The gate is activation pulse -> Ising
// interaction window -> deactivation pulse. Two-ion operators use
// ion1 (x) ion2 Kronecker order (16-dimensional space).

#include <vector>

#include "gatefid/constants.hpp"
#include "gatefid/lindblad.hpp"
#include "gatefid/perturbation.hpp"
#include "gatefid/types.hpp"

namespace gatefid::md {

struct DipolarParams {
  double r = 10e-9;                    // ion separation, m
  double g_par = consts::yvo::g_par;   // excited-state g tensor, parallel
  double g_perp = consts::yvo::g_perp; // excited-state g tensor, transverse
  double omega = 1e7;                  // activation Rabi frequency, rad/s
  // Decay/dephasing rates, rad/s. gamma3 < 0 means "use gamma2".
  double gamma1_up = consts::yvo::gamma1;    // up' -> up optical decay
  double gamma1_down = consts::yvo::gamma1;  // down' -> down optical decay
  double gamma2 = consts::yvo::gamma2;       // ground spin flip
  double gamma3 = -1.0;                      // excited spin flip
  double gamma4 = consts::yvo::gamma4;       // ground spin dephasing
  double gamma5 = consts::yvo::gamma5;       // excited spin dephasing
  double splitting = 1e8;              // smallest hyperfine splitting, rad/s

  double gamma3_eff() const { return gamma3 < 0.0 ? gamma2 : gamma3; }
};

struct DipolarCouplings {
  double j_par = 0.0;  // longitudinal coupling, J
  double j_x = 0.0;    // transverse couplings, J
  double j_y = 0.0;
  double t_act = 0.0;  // activation pulse width, s
  double t_int = 0.0;  // interaction window, s
  double t_gate = 0.0; // 2 t_act + t_int, s
};

// J_par = mu0 (muB g_par)^2 / (8 pi r^3), J_{x,y} the transverse halves,
// T_act = pi / Omega, T_int = hbar pi / (4 J_par).
DipolarCouplings couplings_from_params(const DipolarParams& p);

// Three-segment piecewise schedule plus the twelve collapse terms (six per
// ion). The transverse dipolar term J_x XX + J_y YY on the active qubits is
// carried as the perturbation of the interaction segment with delta = 1.
struct MdModel {
  GateSchedule schedule;
  std::vector<LindbladTerm> terms;
  DipolarCouplings couplings;
};
MdModel build_md_schedule(const DipolarParams& p);

// Variant for the exact oracle: the full dipolar interaction stays on during
// the activation and deactivation pulses (folded into h_ideal there), which
// is exactly the effect md_validity_check monitors.
MdModel build_md_schedule_with_pulse_interaction(const DipolarParams& p);

// Closed-form state fidelity
//   F = 1 - T_act (7/8 (g1u + g1d) + 13/16 (g2 + g3) + 1/2 (g4 + g5))
//         - T_int (g1u + g1d + 3/4 g3 + 1/2 g5)
//         - a (J_x + J_y)^2 / J_par^2,  a = (32(2 - sqrt 2) - pi^2)/64.
FidelityReport md_closed_form_fidelity(const DipolarParams& p);

// Coefficient of the transverse second-order error.
double md_second_order_coefficient();

// Exact 16-level two-ion Lindblad solve; by default the oracle includes the
// dipolar interaction during the pulses.
FidelityReport md_exact_fidelity(const DipolarParams& p,
                                 bool interaction_during_pulses = true);

struct MdValidity {
  double interaction_action = 0.0;  // ||H_int|| * T_act (spectral norm)
  bool valid = true;                // true when below the warning threshold
  double off_resonant_error = 0.0;  // exp(-(pi/2)(splitting/Omega)^2)
};
// Warns when ||H_int|| T_act > 0.1 (the piecewise model assumes << 1).
MdValidity md_validity_check(const DipolarParams& p);

// Average gate fidelity via the entanglement fidelity of the 16-level
// channel restricted to the passive qubits (64-dimensional doubled space).
double md_average_fidelity(const DipolarParams& p,
                           const QuadratureConfig& quad = {});
double md_entanglement_fidelity(const DipolarParams& p,
                                const QuadratureConfig& quad = {});

// System basis indices of the passive two-qubit levels |q_ab>.
std::array<int, 4> md_qubit_levels();

// Ideal gate output for a 16-dimensional input state (closed-form piecewise
// propagator at zero transverse coupling and zero noise).
Vec md_ideal_output(const DipolarParams& p, const Vec& psi0);

}  // namespace gatefid::md

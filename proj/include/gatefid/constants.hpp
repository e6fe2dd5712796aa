#pragma once

#include <cmath>

namespace gatefid::consts {

// SI values (CODATA 2018).
inline constexpr double mu0 = 1.25663706212e-6;   // vacuum permeability, N/A^2
inline constexpr double mu_bohr = 9.2740100783e-24;  // Bohr magneton, J/T
inline constexpr double hbar = 1.054571817e-34;   // reduced Planck, J s

inline constexpr double two_pi = 2.0 * M_PI;

// Yb:YVO working numbers used as defaults throughout. Rates are stored in
// rad/s; the *_hz names record the plain-Hz inputs they derive from.
namespace yvo {
inline constexpr double gamma1_hz = 596.0;      // optical decay
inline constexpr double gamma2_hz = 2.95;       // ground spin decay
inline constexpr double gamma4_hz = 3.6;        // ground spin dephasing
inline constexpr double gamma5_hz = 4500.0;     // excited spin dephasing
inline constexpr double g_par = 2.51;           // excited-state g, parallel
inline constexpr double g_perp = 1.7;           // excited-state g, transverse
inline constexpr double g_cav_hz = 23.0e6;      // cavity-ion coupling
inline constexpr double kappa_hz = 30.7e9;      // cavity decay
inline constexpr double T2o_bulk = 91.0e-6;     // optical coherence, bulk
inline constexpr double T2o_cavity = 39.0e-6;   // optical coherence, in-cavity
inline constexpr double T2s_ground = 31.0e-3;   // ground spin coherence (CPMG)
inline constexpr double T1o = 267.0e-6;         // optical lifetime

inline constexpr double gamma1 = two_pi * gamma1_hz;
inline constexpr double gamma2 = two_pi * gamma2_hz;
inline constexpr double gamma4 = two_pi * gamma4_hz;
inline constexpr double gamma5 = two_pi * gamma5_hz;
inline constexpr double g_cav = two_pi * g_cav_hz;
inline constexpr double kappa = two_pi * kappa_hz;

// Optical pure dephasing from the coherence time: gamma* = 1/T2o - gamma1/2.
inline double gamma_star(double t2o) { return 1.0 / t2o - gamma1 / 2.0; }
// Effective ground-spin decoherence rate for the scattering gate.
inline double gamma_spin() { return 1.0 / T2s_ground; }
}  // namespace yvo

}  // namespace gatefid::consts

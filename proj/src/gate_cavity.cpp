#include "gatefid/gate_cavity.hpp"

#include <cmath>
#include <stdexcept>

#include "gatefid/operator_algebra.hpp"

namespace gatefid::cav {

namespace {

using namespace gatefid::ops;

// Ion basis for the cavity schemes: (up, down, up') = (0, 1, 2).
constexpr int kUp = 0, kDown = 1, kExc = 2;

double effective_cooperativity(const ScatteringParams& p) {
  return (p.use_c_eff && p.alpha() < 0.01) ? p.c_eff() : p.cooperativity();
}

// Deterministic local phase correction: factor the phases of the reference
// state's first column into per-qubit Z rotations and undo them on rho.
Mat apply_local_phase_correction(const Mat& rho, const Mat& reference) {
  const double c1 = std::arg(reference(2, 0));
  const double c2 = std::arg(reference(1, 0));
  Vec d(4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      d(2 * a + b) = std::exp(-I_UNIT * (a * c1 + b * c2));
  const Mat corr = d.asDiagonal();
  return corr * rho * corr.adjoint();
}

}  // namespace

// ---------------------------------------------------------------------------
// Photon scattering, analytic
// ---------------------------------------------------------------------------

FidelityReport ps_analytic_fidelity(const ScatteringParams& p) {
  const double c_raw = p.cooperativity();
  if (c_raw <= 0.0)
    throw std::invalid_argument("ps_analytic: cooperativity must be positive");
  const double c = effective_cooperativity(p);
  const double a = p.alpha();
  const double g1 = p.gamma1();
  const double shape = 11.0 - 80.0 * a * a + 192.0 * std::pow(a, 4);

  if (p.sigma_p <= 0.0 && p.gamma_spin > 0.0)
    throw std::invalid_argument(
        "ps_analytic: sigma_p required when gamma_spin > 0");

  FidelityReport rep;
  auto& b = rep.breakdown;
  b.eps_L1 = 5.0 / (2.0 * c) +
             std::pow(p.delta_yb1 - p.delta_yb2, 2) / (2.0 * g1 * g1 * c);
  b.eps_HH2 = (p.delta_p * p.delta_p + p.sigma_p * p.sigma_p) * shape /
              (4.0 * g1 * g1 * c * c);
  if (p.sigma_p > 0.0) {
    rep.gate_time = 7.0 / p.sigma_p;
    b.eps_LH2 = p.gamma_spin * rep.gate_time;  // spin-decoherence bucket
  }
  b.sum_up();
  rep.fidelity = 1.0 - b.total;
  rep.metadata["cooperativity"] = c_raw;
  rep.metadata["cooperativity_effective"] = c;
  rep.metadata["alpha"] = a;
  if (c_raw < 10.0) rep.metadata["warning_low_C"] = 1.0;
  return rep;
}

BandwidthOpt ps_optimize_bandwidth(const ScatteringParams& p) {
  const double c = effective_cooperativity(p);
  const double a = p.alpha();
  const double g1 = p.gamma1();
  const double shape = 11.0 - 80.0 * a * a + 192.0 * std::pow(a, 4);
  const double quad_coeff = shape / (4.0 * g1 * g1 * c * c);
  if (quad_coeff <= 0.0)
    throw std::invalid_argument("ps_optimize_bandwidth: degenerate inputs");

  BandwidthOpt out;
  ScatteringParams q = p;
  if (p.gamma_spin <= 0.0) {
    // Arbitrarily narrow photon: only the cooperativity floor remains.
    q.sigma_p = 0.0;
    out.sigma_p = 0.0;
    out.fidelity = ps_analytic_fidelity(q).fidelity;
    return out;
  }
  // Equate quad_coeff * sigma^2 with 7 Gamma / sigma.
  out.sigma_p = std::cbrt(7.0 * p.gamma_spin / quad_coeff);
  q.sigma_p = out.sigma_p;
  out.fidelity = ps_analytic_fidelity(q).fidelity;
  return out;
}

// ---------------------------------------------------------------------------
// Photon scattering, cascaded simulation
// ---------------------------------------------------------------------------

CascadeModel ps_build_cascade(const ScatteringParams& p) {
  if (p.sigma_p <= 0.0)
    throw std::invalid_argument("ps_build_cascade: sigma_p must be positive");

  const Mat id2 = identity(2), id3 = identity(3);
  const Mat low2 = ketbra(2, 0, 1);  // two-level annihilation

  // Lift onto source (x) cavity (x) ion1 (x) ion2.
  auto lift = [&](const Mat& s, const Mat& c, const Mat& i1, const Mat& i2) {
    return kron(kron(s, c), kron(i1, i2));
  };
  const Mat a_s = lift(low2, id2, id3, id3);
  const Mat a_c = lift(id2, low2, id3, id3);

  const Mat sig_up = ketbra(3, kUp, kExc);      // up' -> up
  const Mat sig_down = ketbra(3, kDown, kExc);  // up' -> down
  const Mat sig_flip = ketbra(3, kUp, kDown);   // down -> up
  const Mat n_exc = ketbra(3, kExc, kExc);
  const Mat n_down = ketbra(3, kDown, kDown);

  const double gamma_s = p.sigma_p;  // source decay = photon bandwidth

  CascadeModel m;
  // Frame rotating at the incident photon carrier: the cavity sits at
  // delta_p, ion n's coupled transition at delta_p - delta_yb_n.
  Mat h = p.delta_p * (a_c.adjoint() * a_c);
  const std::array<double, 2> ion_det = {p.delta_p - p.delta_yb1,
                                         p.delta_p - p.delta_yb2};
  for (int n = 0; n < 2; ++n) {
    auto on_ion = [&](const Mat& o) {
      return n == 0 ? lift(id2, id2, o, id3) : lift(id2, id2, id3, o);
    };
    h += ion_det[n] * on_ion(n_exc);
    const Mat sm = on_ion(sig_up);
    h += p.g * (a_c.adjoint() * sm + sm.adjoint() * a_c);
  }
  // Series product of the source into the cavity system:
  // H += -(i/2)(L2^dag L1 - L1^dag L2), combined channel L = L2 + L1.
  h += -0.5 * I_UNIT * std::sqrt(p.kappa * gamma_s) *
       (a_c.adjoint() * a_s - a_s.adjoint() * a_c);
  m.hamiltonian = h;

  m.terms.push_back(
      {1.0, std::sqrt(p.kappa) * a_c + std::sqrt(gamma_s) * a_s});
  for (int n = 0; n < 2; ++n) {
    auto on_ion = [&](const Mat& o) {
      return n == 0 ? lift(id2, id2, o, id3) : lift(id2, id2, id3, o);
    };
    m.terms.push_back({p.gamma1_up, on_ion(sig_up)});
    m.terms.push_back({p.gamma1_down, on_ion(sig_down)});
    // Projector dephasing at twice the pure-dephasing rate, so the simulated
    // optical / spin coherences decay at 1/T2o and 1/T2s,g.
    m.terms.push_back({2.0 * p.gamma_star, on_ion(n_exc)});
    m.terms.push_back({p.gamma2, on_ion(sig_flip)});
    m.terms.push_back({2.0 * p.gamma4, on_ion(n_down)});
  }

  Vec plus = Vec::Zero(3);
  plus(kUp) = plus(kDown) = 1.0 / std::sqrt(2.0);
  m.psi0 = kron(kron(basis_ket(2, 1), basis_ket(2, 0)), kron(plus, plus));
  m.t_gate = 7.0 / p.sigma_p;
  return m;
}

namespace {

struct CascadeSolution {
  Mat rho_qubit;  // 4 x 4 two-ion qubit block, (up,down) x (up,down)
  double residual_excitation = 0.0;
};

CascadeSolution solve_cascade(const ScatteringParams& p) {
  const CascadeModel m = ps_build_cascade(p);
  GateSchedule sched;
  sched.segments.push_back({m.t_gate, m.hamiltonian, zero(m.dim()), 0.0});
  const Mat rho0 = m.psi0 * m.psi0.adjoint();
  const Mat rho_t = evolve(rho0, sched, m.terms);

  CascadeSolution sol;
  const Mat rho_ions = partial_trace(rho_t, {2, 2, 3, 3}, {2, 3});
  Mat q(4, 4);
  const std::array<int, 2> lv = {kUp, kDown};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          q(2 * a + b, 2 * c + d) =
              rho_ions(3 * lv[a] + lv[b], 3 * lv[c] + lv[d]);
  sol.rho_qubit = q;
  sol.residual_excitation = 1.0 - q.trace().real();
  return sol;
}

}  // namespace

FidelityReport ps_numeric_fidelity(const ScatteringParams& p,
                                   bool optimize_sigma) {
  ScatteringParams q = p;
  if (q.sigma_p <= 0.0) q.sigma_p = ps_optimize_bandwidth(p).sigma_p;
  if (q.sigma_p <= 0.0)
    throw std::invalid_argument("ps_numeric: no usable photon bandwidth");

  const bool need_reference =
      q.delta_p != 0.0 || q.delta_yb1 != 0.0 || q.delta_yb2 != 0.0;

  auto evaluate = [&](double sigma) {
    ScatteringParams r = q;
    r.sigma_p = sigma;
    CascadeSolution noisy = solve_cascade(r);
    Mat rho = noisy.rho_qubit;
    if (need_reference) {
      ScatteringParams clean = r;
      clean.gamma_star = clean.gamma2 = clean.gamma4 = 0.0;
      rho = apply_local_phase_correction(rho, solve_cascade(clean).rho_qubit);
    }
    Vec target(4);
    target << 0.5, 0.5, 0.5, -0.5;  // CZ on |++>: pi phase on |down,down>
    const double f = (target.adjoint() * rho * target)(0).real();
    return std::pair<double, double>(f, noisy.residual_excitation);
  };

  double sigma = q.sigma_p;
  auto best = evaluate(sigma);
  if (optimize_sigma) {
    // Golden-section on log sigma around the analytic seed.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = std::log(sigma) - std::log(4.0);
    double hi = std::log(sigma) + std::log(4.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    auto f1 = evaluate(std::exp(x1)), f2 = evaluate(std::exp(x2));
    for (int it = 0; it < 6; ++it) {
      if (f1.first < f2.first) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = evaluate(std::exp(x2));
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = evaluate(std::exp(x1));
      }
    }
    if (f1.first > best.first) { best = f1; sigma = std::exp(x1); }
    if (f2.first > best.first) { best = f2; sigma = std::exp(x2); }
  }

  FidelityReport rep;
  rep.fidelity = best.first;
  rep.gate_time = 7.0 / sigma;
  rep.metadata["sigma_p"] = sigma;
  rep.metadata["cooperativity"] = p.cooperativity();
  rep.metadata["cooperativity_effective"] = effective_cooperativity(p);
  rep.metadata["alpha"] = p.alpha();
  rep.metadata["residual_excitation"] = best.second;
  if (best.second > 0.01) rep.metadata["warning_truncation_loss"] = 1.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Photon interference
// ---------------------------------------------------------------------------

double pi_purcell_factor(const InterferenceParams& p) {
  if (p.g <= 0.0 || p.kappa <= 0.0) return 0.0;
  const double broad = p.kappa + p.gamma1 + 2.0 * p.gamma_star;
  const double r = 4.0 * p.g * p.g * broad /
                   (broad * broad + 4.0 * p.delta_omega * p.delta_omega);
  return r * p.kappa / (p.gamma1r_eff() * (p.kappa + r));
}

FidelityReport pi_fidelity(const InterferenceParams& p) {
  const double fp = pi_purcell_factor(p);
  const double g1p = p.gamma1r_eff() * fp + p.gamma1;
  const double denom =
      std::pow(g1p + 2.0 * p.gamma_star, 2) + p.delta_omega * p.delta_omega;

  FidelityReport rep;
  rep.fidelity = 0.5 * (1.0 + g1p * g1p / denom);
  rep.gate_time = 14.0 / g1p;  // two emissions, 7 enhanced lifetimes each
  rep.breakdown.eps_L1 = 1.0 - rep.fidelity;
  rep.breakdown.sum_up();
  rep.metadata["purcell_factor"] = fp;
  rep.metadata["gamma1_enhanced"] = g1p;
  rep.metadata["success_probability"] = 0.5;
  return rep;
}

MubResult pi_mub_cz_check(const std::array<double, 4>& phases) {
  MubResult out;
  out.gate = Mat::Zero(4, 4);
  for (int j = 0; j < 4; ++j)
    out.gate(j, j) = std::exp(-I_UNIT * phases[j]);

  auto wrap = [](double x) {
    x = std::fmod(x, 2.0 * M_PI);
    if (x < -M_PI) x += 2.0 * M_PI;
    if (x > M_PI) x -= 2.0 * M_PI;
    return x;
  };
  // CZ up to a global phase: phi_1 = phi_2 = phi_3, phi_4 = phi_1 + pi.
  const double tol = 1e-12;
  out.is_cz = std::abs(wrap(phases[1] - phases[0])) < tol &&
              std::abs(wrap(phases[2] - phases[0])) < tol &&
              std::abs(std::abs(wrap(phases[3] - phases[0])) - M_PI) < tol;
  return out;
}

// ---------------------------------------------------------------------------
// Virtual photon exchange
// ---------------------------------------------------------------------------

FidelityReport vx_perturbative_fidelity(const VirtualExchangeParams& p) {
  if (p.g <= 0.0 || p.kappa <= 0.0 || p.delta <= 0.0)
    throw std::invalid_argument("vx: g, kappa, Delta must be positive");
  const double tg = p.gate_time();
  const double c = p.cooperativity();

  FidelityReport rep;
  rep.breakdown.eps_L1 = M_PI * p.kappa / (2.0 * p.delta) + tg * p.gamma5 +
                         (21.0 / 32.0) * tg * p.gamma_star;
  rep.breakdown.eps_H1 = 2.0 * M_PI * p.delta / (c * p.kappa);
  rep.breakdown.sum_up();
  rep.fidelity = 1.0 - rep.breakdown.total;
  rep.gate_time = tg;
  rep.metadata["cooperativity"] = c;
  if (p.delta < 10.0 * p.g) rep.metadata["warning_delta_vs_g"] = 1.0;
  if (p.delta_eg > 0.0 && p.delta_eg < 10.0 * p.delta)
    rep.metadata["warning_delta_eg_vs_delta"] = 1.0;
  return rep;
}

namespace {

struct VxSolution {
  Mat rho_qubit;  // 4 x 4 two-qubit block after the ideal deactivation map
  double cavity_population = 0.0;
};

// Ion1 (3) x ion2 (3) x cavity (2 Fock), single-excitation protocol: ion 1
// enters with its up component excited; the cavity mediates the exchange at
// detuning Delta.
VxSolution solve_vx(const VirtualExchangeParams& p, bool noiseless) {
  const Mat id3 = identity(3), id2 = identity(2);
  auto lift = [&](const Mat& i1, const Mat& i2, const Mat& c) {
    return kron(kron(i1, i2), c);
  };
  const Mat a = lift(id3, id3, ketbra(2, 0, 1));
  const Mat sm1 = lift(ketbra(3, kUp, kExc), id3, id2);
  const Mat sm2 = lift(id3, ketbra(3, kUp, kExc), id2);
  const Mat ne1 = lift(ketbra(3, kExc, kExc), id3, id2);
  const Mat ne2 = lift(id3, ketbra(3, kExc, kExc), id2);

  // Ion transitions at zero in the rotating frame, cavity at -Delta.
  Mat h = -p.delta * (a.adjoint() * a);
  h += p.g * (a.adjoint() * (sm1 + sm2) + (sm1 + sm2).adjoint() * a);

  std::vector<LindbladTerm> terms;
  if (!noiseless) {
    terms.push_back({p.kappa, a});
    terms.push_back({p.gamma1, sm1});
    terms.push_back({p.gamma1, sm2});
    // Excited-level dephasing: optical pure dephasing plus the excited spin
    // dephasing channel, both projector type at twice the coherence rate.
    terms.push_back({2.0 * (p.gamma_star + p.gamma5), ne1});
    terms.push_back({2.0 * (p.gamma_star + p.gamma5), ne2});
  }

  Vec ion1 = Vec::Zero(3), ion2 = Vec::Zero(3);
  ion1(kExc) = ion1(kDown) = 1.0 / std::sqrt(2.0);
  ion2(kUp) = ion2(kDown) = 1.0 / std::sqrt(2.0);
  const Vec psi0 = kron(kron(ion1, ion2), basis_ket(2, 0));
  const Mat rho0 = psi0 * psi0.adjoint();

  GateSchedule sched;
  sched.segments.push_back({p.gate_time(), h, zero(18), 0.0});
  const Mat rho_t = evolve(rho0, sched, terms);

  VxSolution sol;
  sol.cavity_population = (rho_t * (a.adjoint() * a)).trace().real();

  // Ideal deactivation: unitary relabel up' <-> up on ion 1, then read the
  // two-qubit block.
  Mat rho_ions = partial_trace(rho_t, {3, 3, 2}, {0, 1});
  Mat swap = zero(9);
  for (int l1 = 0; l1 < 3; ++l1)
    for (int l2 = 0; l2 < 3; ++l2) {
      const int m1 = l1 == kUp ? kExc : (l1 == kExc ? kUp : l1);
      swap(3 * m1 + l2, 3 * l1 + l2) = 1.0;
    }
  rho_ions = swap * rho_ions * swap.adjoint();

  Mat q(4, 4);
  const std::array<int, 2> lv = {kUp, kDown};
  for (int a1 = 0; a1 < 2; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int d1 = 0; d1 < 2; ++d1)
          q(2 * a1 + b1, 2 * c1 + d1) =
              rho_ions(3 * lv[a1] + lv[b1], 3 * lv[c1] + lv[d1]);
  sol.rho_qubit = q;
  return sol;
}

}  // namespace

FidelityReport vx_exact_fidelity(const VirtualExchangeParams& p) {
  if (p.g <= 0.0 || p.delta <= 0.0)
    throw std::invalid_argument("vx_exact: g and Delta must be positive");

  const VxSolution noisy = solve_vx(p, false);
  const VxSolution clean = solve_vx(p, true);
  const Mat rho =
      apply_local_phase_correction(noisy.rho_qubit, clean.rho_qubit);
  // Ideal gate: pi on the single-excited (up, down) component, which the
  // local phase correction moves onto the (down, down) slot: CZ output.
  Vec target(4);
  target << 0.5, 0.5, 0.5, -0.5;

  FidelityReport rep;
  rep.fidelity = (target.adjoint() * rho * target)(0).real();
  rep.gate_time = p.gate_time();
  rep.metadata["cooperativity"] = p.cooperativity();
  rep.metadata["cavity_population_final"] = noisy.cavity_population;
  const double disp = std::pow(p.g / p.delta, 2);
  rep.metadata["dispersive_occupancy_bound"] = disp;
  if (disp > 1e-3) rep.metadata["warning_truncation"] = 1.0;
  return rep;
}

}  // namespace gatefid::cav

// Throwaway exploration harness (not part of the shipped test suite).
#include <cstdio>

#include "gatefid/gate_cavity.hpp"
#include "gatefid/lindblad.hpp"
#include "gatefid/operator_algebra.hpp"

using namespace gatefid;
using namespace gatefid::ops;

// Dressed-frame variant of the virtual-exchange oracle: prepare and read out
// in the eigenbasis of the noiseless Hamiltonian (adiabatic switch-on).
static double vx_exact_dressed(const cav::VirtualExchangeParams& p,
                               bool noiseless_run) {
  const Mat id3 = identity(3), id2 = identity(2);
  auto lift = [&](const Mat& i1, const Mat& i2, const Mat& c) {
    return kron(kron(i1, i2), c);
  };
  const Mat a = lift(id3, id3, ketbra(2, 0, 1));
  const Mat sm1 = lift(ketbra(3, 0, 2), id3, id2);
  const Mat sm2 = lift(id3, ketbra(3, 0, 2), id2);
  const Mat ne1 = lift(ketbra(3, 2, 2), id3, id2);
  const Mat ne2 = lift(id3, ketbra(3, 2, 2), id2);

  Mat h = -p.delta * (a.adjoint() * a);
  h += p.g * (a.adjoint() * (sm1 + sm2) + (sm1 + sm2).adjoint() * a);

  // Dressing unitary: eigenvectors matched to bare labels by max overlap.
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Mat w = Mat::Zero(18, 18);
  std::vector<bool> used(18, false);
  for (int k = 0; k < 18; ++k) {
    const Vec v = es.eigenvectors().col(k);
    int best = -1;
    double bestmag = -1.0;
    for (int j = 0; j < 18; ++j)
      if (!used[j] && std::abs(v(j)) > bestmag) {
        bestmag = std::abs(v(j));
        best = j;
      }
    used[best] = true;
    w.col(best) = v * (std::conj(v(best)) / std::abs(v(best)));
  }

  std::vector<LindbladTerm> terms;
  if (!noiseless_run) {
    terms = {{p.kappa, a},
             {p.gamma1, sm1},
             {p.gamma1, sm2},
             {2.0 * (p.gamma_star + p.gamma5), ne1},
             {2.0 * (p.gamma_star + p.gamma5), ne2}};
  }

  Vec ion1 = Vec::Zero(3), ion2 = Vec::Zero(3);
  ion1(2) = ion1(1) = 1.0 / std::sqrt(2.0);
  ion2(0) = ion2(1) = 1.0 / std::sqrt(2.0);
  Vec psi0 = kron(kron(ion1, ion2), basis_ket(2, 0));
  psi0 = w * psi0;  // adiabatic preparation

  GateSchedule sched;
  sched.segments.push_back({p.gate_time(), h, zero(18), 0.0});
  Mat rho = evolve(psi0 * psi0.adjoint(), sched, terms);
  rho = w.adjoint() * rho * w;  // adiabatic readout

  Mat rho_ions = partial_trace(rho, {3, 3, 2}, {0, 1});
  Mat swap = zero(9);
  for (int l1 = 0; l1 < 3; ++l1)
    for (int l2 = 0; l2 < 3; ++l2) {
      const int m1 = l1 == 0 ? 2 : (l1 == 2 ? 0 : l1);
      swap(3 * m1 + l2, 3 * l1 + l2) = 1.0;
    }
  rho_ions = swap * rho_ions * swap.adjoint();
  Mat q(4, 4);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int d1 = 0; d1 < 2; ++d1)
          q(2 * a1 + b1, 2 * c1 + d1) = rho_ions(3 * a1 + b1, 3 * c1 + d1);

  static Mat reference;
  if (noiseless_run) {
    reference = q;
    Vec t(4);
    t << 0.5, 0.5, 0.5, -0.5;
    const double c1 = std::arg(q(2, 0)), c2 = std::arg(q(1, 0));
    Vec d(4);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        d(2 * x + y) = std::exp(-I_UNIT * (x * c1 + y * c2));
    Mat corr = d.asDiagonal();
    return (t.adjoint() * (corr * q * corr.adjoint()) * t)(0).real();
  }
  const double c1 = std::arg(reference(2, 0)), c2 = std::arg(reference(1, 0));
  Vec d(4);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      d(2 * x + y) = std::exp(-I_UNIT * (x * c1 + y * c2));
  Mat corr = d.asDiagonal();
  Vec t(4);
  t << 0.5, 0.5, 0.5, -0.5;
  return (t.adjoint() * (corr * q * corr.adjoint()) * t)(0).real();
}

int main() {
  cav::VirtualExchangeParams p;
  p.g = 1.0;
  p.kappa = 10.0;
  p.gamma1 = 1e-4;
  p.gamma_star = 1e-4;
  p.gamma5 = 1e-5;
  p.delta_eg = 100.0;
  for (double dg : {30.0, 60.0, 100.0, 150.0, 200.0, 300.0, 400.0}) {
    p.delta = dg;
    auto pert = cav::vx_perturbative_fidelity(p);
    const double clean = vx_exact_dressed(p, true);
    const double ex = vx_exact_dressed(p, false);
    std::printf(
        "D/g=%6.1f  F_pert=%.5f  F_dressed=%.5f (clean %.6f) | gap=%+.5f\n",
        dg, pert.fidelity, ex, clean, pert.fidelity - ex);
  }
  return 0;
}

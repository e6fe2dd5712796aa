#include "gatefid/perturbation.hpp"

#include <cmath>
#include <functional>

#include "gatefid/operator_algebra.hpp"

namespace gatefid {

void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = xm - xl * z;
    x[n - 1 - i] = xm + xl * z;
    w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

namespace {

// Quadrature nodes over the whole schedule with per-node segment index and
// interaction-picture state/propagator caches.
struct NodeGrid {
  std::vector<double> t, w;
  std::vector<int> seg;
  std::vector<Mat> u;    // U_g(t,0)
  std::vector<Vec> psi;  // U_g(t,0) |psi0>
};

NodeGrid make_grid(const GateSchedule& schedule, const IdealPropagator& prop,
                   const Vec& psi0, int points) {
  NodeGrid g;
  double t0 = 0.0;
  std::vector<double> x, w;
  for (size_t s = 0; s < schedule.segments.size(); ++s) {
    const double t1 = t0 + schedule.segments[s].duration;
    gauss_legendre(points, t0, t1, x, w);
    for (int i = 0; i < points; ++i) {
      g.t.push_back(x[i]);
      g.w.push_back(w[i]);
      g.seg.push_back(static_cast<int>(s));
    }
    t0 = t1;
  }
  g.u.reserve(g.t.size());
  g.psi.reserve(g.t.size());
  for (double t : g.t) {
    g.u.push_back(prop.at(t));
    g.psi.push_back(g.u.back() * psi0);
  }
  return g;
}

Mat hermitized_error(const Segment& s) {
  return 0.5 * (s.h_error + s.h_error.adjoint());
}

// Runs `f(points)` and, if a tolerance is requested, cross-checks against a
// doubled-order evaluation.
double with_convergence_check(const QuadratureConfig& quad,
                              const std::function<double(int)>& f) {
  quad.validate();
  const double v = f(quad.points_per_segment);
  if (quad.tolerance_target > 0.0) {
    const double v2 = f(2 * quad.points_per_segment);
    const double delta = std::abs(v2 - v);
    if (delta > quad.tolerance_target *
                    std::max(1.0, std::max(std::abs(v), std::abs(v2))))
      throw QuadratureError(v2, delta);
    return v2;
  }
  return v;
}

}  // namespace

cd expectation_trajectory(const GateSchedule& schedule, const Vec& psi0,
                          const Mat& obs, double t) {
  IdealPropagator prop(schedule);
  const Vec psi = prop.at(t) * psi0;
  return (psi.adjoint() * obs * psi)(0);
}

double eps_L_first_order(const GateSchedule& schedule, const Vec& psi0,
                         const std::vector<LindbladTerm>& terms,
                         const QuadratureConfig& quad) {
  schedule.validate();
  IdealPropagator prop(schedule);
  return with_convergence_check(quad, [&](int points) {
    const NodeGrid g = make_grid(schedule, prop, psi0, points);
    double eps = 0.0;
    for (const auto& term : terms) {
      if (term.rate < 0.0)
        throw std::invalid_argument("eps_L_first_order: negative rate");
      if (term.rate == 0.0) continue;
      double acc = 0.0;
      for (size_t i = 0; i < g.t.size(); ++i) {
        const Vec lpsi = term.collapse * g.psi[i];
        const double n2 = lpsi.squaredNorm();  // <L^dag L>
        const cd lexp = g.psi[i].dot(lpsi);    // <L>
        acc += g.w[i] * (n2 - std::norm(lexp));
      }
      eps += term.rate * acc;
    }
    return eps;
  });
}

double eps_H_first_order(const GateSchedule& schedule, const Vec& psi0,
                         const QuadratureConfig& quad) {
  schedule.validate();
  IdealPropagator prop(schedule);
  return with_convergence_check(quad, [&](int points) {
    const NodeGrid g = make_grid(schedule, prop, psi0, points);
    double acc = 0.0;
    for (size_t i = 0; i < g.t.size(); ++i) {
      const Segment& s = schedule.segments[g.seg[i]];
      if (s.delta == 0.0) continue;
      const cd h = (g.psi[i].adjoint() * s.h_error * g.psi[i])(0);
      acc += g.w[i] * s.delta * h.imag();
    }
    return -2.0 * acc;
  });
}

double eps_HH_second_order(const GateSchedule& schedule, const Vec& psi0,
                           const QuadratureConfig& quad) {
  schedule.validate();
  IdealPropagator prop(schedule);
  // With a = int dt delta(t) U^dag(t) H(t) U(t) |psi0> and
  // mu = int dt delta(t) <H(t)>, the symmetrized double integral collapses
  // to |a|^2 - mu^2 because Re<H(t)H(t')> is swap-symmetric.
  return with_convergence_check(quad, [&](int points) {
    const NodeGrid g = make_grid(schedule, prop, psi0, points);
    const int d = schedule.dim();
    Vec a = Vec::Zero(d);
    double mu = 0.0;
    std::vector<Mat> herr(schedule.segments.size());
    for (size_t s = 0; s < schedule.segments.size(); ++s)
      herr[s] = hermitized_error(schedule.segments[s]);
    for (size_t i = 0; i < g.t.size(); ++i) {
      const Segment& s = schedule.segments[g.seg[i]];
      if (s.delta == 0.0) continue;
      const Vec hpsi = herr[g.seg[i]] * g.psi[i];
      a += (g.w[i] * s.delta) * (g.u[i].adjoint() * hpsi);
      mu += g.w[i] * s.delta * g.psi[i].dot(hpsi).real();
    }
    return a.squaredNorm() - mu * mu;
  });
}

double eps_LH_second_order(const GateSchedule& schedule, const Vec& psi0,
                           const std::vector<LindbladTerm>& terms,
                           const QuadratureConfig& quad) {
  schedule.validate();
  IdealPropagator prop(schedule);

  return with_convergence_check(quad, [&](int points) {
    const NodeGrid g = make_grid(schedule, prop, psi0, points);
    const size_t n = g.t.size();
    std::vector<Mat> herr(schedule.segments.size());
    for (size_t s = 0; s < schedule.segments.size(); ++s)
      herr[s] = hermitized_error(schedule.segments[s]);

    double eps = 0.0;
    for (const auto& term : terms) {
      if (term.rate == 0.0) continue;
      const Mat& l = term.collapse;
      const Mat ldl = l.adjoint() * l;

      // Interaction-picture vectors at the shared grid nodes.
      std::vector<Vec> uh(n), ull(n), ul(n), uld(n);
      std::vector<cd> mld(n);
      for (size_t i = 0; i < n; ++i) {
        const double delta = schedule.segments[g.seg[i]].delta;
        uh[i] = g.u[i].adjoint() * (delta * (herr[g.seg[i]] * g.psi[i]));
        ull[i] = g.u[i].adjoint() * (ldl * g.psi[i]);
        ul[i] = g.u[i].adjoint() * (l * g.psi[i]);
        uld[i] = g.u[i].adjoint() * (l.adjoint() * g.psi[i]);
        mld[i] = (g.psi[i].adjoint() * l.adjoint() * g.psi[i])(0);
      }

      // Inner integrand of the two ordered double integrals, with the outer
      // time at node i and the inner time given by precomputed vectors.
      auto inner_value = [&](size_t i, const Vec& vh, const Vec& vll,
                             const Vec& vl, cd vmld) {
        const cd t1 = uh[i].dot(vll);          // <H(t') L^dag L(t'')>
        const cd t2 = uh[i].dot(vl) * vmld;    // <H(t') L(t'')><L^dag(t'')>
        const cd t3 = ull[i].dot(vh);          // <L^dag L(t') H(t'')>
        const cd t4 = uld[i].dot(vh) * mld[i]; // <L(t') H(t'')><L^dag(t')>
        return (t1 - 2.0 * t2).imag() + (t3 - 2.0 * t4).imag();
      };

      double acc = 0.0;
      std::vector<double> xs, ws;
      for (size_t i = 0; i < n; ++i) {
        // Full segments strictly before the outer node's segment reuse the
        // shared grid nodes.
        double inner = 0.0;
        for (size_t j = 0; j < n && g.seg[j] < g.seg[i]; ++j)
          inner += g.w[j] * inner_value(i, uh[j], ull[j], ul[j], mld[j]);
        // Partial piece of the outer node's own segment.
        double seg_start = 0.0;
        for (int s = 0; s < g.seg[i]; ++s)
          seg_start += schedule.segments[s].duration;
        gauss_legendre(points, seg_start, g.t[i], xs, ws);
        const double delta = schedule.segments[g.seg[i]].delta;
        for (int q = 0; q < points; ++q) {
          const Mat u = prop.at(xs[q]);
          const Vec psi = u * psi0;
          const Vec vh = u.adjoint() * (delta * (herr[g.seg[i]] * psi));
          const Vec vll = u.adjoint() * (ldl * psi);
          const Vec vl = u.adjoint() * (l * psi);
          const cd vmld = (psi.adjoint() * l.adjoint() * psi)(0);
          inner += ws[q] * inner_value(i, vh, vll, vl, vmld);
        }
        acc += g.w[i] * inner;
      }
      eps += term.rate * acc;
    }
    return eps;
  });
}

double entanglement_fidelity(const GateSchedule& schedule,
                             const std::vector<LindbladTerm>& terms,
                             const QuadratureConfig& quad,
                             const std::array<int, 4>& qubit_levels) {
  schedule.validate();
  const int d = schedule.dim();
  for (int q : qubit_levels)
    if (q < 0 || q >= d)
      throw std::invalid_argument("entanglement_fidelity: bad qubit level");

  const Mat id4 = Mat::Identity(4, 4);
  GateSchedule doubled;
  for (const auto& s : schedule.segments)
    doubled.segments.push_back({s.duration, ops::kron(id4, s.h_ideal),
                                ops::kron(id4, s.h_error), s.delta});
  std::vector<LindbladTerm> dterms;
  dterms.reserve(terms.size());
  for (const auto& t : terms)
    dterms.push_back({t.rate, ops::kron(id4, t.collapse)});

  // |phi> = 1/2 sum_ab |ab>_anc (x) |q_ab>_sys : two Bell pairs.
  Vec phi = Vec::Zero(4 * d);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      phi((2 * a + b) * d + qubit_levels[2 * a + b]) = 0.5;

  const double eps = eps_L_first_order(doubled, phi, dterms, quad) +
                     eps_H_first_order(doubled, phi, quad) +
                     eps_HH_second_order(doubled, phi, quad);
  return 1.0 - eps;
}

double average_gate_fidelity(double f_ent, int D) {
  if (D < 2) throw std::invalid_argument("average_gate_fidelity: D >= 2");
  if (f_ent < -1e-12 || f_ent > 1.0 + 1e-12)
    throw std::invalid_argument("average_gate_fidelity: f_ent outside [0,1]");
  return (D * f_ent + 1.0) / (D + 1.0);
}

}  // namespace gatefid

#include "gatefid/lindblad.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "gatefid/operator_algebra.hpp"

namespace gatefid {

namespace {
std::atomic<std::uint64_t> g_liouvillian_builds{0};
}

std::uint64_t liouvillian_build_count() { return g_liouvillian_builds.load(); }

void GateSchedule::validate() const {
  if (segments.empty()) throw std::invalid_argument("schedule has no segments");
  const int d = dim();
  for (const auto& s : segments) {
    if (s.duration <= 0.0)
      throw std::invalid_argument("segment duration must be positive");
    if (s.h_ideal.rows() != d || s.h_ideal.cols() != d ||
        s.h_error.rows() != d || s.h_error.cols() != d)
      throw std::invalid_argument("segment operator dimensions disagree");
    ops::check_hermitian(s.h_ideal, 1e-12);
  }
}

Mat liouvillian(const Mat& h, const std::vector<LindbladTerm>& terms) {
  const int d = static_cast<int>(h.rows());
  if (h.cols() != d) throw std::invalid_argument("liouvillian: H not square");
  const Mat id = Mat::Identity(d, d);

  Mat sup = -I_UNIT * (ops::kron(id, h) - ops::kron(h.conjugate(), id));
  for (const auto& term : terms) {
    if (term.rate < 0.0)
      throw std::invalid_argument("liouvillian: negative rate");
    if (term.collapse.rows() != d || term.collapse.cols() != d)
      throw std::invalid_argument("liouvillian: collapse dimension mismatch");
    if (term.rate == 0.0) continue;
    const Mat& l = term.collapse;
    const Mat ldl = l.adjoint() * l;
    sup += term.rate * (ops::kron(l.conjugate(), l) -
                        0.5 * ops::kron(id, ldl) -
                        0.5 * ops::kron(ldl.transpose(), id));
  }
  g_liouvillian_builds.fetch_add(1, std::memory_order_relaxed);
  return sup;
}

Mat build_liouvillian(const Segment& seg,
                      const std::vector<LindbladTerm>& terms) {
  Mat h = seg.h_ideal;
  if (seg.delta != 0.0) h += seg.delta * seg.h_error;
  return liouvillian(h, terms);
}

namespace {

Vec vectorize(const Mat& m) {
  Vec v(m.size());
  // Column stacking: column j occupies entries [j*d, (j+1)*d).
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    v.segment(j * m.rows(), m.rows()) = m.col(j);
  return v;
}

Mat unvectorize(const Vec& v, int d) {
  Mat m(d, d);
  for (int j = 0; j < d; ++j) m.col(j) = v.segment(j * d, d);
  return m;
}

}  // namespace

Mat evolve(const Mat& rho0, const GateSchedule& schedule,
           const std::vector<LindbladTerm>& terms) {
  schedule.validate();
  const int d = schedule.dim();
  if (rho0.rows() != d || rho0.cols() != d)
    throw std::invalid_argument("evolve: state dimension mismatch");

  Vec v = vectorize(rho0);
  for (const auto& seg : schedule.segments) {
    const Mat sup = build_liouvillian(seg, terms);
    v = ops::expm(sup * seg.duration) * v;
  }
  return unvectorize(v, d);
}

IdealPropagator::IdealPropagator(const GateSchedule& schedule) {
  schedule.validate();
  dim_ = schedule.dim();
  double t = 0.0;
  Mat cum = Mat::Identity(dim_, dim_);
  cumulative_.push_back(cum);
  for (const auto& seg : schedule.segments) {
    SegmentEigen se;
    Eigen::SelfAdjointEigenSolver<Mat> es(seg.h_ideal);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("propagator: eigendecomposition failed");
    se.eigval = es.eigenvalues();
    se.eigvec = es.eigenvectors();
    se.t_start = t;
    se.duration = seg.duration;
    t += seg.duration;
    segs_.push_back(std::move(se));
    cum = segment_piece(static_cast<int>(segs_.size()) - 1, seg.duration) * cum;
    cumulative_.push_back(cum);
  }
  total_time_ = t;
}

Mat IdealPropagator::segment_piece(int seg, double tau) const {
  const auto& se = segs_[seg];
  Vec phases(se.eigval.size());
  for (Eigen::Index i = 0; i < se.eigval.size(); ++i)
    phases(i) = std::exp(-I_UNIT * se.eigval(i) * tau);
  return se.eigvec * phases.asDiagonal() * se.eigvec.adjoint();
}

Mat IdealPropagator::at(double t) const {
  const double tol = 1e-12 * std::max(total_time_, 1e-300);
  if (t < -tol || t > total_time_ + tol)
    throw std::invalid_argument("propagator: time out of range");
  t = std::clamp(t, 0.0, total_time_);

  // Find the segment containing t.
  int k = 0;
  while (k + 1 < static_cast<int>(segs_.size()) &&
         t > segs_[k].t_start + segs_[k].duration + tol)
    ++k;
  const double tau = t - segs_[k].t_start;
  if (tau <= tol) return cumulative_[k];
  return segment_piece(k, tau) * cumulative_[k];
}

Mat IdealPropagator::between(double t, double t_prime) const {
  if (t_prime > t + 1e-12 * std::max(total_time_, 1e-300))
    throw std::invalid_argument("propagator: t' must not exceed t");
  return at(t) * at(t_prime).adjoint();
}

}  // namespace gatefid

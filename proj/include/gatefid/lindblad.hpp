#pragma once

// GKSL master-equation engine. Density matrices are evolved exactly by
// exponentiating the vectorized generator segment by segment; unitary
// propagators of the ideal (noise-free) schedule are produced from cached
// eigendecompositions so the perturbation layer can sample them densely.

#include <cstdint>
#include <vector>

#include "gatefid/types.hpp"

namespace gatefid {

// One irreversible process: rate gamma_k (rad/s) and collapse operator L_k.
struct LindbladTerm {
  double rate = 0.0;
  Mat collapse;
};

// One piecewise-constant stretch of the gate. `h_ideal` generates the ideal
// propagator and must be Hermitian; `h_error` is the perturbation, weighted
// by `delta`, and may be non-Hermitian. Both in rad/s.
struct Segment {
  double duration = 0.0;  // seconds
  Mat h_ideal;
  Mat h_error;
  double delta = 0.0;
};

struct GateSchedule {
  std::vector<Segment> segments;

  double total_time() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration;
    return t;
  }
  int dim() const {
    return segments.empty() ? 0 : static_cast<int>(segments[0].h_ideal.rows());
  }
  void validate() const;  // throws on broken invariants
};

// Vectorized GKSL generator for a fixed Hamiltonian H (column-stacking
// convention, vec(A X B) = (B^T (x) A) vec(X)):
//   L = -i[(I (x) H) - (conj(H) (x) I)]
//       + sum_k gamma_k [ (conj(L_k) (x) L_k)
//                         - 1/2 I (x) (L_k^dag L_k)
//                         - 1/2 (L_k^dag L_k)^T (x) I ].
// H may be non-Hermitian; the Hamiltonian part then realizes
// -i(H rho - rho H^dag). Throws on dimension mismatch or negative rate.
Mat liouvillian(const Mat& h, const std::vector<LindbladTerm>& terms);

// Generator of one schedule segment, h = h_ideal + delta * h_error.
Mat build_liouvillian(const Segment& seg, const std::vector<LindbladTerm>& terms);

// rho(T_g) from rho0 through every segment in order.
Mat evolve(const Mat& rho0, const GateSchedule& schedule,
           const std::vector<LindbladTerm>& terms);

// Number of vectorized generators built so far in this process. Test hook:
// lets the suite assert that the perturbative code path never touches the
// d^2-dimensional machinery.
std::uint64_t liouvillian_build_count();

// Ideal-schedule propagators U_g(t, t') built from h_ideal only.
// Each segment is eigendecomposed once; arbitrary intermediate times then
// cost one dense reconstruction.
class IdealPropagator {
 public:
  explicit IdealPropagator(const GateSchedule& schedule);

  // U_g(t, t') with 0 <= t' <= t <= T_g. Throws on out-of-range times.
  Mat between(double t, double t_prime) const;
  // U_g(t, 0).
  Mat at(double t) const;

  double total_time() const { return total_time_; }
  int dim() const { return dim_; }

 private:
  Mat segment_piece(int seg, double tau) const;  // exp(-i H_seg tau)

  struct SegmentEigen {
    Eigen::VectorXd eigval;
    Mat eigvec;
    double t_start = 0.0;
    double duration = 0.0;
  };
  std::vector<SegmentEigen> segs_;
  std::vector<Mat> cumulative_;  // U_g(t_k, 0) at segment boundaries
  double total_time_ = 0.0;
  int dim_ = 0;
};

}  // namespace gatefid

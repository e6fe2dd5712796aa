#include "gatefid/operator_algebra.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace gatefid::ops {

Mat identity(int dim) { return Mat::Identity(dim, dim); }
Mat zero(int dim) { return Mat::Zero(dim, dim); }

Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat pauli_y() {
  Mat m(2, 2);
  m << 0, -I_UNIT, I_UNIT, 0;
  return m;
}

Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat ketbra(int dim, int i, int j) {
  Mat m = Mat::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

Vec basis_ket(int dim, int i) {
  Vec v = Vec::Zero(dim);
  v(i) = 1.0;
  return v;
}

Mat kron(const Mat& a, const Mat& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols();
  const Eigen::Index br = b.rows(), bc = b.cols();
  Mat out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Mat dagger(const Mat& m) { return m.adjoint(); }

Mat commutator(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("commutator: dimension mismatch");
  return a * b - b * a;
}

Mat anticommutator(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("anticommutator: dimension mismatch");
  return a * b + b * a;
}

Mat expm(const Mat& m) {
  if (!m.allFinite()) throw std::invalid_argument("expm: non-finite input");
  return m.exp();
}

Mat partial_trace(const Mat& m, const std::vector<int>& dims,
                  const std::vector<int>& keep) {
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("partial_trace: bad subsystem dim");
    total *= d;
  }
  if (total != m.rows() || m.rows() != m.cols())
    throw std::invalid_argument("partial_trace: dims do not factor the matrix");

  long kept_dim = 1;
  std::vector<char> is_kept(dims.size(), 0);
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size()) || is_kept[k])
      throw std::invalid_argument("partial_trace: bad keep index");
    is_kept[k] = 1;
    kept_dim *= dims[k];
  }

  const int n = static_cast<int>(dims.size());
  // Strides of each subsystem index in the flattened basis label.
  std::vector<long> stride(n, 1);
  for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];
  // Strides within the kept-only label.
  std::vector<long> kstride;
  {
    long acc = kept_dim;
    for (int s = 0; s < n; ++s) {
      if (is_kept[s]) {
        acc /= dims[s];
        kstride.push_back(acc);
      } else {
        kstride.push_back(0);
      }
    }
  }

  Mat out = Mat::Zero(kept_dim, kept_dim);
  std::vector<int> row_idx(n, 0), col_idx(n, 0);
  // Iterate over all (row, col) pairs that agree on the traced subsystems.
  std::function<void(int, long, long, long, long)> recurse =
      [&](int sys, long row, long col, long krow, long kcol) {
        if (sys == n) {
          out(krow, kcol) += m(row, col);
          return;
        }
        if (is_kept[sys]) {
          for (int a = 0; a < dims[sys]; ++a)
            for (int b = 0; b < dims[sys]; ++b)
              recurse(sys + 1, row + a * stride[sys], col + b * stride[sys],
                      krow + a * kstride[sys], kcol + b * kstride[sys]);
        } else {
          for (int a = 0; a < dims[sys]; ++a)
            recurse(sys + 1, row + a * stride[sys], col + a * stride[sys],
                    krow, kcol);
        }
      };
  recurse(0, 0, 0, 0, 0);
  return out;
}

double state_fidelity(const Vec& psi, const Mat& rho) {
  if (psi.size() != rho.rows() || rho.rows() != rho.cols())
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  const cd val = psi.adjoint() * rho * psi;
  double f = val.real();
  if (f < -1e-10 || f > 1.0 + 1e-10)
    throw std::invalid_argument("state_fidelity: value far outside [0,1]");
  return std::clamp(f, 0.0, 1.0);
}

bool is_hermitian(const Mat& m, double tol) {
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

void check_hermitian(const Mat& m, double tol) {
  if (!is_hermitian(m, tol))
    throw std::invalid_argument("operator tagged Hermitian is not");
}

void check_density_matrix(const Mat& rho, double trace_tol, double eig_tol) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("density matrix must be square");
  if (std::abs(rho.trace().real() - 1.0) > trace_tol ||
      std::abs(rho.trace().imag()) > trace_tol)
    throw std::invalid_argument("density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()),
                                        Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -eig_tol)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

}  // namespace gatefid::ops

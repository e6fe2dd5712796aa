#pragma once

// Dense complex operator algebra shared by every other layer.
// Conventions: Hamiltonians are in angular frequency units (rad/s) with
// hbar = 1; states are column vectors; density matrices are trace-one
// positive operators. Everything here is a pure function.

#include <vector>

#include "gatefid/types.hpp"

namespace gatefid::ops {

Mat identity(int dim);
Mat zero(int dim);

// Pauli matrices on a 2-level space.
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();

// |i><j| on a `dim`-level space.
Mat ketbra(int dim, int i, int j);
Vec basis_ket(int dim, int i);

Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);

Mat dagger(const Mat& m);
Mat commutator(const Mat& a, const Mat& b);
Mat anticommutator(const Mat& a, const Mat& b);

// Matrix exponential (scaling-and-squaring with a Pade approximant).
// Throws std::invalid_argument on non-finite input.
Mat expm(const Mat& m);

// Trace out every subsystem not listed in `keep`. `dims` are the
// subsystem dimensions in tensor order (leftmost factor first, row-major
// Kronecker convention), and their product must equal the side of `m`.
// `keep` holds indices into `dims`, strictly increasing.
Mat partial_trace(const Mat& m, const std::vector<int>& dims,
                  const std::vector<int>& keep);

// <psi|rho|psi>, clamped to [0,1]; tolerates numerical excursions up to
// 1e-10 outside the interval before throwing.
double state_fidelity(const Vec& psi, const Mat& rho);

bool is_hermitian(const Mat& m, double tol = 1e-12);

// Validations for tagged operators; throw std::invalid_argument when the
// tag's invariant fails.
void check_hermitian(const Mat& m, double tol = 1e-12);
void check_density_matrix(const Mat& rho, double trace_tol = 1e-10,
                          double eig_tol = 1e-10);

}  // namespace gatefid::ops

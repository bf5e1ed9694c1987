#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qcert/rng.hpp"

namespace qcert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Dense storage only; Choi matrices are d^4 entries, so d <= 64 is the
// supported regime.
inline constexpr int kMaxDim = 64;

// Tolerances shared across modules.
inline constexpr double kHermTol = 1e-12;       // relative to max entry magnitude
inline constexpr double kEigClampTol = 1e-10;   // negative-eigenvalue clamp for PSD ops
inline constexpr double kPsdRejectTol = 1e-6;   // significantly negative -> error

struct EigenSystem {
  RealVector eigenvalues;   // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns
};

bool is_hermitian(const ComplexMatrix& a, double tol = kHermTol);
bool is_finite(const ComplexMatrix& a);

// Block tensor product: (A (x) B)[ik+p, jl+q] = A(i,j) * B(p,q).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// vec(|i><j|) = |j> (x) |i|>, i.e. column-major stacking. Isometry for the
// Hilbert-Schmidt inner product: <A,B> = vec(A)^dag vec(B).
ComplexVector vectorize(const ComplexMatrix& a);
ComplexMatrix unvectorize(const ComplexVector& v, int dim);

// Hermitian-specific path (self-adjoint solver); inputs within the
// hermiticity tolerance are symmetrized as (A+A^dag)/2 first.
EigenSystem hermitian_eig(const ComplexMatrix& h);

// Schatten p-norm from singular values, p in {1, 2, inf}.
double schatten_norm(const ComplexMatrix& a, double p);
inline double trace_norm(const ComplexMatrix& a) { return schatten_norm(a, 1.0); }
inline double hs_norm(const ComplexMatrix& a) { return a.norm(); }
double operator_norm(const ComplexMatrix& a);

// Unique PSD square root. Eigenvalues in [-1e-10, 0) are clamped to 0;
// below -1e-6 the input is rejected.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

bool is_density_matrix(const ComplexMatrix& rho, double tol = 1e-10);
ComplexMatrix maximally_mixed(int dim);

// |phi><phi| with phi = (1,...,1)/sqrt(d); fools the canonical scheme.
ComplexMatrix plus_state(int dim);

// Samplers used by experiments and tests.
ComplexMatrix random_hermitian(int dim, Rng& rng);   // GUE-style, O(1) entries
ComplexVector haar_unit_vector(int dim, Rng& rng);
ComplexMatrix haar_pure_state(int dim, Rng& rng);

}  // namespace qcert

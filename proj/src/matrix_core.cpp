#include "qcert/matrix_core.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qcert {

bool is_finite(const ComplexMatrix& a) {
  return a.allFinite();
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!is_finite(a) || !is_finite(b))
    throw std::invalid_argument("kron: non-finite input");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector vectorize(const ComplexMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("vectorize: input must be square");
  // column-major flattening realizes vec(|i><j|) = |j> (x) |i>
  return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim)
    throw std::invalid_argument("unvectorize: length must be dim^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

EigenSystem hermitian_eig(const ComplexMatrix& h) {
  if (!is_hermitian(h))
    throw std::invalid_argument("hermitian_eig: input is not Hermitian");
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double schatten_norm(const ComplexMatrix& a, double p) {
  if (!is_finite(a)) throw std::invalid_argument("schatten_norm: non-finite input");
  if (p == 2.0) return a.norm();
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const RealVector& s = svd.singularValues();
  if (p == 1.0) return s.sum();
  if (std::isinf(p)) return s.size() > 0 ? s(0) : 0.0;
  throw std::invalid_argument("schatten_norm: p must be 1, 2 or inf");
}

double operator_norm(const ComplexMatrix& a) {
  return schatten_norm(a, std::numeric_limits<double>::infinity());
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  EigenSystem es = hermitian_eig(m);
  RealVector lam = es.eigenvalues;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -kPsdRejectTol)
      throw std::invalid_argument("psd_sqrt: significantly negative eigenvalue");
    if (lam(i) < 0.0) lam(i) = 0.0;
  }
  return es.eigenvectors * lam.cwiseSqrt().asDiagonal() * es.eigenvectors.adjoint();
}

bool is_density_matrix(const ComplexMatrix& rho, double tol) {
  if (rho.rows() != rho.cols()) return false;
  if (!is_hermitian(rho)) return false;
  if (std::abs(rho.trace().real() - 1.0) > tol) return false;
  if (std::abs(rho.trace().imag()) > tol) return false;
  EigenSystem es = hermitian_eig(rho);
  return es.eigenvalues.minCoeff() >= -kEigClampTol;
}

ComplexMatrix maximally_mixed(int dim) {
  return ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
}

ComplexMatrix plus_state(int dim) {
  ComplexVector phi = ComplexVector::Constant(dim, Complex(1.0 / std::sqrt(double(dim)), 0.0));
  return phi * phi.adjoint();
}

ComplexMatrix random_hermitian(int dim, Rng& rng) {
  ComplexMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      a(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return 0.5 * (a + a.adjoint());
}

ComplexVector haar_unit_vector(int dim, Rng& rng) {
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return v / v.norm();
}

ComplexMatrix haar_pure_state(int dim, Rng& rng) {
  ComplexVector v = haar_unit_vector(dim, rng);
  return v * v.adjoint();
}

}  // namespace qcert

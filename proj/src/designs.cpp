#include "qcert/designs.hpp"

#include <cmath>
#include <stdexcept>

namespace qcert {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

TwoDesign mub_design(int d) {
  if (!is_prime(d))
    throw std::invalid_argument(
        "mub_design: d must be prime (prime-power MUBs via finite fields are "
        "not implemented)");
  TwoDesign t;
  t.dim = d;
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  // canonical basis first
  for (int x = 0; x < d; ++x) {
    ComplexVector v = ComplexVector::Zero(d);
    v(x) = 1.0;
    t.vectors.push_back(std::move(v));
  }
  if (d == 2) {
    // X and Y eigenbases
    const double s = 1.0 / std::sqrt(2.0);
    for (double sign : {1.0, -1.0}) {
      ComplexVector v(2);
      v << Complex(s, 0), Complex(sign * s, 0);
      t.vectors.push_back(v);
    }
    for (double sign : {1.0, -1.0}) {
      ComplexVector v(2);
      v << Complex(s, 0), Complex(0, sign * s);
      t.vectors.push_back(v);
    }
  } else {
    // quadratic-phase bases, l = 0..d-1
    const double two_pi = 6.283185307179586476925286766559;
    for (int l = 0; l < d; ++l) {
      for (int x = 0; x < d; ++x) {
        ComplexVector v(d);
        for (int j = 0; j < d; ++j) {
          const long long phase = (static_cast<long long>(l) * j * j +
                                   static_cast<long long>(x) * j) % d;
          const double angle = two_pi * static_cast<double>(phase) / d;
          v(j) = norm * Complex(std::cos(angle), std::sin(angle));
        }
        t.vectors.push_back(std::move(v));
      }
    }
  }
  const int k = static_cast<int>(t.vectors.size());
  t.weights = RealVector::Constant(k, 1.0 / k);
  return t;
}

HermitianBasis gell_mann_basis(int d) {
  if (d < 2) throw std::invalid_argument("gell_mann_basis: d >= 2 required");
  HermitianBasis b;
  b.dim = d;
  const double s = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      ComplexMatrix sym = ComplexMatrix::Zero(d, d);
      sym(k, l) = s;
      sym(l, k) = s;
      b.matrices.push_back(sym);
      ComplexMatrix anti = ComplexMatrix::Zero(d, d);
      anti(k, l) = Complex(0, -s);
      anti(l, k) = Complex(0, s);
      b.matrices.push_back(anti);
    }
  }
  for (int k = 1; k < d; ++k) {
    // 1/sqrt(k(k+1)) normalizes to unit HS norm
    const double c = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < k; ++j) diag(j, j) = c;
    diag(k, k) = -c * k;
    b.matrices.push_back(diag);
  }
  b.matrices.push_back(ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  return b;
}

RankOnePovm design_to_povm(const TwoDesign& t) {
  RankOnePovm p;
  p.dim = t.dim;
  for (std::size_t x = 0; x < t.vectors.size(); ++x) {
    if (std::abs(t.vectors[x].norm() - 1.0) > 1e-10)
      throw std::invalid_argument("design_to_povm: vector not unit-norm");
    const double w = std::sqrt(t.dim * t.weights(static_cast<Eigen::Index>(x)));
    p.elements.push_back(w * t.vectors[x]);
  }
  return p;
}

DesignCheck check_two_design(const TwoDesign& t, int trials, std::uint64_t seed,
                             double tol) {
  if (trials < 1) throw std::invalid_argument("check_two_design: trials >= 1");
  const int d = t.dim;
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(trial));
    const ComplexMatrix m = random_hermitian(d, rng);
    double lhs = 0.0;
    for (std::size_t x = 0; x < t.vectors.size(); ++x) {
      const double q = t.weights(static_cast<Eigen::Index>(x));
      const Complex mv = t.vectors[x].adjoint() * m * t.vectors[x];
      lhs += q * mv.real() * mv.real();
    }
    const double tr = m.trace().real();
    const double tr2 = (m * m).trace().real();
    const double rhs = (tr * tr + tr2) / (d * (d + 1.0));
    const double dev = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
    worst = std::max(worst, dev);
  }
  return {worst, worst <= tol};
}

double basis_gram_deviation(const HermitianBasis& b) {
  const std::size_t n = b.matrices.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex g = (b.matrices[i].adjoint() * b.matrices[j]).trace();
      const double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g - Complex(target, 0)));
    }
  return worst;
}

}  // namespace qcert

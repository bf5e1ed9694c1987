#pragma once

#include <cstdint>
#include <vector>

#include "qcert/matrix_core.hpp"
#include "qcert/measurement.hpp"

namespace qcert {

// Weighted finite set of unit vectors matching the first two Haar moments.
struct TwoDesign {
  int dim = 0;
  std::vector<ComplexVector> vectors;  // unit-norm
  RealVector weights;                  // uniform 1/k for proper designs
};

// d^2 orthonormal Hermitian matrices; the last one is I_d/sqrt(d), all
// others are trace-0.
struct HermitianBasis {
  int dim = 0;
  std::vector<ComplexMatrix> matrices;
};

// Maximal MUB construction for prime d: the canonical basis plus, for odd
// prime d, bases l = 0..d-1 with (psi_x^l)_j = exp(2*pi*i*(l*j^2 + x*j)/d)/sqrt(d).
// d = 2 uses the three Pauli eigenbases. Vectors are grouped by basis in a
// stable order. Non-prime d (including prime powers) is rejected.
TwoDesign mub_design(int d);

bool is_prime(int n);

// Generalized Gell-Mann basis: symmetric and antisymmetric off-diagonal
// pairs, diagonal elements with coefficient 1/sqrt(k(k+1)), identity last.
HermitianBasis gell_mann_basis(int d);

// POVM with unnormalized vectors sqrt(d*q_x)|psi_x>.
RankOnePovm design_to_povm(const TwoDesign& t);

struct DesignCheck {
  double max_relative_deviation = 0.0;
  bool pass = false;
};

// Second-moment identity against (Tr[M]^2 + Tr[M^2])/(d(d+1)) over random
// Hermitian M.
DesignCheck check_two_design(const TwoDesign& t, int trials, std::uint64_t seed,
                             double tol = 1e-9);

// Gram-matrix orthonormality check for a Hermitian basis.
double basis_gram_deviation(const HermitianBasis& b);

}  // namespace qcert

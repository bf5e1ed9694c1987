#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcert/matrix_core.hpp"

namespace qcert {

// Rank-1 POVM {|psi_x><psi_x|} with sum_x |psi_x><psi_x| = I_d.
// Element vectors may be unnormalized.
struct RankOnePovm {
  int dim = 0;
  std::vector<ComplexVector> elements;

  int outcome_count() const { return static_cast<int>(elements.size()); }
};

// One POVM per copy. When `shared` is set, all copies reuse povms[0].
struct MeasurementScheme {
  int copies = 0;
  std::vector<RankOnePovm> povms;
  bool shared = false;

  const RankOnePovm& povm_at(int i) const { return shared ? povms.front() : povms.at(i); }
  int dim() const { return povms.empty() ? 0 : povms.front().dim; }
};

struct PovmValidation {
  double max_deviation = 0.0;  // entrywise deviation of sum |psi><psi| from I
  bool pass = false;
};

PovmValidation validate_povm(const RankOnePovm& p, double tol = 1e-9);

// Born's rule: p(x) = <psi_x|rho|psi_x>, clamped at 0, renormalized when the
// drift from 1 is within 1e-10. Drift beyond 1e-8 signals invalid inputs.
RealVector born_distribution(const RankOnePovm& p, const ComplexMatrix& rho);

// Inverse-CDF draw from a probability vector.
int sample_from(const RealVector& probs, Rng& rng);

// i-th outcome drawn from born_distribution(povm_i, rho); the per-copy
// stream is derived from (seed, i), so the result is seed-deterministic.
std::vector<int> sample_outcomes(const MeasurementScheme& scheme,
                                 const ComplexMatrix& rho, std::uint64_t seed);

RankOnePovm canonical_povm(int dim);

MeasurementScheme shared_scheme(const RankOnePovm& povm, int copies);

// Random rank-1 POVM with k >= d outcomes: k random vectors whitened by the
// inverse square root of their frame operator.
RankOnePovm random_povm(int dim, int k, Rng& rng);

// Scheme JSON with complex entries as [re, im] pairs.
std::string scheme_to_json(const MeasurementScheme& s);
MeasurementScheme scheme_from_json(const std::string& text);

}  // namespace qcert

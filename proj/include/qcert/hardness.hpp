#pragma once

#include <cstdint>
#include <vector>

#include "qcert/designs.hpp"
#include "qcert/luders.hpp"
#include "qcert/matrix_core.hpp"
#include "qcert/measurement.hpp"

namespace qcert {

// Random-sign hard-instance distribution D_ell(V) around the maximally
// mixed state.
struct PerturbationEnsemble {
  HermitianBasis basis;
  int ell = 0;       // d^2/2 <= ell <= d^2-1
  double eps = 0.0;  // in (0, 1/200)
  double c = 14.142135623730950488;  // universal constant, 10*sqrt(2)
};

void validate_ensemble(const PerturbationEnsemble& e);

struct PerturbationSample {
  std::vector<int> signs;      // z in {-1,+1}^ell
  ComplexMatrix delta;         // Delta_z, trace-0, HS norm c*eps/sqrt(d)
  ComplexMatrix delta_bar;     // opnorm-normalized perturbation
  ComplexMatrix sigma;         // rho_mm + delta_bar
  bool normalized = false;     // true when the opnorm clamp was active
};

PerturbationSample perturbation_from_signs(const PerturbationEnsemble& e,
                                           const std::vector<int>& signs);
PerturbationSample sample_perturbation(const PerturbationEnsemble& e,
                                       std::uint64_t seed);

struct OpnormTail {
  std::vector<double> ratios;  // opnorm(W)/sqrt(d), sorted ascending
  double exceed_rate = 0.0;    // fraction above kappa
};

// W = sum_{i<=ell} z_i V_i over random sign vectors.
OpnormTail opnorm_tail(const HermitianBasis& basis, int ell, int trials,
                       std::uint64_t seed, double kappa = 10.0);

// Ensemble whose basis is the channel eigenbasis sorted ascending with
// ell = ceil(d^2/2): perturbation directions carry the smallest eigenvalues.
PerturbationEnsemble adversarial_ensemble(const LudersChannel& channel, double eps);

struct ExactDivergences {
  double chi_square = 0.0;
  double total_variation = 0.0;
  bool normalization_active = false;  // some z had opnorm(Delta_z) > 1/d
};

// chi^2(E_z[P_sigma_z] || P_rho_mm) by full enumeration over sign vectors
// and outcome tuples. Guardrails: 2^ell <= 4096, prod_i k_i <= 1e6.
ExactDivergences exact_divergences(const MeasurementScheme& s,
                                   const PerturbationEnsemble& e);
double exact_chi_square(const MeasurementScheme& s, const PerturbationEnsemble& e);

struct DecoupledBound {
  double value = 0.0;
  double std_error = 0.0;  // 0 for exact enumeration
  bool normalization_active = false;
};

// E_{z,z'}[exp{n*d*<Delta_bar_z, H_bar(Delta_bar_z')>}] - 1.
DecoupledBound decoupled_bound_exact(const MeasurementScheme& s,
                                     const PerturbationEnsemble& e);
DecoupledBound decoupled_bound_monte_carlo(const MeasurementScheme& s,
                                           const PerturbationEnsemble& e,
                                           int trials, std::uint64_t seed);

struct AnalyticBound {
  double value = 0.0;
  double hs_projection_sq = 0.0;  // ||V^dag C_bar V||_HS^2
};

// exp{c^2 n^2 eps^4 / ell^2 * ||V^dag C_bar V||^2} - 1 + 4/e^d.
// Enforces the tighter of n < d^2/(6 c^2 eps^2) and n < ell/(3 c^2 eps^2).
AnalyticBound analytic_bound(const MeasurementScheme& s,
                             const PerturbationEnsemble& e, int n);

// Max entrywise deviation of V_x V_x^dag from I_d for V_x = [V_1 x, ..., V_{d^2} x].
double isometry_check(const HermitianBasis& basis, const ComplexVector& x);

double total_variation(const RealVector& p, const RealVector& q);
double kl_divergence(const RealVector& p, const RealVector& q);
double chi_square_divergence(const RealVector& p, const RealVector& q);

struct DivergenceChain {
  double tv = 0.0;
  double kl = 0.0;
  double chi2 = 0.0;
  bool chain_ok = false;  // 2 tv^2 <= kl <= chi2 within 1e-12
};

DivergenceChain lecam_chain_check(const RealVector& p, const RealVector& q);

}  // namespace qcert

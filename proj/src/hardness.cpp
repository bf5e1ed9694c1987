#include "qcert/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace qcert {

namespace {
constexpr int kMaxSignVectors = 4096;      // 2^ell guardrail
constexpr double kMaxOutcomeTuples = 1e6;  // prod k_i guardrail
}  // namespace

void validate_ensemble(const PerturbationEnsemble& e) {
  const int d = e.basis.dim;
  const int dd = d * d;
  if (static_cast<int>(e.basis.matrices.size()) != dd)
    throw std::invalid_argument("ensemble: basis must have d^2 matrices");
  if (2 * e.ell < dd || e.ell > dd - 1)
    throw std::invalid_argument("ensemble: ell must satisfy d^2/2 <= ell <= d^2-1");
  if (!(e.eps > 0.0 && e.eps < 1.0 / 200.0))
    throw std::invalid_argument("ensemble: eps must be in (0, 1/200)");
  if (!(e.c > 0.0)) throw std::invalid_argument("ensemble: c must be positive");
}

PerturbationSample perturbation_from_signs(const PerturbationEnsemble& e,
                                           const std::vector<int>& signs) {
  validate_ensemble(e);
  if (static_cast<int>(signs.size()) != e.ell)
    throw std::invalid_argument("perturbation: sign vector length != ell");
  const int d = e.basis.dim;
  PerturbationSample s;
  s.signs = signs;
  ComplexMatrix w = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < e.ell; ++i)
    w += static_cast<double>(signs[i]) * e.basis.matrices[i];
  const double scale = e.c * e.eps / std::sqrt(static_cast<double>(d) * e.ell);
  s.delta = scale * w;
  const double opn = operator_norm(s.delta);
  const double factor = std::min(1.0, 1.0 / (d * opn));
  s.normalized = factor < 1.0;
  s.delta_bar = factor * s.delta;
  s.sigma = maximally_mixed(d) + s.delta_bar;
  return s;
}

PerturbationSample sample_perturbation(const PerturbationEnsemble& e,
                                       std::uint64_t seed) {
  validate_ensemble(e);
  Rng rng(seed);
  std::vector<int> signs(e.ell);
  for (int i = 0; i < e.ell; ++i) signs[i] = rng.next_sign();
  return perturbation_from_signs(e, signs);
}

OpnormTail opnorm_tail(const HermitianBasis& basis, int ell, int trials,
                       std::uint64_t seed, double kappa) {
  const int d = basis.dim;
  if (ell < 1 || ell > d * d)
    throw std::invalid_argument("opnorm_tail: ell must be in [1, d^2]");
  OpnormTail tail;
  tail.ratios.reserve(trials);
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  int exceed = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t));
    ComplexMatrix w = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < ell; ++i)
      w += static_cast<double>(rng.next_sign()) * basis.matrices[i];
    const double ratio = operator_norm(w) / sqrt_d;
    if (ratio > kappa) ++exceed;
    tail.ratios.push_back(ratio);
  }
  std::sort(tail.ratios.begin(), tail.ratios.end());
  tail.exceed_rate = trials > 0 ? static_cast<double>(exceed) / trials : 0.0;
  return tail;
}

PerturbationEnsemble adversarial_ensemble(const LudersChannel& channel, double eps) {
  const ChannelSpectrum spec = channel_spectrum(channel);
  PerturbationEnsemble e;
  e.basis.dim = channel.dim;
  e.basis.matrices = spec.eigenmatrices;
  e.ell = (channel.dim * channel.dim + 1) / 2;
  e.eps = eps;
  validate_ensemble(e);
  return e;
}

namespace {

struct EnumerationContext {
  int zcount = 0;
  std::vector<std::vector<RealVector>> dists;  // [z][copy] outcome distribution
  std::vector<RealVector> base;                // [copy] under rho_mm
  bool normalization_active = false;
};

EnumerationContext enumerate_perturbations(const MeasurementScheme& s,
                                           const PerturbationEnsemble& e) {
  validate_ensemble(e);
  if (s.dim() != e.basis.dim)
    throw std::invalid_argument("exact enumeration: dimension mismatch");
  if (e.ell > 12)
    throw std::invalid_argument("exact enumeration: 2^ell exceeds guardrail");
  double tuples = 1.0;
  for (int i = 0; i < s.copies; ++i)
    tuples *= s.povm_at(i).outcome_count();
  if (tuples > kMaxOutcomeTuples)
    throw std::invalid_argument("exact enumeration: outcome tuples exceed guardrail");

  EnumerationContext ctx;
  ctx.zcount = 1 << e.ell;
  if (ctx.zcount > kMaxSignVectors)
    throw std::invalid_argument("exact enumeration: 2^ell exceeds guardrail");
  const ComplexMatrix mm = maximally_mixed(s.dim());
  ctx.base.resize(s.copies);
  for (int i = 0; i < s.copies; ++i)
    ctx.base[i] = born_distribution(s.povm_at(i), mm);
  ctx.dists.resize(ctx.zcount);
  for (int zi = 0; zi < ctx.zcount; ++zi) {
    std::vector<int> signs(e.ell);
    for (int b = 0; b < e.ell; ++b) signs[b] = (zi >> b) & 1 ? 1 : -1;
    const PerturbationSample sample = perturbation_from_signs(e, signs);
    if (sample.normalized) ctx.normalization_active = true;
    if (!is_density_matrix(sample.sigma))
      throw std::runtime_error("exact enumeration: sigma_z is not a valid state");
    ctx.dists[zi].resize(s.copies);
    for (int i = 0; i < s.copies; ++i)
      ctx.dists[zi][i] = born_distribution(s.povm_at(i), sample.sigma);
  }
  return ctx;
}

}  // namespace

ExactDivergences exact_divergences(const MeasurementScheme& s,
                                   const PerturbationEnsemble& e) {
  const EnumerationContext ctx = enumerate_perturbations(s, e);
  ExactDivergences result;
  result.normalization_active = ctx.normalization_active;

  // depth-first walk over outcome tuples, carrying per-z partial products
  std::vector<double> partial(ctx.zcount, 1.0);
  double chi2 = 0.0;
  double tv = 0.0;
  std::function<void(int, double)> walk = [&](int copy, double base_prob) {
    if (copy == s.copies) {
      double mix = 0.0;
      for (int zi = 0; zi < ctx.zcount; ++zi) mix += partial[zi];
      mix /= ctx.zcount;
      tv += 0.5 * std::abs(mix - base_prob);
      if (base_prob > 0.0) {
        const double diff = mix - base_prob;
        chi2 += diff * diff / base_prob;
      }
      return;
    }
    const int k = s.povm_at(copy).outcome_count();
    std::vector<double> saved = partial;
    for (int x = 0; x < k; ++x) {
      for (int zi = 0; zi < ctx.zcount; ++zi)
        partial[zi] = saved[zi] * ctx.dists[zi][copy](x);
      walk(copy + 1, base_prob * ctx.base[copy](x));
    }
    partial = saved;
  };
  walk(0, 1.0);
  result.chi_square = chi2;
  result.total_variation = tv;
  return result;
}

double exact_chi_square(const MeasurementScheme& s, const PerturbationEnsemble& e) {
  return exact_divergences(s, e).chi_square;
}

namespace {

// n*d*<Delta_bar_z, H_bar(Delta_bar_z')> for precomputed vectorized deltas
double coupling(const ComplexVector& vz, const ComplexVector& cvz_prime,
                int n, int d) {
  return n * d * vz.dot(cvz_prime).real();
}

}  // namespace

DecoupledBound decoupled_bound_exact(const MeasurementScheme& s,
                                     const PerturbationEnsemble& e) {
  validate_ensemble(e);
  if (e.ell > 12)
    throw std::invalid_argument("decoupled_bound: 2^ell exceeds guardrail");
  const LudersChannel avg = average_channel(s);
  const int zcount = 1 << e.ell;
  std::vector<ComplexVector> vecs(zcount), cvecs(zcount);
  DecoupledBound result;
  for (int zi = 0; zi < zcount; ++zi) {
    std::vector<int> signs(e.ell);
    for (int b = 0; b < e.ell; ++b) signs[b] = (zi >> b) & 1 ? 1 : -1;
    const PerturbationSample sample = perturbation_from_signs(e, signs);
    if (sample.normalized) result.normalization_active = true;
    vecs[zi] = vectorize(sample.delta_bar);
    cvecs[zi] = avg.choi * vecs[zi];
  }
  double acc = 0.0;
  for (int zi = 0; zi < zcount; ++zi)
    for (int zj = 0; zj < zcount; ++zj)
      acc += std::exp(coupling(vecs[zi], cvecs[zj], s.copies, s.dim()));
  result.value = acc / (static_cast<double>(zcount) * zcount) - 1.0;
  return result;
}

DecoupledBound decoupled_bound_monte_carlo(const MeasurementScheme& s,
                                           const PerturbationEnsemble& e,
                                           int trials, std::uint64_t seed) {
  validate_ensemble(e);
  if (trials < 1) throw std::invalid_argument("decoupled_bound: trials >= 1");
  const LudersChannel avg = average_channel(s);
  DecoupledBound result;
  double sum = 0.0, sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t));
    std::vector<int> z(e.ell), zp(e.ell);
    for (int i = 0; i < e.ell; ++i) z[i] = rng.next_sign();
    for (int i = 0; i < e.ell; ++i) zp[i] = rng.next_sign();
    const PerturbationSample a = perturbation_from_signs(e, z);
    const PerturbationSample b = perturbation_from_signs(e, zp);
    if (a.normalized || b.normalized) result.normalization_active = true;
    const ComplexVector va = vectorize(a.delta_bar);
    const ComplexVector cb = avg.choi * vectorize(b.delta_bar);
    const double val = std::exp(coupling(va, cb, s.copies, s.dim()));
    sum += val;
    sum_sq += val * val;
  }
  const double mean = sum / trials;
  const double var = std::max(0.0, sum_sq / trials - mean * mean);
  result.value = mean - 1.0;
  result.std_error = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
  return result;
}

AnalyticBound analytic_bound(const MeasurementScheme& s,
                             const PerturbationEnsemble& e, int n) {
  validate_ensemble(e);
  const int d = s.dim();
  const double c2e2 = e.c * e.c * e.eps * e.eps;
  const double limit = std::min(d * d / (6.0 * c2e2), e.ell / (3.0 * c2e2));
  if (!(n < limit))
    throw std::invalid_argument("analytic_bound: n outside the valid range");
  const LudersChannel avg = average_channel(s);
  ComplexMatrix v(d * d, e.ell);
  for (int i = 0; i < e.ell; ++i) v.col(i) = vectorize(e.basis.matrices[i]);
  const ComplexMatrix h = v.adjoint() * avg.choi * v;
  AnalyticBound result;
  result.hs_projection_sq = h.squaredNorm();
  const double exponent = e.c * e.c * static_cast<double>(n) * n *
                          std::pow(e.eps, 4) / (static_cast<double>(e.ell) * e.ell) *
                          result.hs_projection_sq;
  result.value = std::exp(exponent) - 1.0 + 4.0 * std::exp(-static_cast<double>(d));
  return result;
}

double isometry_check(const HermitianBasis& basis, const ComplexVector& x) {
  const int d = basis.dim;
  ComplexMatrix vx(d, static_cast<int>(basis.matrices.size()));
  for (std::size_t i = 0; i < basis.matrices.size(); ++i)
    vx.col(static_cast<Eigen::Index>(i)) = basis.matrices[i] * x;
  return (vx * vx.adjoint() - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

namespace {
void check_support(const RealVector& p, const RealVector& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("divergence: support size mismatch");
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0 && q(i) <= 0.0)
      throw std::invalid_argument("divergence: q vanishes where p > 0");
}
}  // namespace

double total_variation(const RealVector& p, const RealVector& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("divergence: support size mismatch");
  return 0.5 * (p - q).cwiseAbs().sum();
}

double kl_divergence(const RealVector& p, const RealVector& q) {
  check_support(p, q);
  double kl = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) kl += p(i) * std::log(p(i) / q(i));
  return kl;
}

double chi_square_divergence(const RealVector& p, const RealVector& q) {
  check_support(p, q);
  double chi2 = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (q(i) > 0.0) {
      const double diff = p(i) - q(i);
      chi2 += diff * diff / q(i);
    }
  }
  return chi2;
}

DivergenceChain lecam_chain_check(const RealVector& p, const RealVector& q) {
  DivergenceChain chain;
  chain.tv = total_variation(p, q);
  chain.kl = kl_divergence(p, q);
  chain.chi2 = chi_square_divergence(p, q);
  chain.chain_ok = (2.0 * chain.tv * chain.tv <= chain.kl + 1e-12) &&
                   (chain.kl <= chain.chi2 + 1e-12);
  return chain;
}

}  // namespace qcert

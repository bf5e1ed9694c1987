#include "qcert/certify.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "qcert/measurement.hpp"

namespace qcert {

Defaults load_defaults() {
  Defaults d;
  std::ifstream in(QCERT_DEFAULTS_PATH);
  if (!in) return d;
  nlohmann::json j = nlohmann::json::parse(in);
  d.tester_threshold_scale = j.value("tester_threshold_scale", d.tester_threshold_scale);
  d.certify_constant = j.value("certify_constant_C", d.certify_constant);
  return d;
}

int required_copies(int d, int k, double eps, double C) {
  if (!(eps > 0.0 && eps <= 2.0))
    throw std::invalid_argument("required_copies: eps must be in (0, 2]");
  if (!(C > 0.0)) throw std::invalid_argument("required_copies: C > 0 required");
  return static_cast<int>(
      std::ceil(C * std::sqrt(static_cast<double>(k) * d * (d + 1)) / (eps * eps)));
}

CertifyVerdict certify_state(const CertifyJob& job) {
  if (!(job.eps > 0.0 && job.eps <= 2.0))
    throw std::invalid_argument("certify_state: eps must be in (0, 2]");
  if (job.copies < 1) throw std::invalid_argument("certify_state: n >= 1 required");
  if (job.design.dim != job.d || job.rho.rows() != job.d || job.rho0.rows() != job.d)
    throw std::invalid_argument("certify_state: dimension mismatch");

  const RankOnePovm povm = design_to_povm(job.design);
  const int k = povm.outcome_count();
  const MeasurementScheme scheme = shared_scheme(povm, job.copies);

  // the decision path only sees sampled outcomes of the unknown state
  const std::vector<int> x =
      sample_outcomes(scheme, job.rho, mix_seed(job.seed, 0x517e));
  // reference stream: when rho0 is known the outcomes come from classical
  // sampling of the exact Born distribution; otherwise they model measured
  // quantum copies. In simulation both reduce to the same draw.
  const std::vector<int> xp =
      sample_outcomes(scheme, job.rho0, mix_seed(job.seed, 0x4ef5));

  const double eps2 = job.eps / std::sqrt(static_cast<double>(k) * (job.d + 1));
  const Verdict2 verdict = test_closeness_l2(x, xp, k, eps2, job.tester);

  CertifyVerdict out;
  out.n_used = job.copies;
  const int reps = job.tester.amplification;
  const int m = job.copies / reps;
  const double scale = job.tester.threshold_mode == ThresholdMode::Analytic
                           ? 0.5
                           : job.tester.threshold_scale;
  out.threshold = scale * static_cast<double>(m) * m * eps2 * eps2;
  {
    std::vector<int> cx(x.begin(), x.begin() + m);
    std::vector<int> cy(xp.begin(), xp.begin() + m);
    out.statistic = static_cast<double>(l2_statistic(tally(cx, k), tally(cy, k)));
  }
  out.yes = verdict == Verdict2::Accept;
  return out;
}

L2GapAudit l2_gap_audit(const TwoDesign& design, const ComplexMatrix& rho,
                        const ComplexMatrix& rho0) {
  const int d = design.dim;
  const int k = static_cast<int>(design.vectors.size());
  const RankOnePovm povm = design_to_povm(design);
  const RealVector p = born_distribution(povm, rho);
  const RealVector q = born_distribution(povm, rho0);
  L2GapAudit audit;
  audit.p_rho_l2_sq = p.squaredNorm();
  audit.gap_l2_sq = (p - q).squaredNorm();
  const ComplexMatrix delta = rho - rho0;
  const double tr_delta_sq = (delta * delta).trace().real();
  audit.gap_formula = static_cast<double>(d) * d * tr_delta_sq /
                      (static_cast<double>(k) * d * (d + 1));
  audit.norm_bound_ok =
      audit.p_rho_l2_sq <= 2.0 * d / (static_cast<double>(k) * (d + 1)) + 1e-10;
  audit.gap_formula_ok = std::abs(audit.gap_l2_sq - audit.gap_formula) <= 1e-10;
  return audit;
}

}  // namespace qcert

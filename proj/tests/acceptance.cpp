// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// argv[1] is the path to the qcert CLI binary (used by criterion 12).
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qcert/certify.hpp"
#include "qcert/classical_test.hpp"
#include "qcert/designs.hpp"
#include "qcert/hardness.hpp"
#include "qcert/luders.hpp"
#include "qcert/matrix_core.hpp"
#include "qcert/measurement.hpp"

using namespace qcert;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  if (!pass) ++g_failures;
  std::printf("criterion %2d: %s — %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// ---------------------------------------------------------------- criterion 1

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool pass = true;
  for (int d : {2, 3, 5, 7}) {
    const DesignCheck c = check_two_design(mub_design(d), 100, 1000 + d, 1e-9);
    worst = std::max(worst, c.max_relative_deviation);
    pass = pass && c.pass;
  }
  const double dt = seconds_since(t0);
  pass = pass && worst <= 1e-9 && dt < 10.0;
  report(1, pass, "2-design moment identity, max relative deviation " + fmt(worst) +
                      ", " + fmt(dt) + "s");
}

// ---------------------------------------------------------------- criterion 2

void criterion_2() {
  double worst = 0.0;
  for (int d : {2, 3, 4, 5, 7, 16}) {
    worst = std::max(worst, validate_povm(canonical_povm(d)).max_deviation);
    if (is_prime(d))
      worst = std::max(worst,
                       validate_povm(design_to_povm(mub_design(d))).max_deviation);
  }
  report(2, worst <= 1e-10,
         "POVM completeness, max deviation from identity " + fmt(worst));
}

// ------------------------------------------------- criteria 3 and 8 (schemes)

std::vector<MeasurementScheme> random_schemes() {
  std::vector<MeasurementScheme> schemes;
  Rng rng(2024);
  for (int d : {2, 3, 4})
    for (int t = 0; t < 20; ++t) {
      const int k = d + static_cast<int>(rng.next_index(2 * d));
      schemes.push_back(shared_scheme(random_povm(d, k, rng), 1));
    }
  return schemes;
}

void criterion_3_and_8(const std::vector<MeasurementScheme>& schemes) {
  bool pass3 = true;
  bool pass8 = true;
  double worst_range = 0.0, worst_trace_dev = 0.0, worst_overlap = 1.0,
         worst_zero_trace = 0.0, worst_mass = 0.0;
  for (const MeasurementScheme& s : schemes) {
    const int d = s.dim();
    const LudersChannel ch = average_channel(s);
    const ChannelSpectrum spec = channel_spectrum(ch);
    worst_range = std::max(worst_range, -spec.eigenvalues.minCoeff());
    worst_range = std::max(worst_range, spec.eigenvalues.maxCoeff() - 1.0);
    worst_trace_dev = std::max(worst_trace_dev, std::abs(spec.eigenvalues.sum() - d));
    const ComplexMatrix id = ComplexMatrix::Identity(d, d) / std::sqrt(double(d));
    const double overlap =
        std::abs((id.adjoint() * spec.eigenmatrices.back()).trace());
    worst_overlap = std::min(worst_overlap, overlap);
    for (std::size_t i = 0; i + 1 < spec.eigenmatrices.size(); ++i)
      worst_zero_trace =
          std::max(worst_zero_trace, std::abs(spec.eigenmatrices[i].trace()));
    pass3 = pass3 && spec.eigenvalues.minCoeff() >= -1e-9 &&
            spec.eigenvalues.maxCoeff() <= 1.0 + 1e-9 &&
            std::abs(spec.eigenvalues.sum() - d) <= 1e-8 &&
            overlap >= 1.0 - 1e-9 && worst_zero_trace <= 1e-8;

    const SpectrumReport r = spectrum_report(ch);
    worst_mass = std::max(worst_mass, r.smallest_half_square_sum);
    pass8 = pass8 && r.smallest_half_square_sum <= 2.0 + 1e-9;
  }
  report(3, pass3,
         "spectrum invariants on 60 random schemes: range slack " + fmt(worst_range) +
             ", trace dev " + fmt(worst_trace_dev) + ", min identity overlap " +
             fmt(worst_overlap));
  report(8, pass8,
         "smallest-half eigenvalue mass <= 2, max observed " + fmt(worst_mass));
}

// ---------------------------------------------------------------- criterion 4

void criterion_4() {
  Rng rng(404);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int d = 2 + static_cast<int>(rng.next_index(3));
    const RankOnePovm povm = random_povm(d, d + 1 + static_cast<int>(rng.next_index(d)), rng);
    ComplexMatrix x(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        x(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    const double err =
        (vectorize(luders_apply(povm, x)) - choi_matrix(povm).choi * vectorize(x))
            .cwiseAbs()
            .maxCoeff();
    worst = std::max(worst, err);
  }
  report(4, worst <= 1e-9,
         "vec(H(X)) = C vec(X) on 50 random pairs, max error " + fmt(worst));
}

// ---------------------------------------------------------------- criterion 5

void criterion_5() {
  bool pass = true;
  double worst_born = 0.0, worst_tr = 0.0;
  for (int d : {2, 4, 16}) {
    const RankOnePovm canon = canonical_povm(d);
    const ComplexMatrix plus = plus_state(d);
    const ComplexMatrix mm = maximally_mixed(d);
    const double born_diff =
        (born_distribution(canon, plus) - born_distribution(canon, mm))
            .cwiseAbs()
            .maxCoeff();
    const double tr_dev = std::abs(trace_norm(plus - mm) - 2.0 * (1.0 - 1.0 / d));
    worst_born = std::max(worst_born, born_diff);
    worst_tr = std::max(worst_tr, tr_dev);
    pass = pass && born_diff <= 1e-12 && tr_dev <= 1e-10;
  }
  report(5, pass,
         "fooling demo: Born difference " + fmt(worst_born) +
             ", trace-distance deviation " + fmt(worst_tr));
}

// ---------------------------------------------------------------- criterion 6

void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  const int d = 16, ell = 128, trials = 2000;
  const double eps = 0.004;
  PerturbationEnsemble e;
  e.basis = gell_mann_basis(d);
  e.ell = ell;
  e.eps = eps;
  validate_ensemble(e);
  const double scale = e.c * e.eps / std::sqrt(static_cast<double>(d) * ell);
  int valid = 0;
  double max_ratio = 0.0;
  for (int t = 0; t < trials; ++t) {
    const PerturbationSample s =
        sample_perturbation(e, mix_seed(606, static_cast<std::uint64_t>(t)));
    const double opn = operator_norm(s.delta);
    if (opn <= 1.0 / d && trace_norm(s.delta) >= eps) ++valid;
    max_ratio = std::max(max_ratio, opn / scale / std::sqrt(double(d)));
  }
  const double frac = static_cast<double>(valid) / trials;
  const double dt = seconds_since(t0);
  report(6, frac >= 0.99 && max_ratio <= 10.0 && dt < 120.0,
         "hard-instance validity " + fmt(frac) + ", max opnorm(W)/sqrt(d) " +
             fmt(max_ratio) + ", " + fmt(dt) + "s");
}

// ------------------------------------------------------- criteria 7 and 10(b)

struct ChainRecord {
  double exact_chi2 = 0.0;
  double exact_tv = 0.0;
};

void criterion_7_and_10(std::vector<ChainRecord>& records) {
  const auto t0 = std::chrono::steady_clock::now();
  const int d = 2;
  const double eps = 0.004;

  const RankOnePovm canon = canonical_povm(d);
  RankOnePovm had;
  had.dim = 2;
  const double s = 1.0 / std::sqrt(2.0);
  ComplexVector hp(2), hm(2);
  hp << s, s;
  hm << s, -s;
  had.elements = {hp, hm};
  const RankOnePovm mub = design_to_povm(mub_design(2));

  PerturbationEnsemble e;
  e.basis = gell_mann_basis(d);
  e.ell = 2;
  e.eps = eps;

  bool chain_ok = true;
  double worst_slack = 0.0;
  for (int n : {1, 2, 3}) {
    std::vector<MeasurementScheme> schemes;
    schemes.push_back(shared_scheme(canon, n));
    {
      MeasurementScheme mixed;
      mixed.copies = n;
      mixed.shared = false;
      for (int i = 0; i < n; ++i) mixed.povms.push_back(i % 2 == 0 ? canon : had);
      schemes.push_back(mixed);
    }
    schemes.push_back(shared_scheme(mub, n));
    for (const MeasurementScheme& scheme : schemes) {
      const ExactDivergences div = exact_divergences(scheme, e);
      const DecoupledBound dec = decoupled_bound_exact(scheme, e);
      const AnalyticBound ana = analytic_bound(scheme, e, n);
      worst_slack = std::max(worst_slack, div.chi_square - dec.value);
      worst_slack = std::max(worst_slack, dec.value - ana.value);
      chain_ok = chain_ok && div.chi_square <= dec.value + 1e-9 &&
                 dec.value <= ana.value + 1e-9;
      records.push_back({div.chi_square, div.total_variation});
    }
  }

  // canonical scheme + adversarial ensemble: perturbations live in the
  // channel's null space, so the exact divergence vanishes
  const PerturbationEnsemble adv = adversarial_ensemble(choi_matrix(canon), eps);
  const double null_chi2 = exact_chi_square(shared_scheme(canon, 2), adv);
  const double dt = seconds_since(t0);
  report(7, chain_ok && null_chi2 <= 1e-10 && dt < 30.0,
         "chi-square chain on 9 instances, worst chain slack " + fmt(worst_slack) +
             ", adversarial exact " + fmt(null_chi2) + ", " + fmt(dt) + "s");
}

// ---------------------------------------------------------------- criterion 9

void criterion_9() {
  const auto t0 = std::chrono::steady_clock::now();
  const Defaults defaults = load_defaults();
  const double eps = 0.5;
  const int trials = 200;
  bool rates_ok = true;
  bool degraded = false;
  std::string detail;
  for (int d : {2, 3, 5}) {
    const TwoDesign design = mub_design(d);
    const int k = static_cast<int>(design.vectors.size());
    const int n = required_copies(d, k, eps, defaults.certify_constant);

    CertifyJob job;
    job.d = d;
    job.design = design;
    job.rho0 = maximally_mixed(d);
    job.eps = eps;
    job.tester.threshold_mode = ThresholdMode::Calibrated;
    job.tester.threshold_scale = defaults.tester_threshold_scale;

    std::vector<ComplexMatrix> far;
    {
      ComplexMatrix zero = ComplexMatrix::Zero(d, d);
      zero(0, 0) = 1.0;
      far.push_back(zero);
      far.push_back(plus_state(d));
      Rng haar_rng(mix_seed(909, static_cast<std::uint64_t>(d)));
      far.push_back(haar_pure_state(d, haar_rng));
    }

    int type1 = 0;
    std::vector<int> type2(far.size(), 0);
    std::vector<int> type2_small(far.size(), 0);
    const int n_small = std::max(2, n / 10);
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t base =
          mix_seed(1234, (static_cast<std::uint64_t>(d) << 32) ^
                             static_cast<std::uint64_t>(t));
      job.copies = n;
      job.rho = job.rho0;
      job.seed = mix_seed(base, 0);
      if (!certify_state(job).yes) ++type1;
      for (std::size_t f = 0; f < far.size(); ++f) {
        job.rho = far[f];
        job.seed = mix_seed(base, 1 + f);
        if (certify_state(job).yes) ++type2[f];
        job.copies = n_small;
        job.seed = mix_seed(base, 10 + f);
        if (certify_state(job).yes) ++type2_small[f];
        job.copies = n;
      }
    }
    const double t1 = static_cast<double>(type1) / trials;
    double t2 = 0.0, t2_small = 0.0;
    for (std::size_t f = 0; f < far.size(); ++f) {
      t2 = std::max(t2, static_cast<double>(type2[f]) / trials);
      t2_small = std::max(t2_small, static_cast<double>(type2_small[f]) / trials);
    }
    rates_ok = rates_ok && t1 <= 1.0 / 3.0 && t2 <= 1.0 / 3.0;
    degraded = degraded || t2_small > 0.5;
    detail += "d=" + std::to_string(d) + " n=" + std::to_string(n) + " t1=" +
              fmt(t1) + " t2=" + fmt(t2) + " t2@n/10=" + fmt(t2_small) + "; ";
  }
  const double dt = seconds_since(t0);
  report(9, rates_ok && degraded && dt < 300.0,
         "end-to-end certification: " + detail + fmt(dt) + "s");
}

// --------------------------------------------------------------- criterion 10

void criterion_10(const std::vector<ChainRecord>& records) {
  Rng rng(1010);
  bool pass = true;
  for (int t = 0; t < 100; ++t) {
    const int k = 2 + static_cast<int>(rng.next_index(8));
    RealVector p(k), q(k);
    for (int i = 0; i < k; ++i) {
      p(i) = rng.next_double() + 1e-6;
      q(i) = rng.next_double() + 1e-6;
    }
    p /= p.sum();
    q /= q.sum();
    pass = pass && lecam_chain_check(p, q).chain_ok;
  }
  // mixture-vs-null instances from criterion 7: TV <= sqrt(chi2 / 2)
  double worst = 0.0;
  for (const ChainRecord& r : records) {
    const double bound = std::sqrt(r.exact_chi2 / 2.0);
    worst = std::max(worst, r.exact_tv - bound);
    pass = pass && r.exact_tv <= bound + 1e-12;
  }
  report(10, pass,
         "2TV^2 <= KL <= chi^2 on 100 random pairs; mixture TV slack " + fmt(worst));
}

// --------------------------------------------------------------- criterion 11

void criterion_11() {
  Rng rng(1111);
  double worst = 0.0;
  for (int d : {2, 3, 5}) {
    const HermitianBasis basis = gell_mann_basis(d);
    for (int t = 0; t < 20; ++t)
      worst = std::max(worst, isometry_check(basis, haar_unit_vector(d, rng)));
  }
  report(11, worst <= 1e-10, "V_x V_x^dag = I for Gell-Mann bases, max deviation " +
                                 fmt(worst));
}

// --------------------------------------------------------------- criterion 12

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion_12(const std::string& cli) {
  const std::vector<std::string> commands = {
      "demo-fooling --d 4 --seed 1",
      "spectrum --design mub --d 3",
      "bounds --d 2 --n 2 --eps 0.004 --ell 2 --seed 5",
      "power-curve --d 2 --C 1.0 --eps 0.5 --trials 20 --seed 7",
      "hard-instance --d 4 --ell 12 --eps 0.004 --trials 50 --seed 9",
      "calibrate --d 2 --eps 0.5 --n 50 --trials 200 --seed 3",
      "certify --d 2 --eps 0.5 --seed 11 --state plus",
  };
  bool pass = true;
  std::string detail;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const std::string a = "acc12_a_" + std::to_string(i) + ".out";
    const std::string b = "acc12_b_" + std::to_string(i) + ".out";
    const std::string base = "\"" + cli + "\" " + commands[i] + " --out ";
    const int rc_a = std::system((base + a).c_str());
    const int rc_b = std::system((base + b).c_str());
    const bool same = rc_a == 0 && rc_b == 0 && !read_file(a).empty() &&
                      read_file(a) == read_file(b);
    std::remove(a.c_str());
    std::remove(b.c_str());
    if (!same) {
      pass = false;
      detail += commands[i].substr(0, commands[i].find(' ')) + " differs; ";
    }
  }
  if (detail.empty()) detail = "all 7 subcommands byte-identical across reruns";
  report(12, pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  criterion_1();
  criterion_2();
  const std::vector<MeasurementScheme> schemes = random_schemes();
  criterion_3_and_8(schemes);
  criterion_4();
  criterion_5();
  criterion_6();
  std::vector<ChainRecord> records;
  criterion_7_and_10(records);
  criterion_9();
  criterion_10(records);
  criterion_11();
  if (argc > 1) {
    criterion_12(argv[1]);
  } else {
    report(12, false, "CLI path not supplied");
  }
  if (g_failures > 0) {
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}

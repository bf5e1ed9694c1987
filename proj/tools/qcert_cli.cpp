// qcert: reproducible experiment front door for the certification toolkit.
// Every subcommand is a pure function of (flags, seed) and emits
// schema-stable JSON or CSV, so reports can be diffed byte-for-byte.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcert/certify.hpp"
#include "qcert/classical_test.hpp"
#include "qcert/designs.hpp"
#include "qcert/hardness.hpp"
#include "qcert/luders.hpp"
#include "qcert/matrix_core.hpp"
#include "qcert/measurement.hpp"

using json = nlohmann::ordered_json;
using namespace qcert;

namespace {

constexpr int kReportVersion = 1;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text << "\n";
}

json report_head(const std::string& experiment, json parameters) {
  json j;
  j["format_version"] = kReportVersion;
  j["experiment"] = experiment;
  j["parameters"] = std::move(parameters);
  return j;
}

json real_vector_to_json(const RealVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

std::string fixed6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

struct Wilson {
  double lo = 0.0;
  double hi = 0.0;
};

Wilson wilson_interval(int successes, int n, double z = 1.96) {
  if (n == 0) return {0.0, 1.0};
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {(center - half) / denom, (center + half) / denom};
}

MeasurementScheme load_scheme_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scheme file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return scheme_from_json(buf.str());
}

// Named far-state family used by power-curve and certify: pure states at
// trace distance 2(1-1/d) >= 1 from the maximally mixed reference.
ComplexMatrix named_state(const std::string& name, int d, std::uint64_t seed) {
  if (name == "mm") return maximally_mixed(d);
  if (name == "zero") {
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    rho(0, 0) = 1.0;
    return rho;
  }
  if (name == "plus") return plus_state(d);
  if (name == "haar") {
    Rng rng(mix_seed(seed, 0x77 + static_cast<std::uint64_t>(d)));
    return haar_pure_state(d, rng);
  }
  throw std::runtime_error("unknown state name: " + name +
                           " (expected mm|zero|plus|haar)");
}

PerturbationEnsemble gell_mann_ensemble(int d, int ell, double eps) {
  PerturbationEnsemble e;
  e.basis = gell_mann_basis(d);
  e.ell = ell;
  e.eps = eps;
  return e;
}

// ---------------------------------------------------------------- demo-fooling

int cmd_demo_fooling(int d, const std::string& out, std::uint64_t seed) {
  if (d < 2) throw std::runtime_error("demo-fooling: d >= 2 required");
  json j = report_head("demo-fooling", {{"d", d}, {"seed", seed}});
  const RankOnePovm canon = canonical_povm(d);
  const ComplexMatrix plus = plus_state(d);
  const ComplexMatrix mm = maximally_mixed(d);
  const RealVector p_plus = born_distribution(canon, plus);
  const RealVector p_mm = born_distribution(canon, mm);
  j["born_plus"] = real_vector_to_json(p_plus);
  j["born_mm"] = real_vector_to_json(p_mm);
  j["born_max_difference"] = (p_plus - p_mm).cwiseAbs().maxCoeff();
  j["trace_norm_difference"] = trace_norm(plus - mm);
  j["trace_norm_expected"] = 2.0 * (1.0 - 1.0 / d);
  if (is_prime(d)) {
    const L2GapAudit audit = l2_gap_audit(mub_design(d), plus, mm);
    j["mub_contrast"] = {{"gap_l2_sq", audit.gap_l2_sq},
                         {"gap_formula", audit.gap_formula},
                         {"gap_formula_ok", audit.gap_formula_ok}};
  } else {
    j["mub_contrast"] = nullptr;  // MUB construction needs prime d
  }
  emit(j.dump(2), out);
  return 0;
}

// -------------------------------------------------------------------- spectrum

int cmd_spectrum(const std::string& scheme_path, const std::string& design,
                 int d, const std::string& out) {
  MeasurementScheme scheme;
  json params;
  if (!scheme_path.empty()) {
    scheme = load_scheme_file(scheme_path);
    params = {{"scheme", scheme_path}};
  } else {
    RankOnePovm povm;
    if (design == "canonical") {
      povm = canonical_povm(d);
    } else if (design == "mub") {
      povm = design_to_povm(mub_design(d));
    } else {
      throw std::runtime_error("unknown design: " + design +
                               " (expected canonical|mub)");
    }
    scheme = shared_scheme(povm, 1);
    params = {{"design", design}, {"d", d}};
  }
  json j = report_head("spectrum", params);
  const SpectrumReport r = spectrum_report(average_channel(scheme));
  j["eigenvalues"] = real_vector_to_json(r.eigenvalues);
  j["trace"] = r.trace;
  j["hs_norm"] = r.hs_norm;
  j["zero_eigenspace_dim"] = r.zero_eigenspace_dim;
  j["smallest_half_square_sum"] = r.smallest_half_square_sum;
  emit(j.dump(2), out);
  return 0;
}

// ---------------------------------------------------------------------- bounds

int cmd_bounds(int d, int n, double eps, int ell, const std::string& scheme_path,
               const std::string& ensemble_mode, int trials, std::uint64_t seed,
               const std::string& out) {
  MeasurementScheme scheme;
  if (!scheme_path.empty()) {
    scheme = load_scheme_file(scheme_path);
    scheme.copies = n;
    if (!scheme.shared && static_cast<int>(scheme.povms.size()) != n)
      throw std::runtime_error("bounds: scheme copy count must match --n");
  } else {
    scheme = shared_scheme(design_to_povm(mub_design(d)), n);
  }
  if (scheme.dim() != d) throw std::runtime_error("bounds: scheme dimension != --d");

  PerturbationEnsemble e;
  if (ensemble_mode == "gellmann") {
    e = gell_mann_ensemble(d, ell, eps);
  } else if (ensemble_mode == "adversarial") {
    e = adversarial_ensemble(average_channel(scheme), eps);
    e.ell = ell;
  } else {
    throw std::runtime_error("unknown ensemble: " + ensemble_mode +
                             " (expected gellmann|adversarial)");
  }
  validate_ensemble(e);

  json j = report_head("bounds", {{"d", d},
                                  {"n", n},
                                  {"eps", eps},
                                  {"ell", ell},
                                  {"scheme", scheme_path},
                                  {"ensemble", ensemble_mode},
                                  {"trials", trials},
                                  {"seed", seed}});

  double exact_value = -1.0;
  try {
    const ExactDivergences div = exact_divergences(scheme, e);
    exact_value = div.chi_square;
    j["exact"] = {{"chi_square", div.chi_square},
                  {"total_variation", div.total_variation},
                  {"normalization_active", div.normalization_active}};
  } catch (const std::invalid_argument& err) {
    j["exact"] = nullptr;
    j["exact_skipped"] = err.what();
  }

  DecoupledBound dec;
  if (e.ell <= 12) {
    dec = decoupled_bound_exact(scheme, e);
    j["decoupled"] = {{"value", dec.value}, {"method", "exact"}};
  } else {
    dec = decoupled_bound_monte_carlo(scheme, e, trials, seed);
    j["decoupled"] = {{"value", dec.value},
                      {"std_error", dec.std_error},
                      {"method", "monte_carlo"}};
  }

  // throws a range error when n violates the theorem's validity window
  const AnalyticBound ana = analytic_bound(scheme, e, n);
  j["analytic"] = {{"value", ana.value},
                   {"hs_projection_sq", ana.hs_projection_sq}};

  j["chain"] = {
      {"exact_le_decoupled",
       exact_value < 0.0 ? json(nullptr) : json(exact_value <= dec.value + 1e-9)},
      {"decoupled_le_analytic", dec.value <= ana.value + 1e-9}};
  emit(j.dump(2), out);
  return 0;
}

// ----------------------------------------------------------------- power-curve

struct PowerRow {
  int d = 0;
  double C = 0.0;
  int n = 0;
  double type1 = 0.0;
  Wilson type1_ci;
  double type2 = 0.0;
  Wilson type2_ci;
};

PowerRow power_cell(int d, double C, double eps, int trials, std::uint64_t seed,
                    const Defaults& defaults) {
  const TwoDesign design = mub_design(d);
  const int k = static_cast<int>(design.vectors.size());
  PowerRow row;
  row.d = d;
  row.C = C;
  row.n = required_copies(d, k, eps, C);

  CertifyJob job;
  job.d = d;
  job.design = design;
  job.rho0 = maximally_mixed(d);
  job.eps = eps;
  job.copies = row.n;
  job.tester.threshold_mode = ThresholdMode::Calibrated;
  job.tester.threshold_scale = defaults.tester_threshold_scale;

  const std::vector<std::string> far = {"zero", "plus", "haar"};
  int type1 = 0;
  std::vector<int> type2(far.size(), 0);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t base =
        mix_seed(seed, (static_cast<std::uint64_t>(d) << 40) ^
                           (static_cast<std::uint64_t>(row.n) << 20) ^
                           static_cast<std::uint64_t>(t));
    job.rho = job.rho0;
    job.seed = mix_seed(base, 0);
    if (!certify_state(job).yes) ++type1;
    for (std::size_t f = 0; f < far.size(); ++f) {
      job.rho = named_state(far[f], d, seed);
      job.seed = mix_seed(base, 1 + f);
      if (certify_state(job).yes) ++type2[f];
    }
  }
  int worst = 0;
  for (std::size_t f = 0; f < far.size(); ++f) worst = std::max(worst, type2[f]);
  row.type1 = static_cast<double>(type1) / trials;
  row.type1_ci = wilson_interval(type1, trials);
  row.type2 = static_cast<double>(worst) / trials;
  row.type2_ci = wilson_interval(worst, trials);
  return row;
}

int cmd_power_curve(const std::vector<int>& ds, const std::vector<double>& cs,
                    double eps, int trials, std::uint64_t seed,
                    const std::string& format, const std::string& out) {
  for (int d : ds)
    if (!is_prime(d)) throw std::runtime_error("power-curve: d values must be prime");
  if (trials < 1) throw std::runtime_error("power-curve: trials >= 1");
  const Defaults defaults = load_defaults();
  std::vector<double> c_grid = cs;
  if (c_grid.empty()) c_grid.push_back(defaults.certify_constant);

  std::vector<PowerRow> rows;
  for (int d : ds)
    for (double C : c_grid) rows.push_back(power_cell(d, C, eps, trials, seed, defaults));

  if (format == "csv") {
    std::ostringstream csv;
    csv << "d,C,n,type1,type1_lo,type1_hi,type2,type2_lo,type2_hi\n";
    for (const PowerRow& r : rows) {
      csv << r.d << "," << fixed6(r.C) << "," << r.n << "," << fixed6(r.type1)
          << "," << fixed6(r.type1_ci.lo) << "," << fixed6(r.type1_ci.hi) << ","
          << fixed6(r.type2) << "," << fixed6(r.type2_ci.lo) << ","
          << fixed6(r.type2_ci.hi) << "\n";
    }
    std::string text = csv.str();
    text.pop_back();  // emit() appends the final newline
    emit(text, out);
  } else {
    json j = report_head("power-curve", {{"d", ds},
                                         {"C", c_grid},
                                         {"eps", eps},
                                         {"trials", trials},
                                         {"seed", seed}});
    json arr = json::array();
    for (const PowerRow& r : rows)
      arr.push_back({{"d", r.d},
                     {"C", r.C},
                     {"n", r.n},
                     {"type1", r.type1},
                     {"type1_lo", r.type1_ci.lo},
                     {"type1_hi", r.type1_ci.hi},
                     {"type2", r.type2},
                     {"type2_lo", r.type2_ci.lo},
                     {"type2_hi", r.type2_ci.hi}});
    j["rows"] = arr;
    emit(j.dump(2), out);
  }
  return 0;
}

// --------------------------------------------------------------- hard-instance

int cmd_hard_instance(int d, int ell, double eps, int trials, std::uint64_t seed,
                      const std::string& scheme_path, const std::string& out) {
  const PerturbationEnsemble e = gell_mann_ensemble(d, ell, eps);
  validate_ensemble(e);
  if (trials < 1) throw std::runtime_error("hard-instance: trials >= 1");

  const double scale = e.c * e.eps / std::sqrt(static_cast<double>(d) * e.ell);
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  int valid = 0;
  int ratio_exceed = 0;
  std::vector<double> ratios;
  ratios.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    const PerturbationSample s =
        sample_perturbation(e, mix_seed(seed, static_cast<std::uint64_t>(t)));
    const double opn = operator_norm(s.delta);
    const double trn = trace_norm(s.delta);
    if (opn <= 1.0 / d && trn >= eps) ++valid;
    const double ratio = opn / scale / sqrt_d;  // opnorm(W)/sqrt(d)
    if (ratio > 10.0) ++ratio_exceed;
    ratios.push_back(ratio);
  }
  std::sort(ratios.begin(), ratios.end());

  json j = report_head("hard-instance", {{"d", d},
                                         {"ell", ell},
                                         {"eps", eps},
                                         {"c", e.c},
                                         {"trials", trials},
                                         {"seed", seed},
                                         {"scheme", scheme_path}});
  j["valid_fraction"] = static_cast<double>(valid) / trials;
  j["opnorm_tail"] = {{"max_ratio", ratios.back()},
                      {"median_ratio", ratios[ratios.size() / 2]},
                      {"exceed_rate_kappa10",
                       static_cast<double>(ratio_exceed) / trials}};
  if (!scheme_path.empty()) {
    const MeasurementScheme scheme = load_scheme_file(scheme_path);
    const SpectrumReport r = spectrum_report(average_channel(scheme));
    j["adversarial_smallest_half_square_sum"] = r.smallest_half_square_sum;
  } else {
    j["adversarial_smallest_half_square_sum"] = nullptr;
  }
  emit(j.dump(2), out);
  return 0;
}

// ------------------------------------------------------------------- calibrate

int cmd_calibrate(int d, double eps, int m, int trials, double target_type1,
                  std::uint64_t seed, const std::string& out) {
  const TwoDesign design = mub_design(d);
  const int k = static_cast<int>(design.vectors.size());
  const Defaults defaults = load_defaults();
  if (m <= 0) m = required_copies(d, k, eps, defaults.certify_constant);
  const RealVector null_dist =
      born_distribution(design_to_povm(design), maximally_mixed(d));
  const double threshold =
      calibrate_threshold(k, m, null_dist, trials, target_type1, seed);
  const double eps2 = eps / std::sqrt(static_cast<double>(k) * (d + 1));
  json j = report_head("calibrate", {{"d", d},
                                     {"eps", eps},
                                     {"k", k},
                                     {"m", m},
                                     {"trials", trials},
                                     {"target_type1", target_type1},
                                     {"seed", seed}});
  j["threshold"] = threshold;
  j["eps2"] = eps2;
  j["implied_threshold_scale"] = threshold / (static_cast<double>(m) * m * eps2 * eps2);
  emit(j.dump(2), out);
  return 0;
}

// --------------------------------------------------------------------- certify

int cmd_certify(int d, double eps, int n, std::uint64_t seed,
                const std::string& state, const std::string& out) {
  const Defaults defaults = load_defaults();
  CertifyJob job;
  job.d = d;
  job.design = mub_design(d);
  job.rho0 = maximally_mixed(d);
  job.rho = named_state(state, d, seed);
  job.eps = eps;
  const int k = static_cast<int>(job.design.vectors.size());
  job.copies = n > 0 ? n : required_copies(d, k, eps, defaults.certify_constant);
  job.seed = seed;
  job.tester.threshold_mode = ThresholdMode::Calibrated;
  job.tester.threshold_scale = defaults.tester_threshold_scale;

  const CertifyVerdict v = certify_state(job);
  json j = report_head("certify", {{"d", d},
                                   {"eps", eps},
                                   {"n", job.copies},
                                   {"seed", seed},
                                   {"state", state}});
  j["verdict"] = v.yes ? "accept" : "reject";
  j["statistic"] = v.statistic;
  j["threshold"] = v.threshold;
  j["n_used"] = v.n_used;
  emit(j.dump(2), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum state certification experiment harness"};
  app.require_subcommand(1);

  int d = 2, n = 1, ell = 2, trials = 200, m = 0;
  double eps = 0.5, target_type1 = 0.1;
  std::uint64_t seed = 0;
  std::string out, format = "json", scheme, design = "canonical";
  std::string ensemble = "gellmann", state = "mm";
  std::vector<int> d_list;
  std::vector<double> c_list;

  CLI::App* demo = app.add_subcommand("demo-fooling", "canonical-scheme blindness demo");
  demo->add_option("--d", d);
  demo->add_option("--seed", seed);
  demo->add_option("--out", out);

  CLI::App* spectrum = app.add_subcommand("spectrum", "averaged-channel spectrum report");
  spectrum->add_option("--scheme", scheme);
  spectrum->add_option("--design", design);
  spectrum->add_option("--d", d);
  spectrum->add_option("--out", out);

  CLI::App* bounds = app.add_subcommand("bounds", "chi-square bound chain");
  bounds->add_option("--d", d);
  bounds->add_option("--n", n);
  bounds->add_option("--eps", eps);
  bounds->add_option("--ell", ell);
  bounds->add_option("--scheme", scheme);
  bounds->add_option("--ensemble", ensemble);
  bounds->add_option("--trials", trials);
  bounds->add_option("--seed", seed);
  bounds->add_option("--out", out);

  CLI::App* power = app.add_subcommand("power-curve", "certification error rates");
  power->add_option("--d", d_list)->required();
  power->add_option("--C", c_list);
  power->add_option("--eps", eps);
  power->add_option("--trials", trials);
  power->add_option("--seed", seed);
  power->add_option("--format", format);
  power->add_option("--out", out);

  CLI::App* hard = app.add_subcommand("hard-instance", "perturbation validity experiment");
  hard->add_option("--d", d);
  hard->add_option("--ell", ell);
  hard->add_option("--eps", eps);
  hard->add_option("--trials", trials);
  hard->add_option("--seed", seed);
  hard->add_option("--scheme", scheme);
  hard->add_option("--out", out);

  CLI::App* calibrate = app.add_subcommand("calibrate", "null-quantile threshold calibration");
  calibrate->add_option("--d", d);
  calibrate->add_option("--eps", eps);
  calibrate->add_option("--n", m);
  calibrate->add_option("--trials", trials);
  calibrate->add_option("--target-type1", target_type1);
  calibrate->add_option("--seed", seed);
  calibrate->add_option("--out", out);

  CLI::App* certify = app.add_subcommand("certify", "single certification run");
  certify->add_option("--d", d);
  certify->add_option("--eps", eps);
  certify->add_option("--n", n);
  certify->add_option("--seed", seed);
  certify->add_option("--state", state);
  certify->add_option("--out", out);

  // power-curve defaults to CSV; everything else is JSON
  CLI11_PARSE(app, argc, argv);
  if (power->parsed() && !power->get_option("--format")->count()) format = "csv";
  if (certify->parsed() && !certify->get_option("--n")->count()) n = 0;

  try {
    if (demo->parsed()) return cmd_demo_fooling(d, out, seed);
    if (spectrum->parsed()) return cmd_spectrum(scheme, design, d, out);
    if (bounds->parsed())
      return cmd_bounds(d, n, eps, ell, scheme, ensemble, trials, seed, out);
    if (power->parsed())
      return cmd_power_curve(d_list, c_list, eps, trials, seed, format, out);
    if (hard->parsed())
      return cmd_hard_instance(d, ell, eps, trials, seed, scheme, out);
    if (calibrate->parsed())
      return cmd_calibrate(d, eps, m, trials, target_type1, seed, out);
    if (certify->parsed()) return cmd_certify(d, eps, n, seed, state, out);
  } catch (const std::exception& err) {
    json j;
    j["error"] = {{"message", err.what()}};
    std::cout << j.dump(2) << "\n";
    return 1;
  }
  return 2;
}

#include "qcert/measurement.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace qcert {

PovmValidation validate_povm(const RankOnePovm& p, double tol) {
  if (p.dim < 1) throw std::invalid_argument("validate_povm: bad dimension");
  for (const auto& v : p.elements)
    if (v.size() != p.dim)
      throw std::invalid_argument("validate_povm: element dimension mismatch");
  ComplexMatrix sum = ComplexMatrix::Zero(p.dim, p.dim);
  for (const auto& v : p.elements) sum += v * v.adjoint();
  const double dev =
      (sum - ComplexMatrix::Identity(p.dim, p.dim)).cwiseAbs().maxCoeff();
  return {dev, dev <= tol};
}

RealVector born_distribution(const RankOnePovm& p, const ComplexMatrix& rho) {
  if (rho.rows() != p.dim || rho.cols() != p.dim)
    throw std::invalid_argument("born_distribution: dimension mismatch");
  const int k = p.outcome_count();
  RealVector probs(k);
  for (int x = 0; x < k; ++x) {
    const Complex val = p.elements[x].adjoint() * rho * p.elements[x];
    probs(x) = std::max(0.0, val.real());
  }
  const double total = probs.sum();
  const double drift = std::abs(total - 1.0);
  if (drift > 1e-8)
    throw std::invalid_argument("born_distribution: probability drift > 1e-8");
  if (drift > 0.0 && total > 0.0) probs /= total;
  return probs;
}

int sample_from(const RealVector& probs, Rng& rng) {
  const double u = rng.next_double();
  double acc = 0.0;
  for (Eigen::Index x = 0; x < probs.size(); ++x) {
    acc += probs(x);
    if (u < acc) return static_cast<int>(x);
  }
  return static_cast<int>(probs.size()) - 1;
}

std::vector<int> sample_outcomes(const MeasurementScheme& scheme,
                                 const ComplexMatrix& rho, std::uint64_t seed) {
  std::vector<int> out(scheme.copies);
  RealVector shared_probs;
  if (scheme.shared) shared_probs = born_distribution(scheme.povm_at(0), rho);
  for (int i = 0; i < scheme.copies; ++i) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    const RealVector& probs =
        scheme.shared ? shared_probs : born_distribution(scheme.povm_at(i), rho);
    if (!scheme.shared) {
      out[i] = sample_from(probs, rng);
    } else {
      out[i] = sample_from(shared_probs, rng);
    }
  }
  return out;
}

RankOnePovm canonical_povm(int dim) {
  if (dim < 2) throw std::invalid_argument("canonical_povm: d >= 2 required");
  RankOnePovm p;
  p.dim = dim;
  for (int x = 0; x < dim; ++x) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(x) = 1.0;
    p.elements.push_back(std::move(v));
  }
  return p;
}

MeasurementScheme shared_scheme(const RankOnePovm& povm, int copies) {
  MeasurementScheme s;
  s.copies = copies;
  s.povms = {povm};
  s.shared = true;
  return s;
}

RankOnePovm random_povm(int dim, int k, Rng& rng) {
  if (k < dim) throw std::invalid_argument("random_povm: k >= d required");
  std::vector<ComplexVector> raw;
  ComplexMatrix frame = ComplexMatrix::Zero(dim, dim);
  for (int x = 0; x < k; ++x) {
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i)
      v(i) = Complex(rng.next_gaussian(), rng.next_gaussian());
    frame += v * v.adjoint();
    raw.push_back(std::move(v));
  }
  // whiten: S^{-1/2} v_x gives completeness by construction
  EigenSystem es = hermitian_eig(frame);
  ComplexMatrix inv_sqrt = es.eigenvectors *
                           es.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() *
                           es.eigenvectors.adjoint();
  RankOnePovm p;
  p.dim = dim;
  for (auto& v : raw) p.elements.push_back(inv_sqrt * v);
  return p;
}

namespace {

nlohmann::ordered_json complex_vector_to_json(const ComplexVector& v) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    arr.push_back({v(i).real(), v(i).imag()});
  return arr;
}

ComplexVector complex_vector_from_json(const nlohmann::json& arr) {
  ComplexVector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    v(static_cast<Eigen::Index>(i)) =
        Complex(arr[i][0].get<double>(), arr[i][1].get<double>());
  return v;
}

}  // namespace

std::string scheme_to_json(const MeasurementScheme& s) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["dim"] = s.dim();
  j["copies"] = s.copies;
  j["shared"] = s.shared;
  nlohmann::ordered_json povms = nlohmann::ordered_json::array();
  for (const auto& p : s.povms) {
    nlohmann::ordered_json jp;
    jp["elements"] = nlohmann::ordered_json::array();
    for (const auto& v : p.elements) jp["elements"].push_back(complex_vector_to_json(v));
    povms.push_back(jp);
  }
  j["povms"] = povms;
  return j.dump(2);
}

MeasurementScheme scheme_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  MeasurementScheme s;
  const int dim = j.at("dim").get<int>();
  s.copies = j.at("copies").get<int>();
  s.shared = j.at("shared").get<bool>();
  for (const auto& jp : j.at("povms")) {
    RankOnePovm p;
    p.dim = dim;
    for (const auto& je : jp.at("elements"))
      p.elements.push_back(complex_vector_from_json(je));
    s.povms.push_back(std::move(p));
  }
  if (s.povms.empty()) throw std::invalid_argument("scheme_from_json: no POVMs");
  return s;
}

}  // namespace qcert

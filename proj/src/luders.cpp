#include "qcert/luders.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace qcert {

namespace {
constexpr double kZeroWeight = 1e-14;
}

ComplexMatrix luders_apply(const RankOnePovm& p, const ComplexMatrix& x) {
  if (x.rows() != p.dim || x.cols() != p.dim)
    throw std::invalid_argument("luders_apply: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(p.dim, p.dim);
  for (const auto& psi : p.elements) {
    const double nrm2 = psi.squaredNorm();
    if (nrm2 < kZeroWeight) continue;
    const Complex amp = (psi.adjoint() * x * psi);
    out += (amp / nrm2) * (psi * psi.adjoint());
  }
  return out;
}

LudersChannel choi_matrix(const RankOnePovm& p) {
  const PovmValidation v = validate_povm(p);
  if (!v.pass) throw std::invalid_argument("choi_matrix: POVM fails completeness");
  const int d = p.dim;
  LudersChannel c;
  c.dim = d;
  c.choi = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& psi : p.elements) {
    const double nrm2 = psi.squaredNorm();
    if (nrm2 < kZeroWeight) continue;
    const ComplexMatrix proj = psi * psi.adjoint();
    c.choi += kron(proj.conjugate(), proj) / nrm2;
  }
  return c;
}

LudersChannel average_channel(const MeasurementScheme& s) {
  if (s.copies < 1 || s.povms.empty())
    throw std::invalid_argument("average_channel: empty scheme");
  const int d = s.dim();
  LudersChannel avg;
  avg.dim = d;
  avg.choi = ComplexMatrix::Zero(d * d, d * d);
  if (s.shared) {
    avg.choi = choi_matrix(s.povms.front()).choi;
    return avg;
  }
  for (int i = 0; i < s.copies; ++i) avg.choi += choi_matrix(s.povm_at(i)).choi;
  avg.choi /= static_cast<double>(s.copies);
  return avg;
}

ChannelSpectrum channel_spectrum(const LudersChannel& c) {
  const int d = c.dim;
  const int dd = d * d;
  const HermitianBasis basis = gell_mann_basis(d);

  // real representation over Hermitian space
  RealMatrix s(dd, dd);
  std::vector<ComplexVector> vecs(dd);
  for (int j = 0; j < dd; ++j) vecs[j] = vectorize(basis.matrices[j]);
  for (int j = 0; j < dd; ++j) {
    const ComplexVector col = c.choi * vecs[j];
    for (int i = 0; i < dd; ++i) s(i, j) = (vecs[i].dot(col)).real();
  }
  const double asym = (s - s.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8)
    throw std::invalid_argument("channel_spectrum: real representation asymmetric");
  s = 0.5 * (s + s.transpose());

  // The identity direction is an exact eigenvector (unital + trace
  // preserving), so the last row/column decouples from the trace-0 block.
  const int m = dd - 1;
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(s.topLeftCorner(m, m));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("channel_spectrum: eigensolver failed");

  ChannelSpectrum spec;
  spec.eigenvalues = RealVector(dd);
  spec.eigenmatrices.resize(dd);
  for (int i = 0; i < m; ++i) {
    double lam = solver.eigenvalues()(i);
    // clamp to [0, 1]; violations beyond 1e-9 signal a broken channel
    if (lam < -1e-9 || lam > 1.0 + 1e-9)
      throw std::runtime_error("channel_spectrum: eigenvalue outside [0,1]");
    lam = std::min(1.0, std::max(0.0, lam));
    spec.eigenvalues(i) = lam;
    ComplexMatrix v = ComplexMatrix::Zero(d, d);
    for (int b = 0; b < m; ++b) v += solver.eigenvectors()(b, i) * basis.matrices[b];
    spec.eigenmatrices[i] = v;
  }
  spec.eigenvalues(m) = s(m, m);  // identity eigenvalue, 1 up to numerics
  spec.eigenmatrices[m] = basis.matrices.back();  // pinned to I_d/sqrt(d)
  return spec;
}

double channel_trace(const LudersChannel& c) {
  return c.choi.trace().real();
}

SpectrumReport spectrum_report(const LudersChannel& c) {
  const ChannelSpectrum spec = channel_spectrum(c);
  SpectrumReport r;
  r.eigenvalues = spec.eigenvalues;
  r.trace = channel_trace(c);
  r.hs_norm = std::sqrt(spec.eigenvalues.squaredNorm());
  r.zero_eigenspace_dim = 0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
    if (spec.eigenvalues(i) < 1e-9) ++r.zero_eigenspace_dim;
  const int half = (c.dim * c.dim) / 2;
  r.smallest_half_square_sum = 0.0;
  for (int i = 0; i < half; ++i)
    r.smallest_half_square_sum += spec.eigenvalues(i) * spec.eigenvalues(i);
  return r;
}

std::string spectrum_report_to_json(const SpectrumReport& r) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["eigenvalues"] = std::vector<double>(
      r.eigenvalues.data(), r.eigenvalues.data() + r.eigenvalues.size());
  j["trace"] = r.trace;
  j["hs_norm"] = r.hs_norm;
  j["zero_eigenspace_dim"] = r.zero_eigenspace_dim;
  j["smallest_half_square_sum"] = r.smallest_half_square_sum;
  return j.dump(2);
}

}  // namespace qcert

#pragma once

#include <string>
#include <vector>

#include "qcert/designs.hpp"
#include "qcert/matrix_core.hpp"
#include "qcert/measurement.hpp"

namespace qcert {

// A POVM's post-measurement superoperator held as a d^2 x d^2 Choi matrix.
struct LudersChannel {
  int dim = 0;
  ComplexMatrix choi;
};

// Eigendecomposition over the real space of Hermitian matrices.
// Ascending eigenvalues; the last eigenmatrix is I_d/sqrt(d) with
// eigenvalue 1, all others are trace-0.
struct ChannelSpectrum {
  RealVector eigenvalues;
  std::vector<ComplexMatrix> eigenmatrices;
};

// sum_x |psi_x><psi_x| X |psi_x><psi_x| / <psi_x|psi_x>.
// Elements with <psi|psi> < 1e-14 are skipped as zero-weight.
ComplexMatrix luders_apply(const RankOnePovm& p, const ComplexMatrix& x);

// Choi representation: C = sum_x (|conj(psi_x)><conj(psi_x)| (x)
// |psi_x><psi_x|) / <psi_x|psi_x>; satisfies vec(H(X)) = C vec(X).
LudersChannel choi_matrix(const RankOnePovm& p);

// C_bar = (1/n) sum_i C_i.
LudersChannel average_channel(const MeasurementScheme& s);

// Re-expresses the channel as a real symmetric matrix in the Gell-Mann
// basis and decomposes there, so eigenmatrices are Hermitian even in
// degenerate eigenspaces. The identity direction is pinned exactly.
ChannelSpectrum channel_spectrum(const LudersChannel& c);

// Trace of the superoperator; equals d for Lüders channels.
double channel_trace(const LudersChannel& c);

struct SpectrumReport {
  RealVector eigenvalues;
  double trace = 0.0;
  double hs_norm = 0.0;
  int zero_eigenspace_dim = 0;        // count of lambda < 1e-9
  double smallest_half_square_sum = 0.0;  // sum of lambda_i^2, i <= d^2/2
};

SpectrumReport spectrum_report(const LudersChannel& c);
std::string spectrum_report_to_json(const SpectrumReport& r);

}  // namespace qcert

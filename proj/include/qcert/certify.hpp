#pragma once

#include <cstdint>
#include <string>

#include "qcert/classical_test.hpp"
#include "qcert/designs.hpp"
#include "qcert/matrix_core.hpp"

namespace qcert {

// Constants fixed by one-time calibration, loaded from the checked-in
// defaults file.
struct Defaults {
  double tester_threshold_scale = 0.5;
  double certify_constant = 5.0;
};

Defaults load_defaults();

struct CertifyJob {
  int d = 0;
  TwoDesign design;
  ComplexMatrix rho;    // simulated unknown state
  ComplexMatrix rho0;   // reference state
  bool rho0_known = true;
  double eps = 0.0;     // trace-distance threshold, in (0, 2]
  int copies = 0;
  std::uint64_t seed = 0;
  TesterConfig tester;
};

struct CertifyVerdict {
  bool yes = false;
  double statistic = 0.0;  // Z of the (first) repetition
  double threshold = 0.0;
  int n_used = 0;
};

// Algorithm: measure all copies of rho with the design POVM, obtain the
// reference stream from rho0 (quantum copies or classical sampling from the
// exact Born distribution when rho0 is known), then run the L2 closeness
// test at threshold eps/sqrt(k(d+1)).
CertifyVerdict certify_state(const CertifyJob& job);

// ceil(C * sqrt(k*d*(d+1)) / eps^2).
int required_copies(int d, int k, double eps, double C);

struct L2GapAudit {
  double p_rho_l2_sq = 0.0;        // ||p_rho||_2^2
  double gap_l2_sq = 0.0;          // ||p_rho - p_rho0||_2^2
  double gap_formula = 0.0;        // d^2 Tr[Delta^2] / (k d (d+1))
  bool norm_bound_ok = false;      // ||p_rho||_2^2 <= 2d/(k(d+1))
  bool gap_formula_ok = false;     // gap matches the closed form
};

L2GapAudit l2_gap_audit(const TwoDesign& design, const ComplexMatrix& rho,
                        const ComplexMatrix& rho0);

}  // namespace qcert

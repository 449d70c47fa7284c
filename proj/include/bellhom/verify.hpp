#pragma once

#include <string>
#include <vector>

#include "bellhom/common.hpp"

namespace bellhom {

struct SuiteResult {
  std::string name;
  bool pass = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Closed-form q_joint / q_marginal against the truncated-Fock oracle over a
/// displacement/squeezing grid; tolerance 1e-8.
SuiteResult verify_oracle_equivalence();

/// Pi(s) factorization under dark-count convolution over random distribution
/// pairs at s in {-1, -0.5}; tolerance 1e-12.
SuiteResult verify_factorization();

/// Quadrature ordering transform of the TMSV Q function against the closed
/// form at the loss-induced ordering; tolerance 1e-6.
SuiteResult verify_transform();

/// No-click Wigner kernel: maximum matches 2 p_D/(2-eta) times the mismatch
/// factor, equal to 2 at perfect parameters.
SuiteResult verify_lhv_kernel();

std::vector<SuiteResult> verify_all();

}  // namespace bellhom

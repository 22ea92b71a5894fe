#pragma once

#include "augblock/factorization.hpp"

namespace augblock {

struct Tolerances {
  /// Relative floor on |R_kk| in block QR factorizations and on Cholesky
  /// pivots of S.
  double rank = kDefaultRankTol;
  /// Normalized bound on off-diagonal block products after augmentation.
  double ortho = 1e-12;
  /// Relative bound on solution certificates.
  double sol = 1e-8;
};

struct Options {
  Tolerances tol;
  /// Worker threads for per-block work; 0 uses hardware concurrency.
  unsigned threads = 1;
  /// Throw CertificateFailure when a solution misses its certificate bound.
  bool enforce_certificates = true;
};

}  // namespace augblock

#pragma once

namespace qmetric {

/// Single tolerance record shared by all modules and overridable from the CLI.
struct Tolerances {
  /// Entrywise identities: hermiticity, diagonal membership, trace identities.
  double algebraic = 1e-12;
  /// Anything passing through an eigen/singular value solve or an LP.
  double spectral = 1e-9;
};

}  // namespace qmetric

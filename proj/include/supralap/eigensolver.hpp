#pragma once

#include <cstddef>
#include <span>

#include "supralap/matrix.hpp"

namespace supralap {

inline constexpr int kDefaultMaxSweeps = 64;

enum class EighBackend {
  blocked,    ///< fused Householder reduction, deferred cache-blocked rotations (OpenMP)
  reference,  ///< textbook serial tred2/tql2, kept as a cross-check
};

struct EighOptions {
  EighBackend backend = EighBackend::blocked;
  int max_sweeps = kDefaultMaxSweeps;  ///< QL iterations allowed per eigenvalue
};

struct Provenance {
  enum class Source { dense, reduced };
  Source source = Source::dense;
  std::size_t block = 0;  ///< DFT index k when source == reduced

  static Provenance dense() { return {}; }
  static Provenance reduced(std::size_t k) { return {Source::reduced, k}; }
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Ascending eigenvalues with an orthonormal eigenbasis. Eigenvector i is stored
/// contiguously as row i of `eigenvectors` (the column-major layout of V).
struct SpectralResult {
  Vector eigenvalues;
  Matrix eigenvectors;
  Provenance provenance;

  std::size_t order() const noexcept { return eigenvalues.size(); }
  std::span<const double> vector(std::size_t i) const { return eigenvectors.row(i); }
};

/// Full symmetric eigendecomposition. Eigenvectors follow the repo-wide sign
/// convention (largest-magnitude entry positive); within exact ties vectors are
/// ordered by their first non-negligible entry. Throws not_symmetric, no_convergence.
SpectralResult eigh(const Matrix& m, const EighOptions& options = {});

/// max_i ||M v_i - lambda_i v_i||. Throws dimension_mismatch.
double eig_residual(const Matrix& m, const SpectralResult& r);

/// Largest |<v_i, v_j> - delta_ij|.
double orthogonality_defect(const SpectralResult& r);

/// Sorts, applies the sign convention and the tie ordering. Shared by all backends.
void finalize_spectrum(Vector& values, Matrix& vectors_by_row);

}  // namespace supralap

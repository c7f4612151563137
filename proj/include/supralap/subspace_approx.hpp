#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "supralap/eigensolver.hpp"
#include "supralap/supra.hpp"

namespace supralap {

/// The T zero-padded layer null vectors V^t. Column t is zero outside block t, where
/// it holds the unit vector (D^t)^{1/2} 1 built from within-layer degrees.
struct ZeroModeBasis {
  std::size_t n_nodes = 0;
  std::size_t n_layers = 0;
  std::vector<Vector> blocks;  ///< blocks[t]: non-zero part of column t

  std::size_t order() const noexcept { return n_nodes * n_layers; }
  Vector column(std::size_t t) const;
  /// alpha_t = <V^t, v>
  Vector coefficients(std::span<const double> v) const;
};

ZeroModeBasis zero_mode_basis(const TemporalNetwork& net);

struct Projection {
  Vector alpha;
  double epsilon = 0.0;  ///< ||v - sum_t alpha_t V^t||
};

/// Least-squares fit of a unit vector by the basis. Throws dimension_mismatch, or
/// invalid_argument when | ||v|| - 1 | > 1e-9.
Projection project_residual(std::span<const double> v, const ZeroModeBasis& basis);

struct LambdaStarThresholds {
  double ratio = 10.0;
  double abs_floor = 1e-3;
};

/// Smallest 1-based i >= 2 with errors[i] > max(ratio * errors[i-1], abs_floor).
/// Throws invalid_argument on empty input.
std::optional<std::size_t> detect_lambda_star(std::span<const double> errors,
                                              LambdaStarThresholds thresholds = {});

struct ApproxConfig {
  std::size_t n_nodes = 0;
  std::size_t n_layers = 0;
  std::optional<double> edge_prob;
  std::optional<double> omega;  ///< absent for per-node weights
  Coupling coupling = Coupling::path;
  std::optional<std::uint64_t> seed;
};

struct ApproxReport {
  Vector eigenvalues;               ///< the m analyzed eigenvalues, ascending
  Vector errors;                    ///< epsilon_i
  std::vector<Vector> coefficients; ///< alpha for each analyzed eigenvector
  std::optional<std::size_t> lambda_star_index;  ///< 1-based first breaking index
  LambdaStarThresholds thresholds;
  ApproxConfig config;
};

/// Eigenvalues closer than this form one cluster whose error is measured for the
/// whole eigenspace rather than for individual (rotation-dependent) vectors.
inline constexpr double kDegenerateGap = 1e-9;

/// Errors of the m lowest eigenvectors of a supra-Laplacian against the zero-mode
/// basis. Throws dimension_mismatch, invalid_argument when m > order.
ApproxReport error_profile(const SpectralResult& spectrum, const ZeroModeBasis& basis,
                           std::size_t m, LambdaStarThresholds thresholds = {});

/// sin of the largest principal angle between span(u) and span(w), both given as
/// orthonormal vector sets; 0 means span(u) lies inside span(w).
double subspace_distance(const std::vector<Vector>& u, const std::vector<Vector>& w);

}  // namespace supralap

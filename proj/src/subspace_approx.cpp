#include "supralap/subspace_approx.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supralap/error.hpp"
#include "supralap/graph.hpp"

namespace supralap {
namespace {

/// Spectral norm of a set of vectors given by rows: sqrt of the largest eigenvalue of their Gram matrix.
double spectral_norm_of_rows(const std::vector<Vector>& rows) {
  const std::size_t c = rows.size();
  if (c == 0) return 0.0;
  if (c == 1) return norm2(rows.front());
  Matrix gram(c, c);
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = a; b < c; ++b) {
      gram(a, b) = dot(rows[a], rows[b]);
      gram(b, a) = gram(a, b);
    }
  const auto r = eigh(gram, {EighBackend::reference, kDefaultMaxSweeps});
  return std::sqrt(std::max(0.0, r.eigenvalues.back()));
}

}  // namespace

Vector ZeroModeBasis::column(std::size_t t) const {
  if (t >= n_layers) throw Error(ErrorCode::index_out_of_range, "basis column out of range");
  Vector c(order(), 0.0);
  std::copy(blocks[t].begin(), blocks[t].end(), c.begin() + static_cast<std::ptrdiff_t>(t * n_nodes));
  return c;
}

Vector ZeroModeBasis::coefficients(std::span<const double> v) const {
  if (v.size() != order())
    throw Error(ErrorCode::dimension_mismatch, "vector length " + std::to_string(v.size()) + " but N*T = " +
                                                   std::to_string(order()));
  Vector alpha(n_layers);
  for (std::size_t t = 0; t < n_layers; ++t) alpha[t] = dot(blocks[t], v.subspan(t * n_nodes, n_nodes));
  return alpha;
}

ZeroModeBasis zero_mode_basis(const TemporalNetwork& net) {
  ZeroModeBasis b;
  b.n_nodes = net.n_nodes();
  b.n_layers = net.n_layers();
  for (const auto& g : net.layers()) b.blocks.push_back(zero_mode(g));
  return b;
}

namespace {

Vector residual_vector(std::span<const double> v, const ZeroModeBasis& basis, const Vector& alpha) {
  Vector r(v.begin(), v.end());
  const std::size_t n = basis.n_nodes;
  for (std::size_t t = 0; t < basis.n_layers; ++t)
    for (std::size_t i = 0; i < n; ++i) r[t * n + i] -= alpha[t] * basis.blocks[t][i];
  return r;
}

}  // namespace

Projection project_residual(std::span<const double> v, const ZeroModeBasis& basis) {
  Projection p;
  p.alpha = basis.coefficients(v);
  const double len = norm2(v);
  if (std::abs(len - 1.0) > 1e-9)
    throw Error(ErrorCode::invalid_argument, "vector must have unit norm (got " + std::to_string(len) + ")");
  p.epsilon = norm2(residual_vector(v, basis, p.alpha));
  return p;
}

std::optional<std::size_t> detect_lambda_star(std::span<const double> errors, LambdaStarThresholds thresholds) {
  if (errors.empty()) throw Error(ErrorCode::invalid_argument, "no errors to scan");
  if (!(thresholds.ratio > 0.0) || !(thresholds.abs_floor >= 0.0))
    throw Error(ErrorCode::invalid_argument, "thresholds must be positive");
  for (std::size_t i = 1; i < errors.size(); ++i)
    if (errors[i] > std::max(thresholds.ratio * errors[i - 1], thresholds.abs_floor)) return i + 1;
  return std::nullopt;
}

ApproxReport error_profile(const SpectralResult& spectrum, const ZeroModeBasis& basis, std::size_t m,
                           LambdaStarThresholds thresholds) {
  const std::size_t order = spectrum.order();
  if (spectrum.eigenvectors.cols() != basis.order() || order != basis.order())
    throw Error(ErrorCode::dimension_mismatch, "spectrum and basis have different orders");
  if (m == 0 || m > order)
    throw Error(ErrorCode::invalid_argument, "m = " + std::to_string(m) + " must lie in [1, " +
                                                 std::to_string(order) + "]");
  ApproxReport report;
  report.thresholds = thresholds;
  report.eigenvalues.assign(spectrum.eigenvalues.begin(), spectrum.eigenvalues.begin() + static_cast<std::ptrdiff_t>(m));
  report.errors.resize(m);
  report.coefficients.resize(m);

  std::size_t start = 0;
  while (start < m) {
    std::size_t end = start + 1;
    while (end < order && spectrum.eigenvalues[end] - spectrum.eigenvalues[end - 1] <= kDegenerateGap) ++end;
    std::vector<Vector> residuals;
    for (std::size_t i = start; i < end; ++i) {
      const auto v = spectrum.vector(i);
      const Projection p = project_residual(v, basis);
      if (i < m) report.coefficients[i] = p.alpha;
      residuals.push_back(residual_vector(v, basis, p.alpha));
    }
    const double eps = spectral_norm_of_rows(residuals);
    for (std::size_t i = start; i < std::min(end, m); ++i) report.errors[i] = eps;
    start = end;
  }
  report.lambda_star_index = detect_lambda_star(report.errors, thresholds);
  return report;
}

double subspace_distance(const std::vector<Vector>& u, const std::vector<Vector>& w) {
  if (u.empty()) return 0.0;
  const std::size_t n = u.front().size();
  for (const auto& x : u)
    if (x.size() != n) throw Error(ErrorCode::dimension_mismatch, "vectors must share one length");
  for (const auto& x : w)
    if (x.size() != n) throw Error(ErrorCode::dimension_mismatch, "vectors must share one length");
  std::vector<Vector> residuals;
  for (const auto& x : u) {
    Vector r = x;
    for (const auto& y : w) {
      const double c = dot(y, x);
      for (std::size_t i = 0; i < n; ++i) r[i] -= c * y[i];
    }
    residuals.push_back(std::move(r));
  }
  return spectral_norm_of_rows(residuals);
}

}  // namespace supralap

#include "supralap/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "supralap/error.hpp"
#include "supralap/graph.hpp"
#include "supralap/kernels.hpp"
#include "supralap/reference.hpp"

namespace supralap {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kNegligible = 1e-10;

double leading_entry(std::span<const double> v) {
  for (double x : v)
    if (std::abs(x) > kNegligible) return x;
  return 0.0;
}

}  // namespace

void finalize_spectrum(Vector& values, Matrix& vectors_by_row) {
  const std::size_t n = values.size();
  if (vectors_by_row.rows() != n) throw Error(ErrorCode::dimension_mismatch, "one eigenvector per eigenvalue");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  Vector sorted(n);
  Matrix vectors(n, vectors_by_row.cols());
  for (std::size_t i = 0; i < n; ++i) {
    sorted[i] = values[order[i]];
    const auto src = vectors_by_row.row(order[i]);
    std::copy(src.begin(), src.end(), vectors.row(i).begin());
    fix_sign(vectors.row(i));
  }

  // Within a run of tied eigenvalues the basis is arbitrary; pick a reproducible order.
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && sorted[end] - sorted[end - 1] <= kTieTolerance * std::max(1.0, std::abs(sorted[end])))
      ++end;
    if (end - start > 1) {
      std::vector<std::size_t> run(end - start);
      std::iota(run.begin(), run.end(), start);
      std::stable_sort(run.begin(), run.end(), [&](std::size_t a, std::size_t b) {
        return leading_entry(vectors.row(a)) < leading_entry(vectors.row(b));
      });
      Matrix block(run.size(), vectors.cols());
      for (std::size_t r = 0; r < run.size(); ++r) {
        const auto src = vectors.row(run[r]);
        std::copy(src.begin(), src.end(), block.row(r).begin());
      }
      for (std::size_t r = 0; r < run.size(); ++r) {
        const auto src = block.row(r);
        std::copy(src.begin(), src.end(), vectors.row(start + r).begin());
      }
    }
    start = end;
  }
  values = std::move(sorted);
  vectors_by_row = std::move(vectors);
}

SpectralResult eigh(const Matrix& m, const EighOptions& options) {
  if (!m.is_square()) throw Error(ErrorCode::dimension_mismatch, "eigendecomposition needs a square matrix");
  require_symmetric(m);
  if (options.max_sweeps < 1) throw Error(ErrorCode::invalid_argument, "max_sweeps must be positive");
  SpectralResult r;
  if (m.rows() == 0) return r;

  if (options.backend == EighBackend::reference) {
    reference::eigh_serial(m, options.max_sweeps, r.eigenvalues, r.eigenvectors);
  } else {
    auto h = kernels::tridiagonalize(m);
    Matrix zt = kernels::form_q_transposed(h);
    kernels::RotationLog log;
    r.eigenvalues = std::move(h.diag);
    kernels::tridiagonal_ql(r.eigenvalues, std::move(h.off), log, options.max_sweeps);
    h.reflectors = {};
    kernels::apply_rotations(log, zt);
    r.eigenvectors = std::move(zt);
  }
  finalize_spectrum(r.eigenvalues, r.eigenvectors);
  return r;
}

double eig_residual(const Matrix& m, const SpectralResult& r) {
  const std::size_t n = m.rows();
  if (!m.is_square() || r.eigenvectors.rows() != r.order() || r.eigenvectors.cols() != n)
    throw Error(ErrorCode::dimension_mismatch, "spectrum does not match the matrix");
  const std::size_t count = r.order();
  // R = V M (M symmetric), tiled so a panel of M stays in cache while every eigenvector passes over it.
  constexpr std::size_t kPanelRows = 64;
  constexpr std::size_t kPanelCols = 256;
  Matrix prod(count, n, 0.0);
  for (std::size_t k0 = 0; k0 < n; k0 += kPanelRows) {
    const std::size_t k1 = std::min(n, k0 + kPanelRows);
#pragma omp parallel for schedule(static)
    for (std::size_t j0 = 0; j0 < n; j0 += kPanelCols) {
      const std::size_t j1 = std::min(n, j0 + kPanelCols);
      for (std::size_t i = 0; i < count; ++i) {
        const double* v = r.eigenvectors.data() + i * n;
        double* out = prod.data() + i * n;
        for (std::size_t k = k0; k < k1; ++k) {
          const double vk = v[k];
          const double* mrow = m.data() + k * n;
#pragma omp simd
          for (std::size_t j = j0; j < j1; ++j) out[j] += vk * mrow[j];
        }
      }
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    auto row = prod.row(i);
    const auto v = r.vector(i);
    for (std::size_t j = 0; j < n; ++j) row[j] -= r.eigenvalues[i] * v[j];
    worst = std::max(worst, norm2(row));
  }
  return worst;
}

double orthogonality_defect(const SpectralResult& r) {
  const std::size_t count = r.order();
  const std::size_t n = r.eigenvectors.cols();
  double worst = 0.0;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : worst)
  for (std::size_t i = 0; i < count; ++i) {
    const double* a = r.eigenvectors.data() + i * n;
    for (std::size_t j = i; j < count; ++j) {
      const double* b = r.eigenvectors.data() + j * n;
      double s = 0.0;
#pragma omp simd reduction(+ : s)
      for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace supralap

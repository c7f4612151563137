#include "supralap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "supralap/error.hpp"

namespace supralap::kernels {
namespace {

/// Householder vector for x (length m): on return x holds v with v[0] = 1 and
/// (I - tau v v^T) x_original = beta e_1.
void make_reflector(double* x, std::size_t m, double& tau, double& beta) {
  const double alpha = x[0];
  double scale = 0.0;
  for (std::size_t i = 1; i < m; ++i) scale = std::max(scale, std::abs(x[i]));
  double tail = 0.0;
  if (scale > 0.0) {
    double sum = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
      const double y = x[i] / scale;
      sum += y * y;
    }
    tail = scale * std::sqrt(sum);
  }
  if (tail == 0.0) {
    tau = 0.0;
    beta = alpha;
    x[0] = 1.0;
    return;
  }
  beta = -std::copysign(std::hypot(alpha, tail), alpha);
  tau = (beta - alpha) / beta;
  const double inv = 1.0 / (alpha - beta);
  for (std::size_t i = 1; i < m; ++i) x[i] *= inv;
  x[0] = 1.0;
}

}  // namespace

namespace {

constexpr std::size_t kPanelWidth = 32;
// Fixed partition of the symmetric product; the result does not depend on the thread count.
constexpr std::size_t kSymvChunks = 16;

/// y = A x over rows/cols [lo, n) of a symmetric matrix held in its lower triangle.
/// Row i contributes a dot product to y[i] and an axpy into y[lo..i); the axpy parts
/// are kept per chunk and summed in chunk order.
void symv_lower(const double* A, std::size_t n, std::size_t lo, const double* x, double* y,
                std::vector<double>& scratch) {
  const std::size_t m = n - lo;
  std::size_t bounds[kSymvChunks + 1];
  bounds[0] = lo;
  for (std::size_t c = 1; c < kSymvChunks; ++c) {
    // Equal triangle area: row offset proportional to sqrt(c / chunks).
    const double frac = std::sqrt(static_cast<double>(c) / kSymvChunks);
    bounds[c] = std::max(bounds[c - 1], lo + static_cast<std::size_t>(frac * static_cast<double>(m)));
  }
  bounds[kSymvChunks] = n;
  scratch.assign(kSymvChunks * n, 0.0);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t c = 0; c < kSymvChunks; ++c) {
    double* acc = scratch.data() + c * n;
    for (std::size_t i = bounds[c]; i < bounds[c + 1]; ++i) {
      const double* row = A + i * n;
      const double xi = x[i];
      double s = 0.0;
#pragma omp simd reduction(+ : s)
      for (std::size_t j = lo; j < i; ++j) {
        s += row[j] * x[j];
        acc[j] += row[j] * xi;
      }
      y[i] = s + row[i] * xi;
    }
  }
  for (std::size_t c = 0; c < kSymvChunks; ++c) {
    const double* acc = scratch.data() + c * n;
    for (std::size_t j = lo; j < bounds[c + 1]; ++j) y[j] += acc[j];
  }
}

}  // namespace

HouseholderReduction tridiagonalize(Matrix a) {
  if (!a.is_square()) throw Error(ErrorCode::dimension_mismatch, "tridiagonalize needs a square matrix");
  const std::size_t n = a.rows();
  HouseholderReduction h;
  h.order = n;
  h.diag.assign(n, 0.0);
  h.off.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n == 0) return h;
  if (n <= 2) {
    h.diag[0] = a(0, 0);
    if (n == 2) {
      h.diag[1] = a(1, 1);
      h.off[0] = a(1, 0);
    }
    return h;
  }

  const std::size_t reflector_count = n - 2;
  h.tau.assign(reflector_count, 0.0);
  h.offsets.resize(reflector_count);
  std::size_t total = 0;
  for (std::size_t k = 0; k < reflector_count; ++k) {
    h.offsets[k] = total;
    total += n - k - 1;
  }
  h.reflectors.assign(total, 0.0);

  double* const A = a.data();  // only the lower triangle is read or written
  // Panel factors, transposed: vt[c * n + r] = V(r, c), wt[c * n + r] = W(r, c).
  // The trailing matrix equals A - V W^T - W V^T until the panel is folded in.
  std::vector<double> vt(kPanelWidth * n), wt(kPanelWidth * n);
  Vector col(n), y(n), scratch;
  double vw[kPanelWidth], vv[kPanelWidth];

  for (std::size_t k0 = 0; k0 < reflector_count; k0 += kPanelWidth) {
    const std::size_t width = std::min(kPanelWidth, reflector_count - k0);
    std::fill(vt.begin(), vt.end(), 0.0);
    std::fill(wt.begin(), wt.end(), 0.0);

    for (std::size_t c = 0; c < width; ++c) {
      const std::size_t k = k0 + c;
      // Current column k, rows k..n-1.
      for (std::size_t r = k; r < n; ++r) col[r] = A[r * n + k];
      for (std::size_t q = 0; q < c; ++q) {
        const double* vq = vt.data() + q * n;
        const double* wq = wt.data() + q * n;
        const double wk = wq[k];
        const double vk = vq[k];
        for (std::size_t r = k; r < n; ++r) col[r] -= vq[r] * wk + wq[r] * vk;
      }
      h.diag[k] = col[k];

      double* v = h.reflectors.data() + h.offsets[k];
      const std::size_t m = n - k - 1;
      std::copy_n(col.data() + k + 1, m, v);
      double beta = 0.0;
      make_reflector(v, m, h.tau[k], beta);
      h.off[k] = beta;
      const double tau = h.tau[k];
      double* vc = vt.data() + c * n;
      std::copy_n(v, m, vc + k + 1);

      // y = (A - V W^T - W V^T) v over the trailing rows k+1..n-1.
      symv_lower(A, n, k + 1, vc, y.data(), scratch);
      for (std::size_t q = 0; q < c; ++q) {
        const double* vq = vt.data() + q * n;
        const double* wq = wt.data() + q * n;
        double sw = 0.0, sv = 0.0;
        for (std::size_t r = k + 1; r < n; ++r) {
          sw += wq[r] * vc[r];
          sv += vq[r] * vc[r];
        }
        vw[q] = sw;
        vv[q] = sv;
      }
      for (std::size_t q = 0; q < c; ++q) {
        const double* vq = vt.data() + q * n;
        const double* wq = wt.data() + q * n;
        for (std::size_t r = k + 1; r < n; ++r) y[r] -= vq[r] * vw[q] + wq[r] * vv[q];
      }
      double* wc = wt.data() + c * n;
      double pv = 0.0;
      for (std::size_t r = k + 1; r < n; ++r) {
        wc[r] = tau * y[r];
        pv += wc[r] * vc[r];
      }
      const double alpha = -0.5 * tau * pv;
      for (std::size_t r = k + 1; r < n; ++r) wc[r] += alpha * vc[r];
    }

    // Fold the panel into the trailing lower triangle.
    const std::size_t lo = k0 + width;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t r = lo; r < n; ++r) {
      double* row = A + r * n;
      for (std::size_t c = 0; c < width; ++c) {
        const double vr = vt[c * n + r];
        const double wr = wt[c * n + r];
        const double* vq = vt.data() + c * n;
        const double* wq = wt.data() + c * n;
#pragma omp simd
        for (std::size_t s = lo; s <= r; ++s) row[s] -= vr * wq[s] + wr * vq[s];
      }
    }
  }
  h.diag[n - 2] = A[(n - 2) * n + n - 2];
  h.diag[n - 1] = A[(n - 1) * n + n - 1];
  h.off[n - 2] = A[(n - 1) * n + n - 2];
  return h;
}

Matrix form_q_transposed(const HouseholderReduction& h) {
  const std::size_t n = h.order;
  Matrix zt = Matrix::identity(n);
  if (n <= 2) return zt;
  constexpr std::size_t kBlockRows = 64;
  const std::size_t blocks = (n + kBlockRows - 1) / kBlockRows;
  const std::size_t reflector_count = h.tau.size();

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t j0 = b * kBlockRows;
    const std::size_t j1 = std::min(n, j0 + kBlockRows);
    // Row j starts as e_j and is only touched by reflectors k < j.
    const std::size_t k_start = std::min(j1 - 1, reflector_count);
    for (std::size_t k = k_start; k-- > 0;) {
      const double tau = h.tau[k];
      if (tau == 0.0) continue;
      const double* v = h.reflectors.data() + h.offsets[k];
      const std::size_t m = n - k - 1;
      for (std::size_t j = std::max(j0, k + 1); j < j1; ++j) {
        double* z = zt.data() + j * n + k + 1;
        double s = 0.0;
#pragma omp simd reduction(+ : s)
        for (std::size_t i = 0; i < m; ++i) s += z[i] * v[i];
        s *= tau;
#pragma omp simd
        for (std::size_t i = 0; i < m; ++i) z[i] -= s * v[i];
      }
    }
  }
  return zt;
}

void tridiagonal_ql(Vector& d, Vector off, RotationLog& log, int max_sweeps) {
  const std::size_t n = d.size();
  log = RotationLog{};
  if (n <= 1) return;
  if (off.size() != n - 1) throw Error(ErrorCode::dimension_mismatch, "off-diagonal length must be n - 1");
  Vector e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());

  constexpr double eps = 0x1.0p-52;
  double f = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_sweeps)
          throw Error(ErrorCode::no_convergence, "QL iteration did not converge within " +
                                                     std::to_string(max_sweeps) +
                                                     " sweeps (matrix order " + std::to_string(n) + ")");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        log.sweeps.push_back({l, m, log.c.size()});
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          log.c.push_back(c);
          log.s.push_back(s);
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

namespace {

/// One sweep over a column strip of kLanes * 4 doubles. Rotation i mixes rows i and
/// i+1 and the sweep runs downwards, so row i's new value feeds the next rotation
/// directly: the carried row stays in registers and each row is loaded and stored
/// once per sweep.
using Pack = double __attribute__((vector_size(32)));
constexpr std::size_t kLanes = 8;
constexpr std::size_t kStripWidth = kLanes * 4;

inline Pack load_pack(const double* p) {
  Pack v;
  std::memcpy(&v, p, sizeof v);
  return v;
}
inline void store_pack(double* p, Pack v) { std::memcpy(p, &v, sizeof v); }

void sweep_strip(const RotationLog& log, const RotationLog::Sweep& sweep, double* base, std::size_t stride,
                 std::size_t c0) {
  Pack carry[kLanes];
  const double* top = base + sweep.high * stride + c0;
#pragma GCC unroll 8
  for (std::size_t q = 0; q < kLanes; ++q) carry[q] = load_pack(top + 4 * q);
  std::size_t idx = sweep.offset;
  for (std::size_t i = sweep.high; i-- > sweep.low; ++idx) {
    const double c = log.c[idx];
    const double s = log.s[idx];
    const double* x = base + i * stride + c0;
    double* below = base + (i + 1) * stride + c0;
#pragma GCC unroll 8
    for (std::size_t q = 0; q < kLanes; ++q) {
      const Pack xr = load_pack(x + 4 * q);
      store_pack(below + 4 * q, s * xr + c * carry[q]);
      carry[q] = c * xr - s * carry[q];
    }
  }
  double* bottom = base + sweep.low * stride + c0;
#pragma GCC unroll 8
  for (std::size_t q = 0; q < kLanes; ++q) store_pack(bottom + 4 * q, carry[q]);
}

void sweep_strip_any(const RotationLog& log, const RotationLog::Sweep& sweep, double* base, std::size_t stride,
                     std::size_t c0, std::size_t len) {
  std::size_t idx = sweep.offset;
  for (std::size_t i = sweep.high; i-- > sweep.low; ++idx) {
    const double c = log.c[idx];
    const double s = log.s[idx];
    double* x = base + i * stride + c0;
    double* y = base + (i + 1) * stride + c0;
    for (std::size_t r = 0; r < len; ++r) {
      const double hold = y[r];
      y[r] = s * x[r] + c * hold;
      x[r] = c * x[r] - s * hold;
    }
  }
}

}  // namespace

void apply_rotations(const RotationLog& log, Matrix& zt, std::size_t block_cols) {
  const std::size_t n = zt.cols();
  if (n == 0 || log.sweeps.empty()) return;
  block_cols = std::max<std::size_t>(block_cols, 1);
  const std::size_t blocks = (n + block_cols - 1) / block_cols;
  double* const base = zt.data();

#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t c0 = b * block_cols;
    const std::size_t c1 = std::min(n, c0 + block_cols);
    for (const auto& sweep : log.sweeps) {
      std::size_t c = c0;
      for (; c + kStripWidth <= c1; c += kStripWidth) sweep_strip(log, sweep, base, n, c);
      if (c < c1) sweep_strip_any(log, sweep, base, n, c, c1 - c);
    }
  }
}

Vector matvec(const Matrix& m, std::span<const double> x) {
  if (x.size() != m.cols()) throw Error(ErrorCode::dimension_mismatch, "matrix-vector size mismatch");
  Vector y(m.rows(), 0.0);
  const std::size_t cols = m.cols();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* row = m.data() + i * cols;
    double acc = 0.0;
#pragma omp simd reduction(+ : acc)
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

}  // namespace supralap::kernels

#include "supralap/reference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supralap/error.hpp"

namespace supralap::reference {

void tred2(Matrix& v, Vector& d, Vector& e) {
  const std::size_t n = v.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  if (n == 0) return;
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

void tql2(Matrix& v, Vector& d, Vector& e, int max_sweeps) {
  const std::size_t n = v.rows();
  if (n == 0) return;
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

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
          for (std::size_t k = 0; k < n; ++k) {
            h = v(k, i + 1);
            v(k, i + 1) = s * v(k, i) + c * h;
            v(k, i) = c * v(k, i) - s * h;
          }
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

void eigh_serial(const Matrix& m, int max_sweeps, Vector& values, Matrix& vectors_by_row) {
  if (!m.is_square()) throw Error(ErrorCode::dimension_mismatch, "eigendecomposition needs a square matrix");
  Matrix v = m;
  Vector e;
  tred2(v, values, e);
  tql2(v, values, e, max_sweeps);
  vectors_by_row = transpose(v);
}

SupraMatrix assemble_supra_adjacency(const TemporalNetwork& net) {
  const std::size_t n = net.n_nodes();
  const std::size_t layers = net.n_layers();
  const auto& w = net.weights();
  SupraMatrix s{n, layers, SupraKind::adjacency, Matrix(n * layers, n * layers)};
  for (std::size_t t = 0; t < layers; ++t) {
    const Matrix& a = net.layer(t).adjacency();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s.entries(t * n + i, t * n + j) = a(i, j);
  }
  for (std::size_t p = 0; p < w.pair_count(layers); ++p) {
    const std::size_t q = (p + 1) % layers;
    for (std::size_t i = 0; i < n; ++i) {
      s.entries(p * n + i, q * n + i) = w.pair_weight(p, i, n);
      s.entries(q * n + i, p * n + i) = w.pair_weight(p, i, n);
    }
  }
  return s;
}

SupraMatrix supra_laplacian(const TemporalNetwork& net) {
  SupraMatrix s = reference::assemble_supra_adjacency(net);
  const std::size_t order = s.order();
  // Degree as row sums split into the within-layer part and the coupling part,
  // matching the grouping used by the parallel path.
  const std::size_t n = net.n_nodes();
  Vector inv_sqrt(order);
  for (std::size_t r = 0; r < order; ++r) {
    const std::size_t t = r / n;
    double within = 0.0;
    double coupling = 0.0;
    for (std::size_t c = 0; c < order; ++c) {
      if (c / n == t)
        within += s.entries(r, c);
    }
    const std::size_t layers = net.n_layers();
    const bool periodic = net.coupling() == Coupling::periodic;
    double before = 0.0, after = 0.0;
    if (periodic || t > 0) before = s.entries(r, ((t + layers - 1) % layers) * n + r % n);
    if (periodic || t + 1 < layers) after = s.entries(r, ((t + 1) % layers) * n + r % n);
    coupling = before + after;
    const double degree = within + coupling;
    if (!(degree > 0.0))
      throw Error(ErrorCode::zero_degree, "multilayer degree of node " + std::to_string(r % n) +
                                              " in layer " + std::to_string(t + 1) + " is 0");
    inv_sqrt[r] = 1.0 / std::sqrt(degree);
  }
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j)
      if (s.entries(i, j) != 0.0) s.entries(i, j) = -s.entries(i, j) * (inv_sqrt[i] * inv_sqrt[j]);
    s.entries(i, i) = 1.0;
  }
  s.kind = SupraKind::laplacian;
  return s;
}

}  // namespace supralap::reference

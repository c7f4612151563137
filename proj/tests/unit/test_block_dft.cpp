#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <omp.h>

#include "oracles.hpp"
#include "supralap/block_dft.hpp"
#include "supralap/error.hpp"
#include "supralap/generators.hpp"
#include "supralap/graph.hpp"

using namespace supralap;

namespace {

LayerGraph k2() { return LayerGraph::from_edges(2, std::vector<Edge>{{0, 1}}); }

LayerGraph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return LayerGraph::from_edges(n, e);
}

double residual(const Matrix& m, const Vector& v, double lambda) {
  Vector r = oracle::naive_apply(m, v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lambda * v[i];
  return oracle::naive_norm(r);
}

}  // namespace

TEST_CASE("reduced blocks") {
  const auto g = er_layer({15, 0.3, 1, 2}, 0);
  const auto b = constant_model_blocks(g, 0.7, 8);
  const auto m0 = reduced_matrix(b, 0);
  const auto mh = reduced_matrix(b, 4);
  CHECK(m0.cosine == 1.0);
  CHECK(mh.cosine == -1.0);
  for (std::size_t i = 0; i < 15; ++i)
    for (std::size_t j = 0; j < 15; ++j) {
      const double w = i == j ? b.l_tilde_w[i] : 0.0;
      CHECK(std::abs(m0.matrix(i, j) - (b.l_tilde(i, j) + 2 * w)) <= 1e-14);
      CHECK(std::abs(mh.matrix(i, j) - (b.l_tilde(i, j) - 2 * w)) <= 1e-14);
    }
  for (std::size_t k = 1; k < 8; ++k) {
    CHECK(reduced_matrix(b, k).matrix == reduced_matrix(b, 8 - k).matrix);
    CHECK(max_asymmetry(reduced_matrix(b, k).matrix) == 0.0);
  }
  CHECK(dft_cosine(1, 8) == doctest::Approx(std::cos(std::numbers::pi / 4)).epsilon(1e-15));
  CHECK_THROWS_AS(reduced_matrix(b, 8), Error);
  CHECK_THROWS_AS(dft_cosine(3, 3), Error);
}

TEST_CASE("uncoupled blocks repeat the layer spectrum") {
  const auto g = er_layer({12, 0.4, 1, 5}, 0);
  const auto s = full_spectrum(constant_model_blocks(g, 0.0, 5));
  const auto layer = oracle::jacobi_eigen(normalized_laplacian(g));
  REQUIRE(s.pairs.size() == 60);
  for (std::size_t i = 0; i < 60; ++i) CHECK(std::abs(s.pairs[i].eigenvalue - layer[i / 5]) <= 1e-12);
}

TEST_CASE("zero mode sits at k = 0") {
  for (double omega : {0.01, 1.0, 5.0}) {
    const auto g = er_layer({20, 0.3, 1, 8}, 0);
    const auto b = constant_model_blocks(g, omega, 7);
    const auto s = full_spectrum(b);
    CHECK(std::abs(s.pairs[0].eigenvalue) <= 1e-9);
    CHECK(s.pairs[0].k == 0);
    Vector z(20);
    for (std::size_t i = 0; i < 20; ++i) z[i] = std::sqrt(b.shifted_degrees[i]);
    const double cosine = dot(z, s.pairs[0].vector) / (norm2(z) * norm2(s.pairs[0].vector));
    CHECK(cosine >= 1.0 - 1e-9);
  }
}

TEST_CASE("merged spectrum equals the expanded matrix spectrum") {
  const auto g = er_layer({40, 0.3, 1, 12}, 0);
  const auto b = constant_model_blocks(g, 1.0, 10);
  const auto merged = full_spectrum(b).eigenvalues();
  const auto dense = oracle::jacobi_eigen(expand_constant_model(b, 10).entries);
  REQUIRE(merged.size() == dense.size());
  for (std::size_t i = 0; i < dense.size(); ++i) CHECK(std::abs(merged[i] - dense[i]) <= 1e-8);
}

TEST_CASE("merge order and determinism") {
  const auto g = er_layer({25, 0.3, 1, 1}, 0);
  const auto b = constant_model_blocks(g, 0.5, 9);
  omp_set_num_threads(3);
  const auto par = full_spectrum(b);
  omp_set_num_threads(omp_get_num_procs());
  const auto ser = full_spectrum_serial(b);
  REQUIRE(par.pairs.size() == ser.pairs.size());
  for (std::size_t i = 0; i < par.pairs.size(); ++i) {
    CHECK(par.pairs[i].eigenvalue == ser.pairs[i].eigenvalue);
    CHECK(par.pairs[i].k == ser.pairs[i].k);
    CHECK(par.pairs[i].vector == ser.pairs[i].vector);
    if (i > 0) {
      const auto& prev = par.pairs[i - 1];
      CHECK((prev.eigenvalue < par.pairs[i].eigenvalue ||
             (prev.eigenvalue == par.pairs[i].eigenvalue && prev.k <= par.pairs[i].k)));
    }
  }
}

TEST_CASE("lifting profiles") {
  const Vector v{0.6, 0.8};
  SUBCASE("k = 0 repeats v") {
    const auto l = lift_eigenvector(v, 0.0, 0, 4);
    REQUIRE(l.psi_r.has_value());
    CHECK_FALSE(l.psi_i.has_value());
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK((*l.psi_r)[2 * j] == doctest::Approx(0.6 / 2.0).epsilon(1e-15));
      CHECK((*l.psi_r)[2 * j + 1] == doctest::Approx(0.8 / 2.0).epsilon(1e-15));
    }
  }
  SUBCASE("quarter periods") {
    const auto l = lift_eigenvector(v, 0.0, 1, 4);
    REQUIRE(l.psi_i.has_value());
    const double c[4] = {1, 0, -1, 0}, s[4] = {0, 1, 0, -1};
    const double scale = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t i = 0; i < 2; ++i) {
        CHECK((*l.psi_r)[2 * j + i] == doctest::Approx(c[j] * v[i] * scale).scale(1.0).epsilon(1e-15));
        CHECK((*l.psi_i)[2 * j + i] == doctest::Approx(s[j] * v[i] * scale).scale(1.0).epsilon(1e-15));
      }
    CHECK(std::abs(dot(*l.psi_r, *l.psi_i)) <= 1e-9);
  }
  SUBCASE("half period has no sine part") {
    const auto l = lift_eigenvector(v, 0.0, 3, 6);
    CHECK(l.psi_r.has_value());
    CHECK_FALSE(l.psi_i.has_value());
    CHECK(lift_eigenvector(v, 0.0, 2, 5).psi_i.has_value());
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(lift_eigenvector(Vector{0.0, 0.0}, 0.0, 1, 4), Error);
    CHECK_THROWS_AS(lift_eigenvector(Vector{}, 0.0, 1, 4), Error);
    CHECK_THROWS_AS(lift_eigenvector(v, 0.0, 4, 4), Error);
    const auto b = constant_model_blocks(k2(), 1.0, 6);
    CHECK_THROWS_AS(lift_eigenvector(b, v, 0.3, 2), Error);
    CHECK_THROWS_AS(lift_eigenvector(b, Vector{1.0}, 0.3, 2), Error);
  }
}

TEST_CASE("lifted vectors solve the full eigenproblem") {
  SUBCASE("two-node layer, six layers") {
    const auto b = constant_model_blocks(k2(), 1.0, 6);
    const Matrix full = expand_constant_model(b, 6).entries;
    const auto red = eigh(reduced_matrix(b, 2).matrix);
    for (std::size_t j = 0; j < 2; ++j) {
      const Vector v(red.vector(j).begin(), red.vector(j).end());
      const auto l = lift_eigenvector(b, v, red.eigenvalues[j], 2);
      CHECK(residual(full, *l.psi_r, l.eigenvalue) <= 1e-10);
      CHECK(residual(full, *l.psi_i, l.eigenvalue) <= 1e-10);
      CHECK(oracle::naive_norm(*l.psi_r) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  SUBCASE("random layer, every block") {
    const auto g = er_layer({15, 0.3, 1, 6}, 0);
    const auto b = constant_model_blocks(g, 0.5, 7);
    const Matrix full = expand_constant_model(b, 7).entries;
    for (std::size_t k = 0; k < 7; ++k) {
      const auto red = eigh(reduced_matrix(b, k).matrix);
      for (std::size_t j = 0; j < 15; ++j) {
        const Vector v(red.vector(j).begin(), red.vector(j).end());
        const auto l = lift_eigenvector(b, v, red.eigenvalues[j], k);
        CHECK(residual(full, *l.psi_r, l.eigenvalue) <= 1e-7);
        if (l.psi_i) {
          CHECK(residual(full, *l.psi_i, l.eigenvalue) <= 1e-7);
          CHECK(std::abs(dot(*l.psi_r, *l.psi_i)) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("block transform") {
  SUBCASE("constant blocks concentrate at k = 0") {
    const Vector v{1.0, -2.0, 0.5};
    Vector psi;
    for (int j = 0; j < 5; ++j) psi.insert(psi.end(), v.begin(), v.end());
    const auto f = dft_blocks(psi, 5);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(f[0][i] - 5.0 * v[i]) <= 1e-12);
    for (std::size_t k = 1; k < 5; ++k)
      for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(f[k][i]) <= 1e-12);
  }
  SUBCASE("a single frequency inverts to a complex exponential profile") {
    const std::size_t t = 6, khat = 2;
    const Vector v{0.3, 0.4};
    std::vector<ComplexVector> spectrum(t, ComplexVector(2));
    for (std::size_t i = 0; i < 2; ++i) spectrum[khat][i] = double(t) * v[i];
    const auto blocks = inverse_dft_blocks(spectrum);
    for (std::size_t j = 0; j < t; ++j)
      for (std::size_t i = 0; i < 2; ++i) {
        const auto expected = std::polar(1.0, 2.0 * std::numbers::pi * double(j * khat) / double(t)) * v[i];
        CHECK(std::abs(blocks[j][i] - expected) <= 1e-12);
      }
    // and a cosine profile splits evenly between k and T - k
    Vector psi;
    for (std::size_t j = 0; j < t; ++j)
      for (double x : v) psi.push_back(std::cos(2.0 * std::numbers::pi * double(j * khat) / double(t)) * x);
    const auto f = dft_blocks(psi, t);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(std::abs(f[khat][i] - 3.0 * v[i]) <= 1e-12);
      CHECK(std::abs(f[t - khat][i] - 3.0 * v[i]) <= 1e-12);
    }
  }
  SUBCASE("round trip and agreement with the direct formula") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Vector psi = oracle::random_unit(24, seed);
      const auto f = dft_blocks(psi, 4);
      const auto direct = oracle::direct_dft(psi, 4);
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(f[k][i] - direct[k][i]) <= 1e-12);
      const auto back = inverse_dft_blocks(f);
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 6; ++i) {
          CHECK(std::abs(back[j][i].real() - psi[j * 6 + i]) <= 1e-10);
          CHECK(std::abs(back[j][i].imag()) <= 1e-10);
        }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(dft_blocks(Vector(7), 3), Error);
    CHECK_THROWS_AS(dft_blocks(Vector{}, 3), Error);
    CHECK_THROWS_AS(dft_blocks(Vector(6), 0), Error);
    CHECK_THROWS_AS(inverse_dft_blocks({}), Error);
    CHECK_THROWS_AS(inverse_dft_blocks({ComplexVector(2), ComplexVector(3)}), Error);
  }
}

TEST_CASE("every full eigenvector transforms into reduced eigenvectors") {
  const auto g = er_layer({8, 0.5, 1, 3}, 0);
  const auto b = constant_model_blocks(g, 0.8, 5);
  const auto full = eigh(expand_constant_model(b, 5).entries);
  for (std::size_t e = 0; e < full.order(); ++e) {
    const auto f = dft_blocks(full.vector(e), 5);
    for (std::size_t k = 0; k < 5; ++k) {
      double len = 0.0;
      for (const auto& x : f[k]) len += std::norm(x);
      len = std::sqrt(len);
      if (len <= 1e-6) continue;
      const Matrix m = reduced_matrix(b, k).matrix;
      double res = 0.0;
      for (std::size_t i = 0; i < 8; ++i) {
        std::complex<double> s = -full.eigenvalues[e] * f[k][i];
        for (std::size_t j = 0; j < 8; ++j) s += m(i, j) * f[k][j];
        res += std::norm(s);
      }
      CHECK(std::sqrt(res) <= 1e-7 * len);
    }
  }
}

TEST_CASE("eigenvalue table") {
  const auto g = er_layer({30, 0.3, 1, 4}, 0);
  const auto b = constant_model_blocks(g, 1.0, 12);
  const Matrix table = eigenvalue_table(b, 30);
  for (std::size_t k = 1; k < 12; ++k)
    for (std::size_t j = 0; j < 30; ++j) CHECK(table(j, k) == table(j, 12 - k));
  for (std::size_t j = 0; j < 30; ++j)
    for (std::size_t k = 0; k < 6; ++k) CHECK(table(j, k) <= table(j, k + 1) + 1e-10);
  CHECK_THROWS_AS(eigenvalue_table(b, 31), Error);
}

TEST_CASE("regular layers shift by the closed-form amount") {
  // For a d-regular layer L~_W = -w/(d + 2w) I, so every block is a shifted L~.
  const auto g = cycle(9);
  const double omega = 0.8;
  const std::size_t t = 7;
  const auto b = constant_model_blocks(g, omega, t);
  const auto base = oracle::jacobi_eigen(b.l_tilde);
  const Matrix table = eigenvalue_table(b, 9);
  for (std::size_t k = 0; k < t; ++k)
    for (std::size_t j = 0; j < 9; ++j) {
      const double shift = -2.0 * std::cos(2.0 * std::numbers::pi * double(k) / double(t)) * omega / (2.0 + 2.0 * omega);
      CHECK(std::abs(table(j, k) - (base[j] + shift)) <= 1e-12);
    }
}

TEST_CASE("dense ER layers: smooth increase without gaps past the first eigenvalue") {
  const auto g = er_layer({100, 0.3, 1, 1}, 0);
  const auto b = constant_model_blocks(g, 1.0, 30);
  const Matrix table = eigenvalue_table(b, 100);
  for (std::size_t k = 0; k < 15; ++k)
    for (std::size_t j = 0; j < 100; ++j) CHECK(table(j, k) <= table(j, k + 1) + 1e-10);
  double worst = 0.0;
  for (std::size_t k = 0; k < 30; ++k)
    for (std::size_t j = 1; j + 1 < 100; ++j) worst = std::max(worst, table(j + 1, k) / table(j, k));
  CHECK(worst < 1.5);
}

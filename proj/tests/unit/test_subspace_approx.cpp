#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "supralap/block_dft.hpp"
#include "supralap/eigensolver.hpp"
#include "supralap/error.hpp"
#include "supralap/generators.hpp"
#include "supralap/subspace_approx.hpp"

using namespace supralap;

namespace {

LayerGraph k3() { return LayerGraph::from_edges(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}); }

LayerGraph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  e.push_back({0, n - 1});
  return LayerGraph::from_edges(n, e);
}

TemporalNetwork random_network(std::size_t n, std::size_t t, double omega, std::uint64_t seed) {
  return er_temporal({n, 0.4, t, seed}, InterLayerWeights::uniform(omega, Coupling::path));
}

}  // namespace

TEST_CASE("zero-mode basis columns") {
  const TemporalNetwork net({k3(), k3()}, InterLayerWeights::uniform(1.0, Coupling::path));
  const auto basis = zero_mode_basis(net);
  const double a = 1.0 / std::sqrt(3.0);
  CHECK(basis.order() == 6);
  const Vector c0 = basis.column(0), c1 = basis.column(1);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(c0[i] == doctest::Approx(a).epsilon(1e-15));
    CHECK(c0[i + 3] == 0.0);
    CHECK(c1[i] == 0.0);
    CHECK(c1[i + 3] == doctest::Approx(a).epsilon(1e-15));
  }
  CHECK_THROWS_AS(basis.column(2), Error);
  CHECK_THROWS_AS(basis.coefficients(Vector(5)), Error);

  SUBCASE("projections") {
    const auto p0 = project_residual(c0, basis);
    CHECK(p0.epsilon <= 1e-15);
    CHECK(p0.alpha[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p0.alpha[1] == 0.0);
    const auto p1 = project_residual(Vector{1, 0, 0, 0, 0, 0}, basis);
    CHECK(p1.alpha[0] == doctest::Approx(a).epsilon(1e-15));
    CHECK(p1.epsilon == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(project_residual(Vector{2, 0, 0, 0, 0, 0}, basis), Error);
    CHECK_THROWS_AS(project_residual(Vector{1, 0, 0}, basis), Error);
  }
}

TEST_CASE("projection agrees with a generic least-squares fit") {
  const auto net = random_network(9, 4, 0.5, 3);
  const auto basis = zero_mode_basis(net);
  std::vector<Vector> columns;
  for (std::size_t t = 0; t < 4; ++t) columns.push_back(basis.column(t));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Vector v = oracle::random_unit(36, seed);
    const auto p = project_residual(v, basis);
    CHECK(std::abs(p.epsilon - oracle::least_squares_residual(columns, v)) <= 1e-12);
    double s = p.epsilon * p.epsilon;
    for (double x : p.alpha) s += x * x;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("uncoupled layers: the first T eigenvectors are exact and the next one breaks") {
  const auto net = random_network(10, 4, 0.0, 9);
  const auto spec = eigh(supra_laplacian(net).entries);
  const auto report = error_profile(spec, zero_mode_basis(net), 12);
  for (std::size_t i = 0; i < 4; ++i) CHECK(report.errors[i] <= 1e-8);
  CHECK(report.errors[4] > 0.5);
  REQUIRE(report.lambda_star_index.has_value());
  CHECK(*report.lambda_star_index == 5);
  CHECK(report.eigenvalues.size() == 12);
  CHECK(report.coefficients.size() == 12);
  CHECK(report.eigenvalues[3] == spec.eigenvalues[3]);
}

TEST_CASE("degenerate clusters give rotation-independent errors") {
  // Pairs k, T - k of a constant model are exactly degenerate.
  const auto g = er_layer({8, 0.4, 1, 2}, 0);
  const auto net = constant_network(g, 0.5, 5);
  auto spec = eigh(supra_laplacian(net).entries);
  const auto basis = zero_mode_basis(net);
  const auto before = error_profile(spec, basis, 40);
  std::size_t rotated = 0;
  for (std::size_t i = 0; i + 1 < 40; ++i) {
    if (spec.eigenvalues[i + 1] - spec.eigenvalues[i] > kDegenerateGap) continue;
    CHECK(before.errors[i] == before.errors[i + 1]);
    const double c = std::cos(0.3), s = std::sin(0.3);
    for (std::size_t r = 0; r < 40; ++r) {
      const double a = spec.eigenvectors(i, r), b = spec.eigenvectors(i + 1, r);
      spec.eigenvectors(i, r) = c * a - s * b;
      spec.eigenvectors(i + 1, r) = s * a + c * b;
    }
    ++rotated;
    ++i;
  }
  CHECK(rotated >= 10);
  const auto after = error_profile(spec, basis, 40);
  for (std::size_t i = 0; i < 40; ++i) CHECK(std::abs(after.errors[i] - before.errors[i]) <= 1e-10);
}

TEST_CASE("lifted lowest modes of regular layers lie in the basis") {
  const auto g = cycle(7);
  const std::size_t t = 6;
  const auto blocks = constant_model_blocks(g, 0.4, t);
  const auto basis = zero_mode_basis(constant_network(g, 0.4, t));
  for (std::size_t k = 0; k < t; ++k) {
    const auto red = eigh(reduced_matrix(blocks, k).matrix);
    const auto lifted = lift_eigenvector(blocks, red.vector(0), red.eigenvalues[0], k);
    CHECK(project_residual(*lifted.psi_r, basis).epsilon <= 1e-9);
    if (lifted.psi_i) CHECK(project_residual(*lifted.psi_i, basis).epsilon <= 1e-9);
  }
}

TEST_CASE("first-jump detector") {
  CHECK(detect_lambda_star(Vector{1e-9, 1e-9, 0.5, 0.6}) == std::optional<std::size_t>(3));
  CHECK_FALSE(detect_lambda_star(Vector{0.1, 0.1, 0.1}).has_value());
  CHECK_FALSE(detect_lambda_star(Vector{1e-6, 5e-4}).has_value());  // below the floor
  CHECK_FALSE(detect_lambda_star(Vector{0.3}).has_value());
  CHECK(detect_lambda_star(Vector{0.01, 0.03, 0.3}, {4.0, 1e-3}) == std::optional<std::size_t>(3));
  CHECK(detect_lambda_star(Vector{0.01, 0.03, 0.3}, {10.0, 1e-3}) == std::nullopt);
  CHECK_THROWS_AS(detect_lambda_star(Vector{}), Error);
  CHECK_THROWS_AS(detect_lambda_star(Vector{1.0}, {0.0, 1e-3}), Error);
  CHECK_THROWS_AS(detect_lambda_star(Vector{1.0}, {10.0, -1.0}), Error);

  // The answer depends on the prefix only.
  Vector e{1e-8, 2e-8, 1e-7, 0.4, 0.2, 0.9};
  const auto first = detect_lambda_star(e);
  CHECK(first == std::optional<std::size_t>(4));
  for (double tail : {0.0, 1.0, 1e-12}) {
    e.push_back(tail);
    CHECK(detect_lambda_star(e) == first);
  }
}

TEST_CASE("error profile argument checks") {
  const auto net = random_network(6, 3, 0.2, 1);
  const auto spec = eigh(supra_laplacian(net).entries);
  const auto basis = zero_mode_basis(net);
  CHECK_THROWS_AS(error_profile(spec, basis, 0), Error);
  CHECK_THROWS_AS(error_profile(spec, basis, 19), Error);
  const auto other = zero_mode_basis(random_network(6, 4, 0.2, 1));
  CHECK_THROWS_AS(error_profile(spec, other, 3), Error);
  CHECK_NOTHROW(error_profile(spec, basis, 18));
}

TEST_CASE("subspace distance") {
  const Vector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  CHECK(subspace_distance({e1}, {e1, e2}) <= 1e-15);
  CHECK(subspace_distance({e3}, {e1, e2}) == doctest::Approx(1.0));
  const Vector d{std::sqrt(0.5), 0, std::sqrt(0.5)};
  CHECK(subspace_distance({d}, {e1}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(subspace_distance({}, {e1}) == 0.0);
  CHECK_THROWS_AS(subspace_distance({e1}, {Vector{1, 0}}), Error);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    // Orthonormal sets from the eigenvectors of random symmetric matrices.
    const auto a = eigh(oracle::random_symmetric(8, seed));
    const auto b = eigh(oracle::random_symmetric(8, seed + 100));
    std::vector<Vector> u, w;
    for (std::size_t i = 0; i < 2; ++i) u.emplace_back(a.vector(i).begin(), a.vector(i).end());
    for (std::size_t i = 0; i < 5; ++i) w.emplace_back(b.vector(i).begin(), b.vector(i).end());
    CHECK(std::abs(subspace_distance(u, w) - oracle::principal_angle_sine(u, w)) <= 1e-10);
  }
}

#include <doctest.h>

#include <cmath>

#include <omp.h>

#include "oracles.hpp"
#include "supralap/kernels.hpp"
#include "supralap/reference.hpp"

using namespace supralap;

namespace {

Matrix tridiagonal(const kernels::HouseholderReduction& h) {
  Matrix t(h.order, h.order);
  for (std::size_t i = 0; i < h.order; ++i) {
    t(i, i) = h.diag[i];
    if (i + 1 < h.order) t(i, i + 1) = t(i + 1, i) = h.off[i];
  }
  return t;
}

}  // namespace

TEST_CASE("Householder reduction is an orthogonal similarity") {
  // Sizes straddle the panel width so partial and multiple panels are covered.
  for (std::size_t n : {1u, 2u, 3u, 5u, 31u, 32u, 33u, 34u, 65u, 100u}) {
    const Matrix a = oracle::random_symmetric(n, 100 + n);
    const auto h = kernels::tridiagonalize(a);
    const Matrix zt = kernels::form_q_transposed(h);  // rows are columns of Q
    const Matrix q = transpose(zt);
    const Matrix qtaq = oracle::naive_multiply(zt, oracle::naive_multiply(a, q));
    CHECK(max_abs_difference(qtaq, tridiagonal(h)) <= 1e-12 * double(n + 1));
    const Matrix qtq = oracle::naive_multiply(zt, q);
    CHECK(max_abs_difference(qtq, Matrix::identity(n)) <= 1e-13 * double(n + 1));
  }
}

TEST_CASE("reduction eigenvalues agree with the serial reference") {
  const Matrix a = oracle::random_symmetric(80, 4);
  auto h = kernels::tridiagonalize(a);
  kernels::RotationLog log;
  Vector d = h.diag;
  kernels::tridiagonal_ql(d, h.off, log, 64);
  std::sort(d.begin(), d.end());

  Matrix v = a;
  Vector rd, re;
  reference::tred2(v, rd, re);
  reference::tql2(v, rd, re, 64);
  std::sort(rd.begin(), rd.end());
  for (std::size_t i = 0; i < 80; ++i) CHECK(std::abs(d[i] - rd[i]) <= 1e-12);
}

TEST_CASE("rotation application is blocking- and thread-invariant") {
  const Matrix a = oracle::random_symmetric(70, 9);
  const auto h = kernels::tridiagonalize(a);
  kernels::RotationLog log;
  Vector d = h.diag;
  kernels::tridiagonal_ql(d, h.off, log, 64);
  CHECK(log.c.size() == log.s.size());
  CHECK_FALSE(log.sweeps.empty());

  const Matrix base = kernels::form_q_transposed(h);
  Matrix ref = base;
  kernels::apply_rotations(log, ref, 70);
  for (std::size_t block : {1u, 7u, 32u, 33u, 64u}) {
    for (int threads : {1, 3}) {
      omp_set_num_threads(threads);
      Matrix z = base;
      kernels::apply_rotations(log, z, block);
      CHECK(z == ref);
    }
  }
  omp_set_num_threads(omp_get_num_procs());

  // Rows of the rotated basis are eigenvectors.
  for (std::size_t i = 0; i < 70; ++i) {
    const Vector v(ref.row(i).begin(), ref.row(i).end());
    Vector r = oracle::naive_apply(a, v);
    for (std::size_t j = 0; j < 70; ++j) r[j] -= d[i] * v[j];
    CHECK(oracle::naive_norm(r) <= 1e-12);
  }
}

TEST_CASE("tridiagonalization is thread-invariant") {
  const Matrix a = oracle::random_symmetric(150, 2);
  omp_set_num_threads(1);
  const auto one = kernels::tridiagonalize(a);
  omp_set_num_threads(4);
  const auto four = kernels::tridiagonalize(a);
  const Matrix q4 = kernels::form_q_transposed(four);
  omp_set_num_threads(1);
  const Matrix q1 = kernels::form_q_transposed(one);
  omp_set_num_threads(omp_get_num_procs());
  CHECK(one.diag == four.diag);
  CHECK(one.off == four.off);
  CHECK(q1 == q4);
}

TEST_CASE("matrix-vector product") {
  const Matrix a = oracle::random_symmetric(17, 1);
  const Vector x = oracle::random_unit(17, 2);
  const Vector y = kernels::matvec(a, x);
  const Vector expected = oracle::naive_apply(a, x);
  for (std::size_t i = 0; i < 17; ++i) CHECK(std::abs(y[i] - expected[i]) <= 1e-14);
  CHECK_THROWS(kernels::matvec(a, Vector(3)));
}

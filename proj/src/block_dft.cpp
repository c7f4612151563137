#include "supralap/block_dft.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "supralap/error.hpp"

namespace supralap {
namespace {

/// Angle 2 pi m / T with m reduced mod T first, so equal phases give equal bits.
double phase(std::size_t j, std::size_t k, std::size_t n_layers) {
  return 2.0 * std::numbers::pi * static_cast<double>((j * k) % n_layers) / static_cast<double>(n_layers);
}

MergedSpectrum merge(const ConstantModelBlocks& blocks, std::vector<SpectralResult>& per_block) {
  const std::size_t n = blocks.n_nodes();
  MergedSpectrum s;
  s.n_nodes = n;
  s.n_layers = blocks.n_layers;
  s.pairs.reserve(n * blocks.n_layers);
  for (std::size_t k = 0; k < per_block.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = per_block[k].vector(j);
      s.pairs.push_back({per_block[k].eigenvalues[j], k, Vector(v.begin(), v.end())});
    }
  }
  // Blocks were appended in (k, j) order, so a stable sort on the eigenvalue alone
  // yields the (eigenvalue, k, position) order.
  std::stable_sort(s.pairs.begin(), s.pairs.end(),
                   [](const MergedEigenpair& a, const MergedEigenpair& b) { return a.eigenvalue < b.eigenvalue; });
  return s;
}

void check_layers(const ConstantModelBlocks& blocks) {
  if (blocks.n_layers < 3) throw Error(ErrorCode::invalid_argument, "the periodic model needs T >= 3");
}

}  // namespace

double dft_cosine(std::size_t k, std::size_t n_layers) {
  if (n_layers == 0 || k >= n_layers) throw Error(ErrorCode::index_out_of_range, "DFT index out of range");
  const std::size_t folded = std::min(k, n_layers - k);
  return std::cos(2.0 * std::numbers::pi * static_cast<double>(folded) / static_cast<double>(n_layers));
}

ReducedBlock reduced_matrix(const ConstantModelBlocks& blocks, std::size_t k) {
  check_layers(blocks);
  if (k >= blocks.n_layers)
    throw Error(ErrorCode::index_out_of_range,
                "k = " + std::to_string(k) + " but T = " + std::to_string(blocks.n_layers));
  ReducedBlock r;
  r.k = k;
  r.cosine = dft_cosine(k, blocks.n_layers);
  r.matrix = blocks.l_tilde;
  const double scale = 2.0 * r.cosine;
  for (std::size_t i = 0; i < blocks.n_nodes(); ++i) r.matrix(i, i) += scale * blocks.l_tilde_w[i];
  return r;
}

Vector MergedSpectrum::eigenvalues() const {
  Vector v;
  v.reserve(pairs.size());
  for (const auto& p : pairs) v.push_back(p.eigenvalue);
  return v;
}

MergedSpectrum full_spectrum(const ConstantModelBlocks& blocks, const EighOptions& options) {
  check_layers(blocks);
  const std::size_t t = blocks.n_layers;
  std::vector<SpectralResult> per_block(t);
  std::vector<std::exception_ptr> failures(t);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < t; ++k) {
    try {
      per_block[k] = eigh(reduced_matrix(blocks, k).matrix, options);
      per_block[k].provenance = Provenance::reduced(k);
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return merge(blocks, per_block);
}

MergedSpectrum full_spectrum_serial(const ConstantModelBlocks& blocks, const EighOptions& options) {
  check_layers(blocks);
  std::vector<SpectralResult> per_block;
  for (std::size_t k = 0; k < blocks.n_layers; ++k) {
    per_block.push_back(eigh(reduced_matrix(blocks, k).matrix, options));
    per_block.back().provenance = Provenance::reduced(k);
  }
  return merge(blocks, per_block);
}

LiftedEigenpair lift_eigenvector(std::span<const double> v, double lambda, std::size_t k, std::size_t n_layers) {
  if (n_layers == 0 || k >= n_layers) throw Error(ErrorCode::index_out_of_range, "DFT index out of range");
  if (v.empty() || norm2(v) == 0.0) throw Error(ErrorCode::bad_length, "cannot lift a zero vector");
  const std::size_t n = v.size();
  LiftedEigenpair out;
  out.eigenvalue = lambda;
  out.k = k;

  Vector re(n * n_layers), im(n * n_layers);
  for (std::size_t j = 0; j < n_layers; ++j) {
    const double a = phase(j, k, n_layers);
    const double c = std::cos(a);
    const double s = std::sin(a);
    for (std::size_t i = 0; i < n; ++i) {
      re[j * n + i] = c * v[i];
      im[j * n + i] = s * v[i];
    }
  }
  normalize(re);
  out.psi_r = std::move(re);
  const bool sine_vanishes = k == 0 || 2 * k == n_layers;
  if (!sine_vanishes) {
    normalize(im);
    out.psi_i = std::move(im);
  }
  return out;
}

LiftedEigenpair lift_eigenvector(const ConstantModelBlocks& blocks, std::span<const double> v, double lambda,
                                 std::size_t k, double tol) {
  if (v.size() != blocks.n_nodes())
    throw Error(ErrorCode::dimension_mismatch, "reduced eigenvector must have length N");
  const Matrix m = reduced_matrix(blocks, k).matrix;
  Vector r = multiply(m, v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lambda * v[i];
  const double scale = std::max(norm2(v), 1.0);
  if (norm2(r) > tol * scale)
    throw Error(ErrorCode::invalid_argument, "(v, lambda) is not an eigenpair of the reduced block k = " +
                                                 std::to_string(k));
  return lift_eigenvector(v, lambda, k, blocks.n_layers);
}

std::vector<ComplexVector> dft_blocks(std::span<const double> psi, std::size_t n_layers) {
  if (n_layers == 0 || psi.empty() || psi.size() % n_layers != 0)
    throw Error(ErrorCode::bad_length, "vector length " + std::to_string(psi.size()) +
                                           " is not a positive multiple of T = " + std::to_string(n_layers));
  const std::size_t n = psi.size() / n_layers;
  std::vector<ComplexVector> out(n_layers, ComplexVector(n));
  for (std::size_t k = 0; k < n_layers; ++k)
    for (std::size_t j = 0; j < n_layers; ++j) {
      const std::complex<double> w = std::polar(1.0, -phase(j, k, n_layers));
      for (std::size_t i = 0; i < n; ++i) out[k][i] += w * psi[j * n + i];
    }
  return out;
}

std::vector<ComplexVector> inverse_dft_blocks(const std::vector<ComplexVector>& spectrum) {
  const std::size_t t = spectrum.size();
  if (t == 0) throw Error(ErrorCode::bad_length, "empty spectrum");
  const std::size_t n = spectrum.front().size();
  for (const auto& b : spectrum)
    if (b.size() != n) throw Error(ErrorCode::bad_length, "blocks must share one length");
  std::vector<ComplexVector> out(t, ComplexVector(n));
  const double inv = 1.0 / static_cast<double>(t);
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t k = 0; k < t; ++k) {
      const std::complex<double> w = std::polar(1.0, phase(j, k, t));
      for (std::size_t i = 0; i < n; ++i) out[j][i] += w * spectrum[k][i];
    }
    for (auto& x : out[j]) x *= inv;
  }
  return out;
}

Matrix eigenvalue_table(const ConstantModelBlocks& blocks, std::size_t m, const EighOptions& options) {
  check_layers(blocks);
  if (m > blocks.n_nodes())
    throw Error(ErrorCode::invalid_argument, "m = " + std::to_string(m) + " exceeds N = " +
                                                 std::to_string(blocks.n_nodes()));
  const std::size_t t = blocks.n_layers;
  Matrix table(m, t);
  std::vector<std::exception_ptr> failures(t);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < t; ++k) {
    try {
      const auto r = eigh(reduced_matrix(blocks, k).matrix, options);
      for (std::size_t j = 0; j < m; ++j) table(j, k) = r.eigenvalues[j];
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return table;
}

}  // namespace supralap

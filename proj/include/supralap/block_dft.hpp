#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "supralap/eigensolver.hpp"
#include "supralap/matrix.hpp"
#include "supralap/supra.hpp"

namespace supralap {

/// M_k = l_tilde + 2 cos(2 pi k / T) l_tilde_w.
struct ReducedBlock {
  std::size_t k = 0;
  double cosine = 1.0;
  Matrix matrix;
};

/// cos(2 pi k / T), computed from the folded index min(k, T - k) so that the
/// blocks k and T - k are built from bit-identical inputs.
double dft_cosine(std::size_t k, std::size_t n_layers);

/// Throws index_out_of_range unless k < T.
ReducedBlock reduced_matrix(const ConstantModelBlocks& blocks, std::size_t k);

struct MergedEigenpair {
  double eigenvalue = 0.0;
  std::size_t k = 0;
  Vector vector;  ///< unit eigenvector of M_k (length N)
};

/// Union of the T reduced spectra, sorted by (eigenvalue, k, position in block).
struct MergedSpectrum {
  std::size_t n_nodes = 0;
  std::size_t n_layers = 0;
  std::vector<MergedEigenpair> pairs;

  Vector eigenvalues() const;
};

/// Solves the T reduced eigenproblems (in parallel over k) and merges them.
MergedSpectrum full_spectrum(const ConstantModelBlocks& blocks, const EighOptions& options = {});

/// Serial loop over k; same output as full_spectrum.
MergedSpectrum full_spectrum_serial(const ConstantModelBlocks& blocks, const EighOptions& options = {});

/// Real and imaginary block-sinusoid lifts of a reduced eigenpair (v, lambda) of M_k.
struct LiftedEigenpair {
  double eigenvalue = 0.0;
  std::size_t k = 0;
  std::optional<Vector> psi_r;  ///< block j = cos(2 pi j k / T) v, normalized
  std::optional<Vector> psi_i;  ///< block j = sin(2 pi j k / T) v, normalized
};

/// Absent components are those whose trigonometric profile vanishes identically
/// (sine for k = 0 and k = T/2). Throws bad_length for a zero vector v,
/// index_out_of_range for k >= T.
LiftedEigenpair lift_eigenvector(std::span<const double> v, double lambda, std::size_t k,
                                 std::size_t n_layers);

/// Variant that also checks the reduced residual ||(M_k - lambda) v|| <= tol
/// (invalid_argument otherwise).
LiftedEigenpair lift_eigenvector(const ConstantModelBlocks& blocks, std::span<const double> v,
                                 double lambda, std::size_t k, double tol = 1e-8);

using ComplexVector = std::vector<std::complex<double>>;

/// psi_hat(k) = sum_j exp(-i 2 pi j k / T) psi_j over 0-based blocks j.
/// Throws bad_length unless psi.size() is a positive multiple of T.
std::vector<ComplexVector> dft_blocks(std::span<const double> psi, std::size_t n_layers);

/// psi_j = (1/T) sum_k psi_hat(k) exp(i 2 pi j k / T).
std::vector<ComplexVector> inverse_dft_blocks(const std::vector<ComplexVector>& spectrum);

/// Entry (j, k): j-th smallest eigenvalue of M_k, for j < m.
/// Throws invalid_argument unless m <= N.
Matrix eigenvalue_table(const ConstantModelBlocks& blocks, std::size_t m,
                        const EighOptions& options = {});

}  // namespace supralap

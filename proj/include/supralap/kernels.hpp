#pragma once

// OpenMP kernels behind the production eigensolver. Every kernel writes each
// output element from exactly one thread in a fixed operation order, so results are
// bit-identical for any thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "supralap/matrix.hpp"

namespace supralap::kernels {

/// Householder reduction Q^T A Q = T with Q = H_0 H_1 ... H_{n-3},
/// H_k = I - tau_k v_k v_k^T and v_k[0] = 1 acting on indices k+1..n-1.
struct HouseholderReduction {
  std::size_t order = 0;
  Vector diag;                       ///< T(i, i)
  Vector off;                        ///< T(i + 1, i), length n - 1
  Vector tau;                        ///< length max(n - 2, 0)
  Vector reflectors;                 ///< v_k packed back to back
  std::vector<std::size_t> offsets;  ///< start of v_k in `reflectors`
};

/// Consumes `a` (full symmetric storage) as workspace.
HouseholderReduction tridiagonalize(Matrix a);

/// Rows of the result are the columns of Q.
Matrix form_q_transposed(const HouseholderReduction& h);

/// Givens rotations recorded by the implicit QL iteration, in application order.
struct RotationLog {
  struct Sweep {
    std::size_t low;     ///< rotations touch pairs (i, i + 1) for i = high - 1 down to low
    std::size_t high;
    std::size_t offset;  ///< index of the first rotation in c / s
  };
  std::vector<Sweep> sweeps;
  Vector c;
  Vector s;
};

/// Implicit-shift QL on (diag, off). Eigenvalues are left unsorted in diag.
/// Throws no_convergence after max_sweeps iterations on one eigenvalue.
void tridiagonal_ql(Vector& diag, Vector off, RotationLog& log, int max_sweeps);

/// Applies the logged rotations to the rows of zt (rotation i mixes rows i and i+1),
/// processing column blocks of zt independently.
void apply_rotations(const RotationLog& log, Matrix& zt, std::size_t block_cols = 32);

/// y = M x, one row per thread iteration.
Vector matvec(const Matrix& m, std::span<const double> x);

}  // namespace supralap::kernels

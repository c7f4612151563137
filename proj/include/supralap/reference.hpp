#pragma once

// Serial reference implementations. They favour the plainest formulation of each
// algorithm and exist to cross-check the parallel paths and to serve as the
// baseline in bench/.

#include "supralap/matrix.hpp"
#include "supralap/supra.hpp"

namespace supralap::reference {

/// Householder tridiagonalization with explicit accumulation (tred2 layout:
/// v becomes Q, e[0] = 0, e[i] = T(i, i - 1)).
void tred2(Matrix& v, Vector& d, Vector& e);

/// Implicit QL on the output of tred2; columns of v become eigenvectors.
void tql2(Matrix& v, Vector& d, Vector& e, int max_sweeps);

/// Eigenvalues (unsorted) and eigenvectors stored one per row.
void eigh_serial(const Matrix& m, int max_sweeps, Vector& values, Matrix& vectors_by_row);

SupraMatrix assemble_supra_adjacency(const TemporalNetwork& net);
SupraMatrix supra_laplacian(const TemporalNetwork& net);

}  // namespace supralap::reference

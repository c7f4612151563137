#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "supralap/matrix.hpp"

namespace supralap {

using Edge = std::pair<std::size_t, std::size_t>;

/// One time layer: a binary, symmetric, loop-free and connected graph on N >= 2 nodes.
/// Construction validates every invariant, so a LayerGraph in hand is always usable
/// for Laplacian construction.
class LayerGraph {
 public:
  /// Throws invalid_argument (non-binary, asymmetric, self-loop, N < 2) or disconnected.
  explicit LayerGraph(Matrix adjacency);

  /// Edges are unordered node pairs; duplicates are rejected.
  static LayerGraph from_edges(std::size_t n_nodes, std::span<const Edge> edges);

  std::size_t n_nodes() const noexcept { return adjacency_.rows(); }
  const Matrix& adjacency() const noexcept { return adjacency_; }
  bool has_edge(std::size_t i, std::size_t j) const { return adjacency_(i, j) != 0.0; }

  /// Edges (i, j) with i < j in row-major order.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  friend bool operator==(const LayerGraph&, const LayerGraph&) = default;

 private:
  Matrix adjacency_;
};

/// Row sums of the adjacency matrix.
struct DegreeVector {
  Vector degrees;

  std::size_t size() const noexcept { return degrees.size(); }
  double operator[](std::size_t i) const { return degrees[i]; }
};

DegreeVector degree_vector(const LayerGraph& g);

/// BFS from node 0 over a raw adjacency matrix. Throws invalid_argument when the
/// matrix is not symmetric with a zero diagonal.
bool is_connected(const Matrix& adjacency);
inline bool is_connected(const LayerGraph& g) { return is_connected(g.adjacency()); }

/// I - D^{-1/2} A D^{-1/2}, exactly symmetric.
Matrix normalized_laplacian(const LayerGraph& g);

/// D^{1/2} 1 scaled to unit norm: the null vector of normalized_laplacian(g).
Vector zero_mode(const LayerGraph& g);

/// Flips v so its largest-magnitude entry is positive (first index wins ties).
void fix_sign(std::span<double> v);

}  // namespace supralap

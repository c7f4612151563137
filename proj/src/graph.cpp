#include "supralap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "supralap/error.hpp"

namespace supralap {
namespace {

void check_adjacency_shape(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::invalid_argument, "adjacency matrix is not square");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (a(i, i) != 0.0)
      throw Error(ErrorCode::invalid_argument, "self-loop at node " + std::to_string(i));
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != a(j, i))
        throw Error(ErrorCode::invalid_argument,
                    "adjacency not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  }
}

}  // namespace

LayerGraph::LayerGraph(Matrix adjacency) : adjacency_(std::move(adjacency)) {
  check_adjacency_shape(adjacency_);
  if (adjacency_.rows() < 2)
    throw Error(ErrorCode::invalid_argument, "a layer needs at least 2 nodes");
  for (double x : adjacency_.values())
    if (x != 0.0 && x != 1.0) throw Error(ErrorCode::invalid_argument, "adjacency entries must be 0 or 1");
  if (!is_connected(adjacency_)) throw Error(ErrorCode::disconnected, "layer graph is not connected");
}

LayerGraph LayerGraph::from_edges(std::size_t n_nodes, std::span<const Edge> edges) {
  Matrix a(n_nodes, n_nodes);
  for (auto [i, j] : edges) {
    if (i >= n_nodes || j >= n_nodes)
      throw Error(ErrorCode::invalid_argument, "edge endpoint out of range");
    if (i == j) throw Error(ErrorCode::invalid_argument, "self-loop at node " + std::to_string(i));
    if (a(i, j) != 0.0)
      throw Error(ErrorCode::invalid_argument,
                  "duplicate edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return LayerGraph(std::move(a));
}

std::vector<Edge> LayerGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < n_nodes(); ++i)
    for (std::size_t j = i + 1; j < n_nodes(); ++j)
      if (adjacency_(i, j) != 0.0) out.emplace_back(i, j);
  return out;
}

std::size_t LayerGraph::edge_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n_nodes(); ++i)
    for (std::size_t j = i + 1; j < n_nodes(); ++j) count += adjacency_(i, j) != 0.0;
  return count;
}

DegreeVector degree_vector(const LayerGraph& g) {
  DegreeVector d{Vector(g.n_nodes(), 0.0)};
  for (std::size_t i = 0; i < g.n_nodes(); ++i)
    for (double x : g.adjacency().row(i)) d.degrees[i] += x;
  return d;
}

bool is_connected(const Matrix& adjacency) {
  check_adjacency_shape(adjacency);
  const std::size_t n = adjacency.rows();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    const auto row = adjacency.row(u);
    for (std::size_t v = 0; v < n; ++v) {
      if (row[v] != 0.0 && !seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

Matrix normalized_laplacian(const LayerGraph& g) {
  const auto d = degree_vector(g);
  const std::size_t n = g.n_nodes();
  Vector inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] <= 0.0) throw Error(ErrorCode::zero_degree, "node " + std::to_string(i) + " has degree 0");
    inv_sqrt[i] = 1.0 / std::sqrt(d[i]);
  }
  Matrix l(n, n);
  const Matrix& a = g.adjacency();
  for (std::size_t i = 0; i < n; ++i) {
    l(i, i) = 1.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && a(i, j) != 0.0) l(i, j) = -a(i, j) * (inv_sqrt[i] * inv_sqrt[j]);
  }
  return l;
}

Vector zero_mode(const LayerGraph& g) {
  const auto d = degree_vector(g);
  Vector v(g.n_nodes());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (d[i] <= 0.0) throw Error(ErrorCode::zero_degree, "node " + std::to_string(i) + " has degree 0");
    v[i] = std::sqrt(d[i]);
  }
  normalize(v);
  return v;
}

void fix_sign(std::span<double> v) {
  double largest = 0.0;
  for (double x : v) largest = std::max(largest, std::abs(x));
  if (largest == 0.0) return;
  // Entries within a relative 1e-12 of the maximum count as tied; the first one wins.
  for (double x : v) {
    if (std::abs(x) >= largest * (1.0 - 1e-12)) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

}  // namespace supralap

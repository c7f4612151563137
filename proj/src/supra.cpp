#include "supralap/supra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supralap/error.hpp"

namespace supralap {

const char* to_string(Coupling c) { return c == Coupling::periodic ? "periodic" : "path"; }

Coupling parse_coupling(std::string_view s) {
  if (s == "path") return Coupling::path;
  if (s == "periodic") return Coupling::periodic;
  throw Error(ErrorCode::invalid_argument, "unknown coupling '" + std::string(s) + "'");
}

InterLayerWeights InterLayerWeights::uniform(double omega, Coupling coupling) {
  if (!(omega >= 0.0) || !std::isfinite(omega))
    throw Error(ErrorCode::invalid_argument, "inter-layer weight must be finite and non-negative");
  InterLayerWeights w;
  w.coupling_ = coupling;
  w.omega_ = omega;
  return w;
}

InterLayerWeights InterLayerWeights::per_node(Coupling coupling, std::size_t n_nodes,
                                              std::size_t n_layers, std::vector<double> table) {
  InterLayerWeights w;
  w.coupling_ = coupling;
  const std::size_t pairs = w.pair_count(n_layers);
  if (table.size() != pairs * n_nodes)
    throw Error(ErrorCode::dimension_mismatch, "per-node weight table needs " +
                                                   std::to_string(pairs * n_nodes) + " entries, got " +
                                                   std::to_string(table.size()));
  for (double x : table)
    if (!(x >= 0.0) || !std::isfinite(x))
      throw Error(ErrorCode::invalid_argument, "inter-layer weight must be finite and non-negative");
  w.table_ = std::move(table);
  return w;
}

double InterLayerWeights::weight(std::size_t node, std::size_t t, std::size_t p, std::size_t n_nodes,
                                 std::size_t n_layers) const {
  if (t >= n_layers || p >= n_layers || node >= n_nodes)
    throw Error(ErrorCode::index_out_of_range, "weight lookup out of range");
  const std::size_t lo = std::min(t, p);
  const std::size_t hi = std::max(t, p);
  if (hi == lo + 1) return pair_weight(lo, node, n_nodes);
  if (coupling_ == Coupling::periodic && lo == 0 && hi == n_layers - 1)
    return pair_weight(n_layers - 1, node, n_nodes);
  return 0.0;
}

TemporalNetwork::TemporalNetwork(std::vector<LayerGraph> layers, InterLayerWeights weights)
    : layers_(std::move(layers)), weights_(std::move(weights)) {
  const std::size_t min_layers = weights_.coupling() == Coupling::periodic ? 3 : 2;
  if (layers_.size() < min_layers)
    throw Error(ErrorCode::invalid_argument, std::string(to_string(weights_.coupling())) +
                                                 " coupling needs at least " + std::to_string(min_layers) +
                                                 " layers");
  for (const auto& g : layers_)
    if (g.n_nodes() != layers_.front().n_nodes())
      throw Error(ErrorCode::dimension_mismatch, "all layers must share the same node count");
  if (!weights_.is_uniform() &&
      weights_.table().size() != weights_.pair_count(layers_.size()) * n_nodes())
    throw Error(ErrorCode::dimension_mismatch, "per-node weight table does not match the network");
}

Matrix SupraMatrix::block(std::size_t s, std::size_t t) const {
  if (s >= n_layers || t >= n_layers) throw Error(ErrorCode::index_out_of_range, "block index out of range");
  Matrix b(n_per_layer, n_per_layer);
  for (std::size_t i = 0; i < n_per_layer; ++i)
    for (std::size_t j = 0; j < n_per_layer; ++j) b(i, j) = entries(s * n_per_layer + i, t * n_per_layer + j);
  return b;
}

SupraMatrix assemble_supra_adjacency(const TemporalNetwork& net) {
  const std::size_t n = net.n_nodes();
  const std::size_t layers = net.n_layers();
  const auto& w = net.weights();
  SupraMatrix s{n, layers, SupraKind::adjacency, Matrix(n * layers, n * layers)};

#pragma omp parallel for schedule(static)
  for (std::size_t t = 0; t < layers; ++t) {
    const Matrix& a = net.layer(t).adjacency();
    for (std::size_t i = 0; i < n; ++i) {
      auto row = s.entries.row(t * n + i);
      const auto arow = a.row(i);
      for (std::size_t j = 0; j < n; ++j) row[t * n + j] = arow[j];
    }
  }
  // Each pair owns the entries of its two off-diagonal blocks; blocks never overlap.
  const std::size_t pairs = w.pair_count(layers);
#pragma omp parallel for schedule(static)
  for (std::size_t p = 0; p < pairs; ++p) {
    const std::size_t q = (p + 1) % layers;
    for (std::size_t i = 0; i < n; ++i) {
      const double omega = w.pair_weight(p, i, n);
      s.entries(p * n + i, q * n + i) = omega;
      s.entries(q * n + i, p * n + i) = omega;
    }
  }
  return s;
}

Vector supra_degree(const TemporalNetwork& net) {
  const std::size_t n = net.n_nodes();
  const std::size_t layers = net.n_layers();
  const auto& w = net.weights();
  const bool periodic = net.coupling() == Coupling::periodic;
  Vector d(n * layers, 0.0);

#pragma omp parallel for schedule(static)
  for (std::size_t t = 0; t < layers; ++t) {
    const Matrix& a = net.layer(t).adjacency();
    const bool has_prev = periodic || t > 0;
    const bool has_next = periodic || t + 1 < layers;
    const std::size_t prev_pair = (t + layers - 1) % layers;
    for (std::size_t i = 0; i < n; ++i) {
      double within = 0.0;
      for (double x : a.row(i)) within += x;
      const double before = has_prev ? w.pair_weight(prev_pair, i, n) : 0.0;
      const double after = has_next ? w.pair_weight(t, i, n) : 0.0;
      d[t * n + i] = within + (before + after);
    }
  }
  return d;
}

SupraMatrix supra_laplacian(const TemporalNetwork& net) {
  SupraMatrix s = assemble_supra_adjacency(net);
  const Vector degree = supra_degree(net);
  const std::size_t order = s.order();
  Vector inv_sqrt(order);
  for (std::size_t i = 0; i < order; ++i) {
    if (!(degree[i] > 0.0))
      throw Error(ErrorCode::zero_degree, "multilayer degree of node " + std::to_string(i % net.n_nodes()) +
                                              " in layer " + std::to_string(i / net.n_nodes() + 1) + " is 0");
    inv_sqrt[i] = 1.0 / std::sqrt(degree[i]);
  }

#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < order; ++i) {
    auto row = s.entries.row(i);
    for (std::size_t j = 0; j < order; ++j) {
      if (row[j] != 0.0) row[j] = -row[j] * (inv_sqrt[i] * inv_sqrt[j]);
    }
    row[i] = 1.0;
  }
  s.kind = SupraKind::laplacian;
  return s;
}

ConstantModelBlocks constant_model_blocks(const LayerGraph& layer, double omega, std::size_t n_layers) {
  if (!(omega >= 0.0) || !std::isfinite(omega))
    throw Error(ErrorCode::invalid_argument, "inter-layer weight must be finite and non-negative");
  if (n_layers < 3) throw Error(ErrorCode::invalid_argument, "the periodic model needs T >= 3");
  const std::size_t n = layer.n_nodes();
  const auto d = degree_vector(layer);
  ConstantModelBlocks b;
  b.omega = omega;
  b.n_layers = n_layers;
  b.shifted_degrees.resize(n);
  b.l_tilde_w.resize(n);
  Vector inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) {
    b.shifted_degrees[i] = d[i] + (omega + omega);
    inv_sqrt[i] = 1.0 / std::sqrt(b.shifted_degrees[i]);
    // Same expression as the supra-Laplacian entry, so both constructions agree bitwise.
    b.l_tilde_w[i] = -omega * (inv_sqrt[i] * inv_sqrt[i]);
  }
  b.l_tilde = Matrix(n, n);
  const Matrix& a = layer.adjacency();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) != 0.0) b.l_tilde(i, j) = -a(i, j) * (inv_sqrt[i] * inv_sqrt[j]);
    b.l_tilde(i, i) = 1.0;
  }
  return b;
}

SupraMatrix expand_constant_model(const ConstantModelBlocks& blocks, std::size_t n_layers) {
  if (n_layers != blocks.n_layers || n_layers < 3)
    throw Error(ErrorCode::bad_dimension, "expansion needs T = " + std::to_string(blocks.n_layers) +
                                              " (>= 3), got " + std::to_string(n_layers));
  const std::size_t n = blocks.n_nodes();
  SupraMatrix s{n, n_layers, SupraKind::laplacian, Matrix(n * n_layers, n * n_layers)};

#pragma omp parallel for schedule(static)
  for (std::size_t t = 0; t < n_layers; ++t) {
    const std::size_t prev = (t + n_layers - 1) % n_layers;
    const std::size_t next = (t + 1) % n_layers;
    for (std::size_t i = 0; i < n; ++i) {
      auto row = s.entries.row(t * n + i);
      const auto lrow = blocks.l_tilde.row(i);
      for (std::size_t j = 0; j < n; ++j) row[t * n + j] = lrow[j];
      row[prev * n + i] = blocks.l_tilde_w[i];
      row[next * n + i] = blocks.l_tilde_w[i];
    }
  }
  return s;
}

TemporalNetwork constant_network(const LayerGraph& layer, double omega, std::size_t n_layers) {
  return TemporalNetwork(std::vector<LayerGraph>(n_layers, layer),
                         InterLayerWeights::uniform(omega, Coupling::periodic));
}

std::optional<ConstantModelBlocks> as_constant_model(const TemporalNetwork& net) {
  if (net.coupling() != Coupling::periodic || !net.weights().is_uniform()) return std::nullopt;
  for (const auto& g : net.layers())
    if (!(g == net.layers().front())) return std::nullopt;
  return constant_model_blocks(net.layers().front(), net.weights().uniform_omega(), net.n_layers());
}

}  // namespace supralap

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "supralap/graph.hpp"
#include "supralap/matrix.hpp"

namespace supralap {

enum class Coupling { path, periodic };

const char* to_string(Coupling c);
Coupling parse_coupling(std::string_view s);

/// Ordinal inter-layer weights. Pair p joins layer p and layer p+1; under periodic
/// coupling one extra pair (p = T-1) joins the last layer back to the first.
class InterLayerWeights {
 public:
  static InterLayerWeights uniform(double omega, Coupling coupling);
  /// table[p * n_nodes + i] is the weight of node i on pair p; it must hold
  /// pair_count(n_layers) * n_nodes non-negative entries.
  static InterLayerWeights per_node(Coupling coupling, std::size_t n_nodes, std::size_t n_layers,
                                    std::vector<double> table);

  Coupling coupling() const noexcept { return coupling_; }
  bool is_uniform() const noexcept { return table_.empty(); }
  double uniform_omega() const noexcept { return omega_; }
  const std::vector<double>& table() const noexcept { return table_; }

  std::size_t pair_count(std::size_t n_layers) const noexcept {
    return coupling_ == Coupling::periodic ? n_layers : n_layers - 1;
  }

  /// Weight of node i on pair p. No bounds checks beyond the table's.
  double pair_weight(std::size_t pair, std::size_t node, std::size_t n_nodes) const {
    return table_.empty() ? omega_ : table_[pair * n_nodes + node];
  }

  /// omega_i^{t,p}: zero unless t and p are ordinal neighbours.
  double weight(std::size_t node, std::size_t t, std::size_t p, std::size_t n_nodes,
                std::size_t n_layers) const;

  friend bool operator==(const InterLayerWeights&, const InterLayerWeights&) = default;

 private:
  Coupling coupling_ = Coupling::path;
  double omega_ = 0.0;
  std::vector<double> table_;
};

class TemporalNetwork {
 public:
  /// Requires T >= 2 (path) or T >= 3 (periodic) layers sharing one node count.
  TemporalNetwork(std::vector<LayerGraph> layers, InterLayerWeights weights);

  std::size_t n_nodes() const noexcept { return layers_.front().n_nodes(); }
  std::size_t n_layers() const noexcept { return layers_.size(); }
  std::size_t order() const noexcept { return n_nodes() * n_layers(); }
  const std::vector<LayerGraph>& layers() const noexcept { return layers_; }
  const LayerGraph& layer(std::size_t t) const { return layers_.at(t); }
  const InterLayerWeights& weights() const noexcept { return weights_; }
  Coupling coupling() const noexcept { return weights_.coupling(); }

  friend bool operator==(const TemporalNetwork&, const TemporalNetwork&) = default;

 private:
  std::vector<LayerGraph> layers_;
  InterLayerWeights weights_;
};

enum class SupraKind { adjacency, laplacian };

struct SupraMatrix {
  std::size_t n_per_layer = 0;
  std::size_t n_layers = 0;
  SupraKind kind = SupraKind::adjacency;
  Matrix entries;

  std::size_t order() const noexcept { return entries.rows(); }
  /// Copy of the N x N block at block row s, block column t.
  Matrix block(std::size_t s, std::size_t t) const;
};

/// Diagonal and off-diagonal blocks of the periodic constant block Jacobi model.
struct ConstantModelBlocks {
  Matrix l_tilde;          ///< I - (D + 2w I)^{-1/2} A (D + 2w I)^{-1/2}
  Vector l_tilde_w;        ///< diagonal of -w (D + 2w I)^{-1}
  Vector shifted_degrees;  ///< d_i + 2w
  double omega = 0.0;
  std::size_t n_layers = 0;

  std::size_t n_nodes() const noexcept { return l_tilde.rows(); }
  Matrix l_tilde_w_matrix() const { return Matrix::diagonal(l_tilde_w); }
};

SupraMatrix assemble_supra_adjacency(const TemporalNetwork& net);

/// Diagonal of the multilayer degree matrix, layer-major (index t * N + i).
Vector supra_degree(const TemporalNetwork& net);

/// D^{-1/2} (D - A) D^{-1/2} of the supra-adjacency. Throws zero_degree.
SupraMatrix supra_laplacian(const TemporalNetwork& net);

/// Requires omega >= 0 and T >= 3.
ConstantModelBlocks constant_model_blocks(const LayerGraph& layer, double omega, std::size_t n_layers);

/// Periodic block tridiagonal matrix with l_tilde on the diagonal and l_tilde_w on the
/// neighbouring and corner blocks. Throws bad_dimension when T != blocks.n_layers.
SupraMatrix expand_constant_model(const ConstantModelBlocks& blocks, std::size_t n_layers);

/// T copies of `layer` joined by uniform periodic coupling.
TemporalNetwork constant_network(const LayerGraph& layer, double omega, std::size_t n_layers);

/// Blocks of `net` when it is a constant periodic model (identical layers, uniform
/// omega, periodic coupling); nullopt otherwise.
std::optional<ConstantModelBlocks> as_constant_model(const TemporalNetwork& net);

}  // namespace supralap

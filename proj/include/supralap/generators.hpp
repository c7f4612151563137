#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "supralap/graph.hpp"
#include "supralap/supra.hpp"

namespace supralap {

inline constexpr int kMaxGenerationAttempts = 1000;

struct ErConfig {
  std::size_t n_nodes = 100;
  double edge_prob = 0.3;
  std::size_t n_layers = 30;
  std::uint64_t seed = 0;
};

/// G(N, p) conditioned on connectivity by rejection. The stream is keyed by
/// (seed, layer_index). Throws invalid_argument, generation_failed.
LayerGraph er_layer(const ErConfig& cfg, std::size_t layer_index);

/// T independent er_layer draws.
std::vector<LayerGraph> er_layers(const ErConfig& cfg);
TemporalNetwork er_temporal(const ErConfig& cfg, const InterLayerWeights& weights);

/// Layer 0 replicated T times under uniform periodic coupling.
TemporalNetwork constant_er_temporal(const ErConfig& cfg, double omega);

/// Nested-group random graph. Nodes split into `branching` groups recursively so
/// that the innermost groups hold N / branching^(levels-1) nodes. A pair whose
/// smallest common group sits `l` levels above the innermost one is linked with
/// probability p_l = p_0 (rho / branching)^l, with p_0 calibrated so the expected
/// mean degree is avg_degree. With rho = 1 each level contributes roughly the same
/// number of links per node.
struct SalesPardoConfig {
  std::size_t n_nodes = 640;
  std::size_t levels = 3;
  std::size_t branching = 4;
  double avg_degree = 16.0;
  double rho = 1.0;
  std::size_t n_layers = 33;
  std::uint64_t seed = 0;
};

/// Number of nodes in the innermost groups.
std::size_t innermost_group_size(const SalesPardoConfig& cfg);

/// Level of the pair (i, j): 0 when they share an innermost group.
std::size_t pair_level(const SalesPardoConfig& cfg, std::size_t i, std::size_t j);

/// p_0 .. p_{levels-1}. Throws invalid_argument, infeasible_calibration.
std::vector<double> sales_pardo_probabilities(const SalesPardoConfig& cfg);

LayerGraph sales_pardo_layer(const SalesPardoConfig& cfg, std::size_t layer_index);
std::vector<LayerGraph> sales_pardo_layers(const SalesPardoConfig& cfg);

}  // namespace supralap

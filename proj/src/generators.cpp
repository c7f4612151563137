#include "supralap/generators.hpp"

#include <cmath>
#include <string>

#include "supralap/error.hpp"
#include "supralap/rng.hpp"

namespace supralap {
namespace {

/// Draws independent edges with probability prob(i, j) until the graph is connected.
template <typename Prob>
LayerGraph draw_connected(std::size_t n, std::uint64_t seed, std::size_t stream, Prob prob) {
  KeyedRng rng(seed, stream);
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng.next_double() < prob(i, j)) {
          a(i, j) = 1.0;
          a(j, i) = 1.0;
        }
    if (is_connected(a)) return LayerGraph(std::move(a));
  }
  throw Error(ErrorCode::generation_failed, "no connected layer after " + std::to_string(kMaxGenerationAttempts) +
                                                " attempts (layer " + std::to_string(stream) + ")");
}

void check_er(const ErConfig& cfg) {
  if (cfg.n_nodes < 2) throw Error(ErrorCode::invalid_argument, "need at least 2 nodes");
  if (!(cfg.edge_prob > 0.0 && cfg.edge_prob < 1.0))
    throw Error(ErrorCode::invalid_argument, "edge probability must lie in (0, 1)");
  if (cfg.n_layers < 1) throw Error(ErrorCode::invalid_argument, "need at least 1 layer");
}

std::size_t int_pow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

void check_sales_pardo(const SalesPardoConfig& cfg) {
  if (cfg.levels < 1) throw Error(ErrorCode::invalid_argument, "levels must be at least 1");
  if (cfg.branching < 2) throw Error(ErrorCode::invalid_argument, "branching must be at least 2");
  if (!(cfg.rho > 0.0) || !std::isfinite(cfg.rho)) throw Error(ErrorCode::invalid_argument, "rho must be positive");
  if (!(cfg.avg_degree > 0.0) || !std::isfinite(cfg.avg_degree))
    throw Error(ErrorCode::invalid_argument, "avg_degree must be positive");
  if (cfg.n_layers < 1) throw Error(ErrorCode::invalid_argument, "need at least 1 layer");
  const std::size_t outer = int_pow(cfg.branching, cfg.levels - 1);
  if (cfg.n_nodes < 2 || cfg.n_nodes % outer != 0)
    throw Error(ErrorCode::invalid_argument, "N must be a positive multiple of branching^(levels-1) = " +
                                                 std::to_string(outer));
}

}  // namespace

LayerGraph er_layer(const ErConfig& cfg, std::size_t layer_index) {
  check_er(cfg);
  const double p = cfg.edge_prob;
  return draw_connected(cfg.n_nodes, cfg.seed, layer_index, [p](std::size_t, std::size_t) { return p; });
}

std::vector<LayerGraph> er_layers(const ErConfig& cfg) {
  check_er(cfg);
  std::vector<LayerGraph> layers;
  layers.reserve(cfg.n_layers);
  for (std::size_t t = 0; t < cfg.n_layers; ++t) layers.push_back(er_layer(cfg, t));
  return layers;
}

TemporalNetwork er_temporal(const ErConfig& cfg, const InterLayerWeights& weights) {
  return TemporalNetwork(er_layers(cfg), weights);
}

TemporalNetwork constant_er_temporal(const ErConfig& cfg, double omega) {
  check_er(cfg);
  return constant_network(er_layer(cfg, 0), omega, cfg.n_layers);
}

std::size_t innermost_group_size(const SalesPardoConfig& cfg) {
  check_sales_pardo(cfg);
  return cfg.n_nodes / int_pow(cfg.branching, cfg.levels - 1);
}

std::size_t pair_level(const SalesPardoConfig& cfg, std::size_t i, std::size_t j) {
  if (i >= cfg.n_nodes || j >= cfg.n_nodes) throw Error(ErrorCode::index_out_of_range, "node out of range");
  std::size_t size = innermost_group_size(cfg);
  for (std::size_t l = 0; l < cfg.levels; ++l, size *= cfg.branching)
    if (i / size == j / size) return l;
  return cfg.levels - 1;
}

std::vector<double> sales_pardo_probabilities(const SalesPardoConfig& cfg) {
  const std::size_t s0 = innermost_group_size(cfg);
  const double ratio = cfg.rho / static_cast<double>(cfg.branching);
  // Expected degree = p_0 * sum_l partners_l * ratio^l.
  double weighted = 0.0;
  std::size_t inner = 1;
  std::size_t size = s0;
  for (std::size_t l = 0; l < cfg.levels; ++l) {
    const double partners = static_cast<double>(size - inner);
    weighted += partners * std::pow(ratio, static_cast<double>(l));
    inner = size;
    size *= cfg.branching;
  }
  const double p0 = cfg.avg_degree / weighted;
  std::vector<double> p(cfg.levels);
  for (std::size_t l = 0; l < cfg.levels; ++l) {
    p[l] = p0 * std::pow(ratio, static_cast<double>(l));
    if (!(p[l] > 0.0 && p[l] < 1.0))
      throw Error(ErrorCode::infeasible_calibration,
                  "level " + std::to_string(l) + " probability " + std::to_string(p[l]) +
                      " is outside (0, 1); lower avg_degree or raise N");
  }
  return p;
}

LayerGraph sales_pardo_layer(const SalesPardoConfig& cfg, std::size_t layer_index) {
  const auto p = sales_pardo_probabilities(cfg);
  return draw_connected(cfg.n_nodes, cfg.seed, layer_index,
                        [&](std::size_t i, std::size_t j) { return p[pair_level(cfg, i, j)]; });
}

std::vector<LayerGraph> sales_pardo_layers(const SalesPardoConfig& cfg) {
  check_sales_pardo(cfg);
  std::vector<LayerGraph> layers;
  layers.reserve(cfg.n_layers);
  for (std::size_t t = 0; t < cfg.n_layers; ++t) layers.push_back(sales_pardo_layer(cfg, t));
  return layers;
}

}  // namespace supralap

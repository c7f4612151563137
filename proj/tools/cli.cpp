#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "supralap/block_dft.hpp"
#include "supralap/eigensolver.hpp"
#include "supralap/error.hpp"
#include "supralap/generators.hpp"
#include "supralap/io.hpp"
#include "supralap/subspace_approx.hpp"
#include "supralap/supra.hpp"

namespace supralap::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kDefaultDenseCap = 4000;

/// A failure with a chosen exit code and a message for stderr.
struct Failure {
  int code;
  std::string message;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::generation_failed:
    case ErrorCode::infeasible_calibration:
      return kGeneration;
    case ErrorCode::no_convergence:
    case ErrorCode::zero_degree:
      return kNumeric;
    case ErrorCode::io_error:
    case ErrorCode::invalid_argument:
      return kUsage;
    default:
      return kInputMismatch;
  }
}

std::size_t dense_cap() {
  const char* env = std::getenv("SUPRALAP_MAX_DENSE_ORDER");
  if (env == nullptr || *env == '\0') return kDefaultDenseCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw Failure{kUsage, "SUPRALAP_MAX_DENSE_ORDER must be a positive integer"};
  return static_cast<std::size_t>(v);
}

void require_dense_size(const TemporalNetwork& net) {
  const std::size_t cap = dense_cap();
  if (net.order() > cap)
    throw Failure{kInputMismatch, "dense method refused: N*T = " + std::to_string(net.order()) +
                                      " exceeds the cap of " + std::to_string(cap) +
                                      " (raise SUPRALAP_MAX_DENSE_ORDER or use --method block-dft)"};
}

ConstantModelBlocks require_constant_model(const TemporalNetwork& net, const char* what) {
  auto blocks = as_constant_model(net);
  if (!blocks)
    throw Failure{kInputMismatch, std::string(what) +
                                      " needs a constant periodic model: identical layers, uniform omega, periodic "
                                      "coupling"};
  return *blocks;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sibling(const std::string& path, const std::string& suffix) { return path + suffix; }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json config_json(const ApproxConfig& c) {
  json j;
  j["n_nodes"] = c.n_nodes;
  j["n_layers"] = c.n_layers;
  j["edge_prob"] = optional_json(c.edge_prob);
  j["omega"] = optional_json(c.omega);
  j["coupling"] = to_string(c.coupling);
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  return j;
}

json thresholds_json(const LambdaStarThresholds& t) { return json{{"ratio", t.ratio}, {"abs_floor", t.abs_floor}}; }

// ---------------------------------------------------------------------------- gen

struct GenArgs {
  std::string model;
  std::optional<std::size_t> n;
  double p = 0.3;
  std::optional<std::size_t> t;
  double omega = 0.0;
  std::string coupling = "path";
  std::uint64_t seed = 0;
  std::string layers = "independent";
  std::size_t levels = 3;
  std::size_t branching = 4;
  double avg_degree = 16.0;
  double rho = 1.0;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const Coupling coupling = parse_coupling(a.coupling);
  const bool sales_pardo = a.model == "sales-pardo";
  const bool replicated = a.model == "constant-er" || a.layers == "replicated";
  if (a.model == "constant-er" && coupling != Coupling::periodic)
    throw Failure{kUsage, "constant-er builds the periodic constant model; pass --coupling periodic"};

  const std::size_t n = a.n.value_or(sales_pardo ? 640 : 100);
  const std::size_t t = a.t.value_or(sales_pardo ? 33 : 30);
  const auto weights = InterLayerWeights::uniform(a.omega, coupling);

  json echo;
  echo["command"] = "gen";
  echo["model"] = a.model;
  echo["layers"] = replicated ? "replicated" : "independent";
  echo["n_nodes"] = n;
  echo["n_layers"] = t;

  std::vector<LayerGraph> graphs;
  if (sales_pardo) {
    SalesPardoConfig cfg{n, a.levels, a.branching, a.avg_degree, a.rho, t, a.seed};
    echo["levels"] = a.levels;
    echo["branching"] = a.branching;
    echo["avg_degree"] = a.avg_degree;
    echo["rho"] = a.rho;
    echo["level_probabilities"] = sales_pardo_probabilities(cfg);
    if (replicated)
      graphs.assign(t, sales_pardo_layer(cfg, 0));
    else
      graphs = sales_pardo_layers(cfg);
  } else {
    ErConfig cfg{n, a.p, t, a.seed};
    echo["edge_prob"] = a.p;
    if (replicated)
      graphs.assign(t, er_layer(cfg, 0));
    else
      graphs = er_layers(cfg);
  }
  const TemporalNetwork net(std::move(graphs), weights);
  io::write_file_atomic(a.out, io::network_to_string(net));

  std::size_t edges = 0;
  for (const auto& g : net.layers()) edges += g.edge_count();
  echo["omega"] = a.omega;
  echo["coupling"] = to_string(coupling);
  echo["seed"] = a.seed;
  echo["edges"] = edges;
  echo["out"] = a.out;
  out << echo.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------- spectrum

struct SpectrumArgs {
  std::string method = "dense";
  std::optional<std::size_t> top;
  std::string in;
  std::string out;
  std::optional<std::string> vectors;
  bool timing = false;
};

/// Real eigenvectors of the full matrix built from block eigenvectors: the cosine lift
/// for k <= T/2 and the sine lift of the mirrored block for k > T/2.
SpectralResult lifted_vectors(const MergedSpectrum& s, std::size_t top) {
  const std::size_t m = std::min(top, s.pairs.size());
  const std::size_t layers = s.n_layers;
  SpectralResult r;
  r.eigenvectors = Matrix(m, s.n_nodes * layers);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& p = s.pairs[i];
    r.eigenvalues.push_back(p.eigenvalue);
    const bool mirrored = 2 * p.k > layers;
    const auto lift = lift_eigenvector(p.vector, p.eigenvalue, mirrored ? layers - p.k : p.k, layers);
    const Vector& v = mirrored ? *lift.psi_i : *lift.psi_r;
    auto row = r.eigenvectors.row(i);
    std::copy(v.begin(), v.end(), row.begin());
    fix_sign(row);
  }
  return r;
}

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
  const TemporalNetwork net = io::read_network_file(a.in);
  const std::size_t top = a.top.value_or(net.order());
  json timing;
  timing["method"] = a.method;
  timing["order"] = net.order();
  const auto t0 = std::chrono::steady_clock::now();

  if (a.method == "dense") {
    require_dense_size(net);
    const auto lap = supra_laplacian(net);
    const auto assembled = std::chrono::steady_clock::now();
    const SpectralResult r = eigh(lap.entries);
    timing["assembly_seconds"] = std::chrono::duration<double>(assembled - t0).count();
    timing["seconds"] = seconds_since(t0);
    io::write_file_atomic(a.out, io::spectrum_csv(r, top));
    if (a.vectors) io::write_file_atomic(*a.vectors, io::eigenvector_csv(r, top));
  } else {
    const auto blocks = require_constant_model(net, "--method block-dft");
    const MergedSpectrum s = full_spectrum(blocks);
    timing["seconds"] = seconds_since(t0);
    io::write_file_atomic(a.out, io::spectrum_csv(s, top));
    if (a.vectors) io::write_file_atomic(*a.vectors, io::eigenvector_csv(lifted_vectors(s, top), top));
  }
  if (a.timing) {
    io::write_file_atomic(sibling(a.out, ".timing.json"), timing.dump(2) + "\n");
    out << timing.dump() << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------- approx

struct ApproxArgs {
  std::size_t top = 100;
  double ratio = 10.0;
  double floor = 1e-3;
  std::string in;
  std::string out;
  std::optional<std::string> json_path;
  std::optional<double> p;
  std::optional<std::uint64_t> seed;
};

std::string approx_csv(const ApproxReport& r) {
  std::string s = "index,eigenvalue,epsilon\n";
  for (std::size_t i = 0; i < r.errors.size(); ++i)
    s += std::to_string(i + 1) + ',' + io::format_double(r.eigenvalues[i]) + ',' + io::format_double(r.errors[i]) +
         '\n';
  return s;
}

json approx_json(const ApproxReport& r) {
  json j;
  j["command"] = "approx";
  j["config"] = config_json(r.config);
  j["thresholds"] = thresholds_json(r.thresholds);
  j["top"] = r.errors.size();
  j["lambda_star_index"] = r.lambda_star_index ? json(*r.lambda_star_index) : json(nullptr);
  j["eigenvalues"] = r.eigenvalues;
  j["errors"] = r.errors;
  j["coefficients"] = r.coefficients;
  return j;
}

ApproxReport analyze(const TemporalNetwork& net, std::size_t top, LambdaStarThresholds thresholds) {
  const auto lap = supra_laplacian(net);
  const SpectralResult spectrum = eigh(lap.entries);
  return error_profile(spectrum, zero_mode_basis(net), std::min(top, net.order()), thresholds);
}

int cmd_approx(const ApproxArgs& a, std::ostream& out) {
  const TemporalNetwork net = io::read_network_file(a.in);
  require_dense_size(net);
  if (a.top == 0) throw Failure{kUsage, "--top must be at least 1"};
  ApproxReport r = analyze(net, a.top, {a.ratio, a.floor});
  r.config.n_nodes = net.n_nodes();
  r.config.n_layers = net.n_layers();
  r.config.coupling = net.coupling();
  if (net.weights().is_uniform()) r.config.omega = net.weights().uniform_omega();
  r.config.edge_prob = a.p;
  r.config.seed = a.seed;

  io::write_file_atomic(a.out, approx_csv(r));
  const std::string report = approx_json(r).dump(2) + "\n";
  if (a.json_path)
    io::write_file_atomic(*a.json_path, report);
  else
    out << report;
  return kOk;
}

// ---------------------------------------------------------------------------- approx-sweep

struct SweepArgs {
  std::vector<std::string> grid;
  std::size_t seeds = 100;
  std::uint64_t base_seed = 0;
  std::size_t n = 100;
  std::size_t t = 30;
  std::string coupling = "path";
  std::size_t top = 100;
  double ratio = 10.0;
  double floor = 1e-3;
  std::string out;
  std::optional<std::string> summary;
};

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Failure{kUsage, "bad value '" + item + "' in --grid " + key};
    values.push_back(v);
  }
  if (values.empty()) throw Failure{kUsage, "--grid " + key + " has no values"};
  return values;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  std::map<std::string, std::vector<double>> grid;
  for (const auto& token : a.grid) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw Failure{kUsage, "--grid entries look like p=0.1,0.3 or omega=0.01,1"};
    const std::string key = token.substr(0, eq);
    if (key != "p" && key != "omega") throw Failure{kUsage, "unknown --grid key '" + key + "'"};
    grid[key] = parse_list(token.substr(eq + 1), key);
  }
  if (!grid.count("p") || !grid.count("omega")) throw Failure{kUsage, "--grid needs both p=... and omega=..."};
  if (a.seeds == 0) throw Failure{kUsage, "--seeds must be at least 1"};
  const Coupling coupling = parse_coupling(a.coupling);
  {
    const std::size_t cap = dense_cap();
    if (a.n * a.t > cap)
      throw Failure{kInputMismatch, "N*T = " + std::to_string(a.n * a.t) + " exceeds the dense cap of " +
                                        std::to_string(cap)};
  }
  const std::size_t top = std::min(a.top, a.n * a.t);
  if (top == 0) throw Failure{kUsage, "--top must be at least 1"};
  const LambdaStarThresholds thresholds{a.ratio, a.floor};

  std::string csv = "p,omega,index,mean_epsilon,sd_epsilon\n";
  json cells = json::array();
  for (double p : grid["p"]) {
    for (double omega : grid["omega"]) {
      std::vector<Vector> errors;
      json by_seed = json::array();
      std::map<std::size_t, std::size_t> histogram;
      std::size_t missing = 0;
      for (std::size_t s = 0; s < a.seeds; ++s) {
        const std::uint64_t seed = a.base_seed + s;
        const auto net = er_temporal({a.n, p, a.t, seed}, InterLayerWeights::uniform(omega, coupling));
        const auto r = analyze(net, top, thresholds);
        errors.push_back(r.errors);
        if (r.lambda_star_index) {
          ++histogram[*r.lambda_star_index];
          by_seed.push_back(*r.lambda_star_index);
        } else {
          ++missing;
          by_seed.push_back(nullptr);
        }
      }
      for (std::size_t i = 0; i < top; ++i) {
        double mean = 0.0;
        for (const auto& e : errors) mean += e[i];
        mean /= static_cast<double>(errors.size());
        double var = 0.0;
        for (const auto& e : errors) var += (e[i] - mean) * (e[i] - mean);
        const double sd = errors.size() > 1 ? std::sqrt(var / static_cast<double>(errors.size() - 1)) : 0.0;
        csv += io::format_double(p) + ',' + io::format_double(omega) + ',' + std::to_string(i + 1) + ',' +
               io::format_double(mean) + ',' + io::format_double(sd) + '\n';
      }
      json cell;
      cell["p"] = p;
      cell["omega"] = omega;
      json hist = json::object();
      std::size_t mode = 0, mode_count = 0;
      for (const auto& [idx, count] : histogram) {
        hist[std::to_string(idx)] = count;
        if (count > mode_count) {
          mode = idx;
          mode_count = count;
        }
      }
      cell["lambda_star_mode"] = mode_count ? json(mode) : json(nullptr);
      cell["lambda_star_histogram"] = hist;
      cell["undetected"] = missing;
      cell["lambda_star_by_seed"] = by_seed;
      cells.push_back(cell);
    }
  }
  io::write_file_atomic(a.out, csv);

  json summary;
  summary["command"] = "approx-sweep";
  summary["n_nodes"] = a.n;
  summary["n_layers"] = a.t;
  summary["coupling"] = to_string(coupling);
  summary["seeds"] = a.seeds;
  summary["base_seed"] = a.base_seed;
  summary["top"] = top;
  summary["thresholds"] = thresholds_json(thresholds);
  summary["cells"] = cells;
  const std::string text = summary.dump(2) + "\n";
  if (a.summary)
    io::write_file_atomic(*a.summary, text);
  else
    out << text;
  return kOk;
}

// ---------------------------------------------------------------------------- reduced

struct ReducedArgs {
  std::optional<std::size_t> top;
  std::string in;
  std::string out;
};

int cmd_reduced(const ReducedArgs& a) {
  const TemporalNetwork net = io::read_network_file(a.in);
  const auto blocks = require_constant_model(net, "reduced");
  const std::size_t m = std::min(a.top.value_or(net.n_nodes()), net.n_nodes());
  const Matrix table = eigenvalue_table(blocks, m);
  std::string csv = "k,j,eigenvalue,cos\n";
  for (std::size_t k = 0; k < net.n_layers(); ++k) {
    const std::string cosine = io::format_double(dft_cosine(k, net.n_layers()));
    for (std::size_t j = 0; j < m; ++j)
      csv += std::to_string(k) + ',' + std::to_string(j + 1) + ',' + io::format_double(table(j, k)) + ',' + cosine +
             '\n';
  }
  io::write_file_atomic(a.out, csv);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral analysis of temporal networks through their supra-Laplacian", "supralap"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a benchmark temporal network");
  g->add_option("--model", gen.model, "Layer model")->required()->check(CLI::IsMember({"er", "sales-pardo", "constant-er"}));
  g->add_option("--n", gen.n, "Nodes per layer (default 100, 640 for sales-pardo)")->check(CLI::PositiveNumber);
  g->add_option("--p", gen.p, "Edge probability (er, constant-er)")->capture_default_str();
  g->add_option("--t", gen.t, "Number of layers (default 30, 33 for sales-pardo)")->check(CLI::PositiveNumber);
  g->add_option("--omega", gen.omega, "Uniform inter-layer weight")->capture_default_str();
  g->add_option("--coupling", gen.coupling)->check(CLI::IsMember({"path", "periodic"}))->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--layers", gen.layers, "independent draws per layer, or layer 0 replicated")
      ->check(CLI::IsMember({"independent", "replicated"}))
      ->capture_default_str();
  g->add_option("--levels", gen.levels, "Hierarchy depth (sales-pardo)")->capture_default_str();
  g->add_option("--branching", gen.branching, "Groups per level (sales-pardo)")->capture_default_str();
  g->add_option("--avg-degree", gen.avg_degree, "Target mean degree (sales-pardo)")->capture_default_str();
  g->add_option("--rho", gen.rho, "Cohesion between nested levels (sales-pardo)")->capture_default_str();
  g->add_option("--out", gen.out, "Output edge-list file")->required();

  SpectrumArgs spec;
  auto* s = app.add_subcommand("spectrum", "Eigenvalues of the supra-Laplacian");
  s->add_option("--method", spec.method)->check(CLI::IsMember({"dense", "block-dft"}))->capture_default_str();
  s->add_option("--top", spec.top, "Rows to write (default: all)");
  s->add_option("--in", spec.in)->required();
  s->add_option("--out", spec.out)->required();
  s->add_option("--vectors", spec.vectors, "Also write eigenvectors, one column per eigenvalue");
  s->add_flag("--timing", spec.timing, "Write wall-clock timings to <out>.timing.json");

  ApproxArgs approx;
  auto* a = app.add_subcommand("approx", "Approximation errors against the layer null vectors");
  a->add_option("--top", approx.top)->capture_default_str();
  a->add_option("--ratio", approx.ratio)->check(CLI::PositiveNumber)->capture_default_str();
  a->add_option("--floor", approx.floor)->check(CLI::NonNegativeNumber)->capture_default_str();
  a->add_option("--in", approx.in)->required();
  a->add_option("--out", approx.out, "CSV of index,eigenvalue,epsilon")->required();
  a->add_option("--json", approx.json_path, "Report path (default: standard output)");
  a->add_option("--p", approx.p, "Edge probability to echo in the report");
  a->add_option("--seed", approx.seed, "Seed to echo in the report");

  SweepArgs sweep;
  auto* w = app.add_subcommand("approx-sweep", "Error statistics over a grid of ER parameters and seeds");
  w->add_option("--grid", sweep.grid, "p=<list> omega=<list>")->required()->expected(2);
  w->add_option("--seeds", sweep.seeds)->capture_default_str();
  w->add_option("--base-seed", sweep.base_seed)->capture_default_str();
  w->add_option("--n", sweep.n)->check(CLI::PositiveNumber)->capture_default_str();
  w->add_option("--t", sweep.t)->check(CLI::PositiveNumber)->capture_default_str();
  w->add_option("--coupling", sweep.coupling)->check(CLI::IsMember({"path", "periodic"}))->capture_default_str();
  w->add_option("--top", sweep.top)->capture_default_str();
  w->add_option("--ratio", sweep.ratio)->check(CLI::PositiveNumber)->capture_default_str();
  w->add_option("--floor", sweep.floor)->check(CLI::NonNegativeNumber)->capture_default_str();
  w->add_option("--out", sweep.out, "Aggregate CSV")->required();
  w->add_option("--summary", sweep.summary, "Summary JSON path (default: standard output)");

  ReducedArgs reduced;
  auto* r = app.add_subcommand("reduced", "Eigenvalues of every reduced block of a constant model");
  r->add_option("--top", reduced.top, "Smallest eigenvalues kept per block (default: N)");
  r->add_option("--in", reduced.in)->required();
  r->add_option("--out", reduced.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (g->parsed()) return cmd_gen(gen, out);
    if (s->parsed()) return cmd_spectrum(spec, out);
    if (a->parsed()) return cmd_approx(approx, out);
    if (w->parsed()) return cmd_sweep(sweep, out);
    if (r->parsed()) return cmd_reduced(reduced);
  } catch (const Failure& f) {
    err << "supralap: " << f.message << '\n';
    return f.code;
  } catch (const Error& e) {
    err << "supralap: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "supralap: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}

}  // namespace supralap::cli

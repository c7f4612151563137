#include "supralap/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "supralap/error.hpp"

namespace supralap::io {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

std::size_t parse_size(std::string_view s, std::size_t line_no) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) fail(line_no, "expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

double parse_real(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) fail(line_no, "expected a number, got '" + std::string(s) + "'");
  return v;
}

std::size_t parse_keyed(std::string_view token, std::string_view key, std::size_t line_no) {
  if (token.substr(0, key.size()) != key) fail(line_no, "expected " + std::string(key) + "<int>");
  return parse_size(token.substr(key.size()), line_no);
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_network(std::ostream& out, const TemporalNetwork& net) {
  const std::size_t n = net.n_nodes();
  const std::size_t layers = net.n_layers();
  out << "# supralap v1 N=" << n << " T=" << layers << '\n';
  for (std::size_t t = 0; t < layers; ++t)
    for (const auto& [i, j] : net.layer(t).edges()) out << t + 1 << ' ' << i << ' ' << j << '\n';
  const auto& w = net.weights();
  if (w.is_uniform()) {
    out << "# weights uniform " << to_string(w.coupling()) << '\n' << format_double(w.uniform_omega()) << '\n';
  } else {
    out << "# weights per-node " << to_string(w.coupling()) << '\n';
    for (std::size_t p = 0; p < w.pair_count(layers); ++p)
      for (std::size_t i = 0; i < n; ++i) out << p + 1 << ' ' << i << ' ' << format_double(w.pair_weight(p, i, n)) << '\n';
  }
}

std::string network_to_string(const TemporalNetwork& net) {
  std::ostringstream s;
  write_network(s, net);
  return s.str();
}

TemporalNetwork read_network(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0, layers = 0;
  bool have_header = false;
  std::vector<std::vector<Edge>> edges;
  std::vector<std::set<Edge>> seen;

  enum class Section { edges, uniform, per_node } section = Section::edges;
  Coupling coupling = Coupling::path;
  std::optional<double> omega;
  std::vector<double> table;
  std::set<std::pair<std::size_t, std::size_t>> table_seen;
  std::size_t pairs = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 5 || tok[0] != "#" || tok[1] != "supralap" || tok[2] != "v1")
        fail(line_no, "expected header '# supralap v1 N=<int> T=<int>'");
      n = parse_keyed(tok[3], "N=", line_no);
      layers = parse_keyed(tok[4], "T=", line_no);
      if (n < 2 || layers < 1) fail(line_no, "header needs N >= 2 and T >= 1");
      edges.resize(layers);
      seen.resize(layers);
      have_header = true;
      continue;
    }
    if (tok[0] == "#") {
      if (tok.size() != 4 || tok[1] != "weights" || section != Section::edges)
        fail(line_no, "unexpected comment line; only one '# weights <uniform|per-node> <coupling>' section is allowed");
      try {
        coupling = parse_coupling(tok[3]);
      } catch (const Error&) {
        fail(line_no, "unknown coupling '" + std::string(tok[3]) + "'");
      }
      pairs = coupling == Coupling::periodic ? layers : layers - 1;
      if (tok[2] == "uniform") {
        section = Section::uniform;
      } else if (tok[2] == "per-node") {
        section = Section::per_node;
        table.assign(pairs * n, 0.0);
      } else {
        fail(line_no, "weights kind must be 'uniform' or 'per-node'");
      }
      continue;
    }
    switch (section) {
      case Section::edges: {
        if (tok.size() != 3) fail(line_no, "expected an edge line 't i j'");
        const std::size_t t = parse_size(tok[0], line_no);
        const std::size_t i = parse_size(tok[1], line_no);
        const std::size_t j = parse_size(tok[2], line_no);
        if (t < 1 || t > layers) fail(line_no, "layer index out of range");
        if (!(i < j) || j >= n) fail(line_no, "edge must satisfy i < j < N");
        if (!seen[t - 1].insert({i, j}).second) fail(line_no, "duplicate edge");
        edges[t - 1].push_back({i, j});
        break;
      }
      case Section::uniform:
        if (omega || tok.size() != 1) fail(line_no, "uniform weights take exactly one value");
        omega = parse_real(tok[0], line_no);
        break;
      case Section::per_node: {
        if (tok.size() != 3) fail(line_no, "expected a weight line 't i omega'");
        const std::size_t t = parse_size(tok[0], line_no);
        const std::size_t i = parse_size(tok[1], line_no);
        if (t < 1 || t > pairs) fail(line_no, "pair index out of range");
        if (i >= n) fail(line_no, "node index out of range");
        if (!table_seen.insert({t, i}).second) fail(line_no, "duplicate weight entry");
        table[(t - 1) * n + i] = parse_real(tok[2], line_no);
        break;
      }
    }
  }
  if (!have_header) fail(line_no, "missing header");
  if (section == Section::uniform && !omega) fail(line_no, "uniform weights section has no value");

  std::vector<LayerGraph> graphs;
  graphs.reserve(layers);
  for (std::size_t t = 0; t < layers; ++t) graphs.push_back(LayerGraph::from_edges(n, edges[t]));
  InterLayerWeights weights = section == Section::per_node
                                  ? InterLayerWeights::per_node(coupling, n, layers, std::move(table))
                                  : InterLayerWeights::uniform(omega.value_or(0.0), coupling);
  return TemporalNetwork(std::move(graphs), std::move(weights));
}

TemporalNetwork network_from_string(std::string_view text) {
  std::istringstream s{std::string(text)};
  return read_network(s);
}

TemporalNetwork read_network_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  return read_network(in);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::io_error, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::io_error, "cannot move output into place at " + path.string());
  }
}

std::string spectrum_csv(const SpectralResult& r, std::size_t top) {
  std::string out = "index,eigenvalue,k,method\n";
  const bool reduced = r.provenance.source == Provenance::Source::reduced;
  for (std::size_t i = 0; i < std::min(top, r.order()); ++i) {
    out += std::to_string(i + 1) + ',' + format_double(r.eigenvalues[i]) + ',';
    if (reduced) out += std::to_string(r.provenance.block);
    out += reduced ? ",block-dft\n" : ",dense\n";
  }
  return out;
}

std::string spectrum_csv(const MergedSpectrum& s, std::size_t top) {
  std::string out = "index,eigenvalue,k,method\n";
  for (std::size_t i = 0; i < std::min(top, s.pairs.size()); ++i)
    out += std::to_string(i + 1) + ',' + format_double(s.pairs[i].eigenvalue) + ',' +
           std::to_string(s.pairs[i].k) + ",block-dft\n";
  return out;
}

std::string eigenvector_csv(const SpectralResult& r, std::size_t top) {
  const std::size_t m = std::min(top, r.order());
  const std::size_t n = r.eigenvectors.cols();
  std::string out;
  for (std::size_t c = 0; c < m; ++c) out += (c ? ",v" : "v") + std::to_string(c + 1);
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < m; ++c) {
      if (c) out += ',';
      out += format_double(r.eigenvectors(c, i));
    }
    out += '\n';
  }
  return out;
}

}  // namespace supralap::io

#include "wsbm/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace wsbm {

namespace {

/// Splits a line on commas and/or whitespace; '#' starts a comment.
std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  for (char& c : body)
    if (c == ',' || c == '\t') c = ' ';
  std::istringstream in(body);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_weight(const std::string& tok, const std::string& file, int line_no) {
  try {
    std::size_t used = 0;
    const double w = std::stod(tok, &used);
    if (used != tok.size() || !std::isfinite(w)) throw std::invalid_argument(tok);
    return w;
  } catch (const std::exception&) {
    throw ParseError(file + ":" + std::to_string(line_no) +
                     ": bad weight '" + tok + "'");
  }
}

struct LoadedEdges {
  std::vector<std::string> node_ids;
  std::unordered_map<std::string, int> index;
  // directed weights keyed by (source, target) index pair
  std::map<std::pair<int, int>, double> directed;
};

LoadedEdges read_edges(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge file: " + path.string());
  LoadedEdges out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 3)
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected 'source target weight'");
    const double w = parse_weight(tokens[2], path.string(), line_no);
    auto intern = [&](const std::string& id) {
      auto [it, inserted] = out.index.try_emplace(id, out.node_ids.size());
      if (inserted) out.node_ids.push_back(id);
      return it->second;
    };
    const int s = intern(tokens[0]);
    const int t = intern(tokens[1]);
    if (!out.directed.emplace(std::make_pair(s, t), w).second)
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": duplicate directed edge " + tokens[0] + " -> " + tokens[1]);
  }
  return out;
}

}  // namespace

IngestResult ingest_and_symmetrize(const std::filesystem::path& edge_file,
                                   const std::optional<std::filesystem::path>& label_file) {
  LoadedEdges loaded = read_edges(edge_file);
  const int n = static_cast<int>(loaded.node_ids.size());

  // w(i,j) = w(i->j) + w(j->i); self loops dropped.
  std::map<std::pair<int, int>, double> undirected;
  for (const auto& [key, w] : loaded.directed) {
    auto [s, t] = key;
    if (s == t) continue;
    undirected[{std::min(s, t), std::max(s, t)}] += w;
  }
  std::vector<WeightedEdge> edges;
  edges.reserve(undirected.size());
  for (const auto& [key, w] : undirected) edges.push_back({key.first, key.second, w});

  std::vector<int> assignment(n, -1);
  std::vector<std::string> class_names;
  if (label_file) {
    std::ifstream in(*label_file);
    if (!in) throw ParseError("cannot open label file: " + label_file->string());
    std::unordered_map<std::string, int> class_index;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto tokens = tokenize(line);
      if (tokens.empty()) continue;
      if (tokens.size() != 2)
        throw ParseError(label_file->string() + ":" + std::to_string(line_no) +
                         ": expected 'node class'");
      const auto it = loaded.index.find(tokens[0]);
      if (it == loaded.index.end())
        throw ParseError(label_file->string() + ":" + std::to_string(line_no) +
                         ": unknown node id '" + tokens[0] + "'");
      auto [cls, inserted] = class_index.try_emplace(tokens[1],
                                                     static_cast<int>(class_names.size()));
      if (inserted) class_names.push_back(tokens[1]);
      assignment[it->second] = cls->second;
    }
  }
  const int k = std::max<int>(1, static_cast<int>(class_names.size()));

  return IngestResult{WeightedGraph(n, std::move(edges)),
                      PartialLabels(std::move(assignment), k),
                      std::move(loaded.node_ids), std::move(class_names)};
}

void write_edge_list(std::ostream& out, const WeightedGraph& graph,
                     const std::vector<std::string>& node_ids) {
  if (static_cast<int>(node_ids.size()) != graph.node_count())
    throw std::invalid_argument("node id table size mismatch");
  out.precision(17);
  for (const auto& e : graph.edges())
    out << node_ids[e.i] << ' ' << node_ids[e.j] << ' ' << e.weight << '\n';
}

namespace {

std::vector<double> parse_doubles(const std::vector<std::string>& tokens,
                                  std::size_t from, const std::string& context) {
  std::vector<double> out;
  for (std::size_t k = from; k < tokens.size(); ++k)
    out.push_back(parse_weight(tokens[k], context, 0));
  return out;
}

WeightDistribution parse_distribution(const std::vector<std::string>& tokens,
                                      const std::string& context) {
  if (tokens.empty()) throw ParseError(context + ": empty distribution");
  const std::string& kind = tokens[0];
  const auto params = parse_doubles(tokens, 1, context);
  if (kind == "normal") {
    if (params.size() != 2) throw ParseError(context + ": normal needs mean and sd");
    return WeightDistribution::normal(params[0], params[1]);
  }
  if (kind == "poisson") {
    if (params.size() != 1) throw ParseError(context + ": poisson needs a rate");
    return WeightDistribution::poisson(params[0]);
  }
  if (kind == "empirical") {
    if (params.empty()) throw ParseError(context + ": empirical needs samples");
    return WeightDistribution::empirical(params);
  }
  throw ParseError(context + ": unknown distribution '" + kind + "'");
}

}  // namespace

BlockModel load_block_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file: " + path.string());

  std::map<std::string, std::string> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = line.substr(0, line.find('#'));
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      if (body.find_first_not_of(" \t\r") != std::string::npos)
        throw ParseError(path.string() + ":" + std::to_string(line_no) +
                         ": expected key = value");
      continue;
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty())
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": empty key");
    if (!entries.emplace(key, value).second)
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": duplicate key '" + key + "'");
  }

  auto require = [&](const std::string& key) -> const std::string& {
    const auto it = entries.find(key);
    if (it == entries.end())
      throw ParseError(path.string() + ": missing key '" + key + "'");
    return it->second;
  };

  const int k = static_cast<int>(parse_weight(require("k"), path.string(), 0));
  if (k < 1) throw ParseError(path.string() + ": k must be >= 1");

  const auto pi = parse_doubles(tokenize(require("pi")), 0, path.string());
  if (static_cast<int>(pi.size()) != k)
    throw ParseError(path.string() + ": pi needs k entries");

  // b = row ; row ; ...
  std::vector<std::vector<double>> rows;
  {
    std::istringstream rows_in(require("b"));
    std::string row;
    while (std::getline(rows_in, row, ';'))
      rows.push_back(parse_doubles(tokenize(row), 0, path.string()));
  }
  if (static_cast<int>(rows.size()) != k)
    throw ParseError(path.string() + ": b needs k rows separated by ';'");
  Matrix b(k, k);
  for (int u = 0; u < k; ++u) {
    if (static_cast<int>(rows[u].size()) != k)
      throw ParseError(path.string() + ": b row needs k entries");
    for (int v = 0; v < k; ++v) b(u, v) = rows[u][v];
  }

  // f.u.v keys are 1-based and fill both (u,v) and (v,u).
  std::vector<std::vector<std::optional<WeightDistribution>>> f(
      k, std::vector<std::optional<WeightDistribution>>(k));
  for (const auto& [key, value] : entries) {
    if (key.rfind("f.", 0) != 0) continue;
    int u = 0, v = 0;
    if (std::sscanf(key.c_str(), "f.%d.%d", &u, &v) != 2 || u < 1 || v < 1 ||
        u > k || v > k)
      throw ParseError(path.string() + ": bad F key '" + key + "'");
    const auto dist = parse_distribution(tokenize(value), path.string() + ": " + key);
    f[u - 1][v - 1] = dist;
    f[v - 1][u - 1] = dist;
  }
  std::vector<std::vector<WeightDistribution>> dists;
  for (int u = 0; u < k; ++u) {
    std::vector<WeightDistribution> row;
    for (int v = 0; v < k; ++v) {
      if (!f[u][v])
        throw ParseError(path.string() + ": missing f." + std::to_string(u + 1) + "." +
                         std::to_string(v + 1));
      row.push_back(*f[u][v]);
    }
    dists.push_back(std::move(row));
  }

  return BlockModel(pi, std::move(b), std::move(dists));
}

}  // namespace wsbm

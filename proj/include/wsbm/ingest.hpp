#ifndef WSBM_INGEST_HPP
#define WSBM_INGEST_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wsbm/block_model.hpp"
#include "wsbm/weighted_graph.hpp"

namespace wsbm {

/// File-format problem; the message carries the file and line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IngestResult {
  WeightedGraph graph;
  PartialLabels labels;                  // -1 where no label row exists
  std::vector<std::string> node_ids;     // index -> original id
  std::vector<std::string> class_names;  // block -> class name
};

/// Reads a directed weighted edge list (rows: source target weight, comma or
/// whitespace separated, '#' comments) and an optional label file (rows:
/// node class). The network is symmetrized by summing the two directed
/// weights, treating a missing direction as 0; self loops are dropped.
/// Node ids map to 0-based indices and class names to blocks, both in first-
/// appearance order. A repeated directed pair is an error.
IngestResult ingest_and_symmetrize(const std::filesystem::path& edge_file,
                                   const std::optional<std::filesystem::path>& label_file);

/// Writes one row per undirected edge: "id_i id_j weight". Re-ingesting the
/// output reproduces the graph exactly.
void write_edge_list(std::ostream& out, const WeightedGraph& graph,
                     const std::vector<std::string>& node_ids);

/// Loads a block model from flat key=value text:
///   k = 2
///   pi = 0.5 0.5
///   b = 0.2704 0.2496 ; 0.2496 0.2304
///   f.1.1 = normal 5 4        (also: poisson 3 | empirical 1.5 2 2.5 ...)
///   f.1.2 = normal 7 9
///   f.2.2 = normal 5 4
/// F entries are 1-based and symmetric: setting f.u.v covers f.v.u.
BlockModel load_block_model(const std::filesystem::path& path);

}  // namespace wsbm

#endif  // WSBM_INGEST_HPP

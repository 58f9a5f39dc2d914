#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wsbm/ingest.hpp"

using namespace wsbm;

namespace {

class TempDir {
 public:
  TempDir() {
    dir_ = std::filesystem::temp_directory_path() /
           ("wsbm_test_" + std::to_string(std::rand()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() { std::filesystem::remove_all(dir_); }
  std::filesystem::path write(const std::string& name, const std::string& body) {
    const auto p = dir_ / name;
    std::ofstream out(p);
    out << body;
    return p;
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace

TEST_CASE("ingest_and_symmetrize sums directed weights") {
  TempDir tmp;
  const auto edges = tmp.write("edges.csv",
                               "# comment line\n"
                               "a b 3\n"
                               "b a 4\n"
                               "a c 2\n"
                               "c c 5\n");  // self loop dropped
  const IngestResult r = ingest_and_symmetrize(edges, std::nullopt);
  CHECK(r.node_ids == std::vector<std::string>{"a", "b", "c"});
  CHECK(r.graph.node_count() == 3);
  CHECK(r.graph.edge_count() == 2);
  CHECK(r.graph.edge_weight(0, 1) == 7.0);  // 3 + 4
  CHECK(r.graph.edge_weight(0, 2) == 2.0);  // missing reverse counts as 0
  CHECK(!r.graph.has_edge(2, 2));
}

TEST_CASE("ingest applies labels in first-appearance order") {
  TempDir tmp;
  const auto edges = tmp.write("e.txt", "n1,n2,1.5\nn2,n3,2.5\nn3,n4,0.5\n");
  const auto labels = tmp.write("l.txt", "n1 motor\nn2 sensory\nn4 motor\n");
  const IngestResult r = ingest_and_symmetrize(edges, labels);
  CHECK(r.class_names == std::vector<std::string>{"motor", "sensory"});
  CHECK(r.labels.block_of(0) == 0);
  CHECK(r.labels.block_of(1) == 1);
  CHECK(r.labels.block_of(2) == -1);
  CHECK(r.labels.block_of(3) == 0);
}

TEST_CASE("ingest errors carry line numbers") {
  TempDir tmp;
  const auto bad_weight = tmp.write("w.txt", "a b 1\na c xyz\n");
  CHECK_THROWS_WITH_AS(ingest_and_symmetrize(bad_weight, std::nullopt),
                       doctest::Contains(":2:"), ParseError);

  const auto dup = tmp.write("d.txt", "a b 1\na b 2\n");
  CHECK_THROWS_WITH_AS(ingest_and_symmetrize(dup, std::nullopt),
                       doctest::Contains("duplicate directed edge"), ParseError);

  const auto edges = tmp.write("ok.txt", "a b 1\n");
  const auto unknown = tmp.write("u.txt", "zz motor\n");
  CHECK_THROWS_WITH_AS(ingest_and_symmetrize(edges, unknown),
                       doctest::Contains("unknown node id"), ParseError);

  CHECK_THROWS_AS(ingest_and_symmetrize("/nonexistent/file.csv", std::nullopt),
                  ParseError);
}

TEST_CASE("edge list round-trips through emit and re-ingest") {
  TempDir tmp;
  const auto edges = tmp.write("in.txt",
                               "a b 3.25\n"
                               "b a 1.75\n"
                               "c a 0.125\n"
                               "d c -2.5\n");
  const IngestResult first = ingest_and_symmetrize(edges, std::nullopt);

  std::ostringstream emitted;
  write_edge_list(emitted, first.graph, first.node_ids);
  const auto again = tmp.write("out.txt", emitted.str());
  const IngestResult second = ingest_and_symmetrize(again, std::nullopt);

  CHECK(second.node_ids == first.node_ids);
  REQUIRE(second.graph.edge_count() == first.graph.edge_count());
  for (std::size_t k = 0; k < first.graph.edges().size(); ++k) {
    CHECK(second.graph.edges()[k].i == first.graph.edges()[k].i);
    CHECK(second.graph.edges()[k].j == first.graph.edges()[k].j);
    CHECK(second.graph.edges()[k].weight == first.graph.edges()[k].weight);
  }
}

TEST_CASE("load_block_model parses the key=value format") {
  TempDir tmp;
  const auto model_file = tmp.write("model.cfg",
                                    "# two blocks\n"
                                    "k = 2\n"
                                    "pi = 0.5 0.5\n"
                                    "b = 0.2704 0.2496 ; 0.2496 0.2304\n"
                                    "f.1.1 = normal 5 4\n"
                                    "f.1.2 = normal 7 9\n"
                                    "f.2.2 = poisson 3\n");
  const BlockModel m = load_block_model(model_file);
  CHECK(m.block_count() == 2);
  CHECK(m.edge_probability()(0, 1) == 0.2496);
  CHECK(m.weight_distribution(0, 0).sd() == 4.0);
  CHECK(m.weight_distribution(1, 0).mean() == 7.0);  // symmetric fill
  CHECK(m.weight_distribution(1, 1).kind() == WeightDistribution::Kind::kPoisson);

  const auto missing = tmp.write("missing.cfg", "k = 2\npi = 0.5 0.5\n");
  CHECK_THROWS_AS(load_block_model(missing), ParseError);

  const auto bad_f = tmp.write("badf.cfg",
                               "k = 2\npi = 0.5 0.5\n"
                               "b = 1 0 ; 0 1\n"
                               "f.1.1 = normal 5 4\nf.1.2 = normal 7 9\n");
  CHECK_THROWS_AS(load_block_model(bad_f), ParseError);  // f.2.2 missing

  const auto empirical = tmp.write("emp.cfg",
                                   "k = 1\npi = 1\nb = 0.4\n"
                                   "f.1.1 = empirical 1.5 2 2.5\n");
  const BlockModel e = load_block_model(empirical);
  CHECK(e.weight_distribution(0, 0).samples().size() == 3);
}

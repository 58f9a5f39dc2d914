// Command-line front end: simulation runs, power curves, edge-list
// classification, paired comparisons, and plot-data export.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wsbm/classify.hpp"
#include "wsbm/experiments.hpp"
#include "wsbm/ingest.hpp"
#include "wsbm/stats.hpp"

namespace {

using namespace wsbm;

/// Command-line problems that are not CLI11 parse errors (bad strategy name,
/// inconsistent flags). Exit code 1, like CLI11's own failures.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

PtrScale parse_ptr_scale(const std::string& name) {
  if (name == "unit") return PtrScale::kUnit;
  if (name == "two") return PtrScale::kTwo;
  throw UsageError("unknown ptr scale: " + name + " (use unit|two)");
}

struct StrategyFlags {
  double alpha = 0.1;
  double smoothing = 1.0;
  double smoothing_r = 100.0;
  double logit_coeff = 1.0;
  std::string ptr_scale = "unit";
  bool augment_diagonal = false;
  int embed_dim = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "gate level for ordered_gated");
    cmd->add_option("--smoothing", smoothing, "additive smoothing for ordered updates");
    cmd->add_option("--smoothing-r", smoothing_r, "cap for dynamic smoothing");
    cmd->add_option("--logit-coeff", logit_coeff, "sharpening coefficient for general_logit");
    cmd->add_option("--ptr-scale", ptr_scale, "rank transform range: unit|two");
    cmd->add_flag("--augment-diagonal", augment_diagonal,
                  "replace the diagonal by row sums / (n-1) before embedding");
    cmd->add_option("--embed-dim", embed_dim, "embedding dimension");
  }

  ClassifyConfig config(const std::string& strategy) const {
    ClassifyConfig cfg;
    try {
      cfg.strategy = parse_strategy(strategy);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    cfg.embed_dim = embed_dim;
    cfg.ptr_scale = parse_ptr_scale(ptr_scale);
    cfg.augment_diagonal = augment_diagonal;
    cfg.smoothing = smoothing;
    cfg.alpha = alpha;
    cfg.smoothing_r = smoothing_r;
    cfg.logit_coeff = logit_coeff;
    return cfg;
  }
};

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << body;
}

// ---- simulate ----

struct SimulateArgs {
  std::string setting;
  std::string model_file;
  std::string strategies = "ptr_qda,ordered";
  std::string n_grid;
  double train_fraction = -1.0;  // default taken from the setting
  int replicates = 100;
  std::uint64_t seed = 0;
  std::string out;
  StrategyFlags flags;
};

int run_simulate(const SimulateArgs& args) {
  if (args.setting.empty() == args.model_file.empty())
    throw UsageError("simulate needs exactly one of --setting or --model");

  ExperimentConfig cfg{builtin_setting(Setting::kGauss1).model, "", {}, 0.1,
                       args.replicates, {}, args.seed};
  if (!args.setting.empty()) {
    Setting setting;
    try {
      setting = parse_setting(args.setting);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    BuiltinSetting builtin = builtin_setting(setting);
    cfg.model = std::move(builtin.model);
    cfg.n_grid = std::move(builtin.n_grid);
    cfg.train_fraction = builtin.train_fraction;
    cfg.setting_label = setting_name(setting);
  } else {
    cfg.model = load_block_model(args.model_file);
    cfg.n_grid = builtin_setting(Setting::kGauss1).n_grid;
    cfg.setting_label = std::filesystem::path(args.model_file).stem().string();
  }
  if (!args.n_grid.empty()) {
    cfg.n_grid.clear();
    for (const auto& tok : split_list(args.n_grid)) cfg.n_grid.push_back(std::stoi(tok));
  }
  if (args.train_fraction > 0.0) cfg.train_fraction = args.train_fraction;
  for (const auto& name : split_list(args.strategies))
    cfg.strategies.push_back(args.flags.config(name));
  if (cfg.strategies.empty()) throw UsageError("empty strategy list");

  const ExperimentResult result = run_experiment(cfg);
  std::ostringstream csv;
  write_results_csv(csv, result);
  write_file(args.out, csv.str());

  int failures = 0;
  for (const auto& c : result.cells) failures = std::max(failures, c.failures);
  std::cout << "wrote " << args.out << " (" << result.cells.size() << " rows";
  if (failures > 0) std::cout << ", up to " << failures << " replicates excluded";
  std::cout << ")\n";
  return 0;
}

// ---- power ----

struct PowerArgs {
  int replicates = 500;
  std::uint64_t seed = 0;
  double alpha = 0.1;
  int n = 200;
  std::string grid;
  std::string out;
};

int run_power(const PowerArgs& args) {
  PowerCurveConfig cfg;
  cfg.replicates = args.replicates;
  cfg.seed = args.seed;
  cfg.alpha = args.alpha;
  cfg.n = args.n;
  if (!args.grid.empty()) {
    cfg.mu_diff_grid.clear();
    for (const auto& tok : split_list(args.grid))
      cfg.mu_diff_grid.push_back(std::stod(tok));
  }
  const auto points = power_curve(cfg);
  std::ostringstream csv;
  write_power_csv(csv, points);
  write_file(args.out, csv.str());
  std::cout << "wrote " << args.out << " (" << points.size() << " grid points)\n";
  return 0;
}

// ---- classify / compare ----

struct ClassifyArgs {
  std::string edges;
  std::string labels;
  std::string strategy;
  double holdout_fraction = 0.0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
  StrategyFlags flags;
};

int run_classify(const ClassifyArgs& args) {
  const ClassifyConfig cfg = args.flags.config(args.strategy);
  if (args.holdout_fraction > 0.0 && !args.seed_given)
    throw UsageError("--holdout-fraction needs --seed for the split");

  const IngestResult data = ingest_and_symmetrize(args.edges, {{args.labels}});
  PartialLabels training = data.labels;
  std::vector<int> held_out;
  if (args.holdout_fraction > 0.0) {
    HoldoutSplit split =
        make_holdout_split(data.labels, args.holdout_fraction, args.seed);
    training = std::move(split.training);
    held_out = std::move(split.held_out);
  }

  const auto predictions = classify_nodes(data.graph, training, cfg);

  std::vector<bool> is_held_out(data.graph.node_count(), false);
  for (int i : held_out) is_held_out[i] = true;

  std::ostringstream csv;
  csv << "node,predicted_block,predicted_class,held_out,true_class\n";
  int holdout_wrong = 0;
  for (const auto& p : predictions) {
    const int truth = data.labels.block_of(p.node);
    csv << data.node_ids[p.node] << ',' << (p.block + 1) << ','
        << data.class_names[p.block] << ',' << (is_held_out[p.node] ? 1 : 0) << ','
        << (truth >= 0 ? data.class_names[truth] : "") << '\n';
    if (is_held_out[p.node] && p.block != truth) ++holdout_wrong;
  }
  write_file(args.out, csv.str());

  std::cout << "n=" << data.graph.node_count() << "\nedges=" << data.graph.edge_count()
            << "\nk=" << training.block_count() << "\nstrategy=" << args.strategy
            << "\n";
  for (std::size_t b = 0; b < data.class_names.size(); ++b)
    std::cout << "class." << (b + 1) << "=" << data.class_names[b] << "\n";
  if (!held_out.empty()) {
    std::cout << "holdout_fraction=" << args.holdout_fraction
              << "\nholdout_seed=" << args.seed << "\nholdout_count=" << held_out.size()
              << "\nholdout_error="
              << static_cast<double>(holdout_wrong) / held_out.size() << "\n";
  }
  std::cout << "predictions=" << args.out << "\n";
  return 0;
}

struct CompareArgs {
  std::string edges;
  std::string labels;
  std::string strategy_a;
  std::string strategy_b;
  double holdout_fraction = 0.3;
  std::uint64_t seed = 0;
  std::string out;
  StrategyFlags flags;
};

int run_compare(const CompareArgs& args) {
  const ClassifyConfig cfg_a = args.flags.config(args.strategy_a);
  const ClassifyConfig cfg_b = args.flags.config(args.strategy_b);

  const IngestResult data = ingest_and_symmetrize(args.edges, {{args.labels}});
  const HoldoutSplit split =
      make_holdout_split(data.labels, args.holdout_fraction, args.seed);

  ClassifierContext context(data.graph, split.training);
  const auto preds_a = context.classify(cfg_a);
  const auto preds_b = context.classify(cfg_b);

  std::vector<int> block_a(data.graph.node_count(), -1);
  std::vector<int> block_b(data.graph.node_count(), -1);
  for (const auto& p : preds_a) block_a[p.node] = p.block;
  for (const auto& p : preds_b) block_b[p.node] = p.block;

  std::vector<int> truth, pa, pb;
  for (int i : split.held_out) {
    truth.push_back(data.labels.block_of(i));
    pa.push_back(block_a[i]);
    pb.push_back(block_b[i]);
  }
  const TestResult test = mcnemar(truth, pa, pb);

  int wrong_a = 0, wrong_b = 0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    wrong_a += pa[k] != truth[k];
    wrong_b += pb[k] != truth[k];
  }
  const double n_holdout = static_cast<double>(truth.size());

  if (!args.out.empty()) {
    std::ostringstream csv;
    csv << "node,true_class,pred_" << args.strategy_a << ",pred_" << args.strategy_b
        << "\n";
    for (std::size_t k = 0; k < split.held_out.size(); ++k)
      csv << data.node_ids[split.held_out[k]] << ',' << data.class_names[truth[k]]
          << ',' << data.class_names[pa[k]] << ',' << data.class_names[pb[k]] << '\n';
    write_file(args.out, csv.str());
  }

  std::cout << "holdout_fraction=" << args.holdout_fraction << "\nseed=" << args.seed
            << "\nholdout_count=" << truth.size() << "\nerror_a=" << wrong_a / n_holdout
            << "\nerror_b=" << wrong_b / n_holdout << "\nmcnemar_p=" << test.p_value
            << "\n";
  return 0;
}

// ---- plotdata ----

struct PlotDataArgs {
  std::string in;
  std::string out;
};

int run_plotdata(const PlotDataArgs& args) {
  std::ifstream in(args.in);
  if (!in) throw std::runtime_error("cannot open input file: " + args.in);
  std::string header;
  if (!std::getline(in, header) ||
      header != "setting,strategy,n,mean_error,ci_half_width,replicates")
    throw std::runtime_error(args.in + ": not a results CSV");

  std::ostringstream csv;
  csv << "x,series,y,ylo,yhi\n";
  csv.precision(10);
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string setting, strategy, tok;
    if (!std::getline(row, setting, ',') || !std::getline(row, strategy, ','))
      throw std::runtime_error(args.in + ":" + std::to_string(line_no) + ": bad row");
    double n, mean, ci;
    char comma;
    if (!(row >> n >> comma >> mean >> comma >> ci))
      throw std::runtime_error(args.in + ":" + std::to_string(line_no) + ": bad row");
    csv << n << ',' << setting << ':' << strategy << ',' << mean << ','
        << (mean - ci) << ',' << (mean + ci) << '\n';
  }
  write_file(args.out, csv.str());
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vertex classification on weighted networks"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file (flags take precedence)");

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "run a Monte Carlo simulation");
  simulate->add_option("--setting", sim.setting,
                       "built-in setting: 1|2|3|4|poisson-diff|poisson-same");
  simulate->add_option("--model", sim.model_file, "block model config file");
  simulate->add_option("--replicates", sim.replicates, "replicates per grid point");
  simulate->add_option("--seed", sim.seed, "master seed")->required();
  simulate->add_option("--out", sim.out, "output CSV")->required();
  simulate->add_option("--strategies", sim.strategies, "comma-separated strategy list");
  simulate->add_option("--n-grid", sim.n_grid, "comma-separated node counts");
  simulate->add_option("--train-fraction", sim.train_fraction,
                       "labeled fraction of each graph");
  sim.flags.attach(simulate);

  PowerArgs pow;
  CLI::App* power = app.add_subcommand("power", "estimate test power curves");
  power->add_option("--replicates", pow.replicates, "replicates per grid point");
  power->add_option("--seed", pow.seed, "master seed")->required();
  power->add_option("--out", pow.out, "output CSV")->required();
  power->add_option("--alpha", pow.alpha, "test level");
  power->add_option("--n", pow.n, "nodes per sampled graph");
  power->add_option("--grid", pow.grid, "comma-separated mean differences");

  ClassifyArgs cls;
  CLI::App* classify = app.add_subcommand("classify", "classify an edge-list network");
  classify->add_option("--edges", cls.edges, "directed weighted edge list")->required();
  classify->add_option("--labels", cls.labels, "node class file")->required();
  classify->add_option("--strategy", cls.strategy, "classification strategy")->required();
  classify->add_option("--holdout-fraction", cls.holdout_fraction,
                       "withhold this fraction of labels for evaluation");
  auto* cls_seed = classify->add_option("--seed", cls.seed, "seed for the holdout split");
  classify->add_option("--out", cls.out, "predictions CSV")->required();
  cls.flags.attach(classify);

  CompareArgs cmp;
  CLI::App* compare =
      app.add_subcommand("compare", "paired holdout comparison of two strategies");
  compare->add_option("--edges", cmp.edges, "directed weighted edge list")->required();
  compare->add_option("--labels", cmp.labels, "node class file")->required();
  compare->add_option("--strategy-a", cmp.strategy_a, "first strategy")->required();
  compare->add_option("--strategy-b", cmp.strategy_b, "second strategy")->required();
  compare->add_option("--seed", cmp.seed, "seed for the holdout split")->required();
  compare->add_option("--holdout-fraction", cmp.holdout_fraction,
                      "withheld fraction of labels");
  compare->add_option("--out", cmp.out, "paired predictions CSV");
  cmp.flags.attach(compare);

  PlotDataArgs plot;
  CLI::App* plotdata =
      app.add_subcommand("plotdata", "convert a results CSV to long plot format");
  plotdata->add_option("--in", plot.in, "results CSV from simulate")->required();
  plotdata->add_option("--out", plot.out, "long-format CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  cls.seed_given = cls_seed->count() > 0;

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (power->parsed()) return run_power(pow);
    if (classify->parsed()) return run_classify(cls);
    if (compare->parsed()) return run_compare(cmp);
    if (plotdata->parsed()) return run_plotdata(plot);
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

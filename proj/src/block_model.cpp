#include "wsbm/block_model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wsbm {

WeightDistribution WeightDistribution::normal(double mean, double sd) {
  if (!(sd > 0.0)) throw std::invalid_argument("normal sd must be > 0");
  if (!std::isfinite(mean) || !std::isfinite(sd))
    throw std::invalid_argument("non-finite normal parameter");
  return WeightDistribution(Kind::kNormal, mean, sd, {});
}

WeightDistribution WeightDistribution::poisson(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw std::invalid_argument("poisson rate must be > 0");
  return WeightDistribution(Kind::kPoisson, rate, 0.0, {});
}

WeightDistribution WeightDistribution::empirical(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("empirical sample list is empty");
  for (double s : samples)
    if (!std::isfinite(s)) throw std::invalid_argument("non-finite empirical sample");
  return WeightDistribution(Kind::kEmpirical, 0.0, 0.0, std::move(samples));
}

double WeightDistribution::sample(std::mt19937_64& rng) const {
  switch (kind_) {
    case Kind::kNormal:
      return std::normal_distribution<double>(a_, b_)(rng);
    case Kind::kPoisson:
      return static_cast<double>(std::poisson_distribution<int>(a_)(rng));
    case Kind::kEmpirical: {
      std::uniform_int_distribution<std::size_t> pick(0, samples_.size() - 1);
      return samples_[pick(rng)];
    }
  }
  throw std::logic_error("unreachable");
}

BlockModel::BlockModel(std::vector<double> priors, Matrix edge_probability,
                       std::vector<std::vector<WeightDistribution>> weight_distributions)
    : priors_(std::move(priors)),
      edge_probability_(std::move(edge_probability)),
      weight_distributions_(std::move(weight_distributions)) {
  const auto k = priors_.size();
  if (k == 0) throw std::invalid_argument("block count must be >= 1");
  double sum = 0.0;
  for (double p : priors_) {
    if (p < 0.0) throw std::invalid_argument("negative block prior");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("block priors must sum to 1");
  if (edge_probability_.rows() != k || edge_probability_.cols() != k)
    throw std::invalid_argument("edge probability matrix must be K x K");
  for (std::size_t u = 0; u < k; ++u)
    for (std::size_t v = 0; v < k; ++v) {
      const double b = edge_probability_(u, v);
      if (!(b >= 0.0 && b <= 1.0))
        throw std::invalid_argument("edge probabilities must lie in [0, 1]");
      if (edge_probability_(u, v) != edge_probability_(v, u))
        throw std::invalid_argument("edge probability matrix must be symmetric");
    }
  if (weight_distributions_.size() != k)
    throw std::invalid_argument("weight distribution matrix must be K x K");
  for (const auto& row : weight_distributions_)
    if (row.size() != k)
      throw std::invalid_argument("weight distribution matrix must be K x K");
  for (std::size_t u = 0; u < k; ++u)
    for (std::size_t v = u + 1; v < k; ++v)
      if (!(weight_distributions_[u][v] == weight_distributions_[v][u]))
        throw std::invalid_argument("weight distribution matrix must be symmetric");
}

Matrix rank_one_b(double p, double q) {
  if (!(p > 0.0 && p <= 1.0) || !(q > 0.0 && q <= 1.0))
    throw std::invalid_argument("rank_one_b requires p, q in (0, 1]");
  Matrix b(2, 2);
  b(0, 0) = p * p;
  b(0, 1) = p * q;
  b(1, 0) = p * q;
  b(1, 1) = q * q;
  return b;
}

PartialLabels::PartialLabels(std::vector<int> assignment, int block_count)
    : assignment_(std::move(assignment)), block_count_(block_count) {
  if (block_count_ < 1) throw std::invalid_argument("block count must be >= 1");
  for (int a : assignment_)
    if (a != -1 && (a < 0 || a >= block_count_))
      throw std::invalid_argument("label out of range");
}

std::vector<int> PartialLabels::labeled_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < node_count(); ++i)
    if (assignment_[i] >= 0) out.push_back(i);
  return out;
}

std::vector<int> PartialLabels::unlabeled_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < node_count(); ++i)
    if (assignment_[i] < 0) out.push_back(i);
  return out;
}

std::vector<int> PartialLabels::labeled_counts() const {
  std::vector<int> counts(block_count_, 0);
  for (int a : assignment_)
    if (a >= 0) ++counts[a];
  return counts;
}

}  // namespace wsbm

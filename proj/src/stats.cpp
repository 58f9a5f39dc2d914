#include "wsbm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wsbm {

namespace {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

/// Average ranks (1-based) of the pooled values plus the tie term
/// sum(t^3 - t) over tie groups.
std::pair<std::vector<double>, double> average_ranks(std::vector<double> pooled) {
  const std::size_t m = pooled.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  std::vector<double> ranks(m);
  double tie_term = 0.0;
  std::size_t lo = 0;
  while (lo < m) {
    std::size_t hi = lo;
    while (hi < m && pooled[order[hi]] == pooled[order[lo]]) ++hi;
    const double avg = static_cast<double>(lo + 1 + hi) / 2.0;
    for (std::size_t k = lo; k < hi; ++k) ranks[order[k]] = avg;
    const double t = static_cast<double>(hi - lo);
    tie_term += t * t * t - t;
    lo = hi;
  }
  return {std::move(ranks), tie_term};
}

}  // namespace

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
  const int k = static_cast<int>(order_.size());
  if (k == 0) throw std::invalid_argument("empty permutation");
  positions_.assign(k, -1);
  for (int rank = 0; rank < k; ++rank) {
    const int v = order_[rank];
    if (v < 0 || v >= k || positions_[v] != -1)
      throw std::invalid_argument("not a permutation of [0, K)");
    positions_[v] = rank;
  }
}

int footrule_distance(const Permutation& p1, const Permutation& p2) {
  if (p1.size() != p2.size())
    throw std::invalid_argument("permutation length mismatch");
  int total = 0;
  for (int v = 0; v < p1.size(); ++v)
    total += std::abs(p1.position_of(v) - p2.position_of(v));
  return total;
}

TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty())
    throw std::invalid_argument("mann_whitney_u needs nonempty samples");
  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());
  const double n = n1 + n2;

  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  auto [ranks, tie_term] = average_ranks(std::move(pooled));

  const double variance =
      (n1 * n2 / 12.0) * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (!(variance > 0.0))
    throw std::invalid_argument("mann_whitney_u: all pooled values identical");

  double r1 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) r1 += ranks[k];
  const double u = r1 - n1 * (n1 + 1.0) / 2.0;
  const double mu = n1 * n2 / 2.0;
  const double z = std::max(0.0, std::fabs(u - mu) - 0.5) / std::sqrt(variance);
  const double p = std::min(1.0, 2.0 * normal_sf(z));
  return {u, p};
}

ThreeDecision three_decision_test(std::span<const double> within,
                                  std::span<const double> between, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  const TestResult test = mann_whitney_u(within, between);
  if (test.p_value >= alpha) return ThreeDecision::kFailToReject;
  const double mean_within =
      std::accumulate(within.begin(), within.end(), 0.0) / within.size();
  const double mean_between =
      std::accumulate(between.begin(), between.end(), 0.0) / between.size();
  return mean_within < mean_between ? ThreeDecision::kOrderWithinLess
                                    : ThreeDecision::kOrderBetweenLess;
}

TestResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty())
    throw std::invalid_argument("ks_two_sample needs nonempty samples");
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());

  const double n1 = static_cast<double>(xs.size());
  const double n2 = static_cast<double>(ys.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < xs.size() || j < ys.size()) {
    double v;
    if (j >= ys.size() || (i < xs.size() && xs[i] <= ys[j]))
      v = xs[i];
    else
      v = ys[j];
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::fabs(i / n1 - j / n2));
  }

  const double ne = n1 * n2 / (n1 + n2);
  const double lambda = std::sqrt(ne) * d;
  double p = 1.0;
  if (lambda > 1e-8) {
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
      const double term = std::exp(-2.0 * k * k * lambda * lambda);
      sum += (k % 2 == 1) ? term : -term;
      if (term < 1e-10) break;
    }
    p = 2.0 * sum;
  }
  return {d, std::clamp(p, 0.0, 1.0)};
}

double chi_square_sf(double x, int dof) {
  if (x < 0.0) throw std::invalid_argument("chi_square_sf needs x >= 0");
  if (dof < 2 || dof % 2 != 0)
    throw std::invalid_argument("chi_square_sf supports positive even dof only");
  // Closed form for even dof: exp(-x/2) * sum_{k<dof/2} (x/2)^k / k!
  const double half = x / 2.0;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < dof / 2; ++k) {
    term *= half / static_cast<double>(k);
    sum += term;
  }
  const double sf = std::exp(-half) * sum;
  return std::clamp(sf, 0.0, 1.0);
}

TestResult fishers_method(std::span<const double> p_values) {
  if (p_values.empty()) throw std::invalid_argument("fishers_method needs p-values");
  double t = 0.0;
  for (double p : p_values) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p-value outside [0, 1]");
    t += -2.0 * std::log(std::max(p, 1e-300));
  }
  return {t, chi_square_sf(t, 2 * static_cast<int>(p_values.size()))};
}

TestResult mcnemar(std::span<const int> truth, std::span<const int> pred_a,
                   std::span<const int> pred_b) {
  if (truth.size() != pred_a.size() || truth.size() != pred_b.size())
    throw std::invalid_argument("mcnemar needs equal-length label vectors");
  if (truth.empty()) throw std::invalid_argument("mcnemar needs labels");
  int a_only = 0;  // a correct, b wrong
  int b_only = 0;  // b correct, a wrong
  for (std::size_t k = 0; k < truth.size(); ++k) {
    const bool ca = pred_a[k] == truth[k];
    const bool cb = pred_b[k] == truth[k];
    if (ca && !cb) ++a_only;
    if (cb && !ca) ++b_only;
  }
  const int discordant = a_only + b_only;
  if (discordant == 0) return {0.0, 1.0};
  if (discordant < 25) {
    // Exact binomial: two-sided tail of Bin(discordant, 1/2).
    const int lo = std::min(a_only, b_only);
    double tail = 0.0;
    double coeff = 1.0;  // C(n, 0)
    for (int k = 0; k <= lo; ++k) {
      tail += coeff;
      coeff = coeff * (discordant - k) / (k + 1.0);
    }
    const double p = std::min(1.0, 2.0 * tail * std::pow(0.5, discordant));
    return {static_cast<double>(discordant), p};
  }
  const double diff = std::fabs(a_only - b_only) - 1.0;  // continuity correction
  const double stat = diff * diff / discordant;
  const double p = std::erfc(std::sqrt(stat / 2.0));  // chi-square sf, 1 dof
  return {stat, p};
}

double logistic_sharpen(double p, double coeff, double center) {
  return 1.0 / (1.0 + std::exp(-coeff * (p - center)));
}

}  // namespace wsbm

#ifndef WSBM_STATS_HPP
#define WSBM_STATS_HPP

#include <span>
#include <vector>

namespace wsbm {

/// A permutation of {0, ..., K-1}; element order is the ranking.
class Permutation {
 public:
  /// Throws std::invalid_argument unless `order` is a bijection on [0, K).
  explicit Permutation(std::vector<int> order);

  int size() const { return static_cast<int>(order_.size()); }
  int at(int rank) const { return order_[rank]; }
  const std::vector<int>& order() const { return order_; }
  /// Index (rank) of element v.
  int position_of(int v) const { return positions_[v]; }

  bool operator==(const Permutation& other) const { return order_ == other.order_; }

 private:
  std::vector<int> order_;
  std::vector<int> positions_;
};

/// Spearman footrule: sum over elements of |index in p1 - index in p2|.
int footrule_distance(const Permutation& p1, const Permutation& p2);

struct TestResult {
  double statistic;
  double p_value;
};

enum class ThreeDecision {
  kFailToReject,
  kOrderWithinLess,   // decided E(within) < E(between)
  kOrderBetweenLess,  // decided E(between) < E(within)
};

/// Mann-Whitney U from rank sums with average ranks on ties. The returned
/// statistic is U of the first sample; the p-value is two-sided from the
/// normal approximation with tie-corrected variance and continuity
/// correction. Throws when a sample is empty or all pooled values are equal.
TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y);

/// Gate with three actions: fail to reject at level alpha, or reject and
/// order the two means by their sample estimates.
ThreeDecision three_decision_test(std::span<const double> within,
                                  std::span<const double> between, double alpha);

/// Two-sample Kolmogorov-Smirnov. D is the sup distance between empirical
/// CDFs; p comes from the asymptotic Kolmogorov distribution evaluated at
/// sqrt(n_e) * D with n_e = |x||y|/(|x|+|y|), clamped to [0,1].
TestResult ks_two_sample(std::span<const double> x, std::span<const double> y);

/// Survival function of chi-square with even dof (closed form).
double chi_square_sf(double x, int dof);

/// Fisher's combination: T = -2 sum log p_j, combined p from chi-square with
/// 2*len dof. Inputs must lie in [0,1]; zeros are floored at 1e-300.
TestResult fishers_method(std::span<const double> p_values);

/// McNemar's paired test on the discordant predictions of two classifiers.
/// Exact binomial when the discordant count is < 25, else continuity-
/// corrected chi-square. Statistic = discordant count (exact regime) or the
/// chi-square value.
TestResult mcnemar(std::span<const int> truth, std::span<const int> pred_a,
                   std::span<const int> pred_b);

/// 1 / (1 + exp(-coeff * (p - center))).
double logistic_sharpen(double p, double coeff, double center = 0.5);

}  // namespace wsbm

#endif  // WSBM_STATS_HPP

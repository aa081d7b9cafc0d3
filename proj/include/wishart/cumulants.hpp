#ifndef WISHART_CUMULANTS_HPP
#define WISHART_CUMULANTS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wishart/error.hpp"
#include "wishart/model.hpp"
#include "wishart/moments.hpp"
#include "wishart/trace_expr.hpp"

namespace wishart {

/// Monomials q_1..q_m (zero-based color sequences) with multiplicities k.
/// The stars Q_1..Q_|k| repeat q_j k_j times in order, and sigma_k lays
/// the stars out as consecutive cycles.
struct StarsSpec {
  std::vector<std::vector<int>> monomials;
  std::vector<int> multiplicities;

  static StarsSpec make(std::vector<std::vector<int>> monomials, std::vector<int> multiplicities);

  void validate() const;
  int order() const;             ///< |k|
  std::size_t degree() const;    ///< n_k
  int num_colors() const;
  /// The color sequence of every star, in order.
  std::vector<std::vector<int>> stars() const;
  Permutation sigma() const;
  Coloring coloring() const;
};

/// Product of the traces of the given stars (color sequences) as a MomentSpec.
MomentSpec stars_moment_spec(const std::vector<std::vector<int>>& stars, int num_colors);

/// Partition of {0..n-1}; blocks sorted internally and ordered by minimum.
struct SetPartition {
  std::vector<std::vector<int>> blocks;

  std::string to_string() const;
  friend bool operator==(const SetPartition&, const SetPartition&) = default;
};

inline constexpr int kMaxPartitionSize = 12;

/// Visits every set partition of {0..n-1} once, in restricted-growth-string
/// order. Throws EnumerationLimitError when n exceeds kMaxPartitionSize.
void for_each_set_partition(int n, const std::function<void(const SetPartition&)>& f);
std::vector<SetPartition> enumerate_set_partitions(int n);
std::uint64_t bell_number(int n);

/// Cumulants of the traces of the stars, graded by genus. Grade g holds
///   sum over transitive a in S_{n_k}(t_k) of genus g of
///   prod_r lambda_r^{#C_r(a)} * prod over faces of trN(C word)
/// and the cumulant of the raw traces under p_r = lambda_r N, Sigma_r = C_r / N
/// is sum_g N^{2 - 2g - |k|} * grade g.
struct GenusGradedExpr {
  int order = 0;  ///< |k|
  std::size_t degree = 0;
  std::map<int, TraceExpr> grades;

  int n_exponent(int genus) const { return 2 - 2 * genus - order; }
  /// Rewrites in terms of p_r and raw traces of Sigma_r. Every N power cancels
  /// exactly, which makes this directly comparable to the moment route.
  TraceExpr to_shape_form() const;
  std::string to_string() const;
};

GenusGradedExpr cumulant_hypermap(const StarsSpec& spec, const EngineOptions& options = {});

/// Solves M_B = sum over partitions V of B of prod_{B' in V} c_{B'} for the
/// cumulant of all stars, recursively over subsets of stars. `moment` maps a
/// sorted list of star indices to the joint moment of their traces.
template <class V>
V cumulant_from_moments(int num_stars, const std::function<V(const std::vector<int>&)>& moment) {
  if (num_stars < 1) throw InvalidArgument("need at least one star");
  if (num_stars > kMaxPartitionSize)
    throw EnumerationLimitError("cumulant of order " + std::to_string(num_stars),
                                kMaxPartitionSize);
  const unsigned full = (1u << num_stars) - 1;
  std::vector<V> cumulant(full + 1);
  // Increasing masks visit every proper subset before its superset.
  for (unsigned mask = 1; mask <= full; ++mask) {
    std::vector<int> members;
    for (int i = 0; i < num_stars; ++i)
      if (mask & (1u << i)) members.push_back(i);
    V value = moment(members);
    for_each_set_partition(static_cast<int>(members.size()), [&](const SetPartition& part) {
      if (part.blocks.size() < 2) return;
      V product{};
      bool first = true;
      for (const auto& block : part.blocks) {
        unsigned sub = 0;
        for (int local : block) sub |= 1u << members[static_cast<std::size_t>(local)];
        if (first) {
          product = cumulant[sub];
          first = false;
        } else {
          product = product * cumulant[sub];
        }
      }
      value = value - product;
    });
    cumulant[mask] = std::move(value);
  }
  return cumulant[full];
}

/// Exact cumulant of the traces through the moment route, with moment_symbolic
/// as the oracle for every sub-product of stars.
TraceExpr cumulant_from_moments_symbolic(const StarsSpec& spec, const EngineOptions& options = {});

/// Numeric cumulant through the moment route with moment_numeric.
Complex cumulant_from_moments_numeric(const StarsSpec& spec, const WishartModel& model,
                                      const EngineOptions& options = {});

}  // namespace wishart

#endif  // WISHART_CUMULANTS_HPP

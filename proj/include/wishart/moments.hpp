#ifndef WISHART_MOMENTS_HPP
#define WISHART_MOMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wishart/coloring.hpp"
#include "wishart/model.hpp"
#include "wishart/permutation.hpp"
#include "wishart/trace_expr.hpp"

namespace wishart {

/// Parameters of the trace monomial q_{sigma,t,h}: sigma groups positions into
/// traces, t colors positions by matrix, hslots names an optional constant
/// matrix in front of each position (empty name = identity).
struct MomentSpec {
  Permutation sigma;
  Coloring t;
  std::vector<std::string> hslots;  ///< empty, or one entry per position

  std::size_t degree() const { return sigma.size(); }
  void validate() const;
  /// Words of the cycles of p read with this spec's coloring and h-slots.
  std::vector<TraceWord> words_of(const Permutation& p) const;
};

struct EngineOptions {
  std::uint64_t enum_cap = kDefaultEnumerationCap;
  std::size_t workers = 1;
  std::size_t shards = 0;  ///< 0: one shard per worker
};

/// E q_{sigma,t,h}(W_1..W_s) as the sum over a in S_n(t) of
/// prod_r p_r^{#C_r(a)} times the words of the cycles of sigma a (raw traces).
TraceExpr moment_symbolic(const MomentSpec& spec, const EngineOptions& options = {});

/// The same sum evaluated numerically while streaming over S_n(t). Per-shard
/// partial sums are compensated and merged in shard order, so the result is
/// reproducible for a fixed shard count.
Complex moment_numeric(const MomentSpec& spec, const WishartModel& model, const HBinding& hbind = {},
                       const EngineOptions& options = {});

/// Single-matrix form: sum over pi1 in S_n of p^{#C(pi1^-1 pi0)} r_{pi1}(h)(Sigma),
/// where r_pi(h)(x) = prod over cycles of tr(x h_{j1} x h_{j2} ...). The symbol
/// used for p is p1 so the result is directly comparable with moment_symbolic.
TraceExpr glm_moment(const Permutation& pi0, const std::vector<std::string>& hslots = {},
                     const EngineOptions& options = {});

/// E p_lambda(W) for W with Sigma = I: sum over a in S_n of p^{#C(a)} N^{#C(a sigma)}
/// where sigma is the canonical permutation of cycle type `partition`.
TraceExpr hss_moment(const std::vector<int>& partition, const EngineOptions& options = {});

/// E q_{sigma,t,I} for Sigma_r = I and a common shape p:
/// sum over a in S_n(t) of p^{#C(a)} N^{#C(a^-1 sigma)}.
TraceExpr mn_moment(const Permutation& sigma, const Coloring& t, const EngineOptions& options = {});

/// Canonical permutation with the given cycle lengths, cycles laid out consecutively.
Permutation permutation_of_type(const std::vector<int>& partition);

/// Substitutes p_r -> p and every raw word -> N (all Sigma_r = I, common shape).
TraceExpr specialize_identity_common_shape(const TraceExpr& e);

/// Substitutes p_r -> p and recolors every word to color 0 (common shape and scale).
TraceExpr specialize_common(const TraceExpr& e);

}  // namespace wishart

#endif  // WISHART_MOMENTS_HPP

#include "wishart/moments.hpp"

#include <cmath>
#include <map>

#include "wishart/error.hpp"
#include "wishart/evaluate.hpp"
#include "wishart/parallel.hpp"

namespace wishart {

void MomentSpec::validate() const {
  if (sigma.size() == 0) throw InvalidArgument("empty monomial");
  if (sigma.size() != t.size())
    throw DimensionError("sigma acts on " + std::to_string(sigma.size()) +
                         " positions but the coloring has " + std::to_string(t.size()));
  if (!hslots.empty() && hslots.size() != t.size())
    throw DimensionError("h-slot list must have one entry per position");
}

std::vector<TraceWord> MomentSpec::words_of(const Permutation& p) const {
  return words_from_cycles(p, t, hslots);
}

namespace {

std::size_t shard_count(const EngineOptions& o) {
  return o.shards ? o.shards : std::max<std::size_t>(1, o.workers);
}

// Per-color cycle counts of a color-preserving permutation.
void count_color_cycles(const Permutation& a, const Coloring& t, std::vector<int>& counts,
                        std::vector<char>& seen) {
  std::fill(counts.begin(), counts.end(), 0);
  std::fill(seen.begin(), seen.end(), 0);
  for (std::size_t start = 0; start < a.size(); ++start) {
    if (seen[start]) continue;
    ++counts[static_cast<std::size_t>(t[start])];
    for (int i = static_cast<int>(start); !seen[static_cast<std::size_t>(i)]; i = a(i))
      seen[static_cast<std::size_t>(i)] = 1;
  }
}

Monomial shape_monomial(const std::vector<int>& counts) {
  Monomial m;
  for (std::size_t r = 0; r < counts.size(); ++r)
    m.multiply(Symbol::shape(static_cast<int>(r)), counts[r]);
  return m;
}

TraceExpr merge(std::vector<TraceExpr> parts, TraceConvention convention) {
  TraceExpr total(convention);
  for (const auto& p : parts) total += p;
  return total;
}

}  // namespace

TraceExpr moment_symbolic(const MomentSpec& spec, const EngineOptions& options) {
  spec.validate();
  const ColorPreservingEnumeration alphas(spec.t, options.enum_cap);
  const auto shards = shard_count(options);
  auto parts = run_shards<TraceExpr>(shards, options.workers, [&](std::size_t shard) {
    TraceExpr part;
    std::vector<int> counts(static_cast<std::size_t>(spec.t.num_colors()));
    std::vector<char> seen(spec.degree());
    alphas.for_each_in_shard(shard, shards, [&](const Permutation& a) {
      count_color_cycles(a, spec.t, counts, seen);
      part.add_term(1, shape_monomial(counts), spec.words_of(compose(spec.sigma, a)));
    });
    return part;
  });
  return merge(std::move(parts), TraceConvention::Raw);
}

Complex moment_numeric(const MomentSpec& spec, const WishartModel& model, const HBinding& hbind,
                       const EngineOptions& options) {
  spec.validate();
  model.validate();
  if (spec.t.num_colors() > model.num_matrices())
    throw DimensionError("monomial uses " + std::to_string(spec.t.num_colors()) +
                         " matrices but the model has " + std::to_string(model.num_matrices()));
  for (const auto& name : spec.hslots)
    if (!name.empty() && !hbind.count(name))
      throw InvalidArgument("unbound h-slot '" + name + "'");

  const ColorPreservingEnumeration alphas(spec.t, options.enum_cap);
  const auto shards = shard_count(options);
  const auto colors = static_cast<std::size_t>(spec.t.num_colors());
  // powers[r][k] = p_r^k
  std::vector<std::vector<double>> powers(colors, std::vector<double>(spec.degree() + 1, 1.0));
  for (std::size_t r = 0; r < colors; ++r)
    for (std::size_t k = 1; k <= spec.degree(); ++k)
      powers[r][k] = powers[r][k - 1] * model.shapes[r];

  auto parts = run_shards<Complex>(shards, options.workers, [&](std::size_t shard) {
    CompensatedSum sum;
    std::map<TraceWord, Complex> traces;
    std::vector<int> counts(colors);
    std::vector<char> seen(spec.degree());
    alphas.for_each_in_shard(shard, shards, [&](const Permutation& a) {
      count_color_cycles(a, spec.t, counts, seen);
      Complex term = 1.0;
      for (std::size_t r = 0; r < colors; ++r) term *= powers[r][static_cast<std::size_t>(counts[r])];
      for (const auto& c : cycles(compose(spec.sigma, a)).cycles) {
        TraceWord w = word_from_cycle(c, spec.t, spec.hslots);
        auto it = traces.find(w);
        if (it == traces.end()) {
          const Complex tr = word_trace(w, model.scales, hbind);
          it = traces.emplace(std::move(w), tr).first;
        }
        term *= it->second;
      }
      sum.add(term);
    });
    return sum.value();
  });
  CompensatedSum total;
  for (const auto& p : parts) total.add(p);
  return total.value();
}

TraceExpr glm_moment(const Permutation& pi0, const std::vector<std::string>& hslots,
                     const EngineOptions& options) {
  if (pi0.size() == 0) throw InvalidArgument("empty monomial");
  if (!hslots.empty() && hslots.size() != pi0.size())
    throw DimensionError("h-slot list must have one entry per position");
  const Coloring single = Coloring::constant(pi0.size());
  const ColorPreservingEnumeration all(single, options.enum_cap);
  const auto shards = shard_count(options);
  auto parts = run_shards<TraceExpr>(shards, options.workers, [&](std::size_t shard) {
    TraceExpr part;
    all.for_each_in_shard(shard, shards, [&](const Permutation& pi1) {
      const int exponent = cycle_count(compose(pi1.inverse(), pi0));
      // tr(x h_{j1} x h_{j2} ...) is cyclically the word (h_{j1} x)(h_{j2} x)...
      part.add_term(1, Monomial::of(Symbol::shape(0), exponent),
                    words_from_cycles(pi1, single, hslots));
    });
    return part;
  });
  return merge(std::move(parts), TraceConvention::Raw);
}

Permutation permutation_of_type(const std::vector<int>& partition) {
  std::vector<Cycle> cyc;
  int next = 0;
  for (int len : partition) {
    if (len <= 0) throw InvalidArgument("partition parts must be positive");
    Cycle c;
    for (int i = 0; i < len; ++i) c.push_back(next++);
    cyc.push_back(std::move(c));
  }
  if (next == 0) throw InvalidArgument("empty partition");
  return Permutation::from_cycles(static_cast<std::size_t>(next), cyc);
}

TraceExpr hss_moment(const std::vector<int>& partition, const EngineOptions& options) {
  const Permutation sigma = permutation_of_type(partition);
  const ColorPreservingEnumeration all(Coloring::constant(sigma.size()), options.enum_cap);
  const auto shards = shard_count(options);
  auto parts = run_shards<TraceExpr>(shards, options.workers, [&](std::size_t shard) {
    TraceExpr part;
    all.for_each_in_shard(shard, shards, [&](const Permutation& a) {
      Monomial m = Monomial::of(Symbol::common_shape(), cycle_count(a));
      m.multiply(Symbol::dimension(), cycle_count(compose(a, sigma)));
      part.add_term(1, m, {});
    });
    return part;
  });
  return merge(std::move(parts), TraceConvention::Raw);
}

TraceExpr mn_moment(const Permutation& sigma, const Coloring& t, const EngineOptions& options) {
  if (sigma.size() != t.size()) throw DimensionError("sigma and coloring sizes differ");
  const ColorPreservingEnumeration alphas(t, options.enum_cap);
  const auto shards = shard_count(options);
  auto parts = run_shards<TraceExpr>(shards, options.workers, [&](std::size_t shard) {
    TraceExpr part;
    alphas.for_each_in_shard(shard, shards, [&](const Permutation& a) {
      Monomial m = Monomial::of(Symbol::common_shape(), cycle_count(a));
      m.multiply(Symbol::dimension(), cycle_count(compose(a.inverse(), sigma)));
      part.add_term(1, m, {});
    });
    return part;
  });
  return merge(std::move(parts), TraceConvention::Raw);
}

namespace {

Monomial common_symbols(const Monomial& m) {
  Monomial out;
  for (const auto& [s, e] : m.powers()) {
    if (s.kind == SymbolKind::Shape)
      out.multiply(Symbol::common_shape(), e);
    else if (s.kind == SymbolKind::Scale)
      out.multiply(Symbol::common_scale(), e);
    else
      out.multiply(s, e);
  }
  return out;
}

}  // namespace

TraceExpr specialize_identity_common_shape(const TraceExpr& e) {
  if (e.convention() != TraceConvention::Raw && e.has_words())
    throw InvalidArgument("identity specialization expects raw traces");
  return e.map_keys([](const TermKey& key) {
    TermKey out{common_symbols(key.monomial), {}};
    for (const auto& w : key.words) {
      if (w.has_hslots()) throw InvalidArgument("identity specialization does not bind h-slots");
      out.monomial.multiply(Symbol::dimension(), 1);
    }
    return out;
  });
}

TraceExpr specialize_common(const TraceExpr& e) {
  return e.map_keys([](const TermKey& key) {
    TermKey out{common_symbols(key.monomial), {}};
    for (const auto& w : key.words) out.words.push_back(w.recolored(0));
    return out;
  });
}

}  // namespace wishart

#include "wishart/cumulants.hpp"

#include <algorithm>

#include "wishart/coloring.hpp"
#include "wishart/parallel.hpp"

namespace wishart {

StarsSpec StarsSpec::make(std::vector<std::vector<int>> monomials, std::vector<int> multiplicities) {
  StarsSpec s{std::move(monomials), std::move(multiplicities)};
  s.validate();
  return s;
}

void StarsSpec::validate() const {
  if (monomials.empty()) throw InvalidArgument("need at least one monomial");
  if (monomials.size() != multiplicities.size())
    throw DimensionError("need one multiplicity per monomial");
  for (const auto& q : monomials) {
    if (q.empty()) throw InvalidArgument("monomials must have degree at least 1");
    for (int c : q)
      if (c < 0) throw InvalidArgument("colors are numbered from 1");
  }
  for (int k : multiplicities)
    if (k < 0) throw InvalidArgument("multiplicities must be nonnegative");
  if (order() < 1) throw InvalidArgument("total multiplicity |k| must be at least 1");
}

int StarsSpec::order() const {
  int total = 0;
  for (int k : multiplicities) total += k;
  return total;
}

std::size_t StarsSpec::degree() const {
  std::size_t total = 0;
  for (std::size_t j = 0; j < monomials.size(); ++j)
    total += monomials[j].size() * static_cast<std::size_t>(multiplicities[j]);
  return total;
}

int StarsSpec::num_colors() const {
  int largest = 0;
  for (const auto& q : monomials)
    for (int c : q) largest = std::max(largest, c);
  return largest + 1;
}

std::vector<std::vector<int>> StarsSpec::stars() const {
  std::vector<std::vector<int>> out;
  for (std::size_t j = 0; j < monomials.size(); ++j)
    for (int i = 0; i < multiplicities[j]; ++i) out.push_back(monomials[j]);
  return out;
}

MomentSpec stars_moment_spec(const std::vector<std::vector<int>>& stars, int num_colors) {
  std::vector<Cycle> cyc;
  std::vector<int> colors;
  for (const auto& q : stars) {
    Cycle c;
    for (int color : q) {
      c.push_back(static_cast<int>(colors.size()));
      colors.push_back(color);
    }
    cyc.push_back(std::move(c));
  }
  return {Permutation::from_cycles(colors.size(), cyc), Coloring(std::move(colors), num_colors), {}};
}

Permutation StarsSpec::sigma() const { return stars_moment_spec(stars(), num_colors()).sigma; }

Coloring StarsSpec::coloring() const { return stars_moment_spec(stars(), num_colors()).t; }

std::string SetPartition::to_string() const {
  std::string out;
  for (const auto& b : blocks) {
    out += '{';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(b[i] + 1);
    }
    out += '}';
  }
  return out;
}

void for_each_set_partition(int n, const std::function<void(const SetPartition&)>& f) {
  if (n < 1) throw InvalidArgument("set partitions need n >= 1");
  if (n > kMaxPartitionSize)
    throw EnumerationLimitError("set partitions of " + std::to_string(n) + " elements",
                                bell_number(kMaxPartitionSize));
  // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  const auto size = static_cast<std::size_t>(n);
  std::vector<int> a(size, 0), prefix_max(size, 0);
  SetPartition part;
  for (;;) {
    const int blocks = prefix_max[size - 1] + 1;
    part.blocks.assign(static_cast<std::size_t>(blocks), {});
    for (std::size_t i = 0; i < size; ++i)
      part.blocks[static_cast<std::size_t>(a[i])].push_back(static_cast<int>(i));
    f(part);
    std::size_t i = size - 1;
    while (i > 0 && a[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) return;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < size; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

std::vector<SetPartition> enumerate_set_partitions(int n) {
  std::vector<SetPartition> out;
  for_each_set_partition(n, [&](const SetPartition& p) { out.push_back(p); });
  return out;
}

std::uint64_t bell_number(int n) {
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

GenusGradedExpr cumulant_hypermap(const StarsSpec& spec, const EngineOptions& options) {
  spec.validate();
  const Permutation sigma = spec.sigma();
  const Coloring t = spec.coloring();
  const int n = static_cast<int>(sigma.size());
  const int sigma_cycles = cycle_count(sigma);
  const ColorPreservingEnumeration alphas(t, options.enum_cap);
  const std::size_t shards = options.shards ? options.shards : std::max<std::size_t>(1, options.workers);

  using Grades = std::map<int, TraceExpr>;
  auto parts = run_shards<Grades>(shards, options.workers, [&](std::size_t shard) {
    Grades grades;
    alphas.for_each_in_shard(shard, shards, [&](const Permutation& a) {
      if (!is_transitive(sigma, a)) return;
      const Permutation faces = compose(sigma, a);
      const int chi = sigma_cycles + cycle_count(a) + cycle_count(faces) - n;
      if ((2 - chi) % 2 != 0 || chi > 2)
        throw Error("transitive pair with non-integral or negative genus: " + a.to_string());
      const int genus = (2 - chi) / 2;
      const auto counts = color_cycle_counts(a, t);
      Monomial m;
      for (std::size_t r = 0; r < counts.size(); ++r)
        m.multiply(Symbol::scale(static_cast<int>(r)), counts[r]);
      auto [it, inserted] = grades.try_emplace(genus, TraceConvention::Normalized);
      it->second.add_term(1, m, words_from_cycles(faces, t));
    });
    return grades;
  });

  GenusGradedExpr out;
  out.order = spec.order();
  out.degree = spec.degree();
  for (const auto& part : parts)
    for (const auto& [g, e] : part) {
      auto [it, inserted] = out.grades.try_emplace(g, TraceConvention::Normalized);
      it->second += e;
    }
  for (auto it = out.grades.begin(); it != out.grades.end();)
    it = it->second.is_zero() ? out.grades.erase(it) : std::next(it);
  return out;
}

TraceExpr GenusGradedExpr::to_shape_form() const {
  TraceExpr total(TraceConvention::Raw);
  for (const auto& [g, expr] : grades) {
    const int base = n_exponent(g);
    total += expr
                 .map_keys([base](const TermKey& key) {
                   TermKey out{{}, key.words};
                   out.monomial.multiply(Symbol::dimension(), base);
                   for (const auto& [s, e] : key.monomial.powers()) {
                     if (s.kind == SymbolKind::Scale) {
                       // lambda_r = p_r / N
                       out.monomial.multiply(Symbol::shape(s.index), e);
                       out.monomial.multiply(Symbol::dimension(), -e);
                     } else {
                       out.monomial.multiply(s, e);
                     }
                   }
                   // trN(C_{i1}..C_{il}) = N^{l-1} tr(Sigma_{i1}..Sigma_{il})
                   for (const auto& w : key.words)
                     out.monomial.multiply(Symbol::dimension(), static_cast<int>(w.length()) - 1);
                   return out;
                 })
                 .with_convention(TraceConvention::Raw);
  }
  return total;
}

std::string GenusGradedExpr::to_string() const {
  if (grades.empty()) return "0";
  std::string out;
  for (const auto& [g, expr] : grades) {
    if (!out.empty()) out += '\n';
    out += "genus " + std::to_string(g) + " [N^" + std::to_string(n_exponent(g)) + "]: " +
           expr.to_string();
  }
  return out;
}

TraceExpr cumulant_from_moments_symbolic(const StarsSpec& spec, const EngineOptions& options) {
  spec.validate();
  const auto stars = spec.stars();
  const int colors = spec.num_colors();
  std::function<TraceExpr(const std::vector<int>&)> moment = [&](const std::vector<int>& idx) {
    std::vector<std::vector<int>> chosen;
    for (int i : idx) chosen.push_back(stars[static_cast<std::size_t>(i)]);
    return moment_symbolic(stars_moment_spec(chosen, colors), options);
  };
  return cumulant_from_moments<TraceExpr>(spec.order(), moment);
}

Complex cumulant_from_moments_numeric(const StarsSpec& spec, const WishartModel& model,
                                      const EngineOptions& options) {
  spec.validate();
  const auto stars = spec.stars();
  const int colors = spec.num_colors();
  std::function<Complex(const std::vector<int>&)> moment = [&](const std::vector<int>& idx) {
    std::vector<std::vector<int>> chosen;
    for (int i : idx) chosen.push_back(stars[static_cast<std::size_t>(i)]);
    return moment_numeric(stars_moment_spec(chosen, colors), model, {}, options);
  };
  return cumulant_from_moments<Complex>(spec.order(), moment);
}

}  // namespace wishart

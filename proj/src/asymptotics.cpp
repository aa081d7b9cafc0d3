#include "wishart/asymptotics.hpp"

#include <limits>

#include "wishart/cumulants.hpp"
#include "wishart/error.hpp"
#include "wishart/evaluate.hpp"

namespace wishart {

MomentSequence MomentSequence::common(std::vector<Complex> m) {
  MomentSequence s;
  s.m_ = std::move(m);
  return s;
}

MomentSequence MomentSequence::common(const std::vector<double>& m) {
  return common(std::vector<Complex>(m.begin(), m.end()));
}

MomentSequence MomentSequence::from_matrix(const ComplexMatrix& c, std::size_t k_max) {
  if (c.rows() == 0 || c.rows() != c.cols()) throw DimensionError("C must be a nonempty square matrix");
  const double n = static_cast<double>(c.rows());
  std::vector<Complex> m;
  ComplexMatrix power = c;
  for (std::size_t k = 1; k <= k_max; ++k) {
    m.push_back(power.trace() / n);
    power = power * c;
  }
  return common(std::move(m));
}

MomentSequence MomentSequence::from_matrices(std::vector<ComplexMatrix> cs) {
  if (cs.empty()) throw DimensionError("no matrices supplied");
  return oracle([cs = std::move(cs)](const TraceWord& w) {
    return word_trace(w, cs, {}) / static_cast<double>(cs.front().rows());
  });
}

MomentSequence MomentSequence::oracle(WordOracle f) {
  if (!f) throw InvalidArgument("empty word oracle");
  MomentSequence s;
  s.oracle_ = std::move(f);
  return s;
}

std::size_t MomentSequence::max_order() const {
  return oracle_ ? std::numeric_limits<std::size_t>::max() : m_.size();
}

Complex MomentSequence::moment(std::size_t k) const {
  if (oracle_) throw InvalidArgument("m_k is undefined for a word oracle");
  if (k == 0 || k > m_.size())
    throw InvalidArgument("insufficient moments: need m_" + std::to_string(k) + " but only " +
                          std::to_string(m_.size()) + " supplied");
  return m_[k - 1];
}

Complex MomentSequence::word(const TraceWord& w) const {
  if (w.has_hslots()) throw InvalidArgument("limit words cannot carry h-slots");
  return oracle_ ? oracle_(w) : moment(w.length());
}

Complex evaluate_limit(const TraceExpr& e, const std::vector<double>& lambdas,
                       const MomentSequence& m) {
  if (lambdas.empty()) throw InvalidArgument("need at least one lambda");
  for (double l : lambdas)
    if (!(l > 0)) throw InvalidArgument("lambda must be positive");
  auto symbols = [&](const Symbol& s) -> Complex {
    switch (s.kind) {
      case SymbolKind::CommonScale:
        for (double l : lambdas)
          if (l != lambdas.front()) throw InvalidArgument("symbol lambda needs a common value");
        return lambdas.front();
      case SymbolKind::Scale:
        if (lambdas.size() == 1) return lambdas.front();
        if (static_cast<std::size_t>(s.index) >= lambdas.size())
          throw DimensionError("no value for " + s.to_string());
        return lambdas[static_cast<std::size_t>(s.index)];
      default:
        throw InvalidArgument("symbol " + s.to_string() + " has no limit value");
    }
  };
  if (e.has_words() && e.convention() != TraceConvention::Normalized)
    throw InvalidArgument("limit expressions use normalized traces");
  return evaluate(e, symbols, [&](const TraceWord& w) { return m.word(w); });
}

TraceExpr limit_mean_symbolic(const Coloring& t, const EngineOptions& options) {
  if (t.size() == 0) throw InvalidArgument("empty coloring");
  const Permutation sigma = Permutation::long_cycle(t.size());
  TraceExpr out(TraceConvention::Normalized);
  for (const auto& a : planar_set(t, sigma, options.enum_cap))
    out.add_term(1, Monomial::of(Symbol::common_scale(), cycle_count(a)),
                 words_from_cycles(compose(sigma, a), t));
  return out;
}

Complex limit_mean(const Coloring& t, double lambda, const MomentSequence& m,
                   const EngineOptions& options) {
  return evaluate_limit(limit_mean_symbolic(t, options), {lambda}, m);
}

CltSums clt_sums(const Coloring& t, const EngineOptions& options) {
  if (t.size() == 0) throw InvalidArgument("empty coloring");
  const std::size_t n = t.size();
  const Coloring doubled = double_coloring(t);
  const auto sets = connecting_planar_sets(t, options.enum_cap);
  CltSums out;
  const Permutation forward = two_star_forward(n);
  const Permutation reversed = two_star_reversed(n);
  for (const auto& a : sets.forward)
    out.z_squared.add_term(1, Monomial::of(Symbol::common_scale(), cycle_count(a)),
                           words_from_cycles(compose(forward, a), doubled));
  for (const auto& a : sets.reversed)
    out.z_abs_squared.add_term(1, Monomial::of(Symbol::common_scale(), cycle_count(a)),
                               words_from_cycles(compose(reversed, a), doubled));
  return out;
}

CltCovariance clt_covariance(const Coloring& t, double lambda, const MomentSequence& m,
                             const EngineOptions& options) {
  const CltSums sums = clt_sums(t, options);
  const Complex z2 = evaluate_limit(sums.z_squared, {lambda}, m);
  const Complex abs2 = evaluate_limit(sums.z_abs_squared, {lambda}, m);
  return {(abs2.real() + z2.real()) / 2, (abs2.real() - z2.real()) / 2, z2.imag() / 2};
}

TraceExpr limit_covariance_symbolic(const std::vector<int>& qa, const std::vector<int>& qb,
                                    const EngineOptions& options) {
  const GenusGradedExpr graded = cumulant_hypermap(StarsSpec::make({qa, qb}, {1, 1}), options);
  auto it = graded.grades.find(0);
  return it == graded.grades.end() ? TraceExpr(TraceConvention::Normalized) : it->second;
}

Complex limit_covariance(const std::vector<int>& qa, const std::vector<int>& qb,
                         const std::vector<double>& lambdas, const MomentSequence& m,
                         const EngineOptions& options) {
  return evaluate_limit(limit_covariance_symbolic(qa, qb, options), lambdas, m);
}

Complex mean_shift(const Coloring& t, double lambda, const MomentSequence& m,
                   const ComplexMatrix& c, const EngineOptions& options) {
  const TraceExpr center = limit_mean_symbolic(t, options);
  const MomentSequence finite = MomentSequence::from_matrix(c, t.size());
  return static_cast<double>(c.rows()) *
         (evaluate_limit(center, {lambda}, finite) - evaluate_limit(center, {lambda}, m));
}

AsymptoticReport asymptotic_report(const Coloring& t, double lambda, const MomentSequence& m,
                                   const std::optional<ComplexMatrix>& c,
                                   const EngineOptions& options) {
  AsymptoticReport r;
  r.center_coefficient = limit_mean(t, lambda, m, options);
  r.mean_shift_b = c ? mean_shift(t, lambda, m, *c, options) : Complex(0.0);
  r.covariance = clt_covariance(t, lambda, m, options);
  return r;
}

}  // namespace wishart

#include "wishart/evaluate.hpp"

#include <cmath>

#include "wishart/error.hpp"

namespace wishart {

namespace {

Complex power(Complex base, int e) {
  if (e >= 0) {
    Complex r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
  }
  return 1.0 / power(base, -e);
}

void check_inputs(const Permutation& sigma, const Coloring& t, const std::vector<ComplexMatrix>& h,
                  const std::vector<ComplexMatrix>& xs) {
  if (sigma.size() != t.size()) throw DimensionError("sigma and coloring sizes differ");
  if (!h.empty() && h.size() != t.size())
    throw DimensionError("need one h matrix per position");
  if (xs.empty()) throw DimensionError("no matrices supplied");
  const auto n = xs.front().rows();
  for (const auto& x : xs)
    if (x.rows() != n || x.cols() != n) throw DimensionError("matrices must be square of equal size");
  for (const auto& m : h)
    if (m.rows() != n || m.cols() != n) throw DimensionError("h matrices must match dimension N");
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= static_cast<int>(xs.size()))
      throw DimensionError("color " + std::to_string(t[i] + 1) + " has no matrix");
}

}  // namespace

Complex evaluate(const TraceExpr& e, const SymbolValue& symbol_value, const WordValue& word_value) {
  std::map<TraceWord, Complex> memo;
  auto word = [&](const TraceWord& w) {
    auto it = memo.find(w);
    if (it == memo.end()) it = memo.emplace(w, word_value(w)).first;
    return it->second;
  };
  Complex total = 0.0;
  for (const auto& [key, c] : e.terms()) {
    Complex term = static_cast<double>(c);
    for (const auto& [s, p] : key.monomial.powers()) term *= power(symbol_value(s), p);
    for (const auto& w : key.words) term *= word(w);
    total += term;
  }
  return total;
}

Complex word_trace(const TraceWord& w, const std::vector<ComplexMatrix>& xs, const HBinding& hbind) {
  if (xs.empty()) throw DimensionError("no matrices supplied");
  const auto n = xs.front().rows();
  ComplexMatrix prod = ComplexMatrix::Identity(n, n);
  for (const auto& letter : w.letters()) {
    if (letter.color < 0 || static_cast<std::size_t>(letter.color) >= xs.size())
      throw DimensionError("color " + std::to_string(letter.color + 1) + " has no matrix");
    const auto& x = xs[static_cast<std::size_t>(letter.color)];
    if (x.rows() != n || x.cols() != n) throw DimensionError("matrices must be square of equal size");
    if (!letter.hslot.empty()) {
      auto it = hbind.find(letter.hslot);
      if (it == hbind.end()) throw InvalidArgument("unbound h-slot '" + letter.hslot + "'");
      if (it->second.rows() != n || it->second.cols() != n)
        throw DimensionError("h-slot '" + letter.hslot + "' does not match dimension N");
      prod = prod * it->second;
    }
    prod = prod * x;
  }
  return prod.trace();
}

Complex evaluate(const TraceExpr& e, const WishartModel& model, const HBinding& hbind) {
  model.validate();
  const double n = model.dim;
  auto symbols = [&](const Symbol& s) -> Complex {
    switch (s.kind) {
      case SymbolKind::Shape:
        if (s.index >= model.num_matrices())
          throw DimensionError("no shape parameter for " + s.to_string());
        return model.shapes[static_cast<std::size_t>(s.index)];
      case SymbolKind::CommonShape:
        for (double p : model.shapes)
          if (p != model.shapes.front())
            throw InvalidArgument("symbol p needs equal shape parameters");
        if (model.shapes.empty()) throw InvalidArgument("symbol p needs a shape parameter");
        return model.shapes.front();
      case SymbolKind::Dimension:
        return n;
      default:
        throw InvalidArgument("symbol " + s.to_string() + " has no value in a Wishart model");
    }
  };
  const bool normalized = e.convention() == TraceConvention::Normalized;
  auto words = [&](const TraceWord& w) {
    const Complex tr = word_trace(w, model.scales, hbind);
    return normalized ? tr / n : tr;
  };
  return evaluate(e, symbols, words);
}

Complex trace_monomial(const Permutation& sigma, const Coloring& t,
                       const std::vector<ComplexMatrix>& h, const std::vector<ComplexMatrix>& xs) {
  check_inputs(sigma, t, h, xs);
  const auto n = xs.front().rows();
  Complex result = 1.0;
  for (const auto& c : cycles(sigma).cycles) {
    ComplexMatrix prod = ComplexMatrix::Identity(n, n);
    for (int j : c) {
      const auto pos = static_cast<std::size_t>(j);
      if (!h.empty()) prod = prod * h[pos];
      prod = prod * xs[static_cast<std::size_t>(t[pos])];
    }
    result *= prod.trace();
  }
  return result;
}

Complex entry_sum(const Permutation& sigma, const Coloring& t, const std::vector<ComplexMatrix>& h,
                  const std::vector<ComplexMatrix>& xs) {
  check_inputs(sigma, t, h, xs);
  const auto n = static_cast<std::size_t>(t.size());
  const auto dim = static_cast<int>(xs.front().rows());
  std::vector<ComplexMatrix> factors(n);
  for (std::size_t i = 0; i < n; ++i)
    factors[i] = h.empty() ? xs[static_cast<std::size_t>(t[i])]
                           : ComplexMatrix(h[i] * xs[static_cast<std::size_t>(t[i])]);
  std::vector<int> index(n, 0);  // odometer over J
  Complex total = 0.0;
  for (;;) {
    Complex term = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      term *= factors[i](index[i], index[static_cast<std::size_t>(sigma(static_cast<int>(i)))]);
    total += term;
    std::size_t k = 0;
    while (k < n && ++index[k] == dim) index[k++] = 0;
    if (k == n) break;
  }
  return total;
}

EntrySumCheck entry_sum_identity_check(const Permutation& sigma, const Coloring& t,
                                       const std::vector<ComplexMatrix>& h,
                                       const std::vector<ComplexMatrix>& xs) {
  return {trace_monomial(sigma, t, h, xs), entry_sum(sigma, t, h, xs)};
}

}  // namespace wishart

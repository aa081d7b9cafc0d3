#ifndef WISHART_EVALUATE_HPP
#define WISHART_EVALUATE_HPP

#include <functional>
#include <vector>

#include "wishart/model.hpp"
#include "wishart/trace_expr.hpp"

namespace wishart {

using SymbolValue = std::function<Complex(const Symbol&)>;
/// Value of a word under the convention of the expression being evaluated.
using WordValue = std::function<Complex(const TraceWord&)>;

/// Substitutes numbers for symbols and words. Word values are memoized per call.
Complex evaluate(const TraceExpr& e, const SymbolValue& symbol_value, const WordValue& word_value);

/// Evaluates at p_r = model.shapes[r], N = model.dim and words read as traces
/// of products of h and Sigma, divided by N when the expression is normalized.
/// `p` (CommonShape) is accepted when all shapes agree. Throws on lambda
/// symbols, unbound h-slots, out-of-range colors and dimension mismatches.
Complex evaluate(const TraceExpr& e, const WishartModel& model, const HBinding& hbind = {});

/// tr(prod_j h_j x_{color_j}) over the letters of w.
Complex word_trace(const TraceWord& w, const std::vector<ComplexMatrix>& xs,
                   const HBinding& hbind = {});

/// q_{sigma,t,h}(x_1..x_s) as a product of traces over the cycles of sigma.
/// `h` holds one matrix per position, or is empty for h = I.
Complex trace_monomial(const Permutation& sigma, const Coloring& t,
                       const std::vector<ComplexMatrix>& h, const std::vector<ComplexMatrix>& xs);

/// The same quantity as a sum over all index maps J: {1..n} -> {1..N} of
/// prod_i [h_i x_{t(i)}]_{J(i), J(sigma(i))}. Costs N^n terms.
Complex entry_sum(const Permutation& sigma, const Coloring& t,
                  const std::vector<ComplexMatrix>& h, const std::vector<ComplexMatrix>& xs);

struct EntrySumCheck {
  Complex trace_product;
  Complex entry_sum;
};

EntrySumCheck entry_sum_identity_check(const Permutation& sigma, const Coloring& t,
                                       const std::vector<ComplexMatrix>& h,
                                       const std::vector<ComplexMatrix>& xs);

}  // namespace wishart

#endif  // WISHART_EVALUATE_HPP

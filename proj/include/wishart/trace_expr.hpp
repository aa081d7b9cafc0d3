#ifndef WISHART_TRACE_EXPR_HPP
#define WISHART_TRACE_EXPR_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wishart/trace_word.hpp"

namespace wishart {

enum class SymbolKind {
  Shape,        ///< p_r, one per color
  CommonShape,  ///< p, shared by all colors
  Scale,        ///< lambda_r, with p_r = lambda_r N
  CommonScale,  ///< lambda
  Dimension,    ///< N
};

struct Symbol {
  SymbolKind kind = SymbolKind::Dimension;
  int index = 0;  ///< zero-based color for Shape and Scale, 0 otherwise

  static Symbol shape(int color) { return {SymbolKind::Shape, color}; }
  static Symbol common_shape() { return {SymbolKind::CommonShape, 0}; }
  static Symbol scale(int color) { return {SymbolKind::Scale, color}; }
  static Symbol common_scale() { return {SymbolKind::CommonScale, 0}; }
  static Symbol dimension() { return {SymbolKind::Dimension, 0}; }

  /// p1, p, lambda1, lambda, N
  std::string to_string() const;

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// Product of symbols with nonzero integer exponents (negative allowed).
class Monomial {
 public:
  Monomial() = default;
  static Monomial of(Symbol s, int power = 1);

  int power(Symbol s) const;
  bool empty() const { return powers_.empty(); }
  const std::vector<std::pair<Symbol, int>>& powers() const { return powers_; }
  /// Multiplies in s^power, dropping the entry if the exponent cancels.
  void multiply(Symbol s, int power);
  Monomial operator*(const Monomial& other) const;
  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::pair<Symbol, int>> powers_;  // sorted by symbol
};

/// Whether trace words mean tr or the normalized trace tr_N = tr / N.
enum class TraceConvention { Raw, Normalized };

/// Key of one term: a monomial and a sorted multiset of trace words.
struct TermKey {
  Monomial monomial;
  std::vector<TraceWord> words;

  friend bool operator==(const TermKey&, const TermKey&) = default;
  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

/// Exact polynomial in the symbols whose coefficients are products of
/// traces, with int64 coefficients checked for overflow. Words commute, so
/// each term carries a multiset of words. The trace convention is a property
/// of the whole expression.
class TraceExpr {
 public:
  using Terms = std::map<TermKey, std::int64_t>;

  explicit TraceExpr(TraceConvention convention = TraceConvention::Raw)
      : convention_(convention) {}

  static TraceExpr constant(std::int64_t c, TraceConvention convention = TraceConvention::Raw);
  static TraceExpr monomial(const Monomial& m, std::int64_t c = 1,
                            TraceConvention convention = TraceConvention::Raw);
  static TraceExpr words(std::vector<TraceWord> words, const Monomial& m = {},
                         std::int64_t c = 1, TraceConvention convention = TraceConvention::Raw);

  TraceConvention convention() const { return convention_; }
  /// Relabels the convention; for expressions with words this changes meaning,
  /// so only use it when the words were built for the target convention.
  TraceExpr with_convention(TraceConvention convention) const;

  /// Adds c * monomial * prod(words); `words` need not be sorted.
  void add_term(std::int64_t c, const Monomial& monomial, std::vector<TraceWord> words);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool has_words() const;

  TraceExpr& operator+=(const TraceExpr& other);
  TraceExpr& operator-=(const TraceExpr& other);
  TraceExpr& operator*=(const TraceExpr& other);
  TraceExpr scaled(std::int64_t c) const;

  friend TraceExpr operator+(TraceExpr a, const TraceExpr& b) { return a += b; }
  friend TraceExpr operator-(TraceExpr a, const TraceExpr& b) { return a -= b; }
  friend TraceExpr operator*(TraceExpr a, const TraceExpr& b) { return a *= b; }

  /// Applies f(const TermKey&) -> TermKey to every key and re-merges.
  template <class F>
  TraceExpr map_keys(F&& f) const {
    TraceExpr out(convention_);
    for (const auto& [key, c] : terms_) {
      TermKey k = f(key);
      out.add_term(c, k.monomial, std::move(k.words));
    }
    return out;
  }

  /// "p1^2*p2 * tr(x1 x2 x1 x2) + ..." in term order; "0" when empty.
  std::string to_string() const;

  friend bool operator==(const TraceExpr& a, const TraceExpr& b);

 private:
  TraceConvention resolve_convention(const TraceExpr& other) const;

  TraceConvention convention_;
  Terms terms_;
};

/// Overflow-checked int64 helpers; throw OverflowError.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace wishart

#endif  // WISHART_TRACE_EXPR_HPP

#include "wishart/trace_expr.hpp"

#include <algorithm>

#include "wishart/error.hpp"

namespace wishart {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in coefficient sum");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("integer overflow in coefficient product");
  return r;
}

std::string Symbol::to_string() const {
  switch (kind) {
    case SymbolKind::Shape:
      return "p" + std::to_string(index + 1);
    case SymbolKind::CommonShape:
      return "p";
    case SymbolKind::Scale:
      return "lambda" + std::to_string(index + 1);
    case SymbolKind::CommonScale:
      return "lambda";
    case SymbolKind::Dimension:
      return "N";
  }
  return "?";
}

Monomial Monomial::of(Symbol s, int power) {
  Monomial m;
  m.multiply(s, power);
  return m;
}

int Monomial::power(Symbol s) const {
  for (const auto& [sym, e] : powers_)
    if (sym == s) return e;
  return 0;
}

void Monomial::multiply(Symbol s, int power) {
  if (power == 0) return;
  auto it = std::lower_bound(powers_.begin(), powers_.end(), s,
                             [](const auto& entry, const Symbol& key) { return entry.first < key; });
  if (it != powers_.end() && it->first == s) {
    it->second += power;
    if (it->second == 0) powers_.erase(it);
  } else {
    powers_.insert(it, {s, power});
  }
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out = *this;
  for (const auto& [s, e] : other.powers_) out.multiply(s, e);
  return out;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [s, e] : powers_) {
    if (!out.empty()) out += '*';
    out += s.to_string();
    if (e != 1) out += '^' + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  }
  return out;
}

TraceExpr TraceExpr::constant(std::int64_t c, TraceConvention convention) {
  TraceExpr e(convention);
  e.add_term(c, {}, {});
  return e;
}

TraceExpr TraceExpr::monomial(const Monomial& m, std::int64_t c, TraceConvention convention) {
  TraceExpr e(convention);
  e.add_term(c, m, {});
  return e;
}

TraceExpr TraceExpr::words(std::vector<TraceWord> words, const Monomial& m, std::int64_t c,
                           TraceConvention convention) {
  TraceExpr e(convention);
  e.add_term(c, m, std::move(words));
  return e;
}

TraceExpr TraceExpr::with_convention(TraceConvention convention) const {
  TraceExpr e = *this;
  e.convention_ = convention;
  return e;
}

void TraceExpr::add_term(std::int64_t c, const Monomial& monomial, std::vector<TraceWord> words) {
  if (c == 0) return;
  std::sort(words.begin(), words.end());
  auto [it, inserted] = terms_.try_emplace(TermKey{monomial, std::move(words)}, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

bool TraceExpr::has_words() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return !t.first.words.empty(); });
}

TraceConvention TraceExpr::resolve_convention(const TraceExpr& other) const {
  if (convention_ == other.convention_) return convention_;
  if (!other.has_words()) return convention_;
  if (!has_words()) return other.convention_;
  throw InvalidArgument("cannot combine raw-trace and normalized-trace expressions");
}

TraceExpr& TraceExpr::operator+=(const TraceExpr& other) {
  convention_ = resolve_convention(other);
  for (const auto& [key, c] : other.terms_) add_term(c, key.monomial, key.words);
  return *this;
}

TraceExpr& TraceExpr::operator-=(const TraceExpr& other) {
  convention_ = resolve_convention(other);
  for (const auto& [key, c] : other.terms_) add_term(checked_mul(c, -1), key.monomial, key.words);
  return *this;
}

TraceExpr& TraceExpr::operator*=(const TraceExpr& other) {
  const auto convention = resolve_convention(other);
  TraceExpr out(convention);
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : other.terms_) {
      std::vector<TraceWord> words = ka.words;
      words.insert(words.end(), kb.words.begin(), kb.words.end());
      out.add_term(checked_mul(ca, cb), ka.monomial * kb.monomial, std::move(words));
    }
  }
  *this = std::move(out);
  return *this;
}

TraceExpr TraceExpr::scaled(std::int64_t c) const {
  TraceExpr out(convention_);
  for (const auto& [key, v] : terms_) out.add_term(checked_mul(v, c), key.monomial, key.words);
  return out;
}

bool operator==(const TraceExpr& a, const TraceExpr& b) {
  if (a.terms_ != b.terms_) return false;
  return a.convention_ == b.convention_ || !a.has_words();
}

std::string TraceExpr::to_string() const {
  if (terms_.empty()) return "0";
  const std::string tr = convention_ == TraceConvention::Raw ? "tr" : "trN";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    std::int64_t mag = c;
    if (first) {
      if (c < 0) {
        out += "-";
        mag = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) mag = -c;
    }
    first = false;

    std::vector<std::string> factors;
    std::string head;
    const bool bare = key.monomial.empty() && key.words.empty();
    if (mag != 1 || bare) head = std::to_string(mag);
    if (!key.monomial.empty()) head += (head.empty() ? "" : "*") + key.monomial.to_string();
    if (!head.empty()) factors.push_back(head);
    for (std::size_t i = 0; i < key.words.size();) {
      std::size_t j = i;
      while (j < key.words.size() && key.words[j] == key.words[i]) ++j;
      std::string f = tr + "(" + key.words[i].to_string() + ")";
      if (j - i > 1) f += "^" + std::to_string(j - i);
      factors.push_back(f);
      i = j;
    }
    std::string traces;
    for (std::size_t i = head.empty() ? 0 : 1; i < factors.size(); ++i)
      traces += (traces.empty() ? "" : "*") + factors[i];
    out += head;
    if (!head.empty() && !traces.empty()) out += " * ";
    out += traces;
  }
  return out;
}

}  // namespace wishart

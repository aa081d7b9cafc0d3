#include "wishart/expression.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "wishart/error.hpp"

namespace wishart {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int max_variables) : text_(text), max_(max_variables) {}

  ExprAst expression() {
    ExprAst ast;
    skip_space();
    ast.factors.push_back(factor());
    for (;;) {
      const std::size_t before = pos_;
      skip_space();
      if (at_end()) break;
      bool separated = pos_ > before;
      if (peek() == '*') {
        ++pos_;
        skip_space();
        separated = true;
      }
      if (!separated) fail("expected '*' or whitespace between factors");
      ast.factors.push_back(factor());
    }
    return ast;
  }

  std::vector<ExprLetter> bare_word() {
    skip_space();
    auto w = word();
    skip_space();
    if (!at_end()) fail("unexpected character '" + std::string(1, peek()) + "'");
    return w;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  void expect(char c) {
    if (peek() != c)
      fail(std::string("expected '") + c + "'" +
           (at_end() ? " but input ended" : std::string(" but found '") + peek() + "'"));
    ++pos_;
  }

  int integer() {
    const std::size_t start = pos_;
    long long value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > std::numeric_limits<int>::max()) {
        pos_ = start;
        fail("integer too large");
      }
      ++pos_;
    }
    if (pos_ == start) fail("expected an integer");
    return static_cast<int>(value);
  }

  ExprFactor factor() {
    if (text_.substr(pos_, 3) != "tr(") fail("expected 'tr('");
    pos_ += 3;
    ExprFactor f;
    skip_space();
    f.word = word();
    skip_space();
    expect(')');
    const std::size_t after = pos_;
    skip_space();
    if (peek() != '^') pos_ = after;
    if (peek() == '^') {
      ++pos_;
      const std::size_t at = pos_;
      f.power = integer();
      if (f.power < 1) {
        pos_ = at;
        fail("power must be at least 1");
      }
    }
    return f;
  }

  std::vector<ExprLetter> word() {
    std::vector<ExprLetter> w;
    while (!at_end() && (peek() == 'x' || peek() == 'W')) {
      w.push_back(letter());
      skip_space();
    }
    if (w.empty()) fail("expected a variable such as W1 or x1");
    return w;
  }

  ExprLetter letter() {
    const std::size_t at = pos_;
    ++pos_;  // 'x' or 'W'
    ExprLetter l;
    l.variable = integer();
    if (l.variable < 1) {
      pos_ = at;
      fail("variables are numbered from 1");
    }
    if (max_ > 0 && l.variable > max_) {
      pos_ = at;
      fail("undeclared variable " + std::to_string(l.variable) + " (only " +
           std::to_string(max_) + " declared)");
    }
    if (peek() == '[') {
      ++pos_;
      const std::size_t start = pos_;
      if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
        fail("expected an h-slot name");
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      l.hslot = std::string(text_.substr(start, pos_ - start));
      expect(']');
    }
    return l;
  }

  std::string_view text_;
  int max_;
  std::size_t pos_ = 0;
};

}  // namespace

int ExprAst::num_variables() const {
  int largest = 0;
  for (const auto& f : factors)
    for (const auto& l : f.word) largest = std::max(largest, l.variable);
  return largest;
}

ExprAst parse_expression(std::string_view text, int max_variables) {
  return Parser(text, max_variables).expression();
}

std::vector<ExprLetter> parse_word(std::string_view text, int max_variables) {
  return Parser(text, max_variables).bare_word();
}

std::string to_string(const std::vector<ExprLetter>& word) {
  std::string out;
  for (const auto& l : word) {
    if (!out.empty()) out += ' ';
    out += 'W' + std::to_string(l.variable);
    if (!l.hslot.empty()) out += '[' + l.hslot + ']';
  }
  return out;
}

std::string to_string(const ExprAst& ast) {
  std::string out;
  for (const auto& f : ast.factors) {
    if (!out.empty()) out += ' ';
    out += "tr(" + to_string(f.word) + ')';
    if (f.power != 1) out += '^' + std::to_string(f.power);
  }
  return out;
}

MomentSpec to_moment_spec(const ExprAst& ast) {
  if (ast.factors.empty()) throw InvalidArgument("empty expression");
  std::vector<Cycle> cyc;
  std::vector<int> colors;
  std::vector<std::string> hslots;
  bool any_h = false;
  for (const auto& f : ast.factors)
    for (int k = 0; k < f.power; ++k) {
      Cycle c;
      for (const auto& l : f.word) {
        c.push_back(static_cast<int>(colors.size()));
        colors.push_back(l.variable - 1);
        hslots.push_back(l.hslot);
        any_h = any_h || !l.hslot.empty();
      }
      cyc.push_back(std::move(c));
    }
  const auto n = colors.size();
  return {Permutation::from_cycles(n, cyc), Coloring(std::move(colors), ast.num_variables()),
          any_h ? std::move(hslots) : std::vector<std::string>{}};
}

std::vector<int> word_colors(const std::vector<ExprLetter>& word) {
  std::vector<int> colors;
  for (const auto& l : word) {
    if (!l.hslot.empty()) throw InvalidArgument("h-slots are not supported here");
    colors.push_back(l.variable - 1);
  }
  return colors;
}

StarsSpec to_stars_spec(const ExprAst& ast) {
  std::vector<std::vector<int>> monomials;
  std::vector<int> multiplicities;
  for (const auto& f : ast.factors) {
    monomials.push_back(word_colors(f.word));
    multiplicities.push_back(f.power);
  }
  return StarsSpec::make(std::move(monomials), std::move(multiplicities));
}

}  // namespace wishart

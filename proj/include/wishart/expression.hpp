#ifndef WISHART_EXPRESSION_HPP
#define WISHART_EXPRESSION_HPP

#include <string>
#include <string_view>
#include <vector>

#include "wishart/cumulants.hpp"
#include "wishart/moments.hpp"

namespace wishart {

struct ExprLetter {
  int variable = 1;   ///< one-based: W1 and x1 are the same variable
  std::string hslot;  ///< empty when absent

  friend bool operator==(const ExprLetter&, const ExprLetter&) = default;
};

struct ExprFactor {
  std::vector<ExprLetter> word;
  int power = 1;

  friend bool operator==(const ExprFactor&, const ExprFactor&) = default;
};

/// Product of factors tr(word)^power.
struct ExprAst {
  std::vector<ExprFactor> factors;

  int num_variables() const;
  friend bool operator==(const ExprAst&, const ExprAst&) = default;
};

/// expr   := factor (('*' | whitespace) factor)*
/// factor := 'tr(' word ')' ('^' int)?
/// word   := letter+
/// letter := ('x' | 'W') int ('[' ident ']')?
/// Throws ParseError with a byte offset. With max_variables > 0, variables
/// above it are rejected as undeclared.
ExprAst parse_expression(std::string_view text, int max_variables = 0);

/// A bare word such as "x1 x2 x3".
std::vector<ExprLetter> parse_word(std::string_view text, int max_variables = 0);

/// Canonical text; parse_expression(to_string(a)) == a.
std::string to_string(const ExprAst& ast);
std::string to_string(const std::vector<ExprLetter>& word);

/// Positions numbered left to right across the expression; each trace factor
/// (repeated power times) becomes one cycle of sigma.
MomentSpec to_moment_spec(const ExprAst& ast);

/// Each factor is a monomial with multiplicity equal to its power.
StarsSpec to_stars_spec(const ExprAst& ast);

/// Zero-based colors of a word without h-slots.
std::vector<int> word_colors(const std::vector<ExprLetter>& word);

}  // namespace wishart

#endif  // WISHART_EXPRESSION_HPP

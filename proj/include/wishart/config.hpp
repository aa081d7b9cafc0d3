#ifndef WISHART_CONFIG_HPP
#define WISHART_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "wishart/model.hpp"

namespace wishart {

/// Contents of a JSON config file. Keys: "N", "sigma" (list of matrices),
/// "p" (list or one number for every matrix), "h" (name -> matrix),
/// "lambda" (list or number), "mk" (list of numbers or [re, im] pairs) and
/// "C" (one matrix). A matrix is a list of rows; an entry is a number or a
/// [re, im] pair.
struct Config {
  std::optional<int> dim;
  std::vector<ComplexMatrix> sigma;
  std::vector<double> p;
  HBinding h;
  std::vector<double> lambda;
  std::vector<Complex> mk;
  std::optional<ComplexMatrix> c;

  bool has_model() const { return dim.has_value() && !p.empty(); }
  /// Model with identity scales when "sigma" is absent. Throws InvalidArgument
  /// when N or p is missing.
  WishartModel model() const;
};

/// Parses and validates; errors name the offending key.
Config parse_config(const std::string& json_text);
Config load_config(const std::string& path);

}  // namespace wishart

#endif  // WISHART_CONFIG_HPP

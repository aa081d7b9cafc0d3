#include "wishart/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wishart/error.hpp"

namespace wishart {

namespace {

using nlohmann::json;

Complex parse_number(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw InvalidArgument(where + ": expected a number or a [re, im] pair");
}

ComplexMatrix parse_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw InvalidArgument(where + ": expected a nonempty list of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  if (!v[0].is_array()) throw InvalidArgument(where + ": rows must be lists");
  const auto cols = static_cast<Eigen::Index>(v[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InvalidArgument(where + ": row " + std::to_string(i + 1) + " has the wrong length");
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = parse_number(row[static_cast<std::size_t>(j)],
                             where + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]");
  }
  return m;
}

std::vector<double> parse_reals(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw InvalidArgument(where + ": expected a number or a list of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw InvalidArgument(where + ": expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

WishartModel Config::model() const {
  if (!dim) throw InvalidArgument("config: the model needs \"N\"");
  if (p.empty()) throw InvalidArgument("config: the model needs \"p\"");
  if (sigma.empty()) return WishartModel::identity(*dim, p);
  std::vector<double> shapes = p;
  if (shapes.size() == 1 && sigma.size() > 1) shapes.assign(sigma.size(), p.front());
  return WishartModel::make(*dim, sigma, shapes);
}

Config parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw InvalidArgument("config: expected a JSON object");
  static const char* known[] = {"N", "sigma", "p", "h", "lambda", "mk", "C"};
  for (const auto& [key, value] : doc.items())
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw InvalidArgument("config: unknown key \"" + key + "\"");

  Config c;
  if (doc.contains("N")) {
    if (!doc["N"].is_number_integer() || doc["N"].get<int>() < 1)
      throw InvalidArgument("config: \"N\" must be a positive integer");
    c.dim = doc["N"].get<int>();
  }
  if (doc.contains("sigma")) {
    const json& s = doc["sigma"];
    if (!s.is_array() || s.empty()) throw InvalidArgument("config: \"sigma\" must be a list of matrices");
    for (std::size_t r = 0; r < s.size(); ++r) {
      const std::string name = "sigma[" + std::to_string(r + 1) + "]";
      c.sigma.push_back(parse_matrix(s[r], "config: " + name));
      validate_hermitian_psd(c.sigma.back(), name);
    }
    const auto n = static_cast<int>(c.sigma.front().rows());
    if (c.dim && *c.dim != n)
      throw DimensionError("config: \"N\" is " + std::to_string(*c.dim) + " but sigma is " +
                           std::to_string(n) + "x" + std::to_string(n));
    c.dim = n;
  }
  if (doc.contains("p")) c.p = parse_reals(doc["p"], "config: \"p\"");
  if (doc.contains("lambda")) c.lambda = parse_reals(doc["lambda"], "config: \"lambda\"");
  if (doc.contains("mk")) {
    if (!doc["mk"].is_array()) throw InvalidArgument("config: \"mk\" must be a list");
    for (std::size_t k = 0; k < doc["mk"].size(); ++k)
      c.mk.push_back(parse_number(doc["mk"][k], "config: mk[" + std::to_string(k + 1) + "]"));
  }
  if (doc.contains("h")) {
    if (!doc["h"].is_object()) throw InvalidArgument("config: \"h\" must map names to matrices");
    for (const auto& [name, value] : doc["h"].items()) {
      ComplexMatrix m = parse_matrix(value, "config: h." + name);
      if (m.rows() != m.cols()) throw DimensionError("config: h." + name + " is not square");
      if (c.dim && m.rows() != *c.dim)
        throw DimensionError("config: h." + name + " does not match N");
      c.h[name] = std::move(m);
    }
  }
  if (doc.contains("C")) {
    c.c = parse_matrix(doc["C"], "config: C");
    validate_hermitian_psd(*c.c, "C");
  }
  for (double l : c.lambda)
    if (!(l > 0)) throw InvalidArgument("config: \"lambda\" values must be positive");
  if (c.has_model()) c.model();
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace wishart

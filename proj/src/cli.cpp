#include "wishart/cli.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wishart/asymptotics.hpp"
#include "wishart/config.hpp"
#include "wishart/cumulants.hpp"
#include "wishart/error.hpp"
#include "wishart/evaluate.hpp"
#include "wishart/expression.hpp"
#include "wishart/montecarlo.hpp"
#include "wishart/moments.hpp"
#include "wishart/verify.hpp"

namespace wishart {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct Common {
  std::string config;
  std::string output = "text";
  std::uint64_t seed = 42;
  std::uint64_t samples = 0;
  std::size_t workers = 1;
  std::uint64_t enum_cap = kDefaultEnumerationCap;

  EngineOptions engine() const {
    EngineOptions o;
    o.enum_cap = enum_cap;
    o.workers = workers;
    return o;
  }
  bool json_output() const { return output == "json"; }
};

// Thrown for bad combinations of otherwise well-formed flags.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON config file (N, sigma, p, h, lambda, mk, C)");
  sub->add_option("--output", c.output, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--samples", c.samples, "Monte Carlo sample count");
  sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--enum-cap", c.enum_cap, "Largest |S_n(t)| to enumerate")
      ->check(CLI::PositiveNumber);
}

std::string number_text(double x) { return json(x).dump(); }

// Text output drops imaginary parts at rounding level; JSON keeps both parts.
std::string complex_text(Complex z) {
  if (std::abs(z.imag()) <= 1e-12 * std::abs(z.real())) return number_text(z.real());
  return number_text(z.real()) + (z.imag() < 0 ? " - " : " + ") + number_text(std::abs(z.imag())) +
         "i";
}

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json expr_json(const TraceExpr& e) {
  ordered_json terms = ordered_json::array();
  for (const auto& [key, c] : e.terms()) {
    ordered_json words = ordered_json::array();
    for (const auto& w : key.words) words.push_back(w.to_string());
    terms.push_back({{"coefficient", c}, {"monomial", key.monomial.to_string()}, {"words", words}});
  }
  return {{"text", e.to_string()},
          {"convention", e.convention() == TraceConvention::Raw ? "tr" : "trN"},
          {"terms", terms}};
}

std::optional<Config> load(const Common& c) {
  if (c.config.empty()) return std::nullopt;
  return load_config(c.config);
}

// --- moment -----------------------------------------------------------------

struct MomentArgs {
  std::string expr;
  bool symbolic = false;
  bool numeric = false;
};

int run_moment(const MomentArgs& a, const Common& c, std::ostream& out) {
  const auto cfg = load(c);
  const ExprAst ast = parse_expression(a.expr);
  const MomentSpec spec = to_moment_spec(ast);
  const bool want_numeric = a.numeric || (!a.symbolic && cfg && cfg->has_model());
  const bool want_symbolic = a.symbolic || !want_numeric;
  if (want_numeric && !(cfg && cfg->has_model()))
    throw UsageError("--numeric needs --config with N and p");

  ordered_json j{{"command", "moment"},
                 {"expression", to_string(ast)},
                 {"sigma", spec.sigma.to_string()},
                 {"t", spec.t.to_string()}};
  std::ostringstream text;
  text << "expression: " << to_string(ast) << "\nsigma: " << spec.sigma.to_string()
       << "\nt: " << spec.t.to_string() << '\n';
  if (want_symbolic) {
    const TraceExpr e = moment_symbolic(spec, c.engine());
    j["symbolic"] = expr_json(e);
    text << "E = " << e.to_string() << '\n';
  }
  if (want_numeric) {
    const Complex v = moment_numeric(spec, cfg->model(), cfg->h, c.engine());
    j["numeric"] = complex_json(v);
    text << "E = " << complex_text(v) << '\n';
  }
  out << (c.json_output() ? j.dump(2) + "\n" : text.str());
  return kExitOk;
}

// --- cumulant ---------------------------------------------------------------

struct CumulantArgs {
  std::string expr;
  std::string method = "hypermap";
};

int run_cumulant(const CumulantArgs& a, const Common& c, std::ostream& out) {
  const auto cfg = load(c);
  const ExprAst ast = parse_expression(a.expr);
  const StarsSpec spec = to_stars_spec(ast);
  ordered_json j{{"command", "cumulant"}, {"expression", to_string(ast)}, {"method", a.method},
                 {"order", spec.order()}};
  std::ostringstream text;
  text << "stars: " << to_string(ast) << " (|k| = " << spec.order() << ")\n";
  TraceExpr shape;
  if (a.method == "hypermap") {
    const GenusGradedExpr g = cumulant_hypermap(spec, c.engine());
    ordered_json grades = ordered_json::array();
    for (const auto& [genus, e] : g.grades)
      grades.push_back({{"genus", genus}, {"n_exponent", g.n_exponent(genus)}, {"expr", expr_json(e)}});
    j["grades"] = grades;
    text << "scaled form (p_r = lambda_r N, Sigma_r = C_r / N):\n" << g.to_string() << '\n';
    shape = g.to_shape_form();
  } else {
    shape = cumulant_from_moments_symbolic(spec, c.engine());
  }
  j["cumulant"] = expr_json(shape);
  text << "cumulant = " << shape.to_string() << '\n';
  if (cfg && cfg->has_model()) {
    const Complex v = evaluate(shape, cfg->model());
    j["numeric"] = complex_json(v);
    text << "cumulant = " << complex_text(v) << '\n';
  }
  out << (c.json_output() ? j.dump(2) + "\n" : text.str());
  return kExitOk;
}

// --- limit-mean and clt-cov -------------------------------------------------

struct LimitArgs {
  std::string word;
  std::vector<double> lambda;
  std::vector<double> mk;
};

struct LimitInputs {
  Coloring t;
  std::string word;
  double lambda = 0;
  MomentSequence m;
  std::optional<ComplexMatrix> c;
};

LimitInputs limit_inputs(const LimitArgs& a, const Common& c) {
  const auto cfg = load(c);
  LimitInputs in;
  const auto letters = parse_word(a.word);
  in.word = to_string(letters);
  in.t = Coloring(word_colors(letters));
  std::vector<double> lambda = a.lambda;
  if (lambda.empty() && cfg) lambda = cfg->lambda;
  if (lambda.size() != 1) throw UsageError("give one common --lambda (or \"lambda\" in the config)");
  in.lambda = lambda.front();
  if (!(in.lambda > 0)) throw UsageError("--lambda must be positive");
  if (cfg && cfg->c) in.c = cfg->c;
  if (!a.mk.empty())
    in.m = MomentSequence::common(a.mk);
  else if (cfg && !cfg->mk.empty())
    in.m = MomentSequence::common(cfg->mk);
  else if (in.c)
    in.m = MomentSequence::from_matrix(*in.c, 2 * in.t.size());
  else
    throw UsageError("give --mk, or \"mk\" or \"C\" in the config");
  return in;
}

int run_limit_mean(const LimitArgs& a, const Common& c, std::ostream& out) {
  const LimitInputs in = limit_inputs(a, c);
  const TraceExpr e = limit_mean_symbolic(in.t, c.engine());
  const Complex v = evaluate_limit(e, {in.lambda}, in.m);
  if (c.json_output()) {
    ordered_json j{{"command", "limit-mean"}, {"word", in.word}, {"lambda", in.lambda},
                   {"symbolic", expr_json(e)}, {"center_coefficient", complex_json(v)}};
    out << j.dump(2) << '\n';
  } else {
    out << "word: " << in.word << "\nlimit mean / N = " << e.to_string()
        << "\ncenter_coefficient = " << complex_text(v) << '\n';
  }
  return kExitOk;
}

int run_clt_cov(const LimitArgs& a, const Common& c, std::ostream& out) {
  const LimitInputs in = limit_inputs(a, c);
  const AsymptoticReport r = asymptotic_report(in.t, in.lambda, in.m, in.c, c.engine());
  if (c.json_output()) {
    ordered_json j{{"command", "clt-cov"},
                   {"word", in.word},
                   {"lambda", in.lambda},
                   {"center_coefficient", complex_json(r.center_coefficient)},
                   {"mean_shift_b", complex_json(r.mean_shift_b)},
                   {"EXX", r.covariance.EXX},
                   {"EYY", r.covariance.EYY},
                   {"EXY", r.covariance.EXY}};
    out << j.dump(2) << '\n';
  } else {
    out << "word: " << in.word << "\ncenter_coefficient = " << complex_text(r.center_coefficient)
        << "\nmean_shift_b = " << complex_text(r.mean_shift_b)
        << "\nEXX = " << number_text(r.covariance.EXX) << "\nEYY = " << number_text(r.covariance.EYY)
        << "\nEXY = " << number_text(r.covariance.EXY) << '\n';
  }
  return kExitOk;
}

// --- sample -----------------------------------------------------------------

int run_sample(const std::string& expr, const Common& c, std::ostream& out) {
  const auto cfg = load(c);
  if (!cfg || !cfg->has_model()) throw UsageError("sample needs --config with N and p");
  const ExprAst ast = parse_expression(expr);
  const MomentSpec spec = to_moment_spec(ast);
  MCOptions o;
  o.samples = c.samples ? c.samples : 100'000;
  o.seed = c.seed;
  o.workers = c.workers;
  const WishartModel model = cfg->model();
  const MCEstimate est = estimate_moment(spec, model, cfg->h, o);
  const Complex exact = moment_numeric(spec, model, cfg->h, c.engine());
  if (c.json_output()) {
    ordered_json j{{"command", "sample"},  {"expression", to_string(ast)},
                   {"seed", c.seed},       {"samples", est.samples},
                   {"batches", est.batches}, {"estimate", complex_json(est.mean)},
                   {"stderr", est.std_error}, {"exact", complex_json(exact)},
                   {"z", est.z(exact)}};
    out << j.dump(2) << '\n';
  } else {
    out << "expression: " << to_string(ast) << "\nseed: " << c.seed << "\nsamples: " << est.samples
        << " in " << est.batches << " batches\nestimate = " << complex_text(est.mean)
        << "\nstderr = " << number_text(est.std_error) << "\nexact = " << complex_text(exact)
        << "\nz = " << number_text(est.z(exact)) << '\n';
  }
  return kExitOk;
}

// --- verify -----------------------------------------------------------------

int run_verify(const std::string& battery, const Common& c, std::ostream& out) {
  VerifyOptions o;
  o.seed = c.seed;
  o.samples = c.samples;
  o.workers = c.workers;
  const VerifyReport report = run_battery(battery, o);
  if (c.json_output()) {
    ordered_json records = ordered_json::array();
    for (const auto& r : report.records)
      records.push_back({{"battery", r.battery},
                         {"case", r.case_name},
                         {"exact", complex_json(r.exact)},
                         {"estimate", complex_json(r.estimate)},
                         {"stderr", r.std_error},
                         {"z", r.z},
                         {"pass", r.pass},
                         {"samples", r.samples}});
    ordered_json j{{"command", "verify"}, {"battery", battery}, {"seed", c.seed},
                   {"records", records},  {"pass", report.passed()}};
    out << j.dump(2) << '\n';
  } else {
    out << "battery: " << battery << "\nseed: " << c.seed << '\n';
    for (const auto& r : report.records)
      out << (r.pass ? "PASS " : "FAIL ") << r.battery << " | " << r.case_name
          << " | exact " << complex_text(r.exact) << " | estimate " << complex_text(r.estimate)
          << " | stderr " << number_text(r.std_error) << " | z " << number_text(r.z)
          << " | samples " << r.samples << '\n';
    out << (report.passed() ? "PASS" : "FAIL") << '\n';
  }
  return report.passed() ? kExitOk : kExitVerification;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and Monte Carlo moments of traces of complex Wishart matrices", "wishart"};
  app.require_subcommand(1);
  Common common;

  MomentArgs moment;
  auto* moment_cmd = app.add_subcommand("moment", "E q(W1..Ws) as a polynomial or a number");
  moment_cmd->add_option("--expr", moment.expr, "Expression such as \"tr(W1 W2)^2\"")->required();
  moment_cmd->add_flag("--symbolic", moment.symbolic, "Print the exact polynomial");
  moment_cmd->add_flag("--numeric", moment.numeric, "Evaluate with the config model");
  add_common(moment_cmd, common);

  CumulantArgs cumulant;
  auto* cumulant_cmd =
      app.add_subcommand("cumulant", "Joint cumulant of traces; powers give multiplicities");
  cumulant_cmd->add_option("--expr", cumulant.expr, "Stars such as \"tr(W1 W2)^2\"")->required();
  cumulant_cmd->add_option("--method", cumulant.method, "Exact route")
      ->check(CLI::IsMember({"hypermap", "moments"}));
  add_common(cumulant_cmd, common);

  LimitArgs limit;
  auto* mean_cmd = app.add_subcommand("limit-mean", "Coefficient of N in the large-N mean");
  auto* clt_cmd = app.add_subcommand("clt-cov", "Covariance of the real and imaginary CLT limits");
  for (auto* sub : {mean_cmd, clt_cmd}) {
    sub->add_option("--word", limit.word, "Word such as \"x1 x2 x3\"")->required();
    sub->add_option("--lambda", limit.lambda, "Common lambda = lim p / N")->expected(1);
    sub->add_option("--mk", limit.mk, "m_1,m_2,... (limits of tr_N C^k)")->delimiter(',');
    add_common(sub, common);
  }

  std::string sample_expr;
  auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo estimate of a moment");
  sample_cmd->add_option("--expr", sample_expr, "Expression")->required();
  add_common(sample_cmd, common);

  std::string battery = "all";
  auto* verify_cmd = app.add_subcommand("verify", "Compare exact engines with Monte Carlo");
  verify_cmd->add_option("--battery", battery, "Battery name or all")
      ->check(CLI::IsMember([] {
        auto names = battery_names();
        names.push_back("all");
        return names;
      }()));
  add_common(verify_cmd, common);

  std::vector<std::string> argv_storage{"wishart"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (moment_cmd->parsed()) return run_moment(moment, common, out);
    if (cumulant_cmd->parsed()) return run_cumulant(cumulant, common, out);
    if (mean_cmd->parsed()) return run_limit_mean(limit, common, out);
    if (clt_cmd->parsed()) return run_clt_cov(limit, common, out);
    if (sample_cmd->parsed()) return run_sample(sample_expr, common, out);
    if (verify_cmd->parsed()) return run_verify(battery, common, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitUsage;
}

}  // namespace wishart

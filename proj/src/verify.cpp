#include "wishart/verify.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "wishart/cumulants.hpp"
#include "wishart/error.hpp"
#include "wishart/evaluate.hpp"
#include "wishart/montecarlo.hpp"
#include "wishart/moments.hpp"

namespace wishart {

bool VerifyReport::passed() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return !records.empty();
}

namespace {

struct Context {
  VerifyOptions options;
  VerifyReport* report;

  MCOptions mc(std::uint64_t default_samples, std::uint64_t stream) const {
    MCOptions o;
    o.samples = options.samples ? options.samples : default_samples;
    // Each case draws from its own seed so cases are independent.
    o.seed = options.seed * 1000003ULL + stream;
    o.workers = options.workers;
    return o;
  }

  void record(const std::string& name, Complex exact, const MCEstimate& est) {
    VerifyRecord r;
    r.battery = report->battery;
    r.case_name = name;
    r.exact = exact;
    r.estimate = est.mean;
    r.std_error = est.std_error;
    r.z = est.z(exact);
    r.pass = r.z <= options.threshold;
    r.samples = est.samples;
    report->records.push_back(std::move(r));
  }
};

MomentSpec spec_of(std::vector<Cycle> cycles, std::vector<int> colors,
                   std::vector<std::string> hslots = {}) {
  const auto n = colors.size();
  return {Permutation::from_cycles(n, cycles), Coloring(std::move(colors)), std::move(hslots)};
}

WishartModel random_model(int dim, std::vector<double> shapes, Rng& rng) {
  std::vector<ComplexMatrix> scales;
  for (std::size_t r = 0; r < shapes.size(); ++r) scales.push_back(random_psd(dim, rng));
  return WishartModel::make(dim, std::move(scales), std::move(shapes));
}

void table1(Context& ctx, double perturb) {
  const MomentSpec spec = spec_of({{0, 1}, {2, 3}}, {0, 1, 0, 1});
  const TraceExpr poly = moment_symbolic(spec);
  Rng rng(ctx.options.seed);
  struct Case {
    int dim;
    std::vector<double> p;
  };
  const std::vector<Case> cases{{2, {2, 3}}, {3, {1, 4}}, {3, {3, 3}}, {4, {2, 1}}};
  std::uint64_t stream = 0;
  for (const auto& c : cases) {
    const WishartModel model = random_model(c.dim, c.p, rng);
    const Complex exact = evaluate(poly, model) * perturb;
    const std::string name = "tr(W1 W2)^2 N=" + std::to_string(c.dim) + " p=(" +
                             std::to_string(static_cast<int>(c.p[0])) + "," +
                             std::to_string(static_cast<int>(c.p[1])) + ")";
    ctx.record(name, exact, estimate_moment(spec, model, {}, ctx.mc(200'000, stream++)));
  }
}

void moments(Context& ctx) {
  Rng rng(ctx.options.seed + 17);
  struct Case {
    std::string name;
    MomentSpec spec;
    int dim;
    std::vector<double> p;
  };
  std::vector<Case> cases;
  cases.push_back({"tr(W1)", spec_of({{0}}, {0}), 3, {2}});
  cases.push_back({"tr(W1 W1)", spec_of({{0, 1}}, {0, 0}), 3, {2}});
  cases.push_back({"tr(W1 W2 W3)", spec_of({{0, 1, 2}}, {0, 1, 2}), 2, {1, 2, 3}});
  cases.push_back({"tr(W1 W2 W1 W2)", spec_of({{0, 1, 2, 3}}, {0, 1, 0, 1}), 2, {2, 2}});
  cases.push_back({"tr(W1)tr(W1 W1)", spec_of({{0}, {1, 2}}, {0, 0, 0}), 2, {3}});
  cases.push_back({"tr(W1[h] W2)", spec_of({{0, 1}}, {0, 1}, {"h", ""}), 3, {2, 1}});
  HBinding h;
  h["h"] = ComplexMatrix::Zero(3, 3);
  h["h"](0, 1) = 1.0;
  std::uint64_t stream = 100;
  for (const auto& c : cases) {
    const WishartModel model = random_model(c.dim, c.p, rng);
    const HBinding& bind = c.spec.hslots.empty() ? HBinding{} : h;
    const Complex exact = moment_numeric(c.spec, model, bind);
    ctx.record(c.name, exact, estimate_moment(c.spec, model, bind, ctx.mc(200'000, stream++)));
  }
}

void cumulants(Context& ctx) {
  Rng rng(ctx.options.seed + 29);
  struct Case {
    std::string name;
    StarsSpec spec;
    int dim;
    std::vector<double> p;
  };
  const std::vector<Case> cases{
      {"var tr(W1 W2)", StarsSpec::make({{0, 1}}, {2}), 2, {2, 3}},
      {"cov(tr(W1 W2 W3), tr(W3 W2 W1))", StarsSpec::make({{0, 1, 2}, {2, 1, 0}}, {1, 1}), 2,
       {1, 2, 2}},
      {"third cumulant tr(W1)", StarsSpec::make({{0}}, {3}), 3, {2}},
      {"cum(tr W1, tr W1, tr(W1 W1))", StarsSpec::make({{0}, {0, 0}}, {2, 1}), 2, {2}},
  };
  std::uint64_t stream = 200;
  for (const auto& c : cases) {
    const WishartModel model = random_model(c.dim, c.p, rng);
    const Complex exact = evaluate(cumulant_hypermap(c.spec).to_shape_form(), model);
    ctx.record(c.name, exact, estimate_cumulant(c.spec, model, ctx.mc(400'000, stream++)));
  }
}

// Var(Re Z) and Var(Im Z) for Z = tr(W1 W2 W3), p = N, Sigma = I / N.
void clt_ex(Context& ctx) {
  std::uint64_t stream = 300;
  for (int n : {4, 8, 16}) {
    std::vector<ComplexMatrix> scales(3, ComplexMatrix::Identity(n, n) / static_cast<double>(n));
    const WishartModel model = WishartModel::make(n, scales, {double(n), double(n), double(n)});
    const Complex zz = cumulant_from_moments_numeric(StarsSpec::make({{0, 1, 2}}, {2}), model);
    const Complex zbar =
        cumulant_from_moments_numeric(StarsSpec::make({{0, 1, 2}, {2, 1, 0}}, {1, 1}), model);
    const double var_x = (zbar.real() + zz.real()) / 2;
    const double var_y = (zbar.real() - zz.real()) / 2;
    const MomentSpec q = spec_of({{0, 1, 2}}, {0, 1, 2});
    const Observable parts = [&](const std::vector<ComplexMatrix>& ws) {
      const Complex z = trace_monomial(q.sigma, q.t, {}, ws);
      return std::vector<Complex>{z.real(), z.imag()};
    };
    const auto options = ctx.mc(n > 8 ? 20'000 : 100'000, stream);
    stream += 2;
    const std::string suffix = " N=" + std::to_string(n);
    ctx.record("Var(X)" + suffix, var_x, estimate_joint_cumulant(parts, {0, 0}, model, options));
    auto options_y = options;
    options_y.seed += 1;
    ctx.record("Var(Y)" + suffix, var_y, estimate_joint_cumulant(parts, {1, 1}, model, options_y));
  }
}

void hss(Context& ctx) {
  const int dim = 4;
  const double p = 3;
  const WishartModel model = WishartModel::identity(dim, {p});
  std::uint64_t stream = 400;
  for (const auto& partition : std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {3}, {2, 1}}) {
    const TraceExpr e = hss_moment(partition);
    const Complex exact = evaluate(e, model);
    const Permutation sigma = permutation_of_type(partition);
    const MomentSpec spec{sigma, Coloring::constant(sigma.size()), {}};
    std::string name = "p_(";
    for (std::size_t i = 0; i < partition.size(); ++i)
      name += (i ? "," : "") + std::to_string(partition[i]);
    ctx.record(name + ")", exact, estimate_moment(spec, model, {}, ctx.mc(200'000, stream++)));
  }
}

}  // namespace

std::vector<std::string> battery_names() {
  return {"table1", "moments", "cumulants", "clt-ex", "hss", "negative-control"};
}

VerifyReport run_battery(const std::string& name, const VerifyOptions& options) {
  VerifyReport report;
  report.battery = name;
  report.seed = options.seed;
  Context ctx{options, &report};
  const std::map<std::string, std::function<void()>> batteries{
      {"table1", [&] { table1(ctx, 1.0); }},
      {"moments", [&] { moments(ctx); }},
      {"cumulants", [&] { cumulants(ctx); }},
      {"clt-ex", [&] { clt_ex(ctx); }},
      {"hss", [&] { hss(ctx); }},
      {"negative-control", [&] { table1(ctx, 1.1); }},
  };
  if (name == "all") {
    for (const auto& b : battery_names()) {
      if (b == "negative-control") continue;
      report.battery = b;
      batteries.at(b)();
    }
    report.battery = "all";
    return report;
  }
  auto it = batteries.find(name);
  if (it == batteries.end()) throw InvalidArgument("unknown battery '" + name + "'");
  it->second();
  return report;
}

}  // namespace wishart

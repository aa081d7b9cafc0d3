// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "wishart/cumulants.hpp"
#include "wishart/evaluate.hpp"
#include "wishart/moments.hpp"
#include "wishart/montecarlo.hpp"
#include "wishart/permutation.hpp"

using namespace wishart;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "\n    failed: " << what;
    }
  }
};

Monomial p(int r, int e = 1) { return Monomial::of(Symbol::shape(r - 1), e); }
Monomial pc(int e) { return Monomial::of(Symbol::common_shape(), e); }
Monomial n(int e) { return Monomial::of(Symbol::dimension(), e); }

TraceExpr words(std::vector<std::vector<int>> ws, const Monomial& m) {
  std::vector<TraceWord> out;
  for (auto& w : ws) {
    for (auto& c : w) --c;
    out.push_back(TraceWord::from_colors(w));
  }
  return TraceExpr::words(out, m);
}

Coloring random_coloring(int len, int colors, std::mt19937_64& rng) {
  std::string s;
  for (int i = 0; i < len; ++i)
    s += (i ? "," : "") + std::to_string(1 + rng() % static_cast<unsigned>(colors));
  return Coloring::parse(s);
}

Permutation random_sigma(int len, std::mt19937_64& rng) {
  return Permutation::from_images(oracle::random_permutation(len, rng));
}

// 1. Four-term polynomial for E tr(W1 W2)^2.
void four_term_moment(Outcome& o) {
  const MomentSpec spec{Permutation::parse("(1,2)(3,4)"), Coloring::parse("1,2,1,2"), {}};
  const TraceExpr got = moment_symbolic(spec);
  const TraceExpr expected = words({{1, 2}, {1, 2}}, p(1, 2) * p(2, 2)) +
                             words({{1, 2, 1, 2}}, p(1, 2) * p(2)) +
                             words({{1, 2, 1, 2}}, p(1) * p(2, 2)) + words({{1, 2}, {1, 2}}, p(1) * p(2));
  o.require(got == expected, "term set " + got.to_string());
  o.require(got.size() == 4, "four terms");
  o.detail << got.to_string();
}

// 2. Variance of tr(W1 W2), covariance of tr(W1 W2 W3) with itself and the
// equal-parameter reductions.
void variance_identities(Outcome& o) {
  const auto var = cumulant_hypermap(StarsSpec::make({{0, 1}}, {2})).to_shape_form();
  const TraceExpr var_expected = words({{1, 2, 1, 2}}, p(1) * p(2, 2)) +
                                 words({{1, 2, 1, 2}}, p(1, 2) * p(2)) + words({{1, 2}, {1, 2}}, p(1) * p(2));
  o.require(var == var_expected, "Var tr(W1 W2) = " + var.to_string());

  const auto cov = cumulant_hypermap(StarsSpec::make({{0, 1, 2}}, {2})).to_shape_form();
  const std::vector<int> six{1, 2, 3, 1, 2, 3};
  TraceExpr cov_expected = words({six}, p(1) * p(2, 2) * p(3, 2)) + words({six}, p(1, 2) * p(2) * p(3, 2)) +
                           words({six}, p(1, 2) * p(2, 2) * p(3)) + words({six}, p(1) * p(2) * p(3));
  for (int r = 1; r <= 3; ++r) cov_expected += words({{1, 2, 3}, {1, 2, 3}}, p(1) * p(2) * p(3) * p(r));
  o.require(cov == cov_expected, "Var tr(W1 W2 W3) = " + cov.to_string());
  o.require(cov.size() == 7, "seven terms");

  const auto forward = specialize_common(cov);
  o.require(forward == words({{1, 1, 1, 1, 1, 1}}, pc(5)).scaled(3) +
                           words({{1, 1, 1}, {1, 1, 1}}, pc(4)).scaled(3) + words({{1, 1, 1, 1, 1, 1}}, pc(3)),
            "equal-parameter forward reduction " + forward.to_string());
  const auto reversed =
      specialize_common(cumulant_hypermap(StarsSpec::make({{0, 1, 2}, {2, 1, 0}}, {1, 1})).to_shape_form());
  o.require(reversed == words({{1, 1, 1, 1, 1, 1}}, pc(5)).scaled(3) +
                            words({{1, 1}, {1, 1, 1, 1}}, pc(4)).scaled(3) + words({{1, 1}, {1, 1}, {1, 1}}, pc(3)),
            "equal-parameter reversed reduction " + reversed.to_string());
  o.detail << "Var tr(W1 W2) and Var tr(W1 W2 W3): " << var.size() << " and " << cov.size()
           << " terms; both reductions exact";
}

// 3. Hypermap cumulants against the moment route, plus N-exponents for |k| >= 3.
void oracle_equivalence(Outcome& o) {
  std::mt19937_64 rng(20261019);
  int specs = 0, third_order = 0, max_degree = 0;
  while (specs < 120) {
    const int colors = 1 + static_cast<int>(rng() % 3);
    const int distinct = 1 + static_cast<int>(rng() % 3);
    std::vector<std::vector<int>> monomials;
    std::vector<int> mult;
    int stars = 0;
    for (int j = 0; j < distinct && stars < 3; ++j) {
      const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(3 - stars));
      std::vector<int> q(1 + rng() % 4);
      for (auto& c : q) c = static_cast<int>(rng() % static_cast<unsigned>(colors));
      monomials.push_back(q);
      mult.push_back(k);
      stars += k;
    }
    const auto spec = StarsSpec::make(monomials, mult);
    if (spec.degree() > 8) continue;
    ++specs;
    max_degree = std::max(max_degree, static_cast<int>(spec.degree()));
    const GenusGradedExpr graded = cumulant_hypermap(spec);
    const TraceExpr via_moments = cumulant_from_moments_symbolic(spec);
    std::ostringstream name;
    for (std::size_t j = 0; j < monomials.size(); ++j) {
      name << "q" << j << "=";
      for (int c : monomials[j]) name << c + 1;
      name << "^" << mult[j] << " ";
    }
    o.require(graded.to_shape_form() == via_moments, "hypermap vs moments for " + name.str());
    if (spec.order() >= 3) {
      ++third_order;
      for (const auto& [genus, e] : graded.grades)
        o.require(graded.n_exponent(genus) <= -1, "N exponent for " + name.str());
    }
  }
  o.detail << specs << " random specs (max degree " << max_degree << "), " << third_order
           << " with |k| = 3 checked for N exponents <= -1";
}

// 4. Trace product against the explicit entry sum.
void entry_sums(Outcome& o) {
  std::mt19937_64 rng(4);
  double worst = 0;
  for (int c = 0; c < 50; ++c) {
    const int dim = 1 + static_cast<int>(rng() % 4);
    const int len = 1 + static_cast<int>(rng() % (dim <= 2 ? 8 : 6));
    const int colors = 1 + static_cast<int>(rng() % 3);
    const Permutation sigma = random_sigma(len, rng);
    const Coloring t = random_coloring(len, colors, rng);
    std::vector<ComplexMatrix> xs, h;
    for (int r = 0; r < colors; ++r) xs.push_back(oracle::random_matrix(dim, rng));
    if (rng() % 2)
      for (int j = 0; j < len; ++j) h.push_back(oracle::random_matrix(dim, rng));
    const auto check = entry_sum_identity_check(sigma, t, h, xs);
    const double rel = std::abs(check.trace_product - check.entry_sum) /
                       std::max(1e-300, std::abs(check.trace_product));
    worst = std::max(worst, rel);
    o.require(rel <= 1e-10, "case " + std::to_string(c) + " sigma " + sigma.to_string());
  }
  o.detail << "50 cases, worst relative difference " << worst;
}

// 5. Monte Carlo against exact moments with a 10% negative control.
void monte_carlo_moments(Outcome& o) {
  std::mt19937_64 rng(5);
  MCOptions opts;
  opts.samples = 200'000;
  double max_z = 0, min_control = 1e300;
  for (int c = 0; c < 10; ++c) {
    const int len = 1 + static_cast<int>(rng() % 6);
    const int dim = 1 + static_cast<int>(rng() % 6);
    const int colors = 1 + static_cast<int>(rng() % 3);
    const MomentSpec spec{random_sigma(len, rng), random_coloring(len, colors, rng), {}};
    std::vector<ComplexMatrix> scales;
    std::vector<double> shapes;
    for (int r = 0; r < spec.t.num_colors(); ++r) {
      scales.push_back(oracle::random_psd(dim, rng));
      shapes.push_back(static_cast<double>(1 + rng() % 6));
    }
    const auto model = WishartModel::make(dim, scales, shapes);
    const Complex exact = moment_numeric(spec, model);
    opts.seed = 1000 + static_cast<std::uint64_t>(c);
    const MCEstimate est = estimate_moment(spec, model, {}, opts);
    const double z = est.z(exact);
    const double control = est.z(exact * 1.1);
    max_z = std::max(max_z, z);
    min_control = std::min(min_control, control);
    std::ostringstream name;
    name << "sigma " << spec.sigma.to_string() << " t " << spec.t.to_string() << " N=" << dim << " z=" << z
         << " control z=" << control << " rel stderr=" << est.std_error / std::abs(exact);
    o.require(z <= 5, name.str());
    o.require(control > 5, "negative control: " + name.str());
  }
  o.detail << "10 specs at 2e5 samples, max |z| " << max_z << ", min negative-control |z| " << min_control;
}

// 6. CLT variances of tr(W1 W2 W3) and the decay of the third cumulant of its real part.
void clt_numbers(Outcome& o) {
  const Observable observable = [](const std::vector<ComplexMatrix>& ws) {
    const Complex z = (ws[0] * ws[1] * ws[2]).trace();
    return std::vector<Complex>{z.real(), z.imag()};
  };
  auto model_at = [](int dim) {
    const ComplexMatrix s = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
    return WishartModel::make(dim, {s, s, s}, {double(dim), double(dim), double(dim)});
  };
  MCOptions opts;
  opts.samples = 10'000;
  opts.seed = 32;
  const auto m32 = model_at(32);
  const MCEstimate var_re = estimate_joint_cumulant(observable, {0, 0}, m32, opts);
  const MCEstimate var_im = estimate_joint_cumulant(observable, {1, 1}, m32, opts);
  const double vr = var_re.mean.real(), vi = var_im.mean.real();
  o.require(std::abs(vr - 6.5) <= 0.15 * 6.5, "Var(Re) = " + std::to_string(vr));
  o.require(std::abs(vi - 0.5) <= 0.15 * 0.5, "Var(Im) = " + std::to_string(vi));
  o.detail << "N=32: Var(Re) " << vr << " (+-" << var_re.std_error << "), Var(Im) " << vi << " (+-"
           << var_im.std_error << ")";

  // Exact third cumulant of Re Z = (Z + conj Z) / 2 with conj Z = tr(W3 W2 W1).
  const std::vector<int> q{0, 1, 2}, r{2, 1, 0};
  const std::vector<std::pair<StarsSpec, double>> parts{{StarsSpec::make({q}, {3}), 1},
                                                        {StarsSpec::make({q, r}, {2, 1}), 3},
                                                        {StarsSpec::make({q, r}, {1, 2}), 3},
                                                        {StarsSpec::make({r}, {3}), 1}};
  std::vector<TraceExpr> exprs;
  for (const auto& [spec, w] : parts) exprs.push_back(cumulant_hypermap(spec).to_shape_form());
  double prev_est = 0, prev_se = 0, prev_exact = 0;
  bool first = true;
  for (int dim : {8, 16, 32}) {
    const auto model = model_at(dim);
    Complex exact = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) exact += parts[i].second * evaluate(exprs[i], model);
    exact /= 8.0;
    opts.seed = 300 + static_cast<std::uint64_t>(dim);
    const MCEstimate k3 = estimate_joint_cumulant(observable, {0, 0, 0}, model, opts);
    const double est = std::abs(k3.mean.real());
    o.detail << "\n    N=" << dim << ": third cumulant of Re " << k3.mean.real() << " (+-" << k3.std_error
             << "), exact " << exact.real();
    o.require(k3.z(exact) <= 5, "third cumulant at N=" + std::to_string(dim) + " off by more than 5 stderr");
    if (!first) {
      o.require(exact.real() < prev_exact, "exact third cumulant not decreasing at N=" + std::to_string(dim));
      o.require(est - prev_est <= 2 * std::hypot(k3.std_error, prev_se),
                "estimated third cumulant increases at N=" + std::to_string(dim));
    }
    first = false;
    prev_est = est;
    prev_se = k3.std_error;
    prev_exact = exact.real();
  }
}

// 7. Single-matrix identity-scale moments for partitions (1), (2), (1,1).
void identity_scale_moments(Outcome& o) {
  const std::vector<std::pair<std::vector<int>, TraceExpr>> cases{
      {{1}, TraceExpr::monomial(pc(1) * n(1))},
      {{2}, TraceExpr::monomial(pc(2) * n(1)) + TraceExpr::monomial(pc(1) * n(2))},
      {{1, 1}, TraceExpr::monomial(pc(2) * n(2)) + TraceExpr::monomial(pc(1) * n(1))}};
  MCOptions opts;
  opts.samples = 200'000;
  for (const auto& [partition, expected] : cases) {
    const TraceExpr got = hss_moment(partition);
    std::string name = "(";
    for (std::size_t i = 0; i < partition.size(); ++i) name += (i ? "," : "") + std::to_string(partition[i]);
    name += ")";
    o.require(got == expected, "symbolic " + name + " = " + got.to_string());

    // Brute force over S_n: sum of p^{#C(a)} N^{#C(a sigma)}.
    const Permutation sigma = permutation_of_type(partition);
    for (int pv : {1, 2, 3, 5})
      for (int nv : {1, 2, 4, 7}) {
        double brute = 0;
        for (const auto& a : oracle::all_permutations(static_cast<int>(sigma.size())))
          brute += std::pow(pv, oracle::num_cycles(a)) *
                   std::pow(nv, oracle::num_cycles(oracle::compose(a, sigma.images())));
        const auto model = WishartModel::make(nv, {ComplexMatrix::Identity(nv, nv)}, {double(pv)});
        o.require(evaluate(got, model) == Complex(brute), "brute force " + name);
      }

    const auto model = WishartModel::make(4, {ComplexMatrix::Identity(4, 4)}, {3});
    const Complex exact = evaluate(got, model);
    opts.seed = 700 + partition.size() * 10 + static_cast<std::size_t>(partition[0]);
    const MCEstimate est = estimate_moment({sigma, Coloring::constant(sigma.size()), {}}, model, {}, opts);
    o.require(est.z(exact) <= 5, "Monte Carlo " + name);
    o.detail << name << ": " << got.to_string() << " = " << exact.real() << " at p=3, N=4, MC z " << est.z(exact)
             << "; ";
  }
}

// 8. Genus of random transitive pairs.
void genus_properties(Outcome& o) {
  std::mt19937_64 rng(8);
  int pairs = 0;
  long attempts = 0;
  while (pairs < 10'000) {
    ++attempts;
    const int len = 1 + static_cast<int>(rng() % 9);
    const auto si = oracle::random_permutation(len, rng);
    auto ai = oracle::random_permutation(len, rng);
    if (!oracle::transitive(si, ai)) continue;
    ++pairs;
    const Permutation s = Permutation::from_images(si), a = Permutation::from_images(ai);
    const EulerGenus g = euler_genus(s, a);
    const bool integer = g.genus.den == 1;
    o.require(integer && g.genus.num >= 0 && g.genus.num <= (len - 1) / 2,
              "genus of " + s.to_string() + " / " + a.to_string());
    o.require(cycle_count(compose(a, s)) == cycle_count(compose(s, a)), "face count " + s.to_string());
    if (!o.pass) break;
  }
  o.detail << pairs << " transitive pairs from " << attempts << " draws";
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "four-term moment of tr(W1 W2)^2", 1, four_term_moment},
      {2, "variance identities and equal-parameter reductions", 5, variance_identities},
      {3, "hypermap cumulants equal the moment route", 300, oracle_equivalence},
      {4, "trace product equals entry sum", 30, entry_sums},
      {5, "Monte Carlo moments within 5 stderr, negative control rejected", 600, monte_carlo_moments},
      {6, "CLT variances and third-cumulant decay", 900, clt_numbers},
      {7, "identity-scale single-matrix moments", 60, identity_scale_moments},
      {8, "genus of random transitive pairs", 60, genus_properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) o.require(false, "runtime above " + std::to_string(c.limit_seconds) + " s");
    if (!o.pass) ++failed;
    std::printf("%s [%d] %s (%.2f s, limit %.0f s)\n    %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                seconds, c.limit_seconds, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

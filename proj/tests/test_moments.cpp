#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wishart/error.hpp"
#include "wishart/evaluate.hpp"
#include "wishart/moments.hpp"

using namespace wishart;

namespace {

TraceWord word(std::vector<int> one_based) {
  for (auto& c : one_based) --c;
  return TraceWord::from_colors(one_based);
}

Monomial p(int r, int e = 1) { return Monomial::of(Symbol::shape(r - 1), e); }
Monomial pc(int e) { return Monomial::of(Symbol::common_shape(), e); }
Monomial n_pow(int e) { return Monomial::of(Symbol::dimension(), e); }

MomentSpec spec(const char* sigma, const char* t, std::vector<std::string> h = {}) {
  const Coloring c = Coloring::parse(t);
  return {Permutation::parse(sigma, c.size()), c, std::move(h)};
}


MomentSpec random_spec(std::mt19937_64& rng, int max_n, int s) {
  const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_n));
  std::vector<int> colors(static_cast<std::size_t>(n));
  for (auto& c : colors) c = static_cast<int>(rng() % static_cast<unsigned>(s));
  return {Permutation::from_images(oracle::random_permutation(n, rng)), Coloring(colors, s), {}};
}

WishartModel random_model(std::mt19937_64& rng, int dim, int s, bool integer) {
  std::vector<ComplexMatrix> scales;
  std::vector<double> shapes;
  std::uniform_real_distribution<double> u(0.3, 4.0);
  for (int r = 0; r < s; ++r) {
    scales.push_back(oracle::random_psd(dim, rng));
    shapes.push_back(integer ? static_cast<double>(1 + rng() % 5) : u(rng));
  }
  return WishartModel::make(dim, scales, shapes);
}

}  // namespace

TEST_SUITE("moments") {
  TEST_CASE("single color-preserving permutation") {
    TraceExpr expected = TraceExpr::words({word({1, 2})}, p(1) * p(2));
    CHECK(moment_symbolic(spec("(1,2)", "1,2")) == expected);
  }

  TEST_CASE("tr^2(W1 W2) has the four-term polynomial") {
    TraceExpr expected;
    expected += TraceExpr::words({word({1, 2}), word({1, 2})}, p(1, 2) * p(2, 2));
    expected += TraceExpr::words({word({1, 2, 1, 2})}, p(1, 2) * p(2));
    expected += TraceExpr::words({word({1, 2, 1, 2})}, p(1) * p(2, 2));
    expected += TraceExpr::words({word({1, 2}), word({1, 2})}, p(1) * p(2));
    CHECK(moment_symbolic(spec("(1,2)(3,4)", "1,2,1,2")) == expected);
  }

  TEST_CASE("tr(W^2) by hand enumeration of S_2") {
    TraceExpr expected = TraceExpr::words({word({1, 1})}, p(1, 2));
    expected += TraceExpr::words({word({1}), word({1})}, p(1));
    CHECK(moment_symbolic(spec("(1,2)", "1,1")) == expected);
  }

  TEST_CASE("numeric examples") {
    const auto model = WishartModel::identity(4, {3, 5});
    CHECK(std::abs(moment_numeric(spec("(1,2)", "1,2"), model) - Complex(60)) < 1e-9);
    std::mt19937_64 rng(2);
    const ComplexMatrix s = oracle::random_psd(3, rng);
    const auto m1 = WishartModel::make(3, {s}, {2.5});
    CHECK(std::abs(moment_numeric(spec("(1)", "1"), m1) - 2.5 * s.trace()) < 1e-10);
  }

  TEST_CASE("E(W1 W2 W3) entrywise through an h-slot") {
    std::mt19937_64 rng(4);
    const int dim = 3;
    const auto model = random_model(rng, dim, 3, false);
    const ComplexMatrix prod = model.scales[0] * model.scales[1] * model.scales[2];
    const double pp = model.shapes[0] * model.shapes[1] * model.shapes[2];
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        HBinding h;
        h["E"] = ComplexMatrix::Zero(dim, dim);
        h["E"](i, j) = 1.0;
        // tr(E_ij W1 W2 W3) = (W1 W2 W3)_{j,i}
        const Complex v = moment_numeric(spec("(1,2,3)", "1,2,3", {"E", "", ""}), model, h);
        CHECK(std::abs(v - pp * prod(j, i)) < 1e-9 * std::max(1.0, std::abs(prod(j, i))));
      }
    CHECK_THROWS_AS(moment_numeric(spec("(1,2,3)", "1,2,3", {"E", "", ""}), model, {}), InvalidArgument);
  }

  TEST_CASE("symbolic, streaming and brute-force moments agree") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
      const int s = 1 + static_cast<int>(rng() % 3);
      const MomentSpec sp = random_spec(rng, 6, s);
      const auto model = random_model(rng, 1 + static_cast<int>(rng() % 4), s, false);
      const Complex numeric = moment_numeric(sp, model);
      const Complex symbolic = evaluate(moment_symbolic(sp), model);
      const Complex brute = oracle::moment(sp.sigma.images(), sp.t.colors(), {}, model.scales, model.shapes);
      const double scale = std::max(1.0, std::abs(brute));
      CHECK(std::abs(numeric - brute) <= 1e-10 * scale);
      CHECK(std::abs(symbolic - brute) <= 1e-10 * scale);
    }
  }

  TEST_CASE("h-slots agree with the brute force") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 20; ++trial) {
      MomentSpec sp = random_spec(rng, 4, 2);
      const int dim = 2 + static_cast<int>(rng() % 2);
      const auto model = random_model(rng, dim, 2, false);
      HBinding bind;
      std::vector<ComplexMatrix> hs;
      for (std::size_t j = 0; j < sp.degree(); ++j) {
        const std::string name = "h" + std::to_string(j);
        sp.hslots.push_back(name);
        bind[name] = oracle::random_matrix(dim, rng);
        hs.push_back(bind[name]);
      }
      const Complex brute = oracle::moment(sp.sigma.images(), sp.t.colors(), hs, model.scales, model.shapes);
      const double scale = std::max(1.0, std::abs(brute));
      CHECK(std::abs(moment_numeric(sp, model, bind) - brute) <= 1e-10 * scale);
      CHECK(std::abs(evaluate(moment_symbolic(sp), model, bind) - brute) <= 1e-10 * scale);
    }
  }

  TEST_CASE("results do not depend on workers or shards up to rounding") {
    std::mt19937_64 rng(23);
    const MomentSpec sp{Permutation::parse("(1,2,3)(4,5,6,7)"), Coloring::parse("1,1,2,1,2,1,1"), {}};
    const auto model = random_model(rng, 3, 2, false);
    const TraceExpr base = moment_symbolic(sp);
    const Complex v1 = moment_numeric(sp, model);
    for (std::size_t w : {2u, 3u}) {
      EngineOptions o;
      o.workers = w;
      CHECK(moment_symbolic(sp, o) == base);
      const Complex vw = moment_numeric(sp, model, {}, o);
      CHECK(std::abs(vw - v1) <= 1e-12 * std::abs(v1));
      // Same worker count twice: bitwise identical.
      CHECK(moment_numeric(sp, model, {}, o) == vw);
    }
  }

  TEST_CASE("color relabeling equivariance") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 20; ++trial) {
      const MomentSpec sp = random_spec(rng, 5, 3);
      const auto model = random_model(rng, 2, 3, false);
      const std::vector<int> perm = oracle::random_permutation(3, rng);
      std::vector<int> relabeled;
      for (int c : sp.t.colors()) relabeled.push_back(perm[static_cast<std::size_t>(c)]);
      std::vector<ComplexMatrix> scales(3);
      std::vector<double> shapes(3);
      for (int r = 0; r < 3; ++r) {
        scales[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])] = model.scales[static_cast<std::size_t>(r)];
        shapes[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])] = model.shapes[static_cast<std::size_t>(r)];
      }
      const MomentSpec sp2{sp.sigma, Coloring(relabeled, 3), {}};
      const auto model2 = WishartModel::make(2, scales, shapes);
      const Complex a = moment_numeric(sp, model), b = moment_numeric(sp2, model2);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
  }

  TEST_CASE("single-matrix form matches the main engine") {
    CHECK(glm_moment(Permutation::identity(1)) == TraceExpr::words({word({1})}, p(1)));
    TraceExpr two = TraceExpr::words({word({1, 1})}, p(1, 2));
    two += TraceExpr::words({word({1}), word({1})}, p(1));
    CHECK(glm_moment(Permutation::parse("(1,2)")) == two);
    std::mt19937_64 rng(25);
    for (int n = 1; n <= 4; ++n)
      for (const auto& images : oracle::all_permutations(n)) {
        const auto pi0 = Permutation::from_images(images);
        CHECK(glm_moment(pi0) == moment_symbolic({pi0, Coloring::constant(static_cast<std::size_t>(n)), {}}));
        std::vector<std::string> h;
        for (int j = 0; j < n; ++j) h.push_back(rng() % 2 ? "a" : "b");
        CHECK(glm_moment(pi0, h) == moment_symbolic({pi0, Coloring::constant(static_cast<std::size_t>(n)), h}));
      }
    // Distinct h-slots at N = 2 against the entry-sum evaluation of r_pi.
    const auto model = random_model(rng, 2, 1, false);
    HBinding bind{{"a", oracle::random_matrix(2, rng)}, {"b", oracle::random_matrix(2, rng)}};
    const auto pi0 = Permutation::parse("(1,2)");
    const Complex via_glm = evaluate(glm_moment(pi0, {"a", "b"}), model, bind);
    Complex brute = 0.0;
    for (const auto& pi1 : oracle::all_permutations(2)) {
      const int e = oracle::num_cycles(oracle::compose(oracle::inverse(pi1), pi0.images()));
      // r_pi1(h)(Sigma) = prod over cycles of tr(Sigma h_j1 Sigma h_j2 ...), via entry sums
      // of the matrices Sigma h_j read along pi1.
      std::vector<ComplexMatrix> hs{bind["a"], bind["b"]};
      std::vector<ComplexMatrix> xs{model.scales[0] * hs[0], model.scales[0] * hs[1]};
      brute += std::pow(model.shapes[0], e) *
               entry_sum(Permutation::from_images(pi1), Coloring::parse("1,2"), {}, xs);
    }
    CHECK(std::abs(via_glm - brute) < 1e-10 * std::max(1.0, std::abs(brute)));
  }

  TEST_CASE("identity-scale specializations") {
    CHECK(hss_moment({1}) == TraceExpr::monomial(pc(1) * n_pow(1)));
    CHECK(hss_moment({2}) == TraceExpr::monomial(pc(2) * n_pow(1)) + TraceExpr::monomial(pc(1) * n_pow(2)));
    CHECK(hss_moment({1, 1}) == TraceExpr::monomial(pc(2) * n_pow(2)) + TraceExpr::monomial(pc(1) * n_pow(1)));
    // Representative independence: every sigma of a given type gives the same polynomial.
    for (int n = 1; n <= 5; ++n) {
      std::map<std::vector<int>, TraceExpr> by_type;
      for (const auto& images : oracle::all_permutations(n)) {
        const auto sigma = Permutation::from_images(images);
        const auto e = specialize_identity_common_shape(
            moment_symbolic({sigma, Coloring::constant(static_cast<std::size_t>(n)), {}}));
        const auto type = cycles(sigma).type();
        auto [it, inserted] = by_type.emplace(type, e);
        if (!inserted) CHECK(it->second == e);
        CHECK(hss_moment(type) == e);
      }
    }
    CHECK(mn_moment(Permutation::identity(1), Coloring::constant(1)) == TraceExpr::monomial(pc(1) * n_pow(1)));
    CHECK(mn_moment(Permutation::parse("(1,2)"), Coloring::parse("1,2")) == TraceExpr::monomial(pc(2) * n_pow(1)));
    const auto table = mn_moment(Permutation::parse("(1,2)(3,4)"), Coloring::parse("1,2,1,2"));
    CHECK(table == TraceExpr::monomial(pc(4) * n_pow(2)) + TraceExpr::monomial(pc(3) * n_pow(1)).scaled(2) +
                       TraceExpr::monomial(pc(2) * n_pow(2)));
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 30; ++trial) {
      const MomentSpec sp = random_spec(rng, 6, 3);
      CHECK(mn_moment(sp.sigma, sp.t) == specialize_identity_common_shape(moment_symbolic(sp)));
    }
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(moment_symbolic({Permutation::identity(2), Coloring::constant(3), {}}), DimensionError);
    EngineOptions tiny;
    tiny.enum_cap = 10;
    CHECK_THROWS_AS(moment_symbolic(spec("(1,2,3,4)", "1,1,1,1"), tiny), EnumerationLimitError);
    const auto model = WishartModel::identity(2, {1});
    CHECK_THROWS_AS(moment_numeric(spec("(1,2)", "1,2"), model), DimensionError);
    CHECK_THROWS_AS(WishartModel::identity(2, {0.0}), InvalidArgument);
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(WishartModel::make(2, {bad}, {1}), InvalidArgument);
    ComplexMatrix neg = -ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(WishartModel::make(2, {neg}, {1}), InvalidArgument);
  }
}

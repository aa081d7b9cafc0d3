#include <Eigen/Eigenvalues>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wishart/cumulants.hpp"
#include "wishart/error.hpp"
#include "wishart/evaluate.hpp"
#include "wishart/montecarlo.hpp"

using namespace wishart;

namespace {

ComplexMatrix scaled_identity(int n, double s) { return ComplexMatrix::Identity(n, n) * s; }

// Running mean and naive standard error of a stream of complex values.
struct Tally {
  Complex sum = 0.0;
  double sq_re = 0, sq_im = 0;
  long count = 0;
  void add(Complex x) {
    sum += x;
    sq_re += x.real() * x.real();
    sq_im += x.imag() * x.imag();
    ++count;
  }
  Complex mean() const { return sum / static_cast<double>(count); }
  double se() const {
    const double n = static_cast<double>(count);
    const double vr = sq_re / n - mean().real() * mean().real();
    const double vi = sq_im / n - mean().imag() * mean().imag();
    return std::sqrt(std::max(0.0, vr + vi) / n);
  }
  double z(Complex exact) const { return std::abs(mean() - exact) / se(); }
};

}  // namespace

TEST_SUITE("montecarlo") {
  TEST_CASE("hermitian factor") {
    CHECK(hermitian_factor(ComplexMatrix::Identity(3, 3)).isApprox(ComplexMatrix::Identity(3, 3), 1e-14));
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 4;
    d(1, 1) = 1;
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 0) = 2;
    expected(1, 1) = 1;
    CHECK((hermitian_factor(d) - expected).norm() < 1e-14);

    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 6);
      const ComplexMatrix s = oracle::random_psd(n, rng);
      const ComplexMatrix a = hermitian_factor(s);
      CHECK((a * a.adjoint() - s).norm() <= 1e-10 * s.norm());
      CHECK((a.adjoint() * a - s).norm() <= 1e-10 * s.norm());
      CHECK(hermitian_factor(s) == a);
    }
    // Rank-deficient input.
    const ComplexMatrix v = oracle::random_matrix(4, rng).col(0);
    const ComplexMatrix rank1 = v * v.adjoint();
    const ComplexMatrix a = hermitian_factor(rank1);
    CHECK((a * a.adjoint() - rank1).norm() <= 1e-10 * rank1.norm());

    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_factor(bad), InvalidArgument);
    CHECK_THROWS_AS(hermitian_factor(-ComplexMatrix::Identity(2, 2)), InvalidArgument);
  }

  TEST_CASE("complex normal entry law") {
    Rng rng(89);
    const ComplexMatrix x = sample_complex_gaussian(300, 300, rng);
    Tally first, second, abs2;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const Complex v = x.data()[i];
      first.add(v);
      second.add(v * v);
      abs2.add(std::norm(v));
    }
    CHECK(first.z(0.0) < 5);
    CHECK(second.z(0.0) < 5);
    CHECK(abs2.z(1.0) < 5);
  }

  TEST_CASE("samples are Hermitian and positive semidefinite") {
    Rng rng(97);
    std::mt19937_64 gen(97);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + static_cast<int>(trial % 5);
      const int p = 1 + static_cast<int>(trial % 4);
      const ComplexMatrix w = sample_wishart(hermitian_factor(oracle::random_psd(n, gen)), p, rng);
      CHECK((w - w.adjoint()).norm() <= 1e-13 * std::max(1.0, w.norm()));
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(w);
      CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * w.norm());
    }
    CHECK_THROWS_AS(sample_wishart(ComplexMatrix::Identity(2, 2), 0, rng), InvalidArgument);
  }

  TEST_CASE("sample mean of W is p Sigma") {
    Rng rng(101);
    std::mt19937_64 gen(101);
    const ComplexMatrix sigma = oracle::random_psd(3, gen);
    const ComplexMatrix a = hermitian_factor(sigma);
    const int p = 2;
    std::vector<Tally> entries(9);
    for (int s = 0; s < 100000; ++s) {
      const ComplexMatrix w = sample_wishart(a, p, rng);
      for (int i = 0; i < 9; ++i) entries[static_cast<std::size_t>(i)].add(w(i / 3, i % 3));
    }
    for (int i = 0; i < 9; ++i) CHECK(entries[static_cast<std::size_t>(i)].z(2.0 * sigma(i / 3, i % 3)) < 5);
  }

  TEST_CASE("moment estimates") {
    std::mt19937_64 gen(103);
    MCOptions o;
    o.samples = 40000;
    o.seed = 5;

    // tr(W1 W2) with p = (3, 5), Sigma = I_4: exactly 60.
    const auto two = WishartModel::make(4, {ComplexMatrix::Identity(4, 4), ComplexMatrix::Identity(4, 4)}, {3, 5});
    const MomentSpec w12{Permutation::long_cycle(2), Coloring::parse("1,2"), {}};
    CHECK(moment_numeric(w12, two) == Complex(60.0));
    const auto e12 = estimate_moment(w12, two, {}, o);
    CHECK(e12.z(60.0) < 5);
    CHECK(e12.samples == 40000);
    CHECK(e12.batches == 100);

    // E tr(W^2) = p^2 tr(Sigma^2) + p tr(Sigma)^2.
    const ComplexMatrix sigma = oracle::random_psd(3, gen);
    const auto one = WishartModel::make(3, {sigma}, {4});
    const Complex exact = 16.0 * (sigma * sigma).trace() + 4.0 * sigma.trace() * sigma.trace();
    const MomentSpec sq{Permutation::long_cycle(2), Coloring::constant(2), {}};
    CHECK(std::abs(moment_numeric(sq, one) - exact) < 1e-10 * std::abs(exact));
    CHECK(estimate_moment(sq, one, {}, o).z(exact) < 5);

    // tr^2(W1 W2) against the exact moment.
    const auto model = WishartModel::make(3, {oracle::random_psd(3, gen), oracle::random_psd(3, gen)}, {2, 3});
    const MomentSpec table1{Permutation::parse("(1,2)(3,4)"), Coloring::parse("1,2,1,2"), {}};
    CHECK(estimate_moment(table1, model, {}, o).z(moment_numeric(table1, model)) < 5);

    // h-slots.
    const HBinding h{{"a", oracle::random_matrix(3, gen)}};
    const MomentSpec withh{Permutation::long_cycle(2), Coloring::parse("1,2"), {"a", ""}};
    CHECK(estimate_moment(withh, model, h, o).z(moment_numeric(withh, model, h)) < 5);
  }

  TEST_CASE("cumulant estimates") {
    std::mt19937_64 gen(107);
    MCOptions o;
    o.samples = 100000;
    o.seed = 9;
    const auto model = WishartModel::make(3, {oracle::random_psd(3, gen), oracle::random_psd(3, gen),
                                              oracle::random_psd(3, gen)},
                                          {2, 3, 2});
    const auto var12 = StarsSpec::make({{0, 1}}, {2});
    CHECK(estimate_cumulant(var12, model, o).z(evaluate(cumulant_hypermap(var12).to_shape_form(), model)) < 5);
    const auto cov = StarsSpec::make({{0, 1, 2}, {2, 1, 0}}, {1, 1});
    CHECK(estimate_cumulant(cov, model, o).z(evaluate(cumulant_hypermap(cov).to_shape_form(), model)) < 5);

    // Third cumulant of tr(W) at Sigma = I / N, p = lambda N is 2 lambda / N.
    MCOptions third = o;
    third.samples = 40000;
    const auto spec3 = StarsSpec::make({{0}}, {3});
    for (int n : {2, 4, 8}) {
      const auto m = WishartModel::make(n, {scaled_identity(n, 1.0 / n)}, {2.0 * n});
      const Complex exact = evaluate(cumulant_hypermap(spec3).to_shape_form(), m);
      CHECK(std::abs(exact - 4.0 / n) < 1e-12);
      CHECK(estimate_cumulant(spec3, m, third).z(exact) < 5);
    }
    CHECK_THROWS_AS(estimate_cumulant(StarsSpec::make({{0}}, {4}), model, o), InvalidArgument);
  }

  TEST_CASE("reproducibility") {
    const auto model = WishartModel::make(3, {ComplexMatrix::Identity(3, 3)}, {3});
    const MomentSpec spec{Permutation::long_cycle(3), Coloring::constant(3), {}};
    MCOptions o;
    o.samples = 4000;
    o.seed = 11;
    const auto a = estimate_moment(spec, model, {}, o);
    const auto b = estimate_moment(spec, model, {}, o);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    o.workers = 3;
    const auto c = estimate_moment(spec, model, {}, o);
    CHECK(a.mean == c.mean);
    CHECK(a.std_error == c.std_error);
    o.seed = 12;
    CHECK(estimate_moment(spec, model, {}, o).mean != a.mean);

    Rng r1(5), r2(5);
    CHECK(sample_model(model, {ComplexMatrix::Identity(3, 3)}, r1)[0] ==
          sample_model(model, {ComplexMatrix::Identity(3, 3)}, r2)[0]);
  }

  TEST_CASE("Laplace transform spot check") {
    // E exp(tr(theta W)) = det(I - theta Sigma)^{-p} for small Hermitian theta.
    std::mt19937_64 gen(109);
    Rng rng(109);
    const ComplexMatrix sigma = oracle::random_psd(2, gen) + ComplexMatrix::Identity(2, 2) * 0.5;
    const double inv_norm = sigma.inverse().norm();
    ComplexMatrix theta = oracle::random_matrix(2, gen);
    theta = (theta + theta.adjoint()) / 2.0;
    theta *= 0.1 * inv_norm / theta.norm();
    for (int p : {1, 3}) {
      const Complex exact = std::pow((ComplexMatrix::Identity(2, 2) - theta * sigma).determinant(), -p);
      const ComplexMatrix a = hermitian_factor(sigma);
      Tally t;
      for (int s = 0; s < 100000; ++s) t.add(std::exp((theta * sample_wishart(a, p, rng)).trace()));
      CHECK(t.z(exact) < 5);
    }
  }

  TEST_CASE("errors") {
    const auto model = WishartModel::make(2, {ComplexMatrix::Identity(2, 2)}, {2});
    const MomentSpec spec{Permutation::long_cycle(1), Coloring::constant(1), {}};
    MCOptions o;
    o.samples = 0;
    CHECK_THROWS_AS(estimate_moment(spec, model, {}, o), InvalidArgument);
    o.samples = 1000;
    o.batches = 10;
    CHECK_THROWS_AS(estimate_moment(spec, model, {}, o), InvalidArgument);
    o.batches = 100;
    o.samples = 50;
    CHECK_THROWS_AS(estimate_moment(spec, model, {}, o), InvalidArgument);
    o.samples = 1000;
    const auto fractional = WishartModel::make(2, {ComplexMatrix::Identity(2, 2)}, {2.5});
    CHECK_THROWS_AS(estimate_moment(spec, fractional, {}, o), InvalidArgument);
    const MomentSpec two_colors{Permutation::long_cycle(2), Coloring::parse("1,2"), {}};
    CHECK_THROWS_AS(estimate_moment(two_colors, model, {}, o), DimensionError);
    const MomentSpec unbound{Permutation::long_cycle(1), Coloring::constant(1), {"h"}};
    CHECK_THROWS_AS(estimate_moment(unbound, model, {}, o), InvalidArgument);
  }
}

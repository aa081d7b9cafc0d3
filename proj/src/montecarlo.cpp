#include "wishart/montecarlo.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "wishart/error.hpp"
#include "wishart/evaluate.hpp"
#include "wishart/parallel.hpp"

namespace wishart {

ComplexMatrix hermitian_factor(const ComplexMatrix& sigma) {
  validate_hermitian_psd(sigma, "Sigma");
  const double norm = sigma.norm();
  const ComplexMatrix sym = (sigma + sigma.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sym);
  if (eig.info() != Eigen::Success) throw Error("eigendecomposition failed");
  Eigen::VectorXd values = eig.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < -kPsdTolerance * norm)
      throw InvalidArgument("Sigma has a negative eigenvalue " + std::to_string(values(i)));
    values(i) = std::sqrt(std::max(values(i), 0.0));
  }
  const ComplexMatrix& u = eig.eigenvectors();
  return u * values.cast<Complex>().asDiagonal() * u.adjoint();
}

ComplexMatrix sample_complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix x(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      x(i, j) = Complex(re, normal(rng));
    }
  return x;
}

ComplexMatrix sample_wishart(const ComplexMatrix& a, int p, Rng& rng) {
  if (p < 1) throw InvalidArgument("the sampler needs a positive integer shape");
  if (a.rows() != a.cols()) throw DimensionError("factor must be square");
  const ComplexMatrix xa = sample_complex_gaussian(p, a.rows(), rng) * a;
  return xa.adjoint() * xa;
}

ComplexMatrix random_psd(int n, Rng& rng) {
  if (n < 1) throw DimensionError("dimension must be positive");
  const ComplexMatrix b = sample_complex_gaussian(n, n, rng);
  const ComplexMatrix s = b * b.adjoint() / static_cast<double>(n);
  return (s + s.adjoint()) / 2.0;
}

double MCEstimate::z(Complex exact) const {
  const double diff = std::abs(exact - mean);
  if (std_error > 0) return diff / std_error;
  return diff == 0 ? 0.0 : std::numeric_limits<double>::infinity();
}

std::vector<ComplexMatrix> sample_model(const WishartModel& model,
                                        const std::vector<ComplexMatrix>& factors, Rng& rng) {
  std::vector<ComplexMatrix> ws;
  ws.reserve(factors.size());
  for (std::size_t r = 0; r < factors.size(); ++r)
    ws.push_back(sample_wishart(factors[r], static_cast<int>(model.shapes[r]), rng));
  return ws;
}

namespace {

std::vector<ComplexMatrix> model_factors(const WishartModel& model) {
  model.validate();
  if (!model.integer_shapes())
    throw InvalidArgument("Monte Carlo sampling needs integer shape parameters");
  std::vector<ComplexMatrix> factors;
  for (const auto& s : model.scales) factors.push_back(hermitian_factor(s));
  return factors;
}

void check_options(const MCOptions& o) {
  if (o.samples == 0) throw InvalidArgument("number of samples must be positive");
  if (o.batches < 20) throw InvalidArgument("need at least 20 batches");
  if (o.samples < o.batches)
    throw InvalidArgument("need at least one sample per batch (" + std::to_string(o.batches) +
                          " batches)");
}

// Sums over one batch of the products of the selected observables for every
// nonempty subset mask.
struct BatchSums {
  std::vector<CompensatedSum> sums;
  std::uint64_t count = 0;
};

BatchSums run_batch(const Observable& observable, const std::vector<int>& which,
                    const WishartModel& model, const std::vector<ComplexMatrix>& factors,
                    std::uint64_t seed, std::size_t batch, std::uint64_t count) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(batch)};
  Rng rng(seq);
  const unsigned full = (1u << which.size()) - 1;
  BatchSums out;
  out.sums.resize(full + 1);
  out.count = count;
  std::vector<Complex> x(which.size());
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto values = observable(sample_model(model, factors, rng));
    for (std::size_t j = 0; j < which.size(); ++j) {
      const auto idx = static_cast<std::size_t>(which[j]);
      if (idx >= values.size()) throw DimensionError("observable index out of range");
      x[j] = values[idx];
    }
    for (unsigned mask = 1; mask <= full; ++mask) {
      Complex prod = 1.0;
      for (std::size_t j = 0; j < which.size(); ++j)
        if (mask & (1u << j)) prod *= x[j];
      out.sums[mask].add(prod);
    }
  }
  return out;
}

Complex plug_in(const std::vector<Complex>& moments, int order) {
  std::function<Complex(const std::vector<int>&)> moment = [&](const std::vector<int>& idx) {
    unsigned mask = 0;
    for (int i : idx) mask |= 1u << i;
    return moments[mask];
  };
  return cumulant_from_moments<Complex>(order, moment);
}

}  // namespace

MCEstimate estimate_joint_cumulant(const Observable& observable, const std::vector<int>& which,
                                   const WishartModel& model, const MCOptions& options) {
  check_options(options);
  if (which.empty()) throw InvalidArgument("empty cumulant request");
  if (which.size() > 6) throw InvalidArgument("cumulant order above 6 is not supported");
  const auto factors = model_factors(model);
  const std::size_t batches = options.batches;
  const std::uint64_t base = options.samples / batches;
  const std::uint64_t extra = options.samples % batches;
  auto parts = run_shards<BatchSums>(batches, options.workers, [&](std::size_t b) {
    return run_batch(observable, which, model, factors, options.seed, b, base + (b < extra ? 1 : 0));
  });

  const unsigned full = (1u << which.size()) - 1;
  const int order = static_cast<int>(which.size());
  std::vector<CompensatedSum> pooled(full + 1);
  std::vector<Complex> per_batch;
  for (const auto& part : parts) {
    std::vector<Complex> moments(full + 1);
    for (unsigned mask = 1; mask <= full; ++mask) {
      pooled[mask].add(part.sums[mask].value());
      moments[mask] = part.sums[mask].value() / static_cast<double>(part.count);
    }
    per_batch.push_back(plug_in(moments, order));
  }
  std::vector<Complex> moments(full + 1);
  for (unsigned mask = 1; mask <= full; ++mask)
    moments[mask] = pooled[mask].value() / static_cast<double>(options.samples);

  MCEstimate est;
  est.mean = plug_in(moments, order);
  est.samples = options.samples;
  est.batches = batches;
  Complex batch_mean = 0.0;
  for (const auto& v : per_batch) batch_mean += v;
  batch_mean /= static_cast<double>(batches);
  double var_re = 0, var_im = 0;
  for (const auto& v : per_batch) {
    var_re += std::pow(v.real() - batch_mean.real(), 2);
    var_im += std::pow(v.imag() - batch_mean.imag(), 2);
  }
  const double denom = static_cast<double>(batches) * static_cast<double>(batches - 1);
  est.std_error_re = std::sqrt(var_re / denom);
  est.std_error_im = std::sqrt(var_im / denom);
  est.std_error = std::hypot(est.std_error_re, est.std_error_im);
  return est;
}

MCEstimate estimate_moment(const MomentSpec& spec, const WishartModel& model,
                           const HBinding& hbind, const MCOptions& options) {
  spec.validate();
  model.validate();
  if (spec.t.num_colors() > model.num_matrices())
    throw DimensionError("monomial uses more matrices than the model has");
  std::vector<ComplexMatrix> h;
  if (!spec.hslots.empty()) {
    const auto id = ComplexMatrix::Identity(model.dim, model.dim);
    for (const auto& name : spec.hslots) {
      if (name.empty()) {
        h.push_back(id);
        continue;
      }
      auto it = hbind.find(name);
      if (it == hbind.end()) throw InvalidArgument("unbound h-slot '" + name + "'");
      h.push_back(it->second);
    }
  }
  Observable obs = [&](const std::vector<ComplexMatrix>& ws) {
    return std::vector<Complex>{trace_monomial(spec.sigma, spec.t, h, ws)};
  };
  return estimate_joint_cumulant(obs, {0}, model, options);
}

MCEstimate estimate_cumulant(const StarsSpec& spec, const WishartModel& model,
                             const MCOptions& options) {
  spec.validate();
  if (spec.order() > 3) throw InvalidArgument("plug-in cumulants are limited to |k| <= 3");
  if (spec.num_colors() > model.num_matrices())
    throw DimensionError("stars use more matrices than the model has");
  std::vector<MomentSpec> traces;
  std::vector<int> which;
  for (std::size_t j = 0; j < spec.monomials.size(); ++j) {
    traces.push_back(stars_moment_spec({spec.monomials[j]}, spec.num_colors()));
    for (int i = 0; i < spec.multiplicities[j]; ++i) which.push_back(static_cast<int>(j));
  }
  Observable obs = [&](const std::vector<ComplexMatrix>& ws) {
    std::vector<Complex> out;
    for (const auto& q : traces) out.push_back(trace_monomial(q.sigma, q.t, {}, ws));
    return out;
  };
  return estimate_joint_cumulant(obs, which, model, options);
}

}  // namespace wishart

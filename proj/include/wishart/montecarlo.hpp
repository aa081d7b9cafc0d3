#ifndef WISHART_MONTECARLO_HPP
#define WISHART_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "wishart/cumulants.hpp"
#include "wishart/model.hpp"
#include "wishart/moments.hpp"

namespace wishart {

using Rng = std::mt19937_64;

/// Hermitian square root U sqrt(L) U* of a Hermitian PSD matrix, with
/// eigenvalues in [-1e-10 ||S||, 0) clamped to zero. A A* = A* A = S.
ComplexMatrix hermitian_factor(const ComplexMatrix& sigma);

/// rows x cols matrix of independent (g1 + i g2) / sqrt(2), g1, g2 ~ N(0, 1).
ComplexMatrix sample_complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// W = A* X* X A with X a p x N complex Gaussian matrix.
ComplexMatrix sample_wishart(const ComplexMatrix& a, int p, Rng& rng);

struct MCOptions {
  std::uint64_t samples = 200'000;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::size_t batches = 100;  ///< at least 20
};

struct MCEstimate {
  Complex mean;
  double std_error = 0;  ///< sqrt(se_re^2 + se_im^2)
  double std_error_re = 0;
  double std_error_im = 0;
  std::uint64_t samples = 0;
  std::uint64_t batches = 0;

  /// |exact - mean| / std_error.
  double z(Complex exact) const;
};

/// Returns the observables of one draw of (W_1, ..., W_s).
using Observable = std::function<std::vector<Complex>(const std::vector<ComplexMatrix>& ws)>;

/// Batch b of B uses its own generator seeded with seed_seq{seed, b} and draws
/// its share of the samples; batches run on the workers and are combined in
/// batch order, so results do not depend on the worker count.
///
/// Plug-in joint cumulant of observables[which[0]], ..., observables[which[k-1]]
/// (repeats allowed). The estimate uses the pooled moments; the standard error
/// is the spread of the per-batch plug-in values.
MCEstimate estimate_joint_cumulant(const Observable& observable, const std::vector<int>& which,
                                   const WishartModel& model, const MCOptions& options);

/// Mean of q_{sigma,t,h}(W_1..W_s); batch-means standard error.
MCEstimate estimate_moment(const MomentSpec& spec, const WishartModel& model,
                           const HBinding& hbind, const MCOptions& options);

/// Plug-in cumulant of the star traces of spec (|k| <= 3).
MCEstimate estimate_cumulant(const StarsSpec& spec, const WishartModel& model,
                             const MCOptions& options);

/// B B* / N for an N x N complex Gaussian B: a random full-rank PSD matrix.
ComplexMatrix random_psd(int n, Rng& rng);

/// Draws one (W_1..W_s) from the model; exposed for tests and the CLI.
std::vector<ComplexMatrix> sample_model(const WishartModel& model,
                                        const std::vector<ComplexMatrix>& factors, Rng& rng);

}  // namespace wishart

#endif  // WISHART_MONTECARLO_HPP

#ifndef WISHART_PARALLEL_HPP
#define WISHART_PARALLEL_HPP

#include <algorithm>
#include <complex>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace wishart {

/// Runs fn(shard) for every shard in [0, num_shards) on at most `workers`
/// threads and returns the results indexed by shard. Worker w handles shards
/// w, w + workers, ...; the first exception in shard order is rethrown.
template <class R, class F>
std::vector<R> run_shards(std::size_t num_shards, std::size_t workers, F&& fn) {
  std::vector<R> results(num_shards);
  std::vector<std::exception_ptr> errors(num_shards);
  workers = std::max<std::size_t>(1, std::min(workers, num_shards));
  auto work = [&](std::size_t w) {
    for (std::size_t s = w; s < num_shards; s += workers) {
      try {
        results[s] = fn(s);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

/// Neumaier-compensated sum of complex terms, real and imaginary parts
/// compensated separately.
class CompensatedSum {
 public:
  void add(std::complex<double> x) {
    add_part(re_, re_c_, x.real());
    add_part(im_, im_c_, x.imag());
  }
  std::complex<double> value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

}  // namespace wishart

#endif  // WISHART_PARALLEL_HPP

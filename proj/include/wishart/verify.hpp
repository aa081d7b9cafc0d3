#ifndef WISHART_VERIFY_HPP
#define WISHART_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wishart/model.hpp"

namespace wishart {

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::uint64_t samples = 0;  ///< 0: the battery's own default
  std::size_t workers = 1;
  double threshold = 5.0;     ///< pass when |z| <= threshold
};

struct VerifyRecord {
  std::string battery;
  std::string case_name;
  Complex exact;
  Complex estimate;
  double std_error = 0;
  double z = 0;
  bool pass = false;
  std::uint64_t samples = 0;
};

struct VerifyReport {
  std::string battery;
  std::uint64_t seed = 0;
  std::vector<VerifyRecord> records;

  bool passed() const;
};

/// table1, moments, cumulants, clt-ex, hss, negative-control. "all" runs
/// every battery except negative-control, which is built to fail.
std::vector<std::string> battery_names();

/// Unknown names throw InvalidArgument; failed comparisons are report entries.
VerifyReport run_battery(const std::string& name, const VerifyOptions& options = {});

}  // namespace wishart

#endif  // WISHART_VERIFY_HPP

#ifndef WISHART_MODEL_HPP
#define WISHART_MODEL_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wishart {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Constant matrices bound to h-slot names.
using HBinding = std::map<std::string, ComplexMatrix>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

/// Throws InvalidArgument unless m is square, Hermitian within
/// kHermitianTolerance * |m|_F, and its least eigenvalue is at least
/// -kPsdTolerance * |m|_F.
void validate_hermitian_psd(const ComplexMatrix& m, const std::string& what);

/// Independent complex Wishart matrices W_r with scale Sigma_r and shape p_r,
/// all of dimension N. Colors index the matrices from zero.
struct WishartModel {
  int dim = 0;
  std::vector<ComplexMatrix> scales;
  std::vector<double> shapes;

  /// Validates and returns the model.
  static WishartModel make(int dim, std::vector<ComplexMatrix> scales, std::vector<double> shapes);
  /// Every Sigma_r = I_N.
  static WishartModel identity(int dim, std::vector<double> shapes);

  int num_matrices() const { return static_cast<int>(scales.size()); }
  void validate() const;
  /// True when every p_r is a positive integer (required by the sampler).
  bool integer_shapes() const;
};

}  // namespace wishart

#endif  // WISHART_MODEL_HPP

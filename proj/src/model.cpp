#include "wishart/model.hpp"

#include <cmath>

#include "wishart/error.hpp"

namespace wishart {

void validate_hermitian_psd(const ComplexMatrix& m, const std::string& what) {
  if (m.rows() != m.cols())
    throw DimensionError(what + " is not square (" + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ")");
  if (!m.allFinite()) throw InvalidArgument(what + " has non-finite entries");
  const double norm = m.norm();
  if ((m - m.adjoint()).norm() > kHermitianTolerance * norm)
    throw InvalidArgument(what + " is not Hermitian");
  if (m.rows() == 0) return;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(m, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kPsdTolerance * norm)
    throw InvalidArgument(what + " is not positive semidefinite (least eigenvalue " +
                          std::to_string(eig.eigenvalues().minCoeff()) + ")");
}

WishartModel WishartModel::make(int dim, std::vector<ComplexMatrix> scales,
                                std::vector<double> shapes) {
  WishartModel m{dim, std::move(scales), std::move(shapes)};
  m.validate();
  return m;
}

WishartModel WishartModel::identity(int dim, std::vector<double> shapes) {
  std::vector<ComplexMatrix> scales(shapes.size(), ComplexMatrix::Identity(dim, dim));
  return make(dim, std::move(scales), std::move(shapes));
}

void WishartModel::validate() const {
  if (dim <= 0) throw InvalidArgument("dimension N must be positive");
  if (scales.size() != shapes.size())
    throw DimensionError("model has " + std::to_string(scales.size()) + " scale matrices but " +
                         std::to_string(shapes.size()) + " shape parameters");
  for (std::size_t r = 0; r < scales.size(); ++r) {
    const std::string name = "Sigma" + std::to_string(r + 1);
    if (scales[r].rows() != dim || scales[r].cols() != dim)
      throw DimensionError(name + " is not " + std::to_string(dim) + "x" + std::to_string(dim));
    validate_hermitian_psd(scales[r], name);
    if (!(shapes[r] > 0) || !std::isfinite(shapes[r]))
      throw InvalidArgument("shape p" + std::to_string(r + 1) + " must be positive");
  }
}

bool WishartModel::integer_shapes() const {
  for (double p : shapes)
    if (p < 1 || std::floor(p) != p) return false;
  return true;
}

}  // namespace wishart

#pragma once

#include <string>
#include <utility>

#include "skcap/symplectic.hpp"

namespace skcap {

/// First and second moments of an n-mode Gaussian state. The covariance
/// matrix is symmetrized and checked for physicality on construction.
template <typename Scalar = double> class GaussianState
{
public:
  GaussianState(Vec<Scalar> mean, Mat<Scalar> const &cm)
      : mean_(std::move(mean))
      , cm_(symmetrized(cm))
  {
    if (mean_.size() != cm_.rows())
      throw DimensionError("mean has length " + std::to_string(mean_.size()) + " but CM is " +
                           std::to_string(cm_.rows()) + "x" + std::to_string(cm_.cols()));
    auto const report = validate_cm(cm_);
    if (!report.is_physical)
      throw PhysicalityError("covariance matrix violates the uncertainty principle (min symplectic eigenvalue " +
                             std::to_string(double(report.min_sympl_eig)) + ")");
  }

  explicit GaussianState(Mat<Scalar> const &cm)
      : GaussianState(Vec<Scalar>::Zero(cm.rows()), cm)
  {
  }

  static GaussianState vacuum(Eigen::Index modes = 1)
  {
    return GaussianState(Mat<Scalar>::Identity(2 * modes, 2 * modes) * Scalar(vacuum_variance));
  }

  static GaussianState thermal(Scalar nbar, Eigen::Index modes = 1)
  {
    return GaussianState(Mat<Scalar>::Identity(2 * modes, 2 * modes) * (nbar + Scalar(vacuum_variance)));
  }

  Vec<Scalar> const &mean() const { return mean_; }
  Mat<Scalar> const &cm() const { return cm_; }
  Eigen::Index modes() const { return cm_.rows() / 2; }

private:
  Vec<Scalar> mean_;
  Mat<Scalar> cm_;
};

} // namespace skcap

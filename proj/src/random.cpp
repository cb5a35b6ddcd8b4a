#include "skcap/random.hpp"

#include <cmath>
#include <numbers>

namespace skcap {

Eigen::MatrixXd random_symplectic(Eigen::Index modes, Rng &rng, double max_squeeze, int layers)
{
  Eigen::Index const dim = 2 * modes;
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(dim, dim);
  for (int layer = 0; layer < layers; ++layer) {
    for (Eigen::Index k = 0; k < modes; ++k) {
      double const theta = rng.uniform(0, 2 * std::numbers::pi);
      Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(dim, dim);
      rot.block<2, 2>(2 * k, 2 * k) << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
      double const r = rng.uniform(-max_squeeze, max_squeeze);
      Eigen::MatrixXd sq = Eigen::MatrixXd::Identity(dim, dim);
      sq(2 * k, 2 * k) = std::exp(-r);
      sq(2 * k + 1, 2 * k + 1) = std::exp(r);
      s = sq * rot * s;
    }
    for (Eigen::Index k = 0; k + 1 < modes; ++k) {
      double const angle = rng.uniform(0, std::numbers::pi);
      double const c = std::cos(angle), t = std::sin(angle);
      Eigen::MatrixXd bs = Eigen::MatrixXd::Identity(dim, dim);
      for (int q = 0; q < 2; ++q) {
        Eigen::Index const i = 2 * k + q, j = 2 * (k + 1) + q;
        bs(i, i) = c;
        bs(i, j) = t;
        bs(j, i) = -t;
        bs(j, j) = c;
      }
      s = bs * s;
    }
  }
  return s;
}

GaussianState<double> random_state(Eigen::Index modes, Rng &rng, double nu_min, double nu_max, double mean_range,
                                   double max_squeeze)
{
  Eigen::VectorXd diag(2 * modes);
  for (Eigen::Index k = 0; k < modes; ++k)
    diag.segment<2>(2 * k).setConstant(rng.uniform(nu_min, nu_max));
  Eigen::MatrixXd const s = random_symplectic(modes, rng, max_squeeze);
  Eigen::VectorXd mean(2 * modes);
  for (Eigen::Index i = 0; i < mean.size(); ++i)
    mean(i) = rng.uniform(-mean_range, mean_range);
  return {mean, s * diag.asDiagonal() * s.transpose()};
}

} // namespace skcap

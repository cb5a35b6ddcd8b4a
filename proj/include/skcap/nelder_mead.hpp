#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Core>

namespace skcap {

struct NelderMeadResult
{
  Eigen::VectorXd x;
  double fx;
  int iterations;
};

/// Downhill simplex minimization. The returned point is never worse than the
/// best vertex of the initial simplex (x0 plus one `step` along each axis).
template <typename F>
NelderMeadResult nelder_mead(F &&f, Eigen::VectorXd const &x0, double step, int max_iters, double ftol, double xtol = 1e-10)
{
  Eigen::Index const n = x0.size();
  std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i < n; ++i)
    pts[static_cast<std::size_t>(i + 1)](i) += step;
  for (std::size_t i = 0; i < pts.size(); ++i)
    vals[i] = f(pts[i]);

  std::vector<std::size_t> order(pts.size());
  int it = 0;
  for (; it < max_iters; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return vals[l] < vals[r]; });
    std::size_t const best = order.front(), worst = order.back(), second = order[order.size() - 2];

    double size = 0;
    for (auto const &p : pts)
      size = std::max(size, (p - pts[best]).cwiseAbs().maxCoeff());
    if (vals[worst] - vals[best] <= ftol && size <= xtol)
      break;
    if (size <= xtol)
      break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != worst)
        centroid += pts[i];
    centroid /= double(n);

    Eigen::VectorXd const reflected = centroid + (centroid - pts[worst]);
    double const fr = f(reflected);
    if (fr < vals[best]) {
      Eigen::VectorXd const expanded = centroid + 2.0 * (centroid - pts[worst]);
      double const fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    bool const outside = fr < vals[worst];
    Eigen::VectorXd const contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid)) : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
    double const fc = f(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best)
        continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = f(pts[i]);
    }
  }
  auto const best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], it};
}

} // namespace skcap

#include "skcap/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "skcap/nelder_mead.hpp"
#include "skcap/random.hpp"

namespace skcap {

double relative_entropy(GaussianState<double> const &rho1, GaussianState<double> const &rho2)
{
  if (rho1.modes() != rho2.modes())
    throw DimensionError("relative_entropy: states have different mode counts");
  double const s = -von_neumann_entropy(rho1.cm()) + sigma_functional(rho1.cm(), rho1.mean(), rho2.cm(), rho2.mean());
  if (s < -1e-9)
    throw NumericalConsistencyError("negative relative entropy " + std::to_string(s));
  return std::max(s, 0.0);
}

namespace {

double separable_weight(double a, double b, double c)
{
  double const w = std::sqrt(std::max(0.0, (a - 0.5) * (b - 0.5)));
  return std::copysign(w, c);
}

} // namespace

GaussianState<double> separable_candidate(ResourceState const &resource)
{
  double const c_sep = separable_weight(resource.a, resource.b, resource.c);
  GaussianState<double> sep(Eigen::MatrixXd(symmetric_form_cm(resource.a, resource.b, c_sep)));
  if (!ppt_separable(sep.cm()))
    throw ConstructionError("separable candidate fails the PPT test");
  return sep;
}

double plob(double eta)
{
  if (!(eta > 0 && eta < 1))
    throw DomainError("plob needs 0 < eta < 1");
  return -std::log2(1 - eta);
}

double extended_h(double nbar)
{
  if (!(nbar >= 0))
    throw DomainError("h(x) needs x >= 0");
  return entropy_h(nbar);
}

double phi_bound(PhaseInsensitiveChannel const &channel)
{
  if (phi_vanishing_threshold(channel))
    return 0.0;
  double const eta = channel.eta();
  double const nbar = channel.nbar();
  double phi = 0;
  switch (channel.kind()) {
  case ChannelKind::ThermalLoss: phi = -std::log2((1 - eta) * std::pow(eta, nbar)) - entropy_h(nbar); break;
  case ChannelKind::NoisyAmplifier: phi = std::log2(std::pow(eta, nbar + 1) / (eta - 1)) - entropy_h(nbar); break;
  case ChannelKind::AdditiveNoise: phi = (channel.xi() - 1) / std::numbers::ln2 - std::log2(channel.xi()); break;
  case ChannelKind::PureLoss: phi = plob(eta); break;
  }
  return std::max(phi, 0.0);
}

BoundResult psi_bound(PhaseInsensitiveChannel const &channel)
{
  ResourceState const resource = resource_state(channel);
  GaussianState<double> const sigma(Eigen::MatrixXd(resource.cm));
  GaussianState<double> const sep = separable_candidate(resource);

  double const entropy = von_neumann_entropy(sigma.cm());
  double psi = 0;
  double cross = entropy;
  // Resource already of separable-candidate form (EB boundary and beyond):
  // S(sigma || sigma) = 0 without touching the Gibbs matrix, which may be
  // singular there.
  if ((sigma.cm() - sep.cm()).cwiseAbs().maxCoeff() > 1e-12) {
    cross = sigma_functional(sigma.cm(), sigma.mean(), sep.cm(), sep.mean());
    psi = relative_entropy(sigma, sep);
  }

  std::optional<double> capacity;
  if (channel.kind() == ChannelKind::PureLoss)
    capacity = plob(channel.eta());
  return {psi, phi_bound(channel), capacity, resource.cm, sep.cm(), {entropy, cross}, resource, channel};
}

SeparableOptimum optimize_separable_bound(ResourceState const &resource, OptimizerConfig const &config)
{
  GaussianState<double> const sigma(Eigen::MatrixXd(resource.cm));
  if (ppt_separable(resource.cm))
    return {0.0, resource.cm, resource.a, resource.b, resource.c};

  double const sign = resource.c < 0 ? -1.0 : 1.0;
  auto const unpack = [&](Eigen::VectorXd const &x) {
    double const a = 0.5 + std::exp(x(0));
    double const b = 0.5 + std::exp(x(1));
    double const s = (1 + std::sin(x(2))) / 2;
    return Eigen::Vector3d(a, b, sign * s * std::sqrt((a - 0.5) * (b - 0.5)));
  };
  auto const objective = [&](Eigen::VectorXd const &x) {
    Eigen::Vector3d const p = unpack(x);
    if (!std::isfinite(p(0)) || !std::isfinite(p(1)))
      return std::numeric_limits<double>::infinity();
    try {
      GaussianState<double> const trial(Eigen::MatrixXd(symmetric_form_cm(p(0), p(1), p(2))));
      return relative_entropy(sigma, trial);
    } catch (NumericalError const &) {
      return std::numeric_limits<double>::infinity();
    } catch (DomainError const &) {
      return std::numeric_limits<double>::infinity();
    }
  };

  Eigen::VectorXd start(3);
  start << std::log(resource.a - 0.5), std::log(resource.b - 0.5), std::numbers::pi / 2;

  Rng rng(config.seed);
  NelderMeadResult best{start, objective(start), 0};
  for (int k = 0; k < std::max(1, config.restarts); ++k) {
    Eigen::VectorXd x0 = start;
    if (k > 0)
      for (Eigen::Index i = 0; i < x0.size(); ++i)
        x0(i) += rng.uniform(-0.3, 0.3);
    auto const result = nelder_mead(objective, x0, 0.1, config.max_iters, config.tol);
    if (result.fx < best.fx)
      best = result;
  }
  if (!std::isfinite(best.fx))
    throw OptimizationError("no feasible separable point found");

  Eigen::Vector3d const p = unpack(best.x);
  Eigen::Matrix4d const cm = symmetric_form_cm(p(0), p(1), p(2));
  if (!ppt_separable(cm))
    throw OptimizationError("optimized state fails the PPT test");
  return {best.fx, cm, p(0), p(1), p(2)};
}

} // namespace skcap

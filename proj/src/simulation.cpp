#include "skcap/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "skcap/random.hpp"

namespace skcap {

std::string_view to_string(ResourceFlavor flavor)
{
  switch (flavor) {
  case ResourceFlavor::Generic: return "generic";
  case ResourceFlavor::PureLossTMSV: return "pureloss_tmsv";
  case ResourceFlavor::EntanglementBreaking: return "entanglement_breaking";
  }
  return "unknown";
}

Eigen::Matrix4d symmetric_form_cm(double a, double b, double c)
{
  Eigen::Matrix4d cm;
  cm << a, 0, c, 0,
        0, a, 0, -c,
        c, 0, b, 0,
        0, -c, 0, b;
  return cm;
}

double squeezing_from_noise(double eta, double nu)
{
  if (!(eta > 0))
    throw SimulationDomainError("squeezing_from_noise needs eta > 0");
  if (!(nu > std::abs(eta - 1) / 2)) {
    if (eta < 1)
      throw SimulationDomainError("nu = (1-eta)/2 is a pure-loss channel: the generic resource diverges, use the "
                                  "pure-loss TMSV resource");
    throw SimulationDomainError("nu <= |eta-1|/2: no finite-resource simulation (quantum-limited channel)");
  }
  return -0.5 * std::log(2 * nu / (eta + 1));
}

namespace {

ResourceState checked(ResourceState s)
{
  auto const report = validate_cm(s.cm);
  if (!report.is_physical)
    throw ConstructionError("resource state is unphysical: min symplectic eigenvalue " +
                            std::to_string(report.min_sympl_eig));
  return s;
}

ResourceState pure_loss_resource(double eta)
{
  double const a = (eta + 1) / (2 * (1 - eta));
  // sqrt(a^2 - 1/4) in the cancellation-free form sqrt(eta)/(1-eta).
  double const c = std::sqrt(eta) / (1 - eta);
  return checked({symmetric_form_cm(a, a, c), a, a, c, 0.5 * std::log((1 + eta) / (1 - eta)),
                  ResourceFlavor::PureLossTMSV});
}

} // namespace

ResourceState resource_state(PhaseInsensitiveChannel const &channel)
{
  double const eta = channel.eta();
  double const nu = channel.nu();
  switch (channel.kind()) {
  case ChannelKind::PureLoss: return pure_loss_resource(eta);
  case ChannelKind::ThermalLoss:
    if (channel.nbar() == 0)
      throw SimulationDomainError("thermal-loss channel with nbar = 0 is pure loss; construct it as pureloss:eta=..");
    break;
  case ChannelKind::NoisyAmplifier:
    if (channel.nbar() == 0)
      throw SimulationDomainError("quantum-limited amplifier (nbar = 0) has no finite-resource simulation");
    break;
  case ChannelKind::AdditiveNoise: break;
  }

  double const r = squeezing_from_noise(eta, nu);
  if (r < 0) {
    // Entanglement-breaking region: a product of vacuum (teleported mode) and
    // a thermal state reproduces the added noise exactly.
    double const b = nu - eta / 2;
    return checked({symmetric_form_cm(0.5, b, 0.0), 0.5, b, 0.0, r, ResourceFlavor::EntanglementBreaking});
  }

  double const em = 2 * nu / (eta + 1); // e^{-2r}
  double const ep = 1 / em;             // e^{2r}
  double const d = std::abs(eta - 1);
  double const b = (-d + eta * ep + em) / (2 * (-ep * d + eta + 1));
  double const c = (2 * b - em) / (2 * std::sqrt(eta));
  double const a = (2 * b + (eta - 1) * em) / (2 * eta);
  return checked({symmetric_form_cm(a, b, c), a, b, c, r, ResourceFlavor::Generic});
}

GaussianState<double> bk_teleport(GaussianState<double> const &input, ResourceState const &resource, double gain)
{
  if (!(gain > 0))
    throw DomainError("teleportation gain must be positive");
  if (input.modes() != 1)
    throw DimensionError("bk_teleport expects a single-mode input");
  double const noise = gain * gain * resource.a + resource.b - 2 * gain * resource.c;
  Eigen::MatrixXd cm = gain * gain * input.cm() + noise * Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd mean = gain * input.mean();
  return {std::move(mean), cm};
}

SimulationReport verify_simulation(PhaseInsensitiveChannel const &channel, int n_samples, double tol, std::uint64_t seed)
{
  if (n_samples < 1)
    throw DomainError("verify_simulation needs at least one sample");
  ResourceState const resource = resource_state(channel);
  double const gain = std::sqrt(channel.eta());

  Rng rng(seed);
  double worst = 0;
  for (int i = 0; i < n_samples; ++i) {
    auto const input = random_state(1, rng, 0.5, 4.0, 3.0, 1.0);
    auto const simulated = bk_teleport(input, resource, gain);
    auto const direct = apply_channel(channel, input);
    worst = std::max({worst, (simulated.mean() - direct.mean()).cwiseAbs().maxCoeff(),
                      (simulated.cm() - direct.cm()).cwiseAbs().maxCoeff()});
  }

  SimulationReport report{worst, worst <= tol, seed, n_samples, resource.r, resource.flavor, {}};
  if (resource.r > 5)
    report.note = "extreme squeezing r = " + std::to_string(resource.r);
  else if (resource.flavor == ResourceFlavor::EntanglementBreaking)
    report.note = "entanglement-breaking channel: separable resource";
  return report;
}

} // namespace skcap

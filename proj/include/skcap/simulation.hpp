#pragma once

#include <cstdint>
#include <string>

#include "skcap/channel.hpp"

namespace skcap {

enum class ResourceFlavor
{
  /// Finite-squeezing resource of the gain-sqrt(eta) teleportation simulation.
  Generic,
  /// Two-mode squeezed vacuum used for the pure-loss channel.
  PureLossTMSV,
  /// Separable resource for channels in the entanglement-breaking region,
  /// where the Generic formulas give an unphysical CM.
  EntanglementBreaking,
};

std::string_view to_string(ResourceFlavor flavor);

/// Zero-mean two-mode state with CM [[a I, c Z], [c Z, b I]], Z = diag(1,-1).
struct ResourceState
{
  Eigen::Matrix4d cm;
  double a;
  double b;
  double c;
  double r;
  ResourceFlavor flavor;
};

/// CM [[a I, c Z], [c Z, b I]].
Eigen::Matrix4d symmetric_form_cm(double a, double b, double c);

/// r = -1/2 ln(2 nu / (eta + 1)). Negative r marks the entanglement-breaking
/// region nu > (eta + 1)/2. Throws SimulationDomainError when
/// nu <= |eta - 1|/2 (pure loss, ideal amplifier).
double squeezing_from_noise(double eta, double nu);

/// Resource state simulating the channel under teleportation with gain sqrt(eta).
ResourceState resource_state(PhaseInsensitiveChannel const &channel);

/// Averaged-moment action of Braunstein-Kimble teleportation with gain g:
/// mean -> g mean, V -> g^2 V + (g^2 a + b - 2 g c) I.
GaussianState<double> bk_teleport(GaussianState<double> const &input, ResourceState const &resource, double gain);

struct SimulationReport
{
  double max_moment_error;
  bool pass;
  std::uint64_t seed;
  int samples;
  double r;
  ResourceFlavor flavor;
  std::string note;
};

/// Compares bk_teleport(rho, resource_state(channel), sqrt(eta)) with
/// apply_channel(channel, rho) on seeded random single-mode inputs
/// (means in [-3,3]^2, symplectic eigenvalue in [0.5,4], random rotation
/// and squeezing).
SimulationReport verify_simulation(PhaseInsensitiveChannel const &channel, int n_samples = 100, double tol = 1e-10,
                                   std::uint64_t seed = 1);

} // namespace skcap

#pragma once

#include <cstdint>
#include <optional>

#include "skcap/simulation.hpp"

namespace skcap {

/// Quantum relative entropy S(rho1 || rho2) in bits between Gaussian states:
/// -S_vN(V1) + Sigma(V1, V2). The entropy term uses symplectic eigenvalues so
/// a pure first argument is fine; the second must be strictly mixed.
double relative_entropy(GaussianState<double> const &rho1, GaussianState<double> const &rho2);

/// Separable state with the resource's diagonal blocks and off-diagonal
/// weight c_sep = sqrt((a - 1/2)(b - 1/2)).
GaussianState<double> separable_candidate(ResourceState const &resource);

struct RelativeEntropyTerms
{
  double entropy_term; ///< S_vN(sigma_nu), bits
  double sigma_cross;  ///< Sigma(V_resource, V_sep), bits
};

struct BoundResult
{
  double psi;
  double phi;
  std::optional<double> plob;
  Eigen::Matrix4d resource_cm;
  Eigen::Matrix4d separable_cm;
  RelativeEntropyTerms terms;
  ResourceState resource;
  PhaseInsensitiveChannel channel;
};

/// Finite-resource bound Psi = S(sigma_nu || sigma_sep), together with Phi
/// and (pure loss only) the repeaterless capacity -log2(1 - eta).
BoundResult psi_bound(PhaseInsensitiveChannel const &channel);

/// Closed-form infinite-energy bound; exactly 0 in the entanglement-breaking region.
double phi_bound(PhaseInsensitiveChannel const &channel);

/// Pure-loss secret-key capacity -log2(1 - eta).
double plob(double eta);

/// h(x) = (x+1) log2(x+1) - x log2 x for x >= 0.
double extended_h(double nbar);

struct OptimizerConfig
{
  int max_iters = 2000;
  int restarts = 4;
  double tol = 1e-10;
  std::uint64_t seed = 7;
};

struct SeparableOptimum
{
  double psi_opt;
  Eigen::Matrix4d cm_opt;
  double a;
  double b;
  double c;
};

/// Local derivative-free minimization of S(sigma_nu || sigma') over separable
/// sigma' = [[a' I, c' Z], [c' Z, b' I]] with a', b' > 1/2 and
/// |c'| = s sqrt((a'-1/2)(b'-1/2)), s in [0,1]. Starts from the candidate
/// above plus seeded perturbations; never worse than the candidate.
SeparableOptimum optimize_separable_bound(ResourceState const &resource, OptimizerConfig const &config = {});

} // namespace skcap

#pragma once

#include <cstdint>
#include <random>

#include "skcap/gaussian_state.hpp"

namespace skcap {

/// Seeded generator with a platform-independent uniform draw (the standard
/// distributions are implementation-defined, which would break byte-identical
/// output across toolchains).
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
      : engine_(seed)
  {
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi)
  {
    double const u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

private:
  std::mt19937_64 engine_;
};

/// Random symplectic matrix on `modes` modes built from layers of phase
/// rotations, single-mode squeezers (|log-squeeze| <= max_squeeze) and, for
/// more than one mode, beam splitters between neighbours.
Eigen::MatrixXd random_symplectic(Eigen::Index modes, Rng &rng, double max_squeeze = 1.0, int layers = 3);

/// Random strictly-bona-fide state: S diag(nu_k I) S^T with nu_k drawn from
/// [nu_min, nu_max] and means from [-mean_range, mean_range].
GaussianState<double> random_state(Eigen::Index modes, Rng &rng, double nu_min, double nu_max, double mean_range = 0.0,
                                   double max_squeeze = 1.0);

} // namespace skcap

#pragma once

// Truncated Fock-space representation of the Gaussian states used by the
// bounds, as an independent check of the closed-form relative entropy.
//
// Memory: a two-mode state at cutoff D is stored as 2D-1 blocks (one per
// photon-number difference n_A - n_B), at most D x D each, so O(D^3)
// entries instead of the O(D^4) of a dense matrix. The thermal input of the
// squeezer is summed over O(K^2) product states with K set by the thermal
// tail, which dominates the cost for strongly mixed states.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skcap/channel.hpp"

namespace skcap {

/// Block of a density matrix on the basis states {(m, n)} listed in `basis`
/// (single-mode states use n = 0).
struct FockBlock
{
  int sector;
  std::vector<std::pair<int, int>> basis;
  Eigen::MatrixXcd matrix;
};

class FockDensityMatrix
{
public:
  FockDensityMatrix(int modes, int cutoff, std::vector<FockBlock> blocks);

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  /// Total Hilbert-space dimension cutoff^modes.
  long dim() const;
  std::vector<FockBlock> const &blocks() const { return blocks_; }

  double trace() const;
  double trace_deficit() const { return 1.0 - trace(); }
  /// Full matrix in the lexicographic (m, n) basis; only sensible for small cutoffs.
  Eigen::MatrixXcd dense() const;
  /// Hermitian within 1e-12 and eigenvalues >= -1e-10; throws OracleConsistencyError otherwise.
  void check() const;

  /// Recomputed CM of a two-mode state of the [[aI,cZ],[cZ,bI]] class
  /// (single-mode states give a 2x2 CM).
  Eigen::MatrixXd covariance() const;

  /// CM self-check result; `checked` is false when the truncation deficit was
  /// too large (> 1e-8) for the 1e-6 comparison to be meaningful.
  double self_check_error = 0;
  bool self_checked = false;

private:
  int modes_;
  int cutoff_;
  std::vector<FockBlock> blocks_;
};

/// Diagonal thermal state n^k / (n+1)^(k+1), k < cutoff.
FockDensityMatrix thermal_fock(double nbar, int cutoff);

/// Two-mode state with CM [[aI, cZ], [cZ, bI]], built as a two-mode squeezer
/// acting on thermal states with the CM's symplectic eigenvalues. The CM
/// recomputed from the truncated matrix must match within 1e-6 whenever the
/// trace deficit is <= 1e-8 (OracleConsistencyError otherwise).
FockDensityMatrix symmetric_gaussian_to_fock(double a, double b, double c, int cutoff);

struct OracleValue
{
  double bits;
  double deficit1;
  double deficit2;
  int clamped_eigenvalues;
};

/// Tr[rho1 log2 rho1] - Tr[rho1 log2 rho2] by eigendecomposition. Throws
/// SupportError when rho2 is (numerically) singular on the support of rho1.
OracleValue oracle_relative_entropy(FockDensityMatrix const &rho1, FockDensityMatrix const &rho2);

/// Oracle value of S(sigma_nu || sigma_sep) for a channel at one cutoff.
OracleValue oracle_psi(PhaseInsensitiveChannel const &channel, int cutoff);

struct ConvergenceRow
{
  int cutoff;
  double oracle_bits;
  double delta_bits;
  double deficit;
};

struct ConvergenceTable
{
  std::vector<ConvergenceRow> rows;
  double formula_bits;
  double mean_photons;
  bool converged;
  std::string warning;
};

/// Oracle values at each cutoff against the Gaussian formula; converged when
/// the last |delta| <= 1e-4.
ConvergenceTable convergence_scan(PhaseInsensitiveChannel const &channel, std::vector<int> const &cutoffs);

struct AdaptiveOracle
{
  double bits;
  int final_cutoff;
  std::vector<int> cutoffs_tried;
  bool converged;
};

/// Cutoff doubling from `start` until successive values differ by < 1e-5 or
/// `max_cutoff` is reached.
AdaptiveOracle adaptive_oracle_psi(PhaseInsensitiveChannel const &channel, int start = 15, int max_cutoff = 60);

} // namespace skcap

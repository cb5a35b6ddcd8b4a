#include "skcap/fock.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "skcap/bounds.hpp"

namespace skcap {

FockDensityMatrix::FockDensityMatrix(int modes, int cutoff, std::vector<FockBlock> blocks)
    : modes_(modes)
    , cutoff_(cutoff)
    , blocks_(std::move(blocks))
{
  if (modes_ != 1 && modes_ != 2)
    throw DimensionError("Fock states are supported for one or two modes");
  if (cutoff_ < 1)
    throw DomainError("Fock cutoff must be positive");
}

long FockDensityMatrix::dim() const
{
  return modes_ == 1 ? cutoff_ : long(cutoff_) * cutoff_;
}

double FockDensityMatrix::trace() const
{
  double t = 0;
  for (auto const &blk : blocks_)
    t += blk.matrix.trace().real();
  return t;
}

Eigen::MatrixXcd FockDensityMatrix::dense() const
{
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
  auto const index = [&](std::pair<int, int> mn) { return modes_ == 1 ? mn.first : mn.first * cutoff_ + mn.second; };
  for (auto const &blk : blocks_)
    for (std::size_t i = 0; i < blk.basis.size(); ++i)
      for (std::size_t j = 0; j < blk.basis.size(); ++j)
        out(index(blk.basis[i]), index(blk.basis[j])) = blk.matrix(Eigen::Index(i), Eigen::Index(j));
  return out;
}

void FockDensityMatrix::check() const
{
  for (auto const &blk : blocks_) {
    if (blk.matrix.size() == 0)
      continue;
    double const herm = (blk.matrix - blk.matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12)
      throw OracleConsistencyError("Fock density matrix not Hermitian (" + std::to_string(herm) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk.matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw OracleConsistencyError("Fock density matrix has eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  }
}

Eigen::MatrixXd FockDensityMatrix::covariance() const
{
  if (modes_ == 1) {
    double n = 0;
    for (auto const &blk : blocks_)
      for (std::size_t i = 0; i < blk.basis.size(); ++i)
        n += blk.basis[i].first * blk.matrix(Eigen::Index(i), Eigen::Index(i)).real();
    return (n + 0.5) * Eigen::MatrixXd::Identity(2, 2);
  }
  double na = 0, nb = 0, ab = 0;
  for (auto const &blk : blocks_) {
    std::map<std::pair<int, int>, Eigen::Index> pos;
    for (std::size_t i = 0; i < blk.basis.size(); ++i)
      pos[blk.basis[i]] = Eigen::Index(i);
    for (std::size_t i = 0; i < blk.basis.size(); ++i) {
      auto const [m, n] = blk.basis[i];
      double const p = blk.matrix(Eigen::Index(i), Eigen::Index(i)).real();
      na += m * p;
      nb += n * p;
      // <ab> = sum sqrt(mn) rho_{(m,n),(m-1,n-1)}
      if (m > 0 && n > 0)
        if (auto it = pos.find({m - 1, n - 1}); it != pos.end())
          ab += std::sqrt(double(m) * n) * blk.matrix(Eigen::Index(i), it->second).real();
    }
  }
  Eigen::MatrixXd cm = Eigen::MatrixXd::Zero(4, 4);
  cm(0, 0) = cm(1, 1) = na + 0.5;
  cm(2, 2) = cm(3, 3) = nb + 0.5;
  cm(0, 2) = cm(2, 0) = ab;
  cm(1, 3) = cm(3, 1) = -ab;
  return cm;
}

namespace {

std::vector<double> thermal_weights(double nbar, int count)
{
  std::vector<double> p(static_cast<std::size_t>(count));
  double const q = nbar / (nbar + 1);
  double w = 1 / (nbar + 1);
  for (auto &x : p) {
    x = w;
    w *= q;
  }
  return p;
}

// Number of thermal terms needed for a tail below 1e-16.
int thermal_terms(double nbar, int minimum)
{
  if (nbar <= 0)
    return 1;
  double const q = nbar / (nbar + 1);
  int const k = int(std::ceil(std::log(1e-16) / std::log(q)));
  return std::max(minimum, k);
}

} // namespace

FockDensityMatrix thermal_fock(double nbar, int cutoff)
{
  if (!(nbar >= 0))
    throw DomainError("thermal_fock needs nbar >= 0");
  if (cutoff < 2)
    throw DomainError("thermal_fock needs cutoff >= 2");
  auto const p = thermal_weights(nbar, cutoff);
  FockBlock blk{0, {}, Eigen::MatrixXcd::Zero(cutoff, cutoff)};
  for (int k = 0; k < cutoff; ++k) {
    blk.basis.emplace_back(k, 0);
    blk.matrix(k, k) = p[static_cast<std::size_t>(k)];
  }
  std::vector<FockBlock> blocks;
  blocks.push_back(std::move(blk));
  return {1, cutoff, std::move(blocks)};
}

FockDensityMatrix symmetric_gaussian_to_fock(double a, double b, double c, int cutoff)
{
  if (cutoff < 2)
    throw DomainError("Fock cutoff must be >= 2");
  if (!validate_cm(symmetric_form_cm(a, b, c)).is_physical)
    throw PhysicalityError("symmetric_gaussian_to_fock: CM is not bona fide");

  // Symplectic diagonalization of the standard form: thermal nu_A, nu_B and
  // a two-mode squeezer with tanh(2r) = 2c/(a+b).
  double const s = std::sqrt((a + b) * (a + b) - 4 * c * c);
  double const n_a = std::max(0.0, (s + (a - b)) / 2 - 0.5);
  double const n_b = std::max(0.0, (s - (a - b)) / 2 - 0.5);
  double const r = 0.5 * std::atanh(2 * c / (a + b));
  double const ch = std::cosh(r), sh = std::sinh(r), th = std::tanh(r);

  int const d = cutoff;
  int const ka = thermal_terms(n_a, 1);
  int const kb = thermal_terms(n_b, 1);

  // col[k][l](n) = <m, n| S |k, l> with m = n + k - l.
  std::vector<Eigen::VectorXd> col(static_cast<std::size_t>(ka) * kb, Eigen::VectorXd::Zero(d));
  auto const at = [&](int k, int l) -> Eigen::VectorXd & { return col[static_cast<std::size_t>(k) * kb + l]; };
  auto const get = [&](int k, int l, int m, int n) {
    if (k < 0 || l < 0 || k >= ka || l >= kb || n < 0 || n >= d || m < 0 || m >= d || m - n != k - l)
      return 0.0;
    return at(k, l)(n);
  };
  for (int k = 0; k < ka; ++k)
    for (int l = 0; l < kb; ++l) {
      auto &v = at(k, l);
      for (int n = 0; n < d; ++n) {
        int const m = n + k - l;
        if (m < 0 || m >= d)
          continue;
        if (n == 0) {
          v(n) = m == 0 ? std::pow(-th, k) / ch : std::sqrt(double(k)) * get(k - 1, l, m - 1, 0) / (ch * std::sqrt(double(m)));
        } else {
          v(n) = (std::sqrt(double(l)) * get(k, l - 1, m, n - 1) + sh * std::sqrt(double(m)) * get(k, l, m - 1, n - 1)) /
                 (ch * std::sqrt(double(n)));
        }
      }
    }

  auto const pa = thermal_weights(n_a, ka);
  auto const pb = thermal_weights(n_b, kb);

  std::vector<FockBlock> blocks;
  for (int sector = -(d - 1); sector <= d - 1; ++sector) {
    FockBlock blk{sector, {}, {}};
    for (int n = 0; n < d; ++n)
      if (int const m = n + sector; m >= 0 && m < d)
        blk.basis.emplace_back(m, n);
    Eigen::Index const size = Eigen::Index(blk.basis.size());
    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(size, size);
    int const n0 = blk.basis.front().second;
    for (int k = std::max(0, sector); k < ka; ++k) {
      int const l = k - sector;
      if (l >= kb)
        break;
      double const w = pa[static_cast<std::size_t>(k)] * pb[static_cast<std::size_t>(l)];
      if (w == 0)
        continue;
      Eigen::VectorXd const psi = at(k, l).segment(n0, size);
      rho.noalias() += w * psi * psi.transpose();
    }
    blk.matrix = rho.cast<std::complex<double>>();
    blocks.push_back(std::move(blk));
  }

  FockDensityMatrix out(2, cutoff, std::move(blocks));
  if (out.trace_deficit() <= 1e-8) {
    out.self_check_error = (out.covariance() - Eigen::MatrixXd(symmetric_form_cm(a, b, c))).cwiseAbs().maxCoeff();
    out.self_checked = true;
    if (out.self_check_error > 1e-6)
      throw OracleConsistencyError("Fock CM self-check failed: max deviation " + std::to_string(out.self_check_error));
  }
  return out;
}

OracleValue oracle_relative_entropy(FockDensityMatrix const &rho1, FockDensityMatrix const &rho2)
{
  if (rho1.modes() != rho2.modes() || rho1.cutoff() != rho2.cutoff() || rho1.blocks().size() != rho2.blocks().size())
    throw DimensionError("oracle_relative_entropy: density matrices have different dimensions");

  double s11 = 0, s12 = 0;
  int clamped = 0;
  for (std::size_t i = 0; i < rho1.blocks().size(); ++i) {
    auto const &b1 = rho1.blocks()[i];
    auto const &b2 = rho2.blocks()[i];
    if (b1.basis != b2.basis)
      throw DimensionError("oracle_relative_entropy: block bases differ");
    if (b1.matrix.size() == 0)
      continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e1(b1.matrix, Eigen::EigenvaluesOnly);
    for (Eigen::Index j = 0; j < e1.eigenvalues().size(); ++j) {
      double lam = e1.eigenvalues()(j);
      if (lam < -1e-10)
        throw OracleConsistencyError("negative eigenvalue " + std::to_string(lam) + " in rho1");
      if (lam <= 0) {
        clamped += lam < 0;
        continue;
      }
      s11 += lam * std::log2(lam);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e2(b2.matrix);
    for (Eigen::Index j = 0; j < e2.eigenvalues().size(); ++j) {
      double const mu = e2.eigenvalues()(j);
      auto const v = e2.eigenvectors().col(j);
      double const w = (v.adjoint() * b1.matrix * v)(0, 0).real();
      // Below the round-off floor mu carries no information; only a
      // non-negligible rho1 weight there signals a support violation.
      if (mu <= 1e-15) {
        if (w > 1e-9)
          throw SupportError("rho2 eigenvalue " + std::to_string(mu) + " on the support of rho1 (weight " +
                             std::to_string(w) + ")");
        if (mu <= 0) {
          ++clamped;
          continue;
        }
      }
      s12 += w * std::log2(mu);
    }
  }
  return {s11 - s12, rho1.trace_deficit(), rho2.trace_deficit(), clamped};
}

OracleValue oracle_psi(PhaseInsensitiveChannel const &channel, int cutoff)
{
  ResourceState const resource = resource_state(channel);
  auto const sep = separable_candidate(resource);
  double const c_sep = sep.cm()(0, 2);
  auto const rho1 = symmetric_gaussian_to_fock(resource.a, resource.b, resource.c, cutoff);
  auto const rho2 = symmetric_gaussian_to_fock(resource.a, resource.b, c_sep, cutoff);
  return oracle_relative_entropy(rho1, rho2);
}

ConvergenceTable convergence_scan(PhaseInsensitiveChannel const &channel, std::vector<int> const &cutoffs)
{
  if (cutoffs.empty())
    throw DomainError("convergence_scan needs at least one cutoff");
  auto const bound = psi_bound(channel);
  ConvergenceTable table{{}, bound.psi, std::max(bound.resource.a, bound.resource.b) - 0.5, false, {}};
  for (int cutoff : cutoffs) {
    auto const value = oracle_psi(channel, cutoff);
    table.rows.push_back({cutoff, value.bits, std::abs(value.bits - bound.psi), std::max(value.deficit1, value.deficit2)});
  }
  table.converged = table.rows.back().delta_bits <= 1e-4;
  if (!table.converged)
    table.warning = "slow convergence: |delta| = " + std::to_string(table.rows.back().delta_bits) + " > 1e-4 at cutoff " +
                    std::to_string(table.rows.back().cutoff) + " (mean photon number per mode " +
                    std::to_string(table.mean_photons) + "); increase the cutoff";
  else if (table.mean_photons > 5)
    table.warning = "high-energy resource (mean photon number per mode " + std::to_string(table.mean_photons) + ")";
  return table;
}

AdaptiveOracle adaptive_oracle_psi(PhaseInsensitiveChannel const &channel, int start, int max_cutoff)
{
  AdaptiveOracle out{0, start, {}, false};
  double previous = 0;
  for (int cutoff = start;; cutoff = std::min(2 * cutoff, max_cutoff)) {
    double const value = oracle_psi(channel, cutoff).bits;
    out.cutoffs_tried.push_back(cutoff);
    out.bits = value;
    out.final_cutoff = cutoff;
    if (out.cutoffs_tried.size() > 1 && std::abs(value - previous) < 1e-5) {
      out.converged = true;
      break;
    }
    if (cutoff >= max_cutoff)
      break;
    previous = value;
  }
  return out;
}

} // namespace skcap

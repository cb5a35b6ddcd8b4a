#pragma once

// Gaussian-state numerics on covariance matrices in the quadrature ordering
// x1,p1,...,xn,pn with vacuum variance 1/2.
//
// Everything here is header-only and templated on the Eigen scalar, so the
// same code runs in double and long double.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skcap/errors.hpp"

namespace skcap {

template <typename Scalar> using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar> using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace tol {
inline constexpr double symmetry = 1e-12;
inline constexpr double physical = 1e-9;
inline constexpr double gibbs = 1e-7;
inline constexpr double imaginary_residue = 1e-9;
} // namespace tol

inline constexpr double vacuum_variance = 0.5;

/// Block-diagonal symplectic form with blocks [[0,1],[-1,0]].
template <typename Scalar = double> Mat<Scalar> symplectic_form(Eigen::Index modes)
{
  Mat<Scalar> omega = Mat<Scalar>::Zero(2 * modes, 2 * modes);
  for (Eigen::Index k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = Scalar(1);
    omega(2 * k + 1, 2 * k) = Scalar(-1);
  }
  return omega;
}

/// Binary entropy-like function h(x) = (x+1)log2(x+1) - x log2 x, with h(0) = 0.
template <typename Scalar> Scalar entropy_h(Scalar x)
{
  using std::log2;
  if (x <= Scalar(0))
    return Scalar(0);
  return (x + 1) * log2(x + 1) - x * log2(x);
}

namespace detail {

template <typename Derived> void check_square_even(Eigen::MatrixBase<Derived> const &cm)
{
  if (cm.rows() != cm.cols() || cm.rows() == 0 || cm.rows() % 2 != 0)
    throw DimensionError("covariance matrix must be square with even dimension, got " +
                         std::to_string(cm.rows()) + "x" + std::to_string(cm.cols()));
}

template <typename Derived> void check_symmetric(Eigen::MatrixBase<Derived> const &cm)
{
  using Scalar = typename Derived::Scalar;
  Scalar const asym = (cm - cm.transpose()).cwiseAbs().maxCoeff();
  if (asym > Scalar(tol::symmetry) * std::max(Scalar(1), cm.cwiseAbs().maxCoeff()))
    throw ShapeError("covariance matrix not symmetric (max asymmetry " + std::to_string(double(asym)) + ")");
}

} // namespace detail

/// Symmetric part of a square matrix, after checking dimension and symmetry.
template <typename Derived> auto symmetrized(Eigen::MatrixBase<Derived> const &cm)
{
  using Scalar = typename Derived::Scalar;
  detail::check_square_even(cm);
  detail::check_symmetric(cm);
  Mat<Scalar> out = (cm + cm.transpose()) / Scalar(2);
  return out;
}

/// Symplectic eigenvalues, ascending: the positive square roots of the
/// eigenvalues of -(V Omega)^2, each of which appears twice.
template <typename Derived> std::vector<typename Derived::Scalar> symplectic_spectrum(Eigen::MatrixBase<Derived> const &cm)
{
  using Scalar = typename Derived::Scalar;
  detail::check_square_even(cm);
  Eigen::Index const n = cm.rows() / 2;
  Mat<Scalar> const vo = cm * symplectic_form<Scalar>(n);
  Mat<Scalar> const sq = -(vo * vo);
  Eigen::EigenSolver<Mat<Scalar>> solver(sq, false);
  if (solver.info() != Eigen::Success)
    throw DecompositionError("eigen decomposition of -(V Omega)^2 failed");
  std::vector<Scalar> ev(static_cast<std::size_t>(2 * n));
  for (Eigen::Index i = 0; i < 2 * n; ++i)
    ev[static_cast<std::size_t>(i)] = solver.eigenvalues()(i).real();
  std::sort(ev.begin(), ev.end());
  std::vector<Scalar> nus;
  nus.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    using std::sqrt;
    Scalar const pair = (ev[static_cast<std::size_t>(2 * k)] + ev[static_cast<std::size_t>(2 * k + 1)]) / 2;
    nus.push_back(sqrt(std::max(pair, Scalar(0))));
  }
  return nus;
}

template <typename Scalar> struct ValidityReport
{
  bool is_physical;
  Scalar min_sympl_eig;
};

/// Bona fide test: every symplectic eigenvalue >= 1/2 - tol::physical.
template <typename Derived> ValidityReport<typename Derived::Scalar> validate_cm(Eigen::MatrixBase<Derived> const &cm)
{
  using Scalar = typename Derived::Scalar;
  Mat<Scalar> const v = symmetrized(cm);
  auto const nus = symplectic_spectrum(v);
  Scalar const lo = nus.front();
  // A negative eigenvalue of V would slip past the -(V Omega)^2 test
  // (e.g. -0.5 I), so positivity is checked separately.
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(v, Eigen::EigenvaluesOnly);
  bool const positive = es.eigenvalues().minCoeff() > Scalar(0);
  return {positive && lo >= Scalar(vacuum_variance - tol::physical), lo};
}

template <typename Scalar> struct WilliamsonSpectrum
{
  std::vector<Scalar> nus;
};

/// Symplectic eigenvalues of a positive-definite CM.
template <typename Derived> WilliamsonSpectrum<typename Derived::Scalar> williamson_eigenvalues(Eigen::MatrixBase<Derived> const &cm)
{
  using Scalar = typename Derived::Scalar;
  Mat<Scalar> const v = symmetrized(cm);
  Eigen::LLT<Mat<Scalar>> llt(v);
  if (llt.info() != Eigen::Success)
    throw DecompositionError("covariance matrix is not positive definite");
  return {symplectic_spectrum(v)};
}

/// Von Neumann entropy in bits, sum_k h(nu_k - 1/2). Pure modes contribute
/// exactly zero.
template <typename Derived> typename Derived::Scalar von_neumann_entropy(Eigen::MatrixBase<Derived> const &cm)
{
  using Scalar = typename Derived::Scalar;
  auto const report = validate_cm(cm);
  if (!report.is_physical)
    throw PhysicalityError("entropy of unphysical CM (min symplectic eigenvalue " +
                           std::to_string(double(report.min_sympl_eig)) + ")");
  Scalar s(0);
  for (Scalar nu : williamson_eigenvalues(cm).nus)
    s += entropy_h(std::max(nu - Scalar(vacuum_variance), Scalar(0)));
  return s;
}

/// Lambda V Lambda with Lambda flipping the momentum of the given mode (0 or 1).
template <typename Derived> auto partial_transpose_cm(Eigen::MatrixBase<Derived> const &cm, int mode = 1)
{
  using Scalar = typename Derived::Scalar;
  if (cm.rows() != 4 || cm.cols() != 4)
    throw DimensionError("partial transpose needs a two-mode (4x4) CM");
  if (mode != 0 && mode != 1)
    throw DimensionError("partial transpose mode index must be 0 or 1");
  Vec<Scalar> flip = Vec<Scalar>::Ones(4);
  flip(2 * mode + 1) = Scalar(-1);
  Mat<Scalar> out = flip.asDiagonal() * cm * flip.asDiagonal();
  return out;
}

/// PPT test; for two-mode Gaussian states this is equivalent to separability.
template <typename Derived> bool ppt_separable(Eigen::MatrixBase<Derived> const &cm)
{
  using Scalar = typename Derived::Scalar;
  if (cm.rows() != 4 || cm.cols() != 4)
    throw DimensionError("ppt_separable needs a two-mode (4x4) CM");
  auto const report = validate_cm(cm);
  if (!report.is_physical)
    throw PhysicalityError("ppt_separable on unphysical CM");
  Mat<Scalar> const pt = partial_transpose_cm(symmetrized(cm));
  return symplectic_spectrum(pt).front() >= Scalar(vacuum_variance - tol::physical);
}

namespace detail {

template <typename Scalar> using CMat = Mat<std::complex<Scalar>>;

// f(M) = P f(D) P^-1 for a diagonalizable M with real spectrum.
template <typename Scalar, typename F> CMat<Scalar> real_spectrum_function(CMat<Scalar> const &m, F f)
{
  Eigen::ComplexEigenSolver<CMat<Scalar>> solver(m);
  if (solver.info() != Eigen::Success)
    throw DecompositionError("complex eigen decomposition failed");
  auto const &p = solver.eigenvectors();
  Vec<std::complex<Scalar>> fd(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    fd(i) = f(solver.eigenvalues()(i).real());
  Eigen::PartialPivLU<CMat<Scalar>> lu(p);
  return p * fd.asDiagonal() * lu.inverse();
}

template <typename Scalar> Mat<Scalar> real_part_checked(CMat<Scalar> const &m, char const *what)
{
  Scalar const residue = m.imag().cwiseAbs().maxCoeff();
  if (residue > Scalar(tol::imaginary_residue))
    throw NumericalConsistencyError(std::string(what) + ": imaginary residue " + std::to_string(double(residue)));
  return m.real();
}

} // namespace detail

/// Gibbs matrix G = 2 i Omega arccoth(2 i V Omega) of a strictly mixed CM.
///
/// The spectrum of 2 i V Omega is {+-2 nu_k}; arccoth is applied on the
/// eigenbasis. Throws SingularGibbsError when some nu_k <= 1/2 + tol::gibbs.
template <typename Derived> auto gibbs_matrix(Eigen::MatrixBase<Derived> const &cm)
{
  using Scalar = typename Derived::Scalar;
  using C = std::complex<Scalar>;
  Mat<Scalar> const v = symmetrized(cm);
  auto const nus = williamson_eigenvalues(v).nus;
  if (nus.front() <= Scalar(vacuum_variance + tol::gibbs))
    throw SingularGibbsError("Gibbs matrix undefined: symplectic eigenvalue " + std::to_string(double(nus.front())) +
                             " is within tolerance of 1/2");
  Eigen::Index const n = v.rows() / 2;
  detail::CMat<Scalar> const omega = symplectic_form<Scalar>(n).template cast<C>();
  detail::CMat<Scalar> const m = C(0, 2) * v.template cast<C>() * omega;
  auto const acoth = [](Scalar x) {
    using std::log;
    return C(log((x + 1) / (x - 1)) / 2, 0);
  };
  detail::CMat<Scalar> const g = C(0, 2) * omega * detail::real_spectrum_function<Scalar>(m, acoth);
  Mat<Scalar> out = detail::real_part_checked<Scalar>(g, "gibbs_matrix");
  out = ((out + out.transpose()) / Scalar(2)).eval();
  return out;
}

/// Inverse of gibbs_matrix: V = (i/2) coth(i Omega G / 2) Omega.
template <typename Derived> auto cm_from_gibbs(Eigen::MatrixBase<Derived> const &g)
{
  using Scalar = typename Derived::Scalar;
  using C = std::complex<Scalar>;
  detail::check_square_even(g);
  Eigen::Index const n = g.rows() / 2;
  detail::CMat<Scalar> const omega = symplectic_form<Scalar>(n).template cast<C>();
  detail::CMat<Scalar> const m = C(0, 1) * omega * g.template cast<C>() / Scalar(2);
  auto const coth = [](Scalar x) {
    using std::tanh;
    return C(Scalar(1) / tanh(x), 0);
  };
  detail::CMat<Scalar> const v = C(0, 1) * detail::real_spectrum_function<Scalar>(m, coth) * omega / Scalar(2);
  Mat<Scalar> out = detail::real_part_checked<Scalar>(v, "cm_from_gibbs");
  out = ((out + out.transpose()) / Scalar(2)).eval();
  return out;
}

/// ln det(V + i Omega / 2), evaluated as a complex determinant whose
/// imaginary part must vanish (it equals prod_k (nu_k^2 - 1/4) > 0 for a
/// strictly mixed V).
template <typename Derived> typename Derived::Scalar log_det_shifted(Eigen::MatrixBase<Derived> const &cm)
{
  using Scalar = typename Derived::Scalar;
  using C = std::complex<Scalar>;
  detail::check_square_even(cm);
  Eigen::Index const n = cm.rows() / 2;
  detail::CMat<Scalar> const shifted =
      cm.template cast<C>() + C(0, Scalar(0.5)) * symplectic_form<Scalar>(n).template cast<C>();
  C const det = Eigen::PartialPivLU<detail::CMat<Scalar>>(shifted).determinant();
  using std::abs;
  if (abs(det.imag()) > Scalar(tol::imaginary_residue) * std::max(Scalar(1), abs(det)) || det.real() <= Scalar(0))
    throw NumericalConsistencyError("det(V + i Omega/2) is not real-positive");
  using std::log;
  return log(det.real());
}

/// Sigma(V1, V2) in bits:
///   [ln det(V2 + i Omega/2) + Tr(V1 G2) + delta^T G2 delta] / (2 ln 2)
/// with delta = mean1 - mean2 and G2 the Gibbs matrix of V2.
template <typename D1, typename V1, typename D2, typename V2>
typename D1::Scalar sigma_functional(Eigen::MatrixBase<D1> const &cm1, Eigen::MatrixBase<V1> const &mean1,
                                     Eigen::MatrixBase<D2> const &cm2, Eigen::MatrixBase<V2> const &mean2)
{
  using Scalar = typename D1::Scalar;
  if (cm1.rows() != cm2.rows() || mean1.size() != cm1.rows() || mean2.size() != cm2.rows())
    throw DimensionError("sigma_functional: mode counts differ");
  Mat<Scalar> const g2 = gibbs_matrix(cm2);
  Vec<Scalar> const delta = mean1 - mean2;
  using std::log;
  Scalar const num = log_det_shifted(cm2) + (cm1 * g2).trace() + delta.dot(g2 * delta);
  return num / (2 * log(Scalar(2)));
}

} // namespace skcap

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "skcap/gaussian_state.hpp"
#include "skcap/random.hpp"
#include "skcap/symplectic.hpp"

using namespace skcap;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd tmsv(double a, double c)
{
  MatrixXd cm = MatrixXd::Zero(4, 4);
  cm.diagonal().setConstant(a);
  cm(0, 2) = cm(2, 0) = c;
  cm(1, 3) = cm(3, 1) = -c;
  return cm;
}

MatrixXd diag(std::initializer_list<double> values)
{
  VectorXd d(Eigen::Index(values.size()));
  Eigen::Index i = 0;
  for (double v : values)
    d(i++) = v;
  return d.asDiagonal();
}

} // namespace

TEST(ValidateCm, VacuumSaturatesUncertainty)
{
  auto const r = validate_cm(MatrixXd(0.5 * MatrixXd::Identity(2, 2)));
  EXPECT_TRUE(r.is_physical);
  EXPECT_NEAR(r.min_sympl_eig, 0.5, 1e-14);
}

TEST(ValidateCm, SubVacuumIsUnphysical)
{
  auto const r = validate_cm(MatrixXd(0.4 * MatrixXd::Identity(2, 2)));
  EXPECT_FALSE(r.is_physical);
  EXPECT_NEAR(r.min_sympl_eig, 0.4, 1e-14);
}

TEST(ValidateCm, Thermal)
{
  auto const r = validate_cm(diag({1.5, 1.5}));
  EXPECT_TRUE(r.is_physical);
  EXPECT_NEAR(r.min_sympl_eig, 1.5, 1e-14);
}

TEST(ValidateCm, RejectsBadShapes)
{
  EXPECT_THROW(validate_cm(MatrixXd::Identity(3, 3)), DimensionError);
  EXPECT_THROW(validate_cm(MatrixXd::Identity(2, 4)), DimensionError);
  MatrixXd asym = MatrixXd::Identity(2, 2);
  asym(0, 1) = 1e-6;
  EXPECT_THROW(validate_cm(asym), ShapeError);
}

TEST(Williamson, Examples)
{
  auto const vac = williamson_eigenvalues(MatrixXd(0.5 * MatrixXd::Identity(4, 4))).nus;
  EXPECT_NEAR(vac[0], 0.5, 1e-14);
  EXPECT_NEAR(vac[1], 0.5, 1e-14);

  auto const pure = williamson_eigenvalues(tmsv(1.5, std::sqrt(2.0))).nus;
  EXPECT_NEAR(pure[0], 0.5, 1e-12);
  EXPECT_NEAR(pure[1], 0.5, 1e-12);

  auto const prod = williamson_eigenvalues(diag({2.5, 2.5, 1.5, 1.5})).nus;
  EXPECT_NEAR(prod[0], 1.5, 1e-14);
  EXPECT_NEAR(prod[1], 2.5, 1e-14);
}

TEST(Williamson, RequiresPositiveDefinite)
{
  EXPECT_THROW(williamson_eigenvalues(diag({1.0, -1.0})), DecompositionError);
}

TEST(Williamson, AgreesWithValidate)
{
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    auto const state = random_state(2, rng, 0.5, 3.0);
    auto const nus = williamson_eigenvalues(state.cm()).nus;
    EXPECT_GE(nus.front(), 0.5 - tol::physical);
    EXPECT_TRUE(validate_cm(state.cm()).is_physical);
    EXPECT_NEAR(validate_cm(state.cm()).min_sympl_eig, nus.front(), 1e-12);
  }
}

TEST(Entropy, Examples)
{
  EXPECT_EQ(von_neumann_entropy(MatrixXd(0.5 * MatrixXd::Identity(2, 2))), 0.0);
  EXPECT_NEAR(von_neumann_entropy(diag({1.5, 1.5})), 2.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(tmsv(1.5, std::sqrt(2.0))), 0.0, 1e-9);
  EXPECT_THROW(von_neumann_entropy(diag({0.4, 0.4})), PhysicalityError);
}

TEST(PartialTranspose, Examples)
{
  MatrixXd const vac = 0.5 * MatrixXd::Identity(4, 4);
  EXPECT_EQ(partial_transpose_cm(vac), vac);

  MatrixXd const cm = tmsv(1.5, 0.7);
  MatrixXd const pt = partial_transpose_cm(cm);
  EXPECT_EQ(pt(0, 2), 0.7);
  EXPECT_EQ(pt(1, 3), 0.7);

  auto const nus = symplectic_spectrum(partial_transpose_cm(tmsv(1.5, std::sqrt(2.0))));
  EXPECT_NEAR(nus[0], 1.5 - std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(nus[1], 1.5 + std::sqrt(2.0), 1e-12);

  EXPECT_THROW(partial_transpose_cm(MatrixXd(MatrixXd::Identity(2, 2))), DimensionError);
}

TEST(PartialTranspose, IsAnInvolution)
{
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    MatrixXd const cm = random_state(2, rng, 0.5, 3.0).cm();
    EXPECT_EQ(partial_transpose_cm(partial_transpose_cm(cm)), cm);
  }
}

TEST(Ppt, Examples)
{
  EXPECT_TRUE(ppt_separable(MatrixXd(0.5 * MatrixXd::Identity(4, 4))));
  EXPECT_FALSE(ppt_separable(tmsv(1.5, std::sqrt(2.0))));
  EXPECT_THROW(ppt_separable(diag({0.4, 0.4, 0.5, 0.5})), PhysicalityError);
}

TEST(Gibbs, ThermalClosedForm)
{
  MatrixXd const g = gibbs_matrix(diag({1.5, 1.5}));
  EXPECT_NEAR(g(0, 0), std::numbers::ln2, 1e-12);
  EXPECT_NEAR(g(1, 1), std::numbers::ln2, 1e-12);
  EXPECT_NEAR(g(0, 1), 0.0, 1e-12);
}

TEST(Gibbs, SingularForPureStates)
{
  EXPECT_THROW(gibbs_matrix(MatrixXd(0.5 * MatrixXd::Identity(2, 2))), SingularGibbsError);
  EXPECT_THROW(gibbs_matrix(tmsv(1.5, std::sqrt(2.0))), SingularGibbsError);
  EXPECT_THROW(gibbs_matrix(diag({0.5 + 5e-8, 0.5 + 5e-8})), SingularGibbsError);
}

TEST(Gibbs, RoundTripAndSymmetry)
{
  Rng rng(17);
  for (int k = 0; k < 100; ++k) {
    MatrixXd const cm = random_state(2, rng, 0.6, 5.0).cm();
    MatrixXd const g = gibbs_matrix(cm);
    EXPECT_LE((g - g.transpose()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((cm_from_gibbs(g) - cm).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Gibbs, SymplecticCovariance)
{
  Rng rng(19);
  for (int k = 0; k < 50; ++k) {
    MatrixXd const cm = random_state(2, rng, 0.6, 5.0).cm();
    MatrixXd const s = random_symplectic(2, rng, 0.5);
    MatrixXd const sinv = s.inverse();
    MatrixXd const lhs = gibbs_matrix(MatrixXd(s * cm * s.transpose()));
    MatrixXd const rhs = sinv.transpose() * gibbs_matrix(cm) * sinv;
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(SigmaFunctional, Examples)
{
  VectorXd const zero = VectorXd::Zero(2);
  MatrixXd const th = diag({1.5, 1.5});
  MatrixXd const vac = 0.5 * MatrixXd::Identity(2, 2);
  EXPECT_NEAR(sigma_functional(th, zero, th, zero), 2.0, 1e-12);
  EXPECT_NEAR(sigma_functional(vac, zero, th, zero), 1.0, 1e-12);
  VectorXd shift(2);
  shift << 1, 0;
  EXPECT_NEAR(sigma_functional(th, shift, th, zero), 2.5, 1e-12);
  EXPECT_THROW(sigma_functional(th, zero, vac, zero), SingularGibbsError);
}

TEST(SigmaFunctional, MatchesWilliamsonEntropy)
{
  Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    MatrixXd const cm = random_state(2, rng, 0.6, 5.0).cm();
    VectorXd const zero = VectorXd::Zero(4);
    EXPECT_NEAR(sigma_functional(cm, zero, cm, zero), von_neumann_entropy(cm), 1e-9);
  }
}

TEST(SymplecticForm, Squares)
{
  MatrixXd const om = symplectic_form(3);
  EXPECT_EQ(om * om, MatrixXd(-MatrixXd::Identity(6, 6)));
  Rng rng(29);
  MatrixXd const s = random_symplectic(3, rng);
  EXPECT_LE((s * om * s.transpose() - om).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(GaussianState, Constructors)
{
  auto const vac = GaussianState<>::vacuum(2);
  EXPECT_EQ(vac.modes(), 2);
  EXPECT_EQ(vac.cm(), MatrixXd(0.5 * MatrixXd::Identity(4, 4)));
  auto const th = GaussianState<>::thermal(1.0, 1);
  EXPECT_EQ(th.cm()(0, 0), 1.5);
  EXPECT_THROW(GaussianState<>(diag({0.3, 0.3})), PhysicalityError);
  EXPECT_THROW(GaussianState<>(VectorXd::Zero(4), diag({1.0, 1.0})), DimensionError);
}

TEST(ScalarTemplate, LongDouble)
{
  using M = Mat<long double>;
  M cm = M::Identity(2, 2) * 1.5L;
  EXPECT_NEAR(double(von_neumann_entropy(cm)), 2.0, 1e-15);
  M const g = gibbs_matrix(cm);
  EXPECT_NEAR(double(g(0, 0)), std::numbers::ln2, 1e-15);
}

TEST(LogDetShifted, MatchesSymplecticSpectrum)
{
  Rng rng(31);
  for (int k = 0; k < 50; ++k) {
    MatrixXd const cm = random_state(2, rng, 0.6, 5.0).cm();
    double expected = 0;
    for (double nu : williamson_eigenvalues(cm).nus)
      expected += std::log(nu * nu - 0.25);
    EXPECT_NEAR(log_det_shifted(cm), expected, 1e-10);
  }
}

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "skcap/bounds.hpp"
#include "skcap/random.hpp"

using namespace skcap;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

GaussianState<> thermal(double nbar) { return GaussianState<>::thermal(nbar, 1); }

ResourceState resource_of(double a, double b, double c)
{
  return {symmetric_form_cm(a, b, c), a, b, c, 0.0, ResourceFlavor::Generic};
}

std::vector<PhaseInsensitiveChannel> ordering_grid()
{
  std::vector<PhaseInsensitiveChannel> out;
  for (double eta = 0.5; eta <= 0.99 + 1e-12; eta += 0.07)
    for (double nbar : {0.5, 1.0, 2.0})
      out.push_back(make_thermal_loss(eta, nbar));
  for (double nbar : {0.5, 1.0, 2.0})
    out.push_back(make_thermal_loss(0.99, nbar));
  for (double eta : {1.05, 1.2, 1.5, 2.0, 2.5, 3.0})
    for (double nbar : {0.5, 1.0, 2.0})
      out.push_back(make_noisy_amplifier(eta, nbar));
  for (double xi : {0.01, 0.05, 0.1, 0.3, 0.5, 0.8, 1.0, 1.2, 1.5})
    out.push_back(make_additive_noise(xi));
  return out;
}

} // namespace

TEST(RelativeEntropy, Examples)
{
  EXPECT_NEAR(relative_entropy(thermal(1), thermal(1)), 0.0, 1e-12);
  EXPECT_NEAR(relative_entropy(GaussianState<>::vacuum(1), thermal(1)), 1.0, 1e-12);
  EXPECT_NEAR(relative_entropy(thermal(1), thermal(2)), 2 * std::log2(3.0) - 3, 1e-12);
  EXPECT_THROW(relative_entropy(thermal(1), GaussianState<>::vacuum(1)), SingularGibbsError);
  EXPECT_THROW(relative_entropy(thermal(1), GaussianState<>::vacuum(2)), DimensionError);
}

TEST(RelativeEntropy, NonNegativeAndZeroOnlyForEqualMoments)
{
  Rng rng(41);
  for (int k = 0; k < 50; ++k) {
    auto const s1 = random_state(2, rng, 0.5, 3.0, 1.0);
    auto const s2 = random_state(2, rng, 0.6, 3.0, 1.0);
    EXPECT_GT(relative_entropy(s1, s2), 1e-9);
    EXPECT_NEAR(relative_entropy(s2, s2), 0.0, 1e-9);
  }
}

TEST(RelativeEntropy, DataProcessing)
{
  Rng rng(43);
  auto const channel = make_thermal_loss(0.6, 0.5);
  for (int k = 0; k < 50; ++k) {
    auto const s1 = random_state(2, rng, 0.5, 3.0, 1.0);
    auto const s2 = random_state(2, rng, 0.6, 3.0, 1.0);
    double const before = relative_entropy(s1, s2);
    double const after = relative_entropy(apply_channel_to_mode(channel, s1, 0), apply_channel_to_mode(channel, s2, 0));
    EXPECT_LE(after, before + 1e-8);
  }
}

TEST(SeparableCandidate, Examples)
{
  EXPECT_NEAR(separable_candidate(resource_of(1.5, 1.5, std::sqrt(2.0))).cm()(0, 2), 1.0, 1e-15);
  auto const vac = separable_candidate(resource_of(0.5, 0.5, 0.0));
  EXPECT_EQ(vac.cm(), MatrixXd(0.5 * MatrixXd::Identity(4, 4)));

  auto const res = resource_state(make_additive_noise(0.25));
  EXPECT_NEAR(res.a, 17.0 / 16, 1e-14);
  EXPECT_NEAR(separable_candidate(res).cm()(0, 2), 0.5625, 1e-14);
}

TEST(Phi, ClosedForms)
{
  EXPECT_NEAR(phi_bound(make_thermal_loss(0.9, 1)), -std::log2(0.09) - 2, 1e-12);
  EXPECT_NEAR(phi_bound(make_additive_noise(0.1)), -0.9 / std::numbers::ln2 + std::log2(10.0), 1e-12);
  EXPECT_EQ(phi_bound(make_thermal_loss(0.4, 1)), 0.0);
  EXPECT_NEAR(phi_bound(make_noisy_amplifier(1.5, 1)), std::log2(2.25 / 0.5) - 2, 1e-12);
  EXPECT_EQ(phi_bound(make_pure_loss(0.75)), 2.0);
  EXPECT_EQ(phi_bound(make_additive_noise(1.0)), 0.0);
}

TEST(Plob, Values)
{
  EXPECT_NEAR(plob(0.5), 1.0, 1e-12);
  EXPECT_NEAR(plob(0.75), 2.0, 1e-12);
  EXPECT_NEAR(plob(0.01) / 0.01, 1.4499569695, 1e-9);
  EXPECT_THROW(plob(0.0), DomainError);
  EXPECT_THROW(plob(1.0), DomainError);
}

TEST(ExtendedH, Values)
{
  EXPECT_EQ(extended_h(0), 0.0);
  EXPECT_NEAR(extended_h(1), 2.0, 1e-14);
  EXPECT_NEAR(extended_h(2), 3 * std::log2(3.0) - 2, 1e-14);
  EXPECT_THROW(extended_h(-0.1), DomainError);
  double prev = 0;
  for (double x = 0.1; x < 10; x += 0.1) {
    EXPECT_GT(extended_h(x), prev);
    prev = extended_h(x);
  }
}

TEST(Psi, Examples)
{
  auto const eb = psi_bound(make_thermal_loss(0.5, 1));
  EXPECT_EQ(eb.psi, 0.0);
  EXPECT_EQ(eb.phi, 0.0);

  auto const th = psi_bound(make_thermal_loss(0.9, 1));
  EXPECT_GT(th.psi, 1.4739);
  EXPECT_LT(th.psi, 2.2);
  EXPECT_FALSE(th.plob.has_value());

  auto const pl = psi_bound(make_pure_loss(0.5));
  EXPECT_GE(pl.psi, 1.0);
  ASSERT_TRUE(pl.plob.has_value());
  EXPECT_NEAR(*pl.plob, 1.0, 1e-12);

  auto const add = psi_bound(make_additive_noise(1.0));
  EXPECT_EQ(add.psi, 0.0);
  EXPECT_EQ(add.phi, 0.0);
}

// Reference values from the truncated Fock-space evaluation at cutoff 60
// (largest observed gap to the Gaussian formula: 7e-10).
TEST(Psi, RegressionConstants)
{
  EXPECT_NEAR(psi_bound(make_thermal_loss(0.9, 1)).psi, 1.92010949506, 1e-8);
  EXPECT_NEAR(psi_bound(make_thermal_loss(0.8, 1)).psi, 0.996485365870, 1e-8);
  EXPECT_NEAR(psi_bound(make_thermal_loss(0.6, 1)).psi, 0.185616842552, 1e-8);
  EXPECT_NEAR(psi_bound(make_noisy_amplifier(1.5, 1)).psi, 0.38270804773, 1e-8);
  EXPECT_NEAR(psi_bound(make_additive_noise(0.3)).psi, 1.34322126456, 1e-8);
  EXPECT_NEAR(psi_bound(make_additive_noise(0.5)).psi, 0.713026143604, 1e-8);
  EXPECT_NEAR(psi_bound(make_pure_loss(0.5)).psi, 2.07592249138, 1e-8);
}

TEST(Psi, TermsAddUp)
{
  auto const br = psi_bound(make_noisy_amplifier(1.2, 0.5));
  EXPECT_NEAR(br.terms.sigma_cross - br.terms.entropy_term, br.psi, 1e-12);
}

TEST(Ordering, PhiBelowPsi)
{
  for (auto const &ch : ordering_grid()) {
    auto const br = psi_bound(ch);
    EXPECT_GE(br.psi, 0.0);
    EXPECT_GE(br.phi, 0.0);
    EXPECT_LE(br.phi, br.psi + 1e-9) << ch.spec();
  }
}

TEST(Ordering, PlobBelowPsi)
{
  for (double eta = 0.05; eta <= 0.95 + 1e-12; eta += 0.05) {
    auto const br = psi_bound(make_pure_loss(eta));
    EXPECT_LE(*br.plob, br.psi + 1e-9) << eta;
  }
}

TEST(Optimizer, VacuumResource)
{
  auto const opt = optimize_separable_bound(resource_of(0.5, 0.5, 0.0));
  EXPECT_EQ(opt.psi_opt, 0.0);
  EXPECT_EQ(opt.cm_opt, Eigen::Matrix4d(0.5 * Eigen::Matrix4d::Identity()));
}

TEST(Optimizer, NeverWorseThanCandidate)
{
  for (auto const &ch : {make_thermal_loss(0.9, 1), make_noisy_amplifier(1.5, 1), make_additive_noise(0.3),
                         make_pure_loss(0.7)}) {
    auto const br = psi_bound(ch);
    auto const opt = optimize_separable_bound(br.resource);
    EXPECT_LE(opt.psi_opt, br.psi + 1e-10) << ch.spec();
    EXPECT_GE(opt.psi_opt, 0.0);
    EXPECT_TRUE(ppt_separable(opt.cm_opt));
  }
}

TEST(Optimizer, RegressionConstant)
{
  auto const br = psi_bound(make_thermal_loss(0.9, 1));
  EXPECT_NEAR(optimize_separable_bound(br.resource).psi_opt, 1.91703207108, 1e-6);
}

TEST(Optimizer, SymmetricResourceStaysSymmetric)
{
  auto const res = resource_state(make_additive_noise(0.3));
  ASSERT_NEAR(res.a, res.b, 1e-14);
  auto const opt = optimize_separable_bound(res, {.restarts = 1});
  EXPECT_NEAR(opt.a, opt.b, 1e-5);
}

TEST(Optimizer, Deterministic)
{
  auto const res = resource_state(make_noisy_amplifier(1.3, 0.5));
  EXPECT_EQ(optimize_separable_bound(res).psi_opt, optimize_separable_bound(res).psi_opt);
}

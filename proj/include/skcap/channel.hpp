#pragma once

#include <string>
#include <string_view>

#include "skcap/gaussian_state.hpp"

namespace skcap {

enum class ChannelKind
{
  ThermalLoss,
  NoisyAmplifier,
  AdditiveNoise,
  PureLoss,
};

std::string_view to_string(ChannelKind kind);

/// Single-mode phase-insensitive Gaussian channel: x -> sqrt(eta) x,
/// V -> eta V + nu I. Only obtainable through make_channel, which enforces
/// the per-kind parameter domain.
class PhaseInsensitiveChannel
{
public:
  ChannelKind kind() const { return kind_; }
  double eta() const { return eta_; }
  double nu() const { return nu_; }
  /// Thermal photons of the environment (ThermalLoss, NoisyAmplifier; 0 for PureLoss).
  double nbar() const { return nbar_; }
  /// Added-noise variance (AdditiveNoise only, else 0).
  double xi() const { return xi_; }

  /// Canonical spec string, e.g. "thermal:eta=0.9,nbar=1".
  std::string spec() const;

private:
  friend PhaseInsensitiveChannel make_thermal_loss(double, double);
  friend PhaseInsensitiveChannel make_noisy_amplifier(double, double);
  friend PhaseInsensitiveChannel make_additive_noise(double);
  friend PhaseInsensitiveChannel make_pure_loss(double);

  PhaseInsensitiveChannel(ChannelKind kind, double eta, double nu, double nbar, double xi)
      : kind_(kind)
      , eta_(eta)
      , nu_(nu)
      , nbar_(nbar)
      , xi_(xi)
  {
  }

  ChannelKind kind_;
  double eta_;
  double nu_;
  double nbar_;
  double xi_;
};

/// 0 < eta < 1, nbar >= 0; nu = (1 - eta)(nbar + 1/2).
PhaseInsensitiveChannel make_thermal_loss(double eta, double nbar);
/// eta > 1, nbar >= 0; nu = (eta - 1)(nbar + 1/2).
PhaseInsensitiveChannel make_noisy_amplifier(double eta, double nbar);
/// xi > 0; eta = 1, nu = xi.
PhaseInsensitiveChannel make_additive_noise(double xi);
/// 0 < eta < 1; nu = (1 - eta)/2.
PhaseInsensitiveChannel make_pure_loss(double eta);

struct ChannelParams
{
  double eta = 0;
  double nbar = 0;
  double xi = 0;
};

/// Generic constructor; reads the fields relevant to the kind.
PhaseInsensitiveChannel make_channel(ChannelKind kind, ChannelParams const &params);

/// Parses `thermal:eta=..,nbar=..`, `amp:eta=..,nbar=..`, `additive:xi=..`,
/// `pureloss:eta=..`. Throws ParseError naming the offending key.
PhaseInsensitiveChannel parse_channel(std::string_view text);

/// Moment action on a single-mode state.
GaussianState<double> apply_channel(PhaseInsensitiveChannel const &channel, GaussianState<double> const &state);

/// Applies the channel to one mode of a multimode state.
GaussianState<double> apply_channel_to_mode(PhaseInsensitiveChannel const &channel, GaussianState<double> const &state,
                                            Eigen::Index mode);

/// True where the infinite-energy bound is identically zero
/// (entanglement-breaking region, boundary included).
bool phi_vanishing_threshold(PhaseInsensitiveChannel const &channel);

} // namespace skcap

#include "skcap/channel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

namespace skcap {

std::string_view to_string(ChannelKind kind)
{
  switch (kind) {
  case ChannelKind::ThermalLoss: return "thermal";
  case ChannelKind::NoisyAmplifier: return "amp";
  case ChannelKind::AdditiveNoise: return "additive";
  case ChannelKind::PureLoss: return "pureloss";
  }
  return "unknown";
}

namespace {

std::string num(double x)
{
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << x;
  return os.str();
}

void require_finite(double x, char const *name)
{
  if (!std::isfinite(x))
    throw DomainError(std::string(name) + " must be finite");
}

} // namespace

std::string PhaseInsensitiveChannel::spec() const
{
  std::string out(to_string(kind_));
  switch (kind_) {
  case ChannelKind::ThermalLoss:
  case ChannelKind::NoisyAmplifier: return out + ":eta=" + num(eta_) + ",nbar=" + num(nbar_);
  case ChannelKind::AdditiveNoise: return out + ":xi=" + num(xi_);
  case ChannelKind::PureLoss: return out + ":eta=" + num(eta_);
  }
  return out;
}

PhaseInsensitiveChannel make_thermal_loss(double eta, double nbar)
{
  require_finite(eta, "eta");
  require_finite(nbar, "nbar");
  if (!(eta > 0 && eta < 1))
    throw DomainError("thermal-loss channel needs 0 < eta < 1, got eta=" + num(eta));
  if (nbar < 0)
    throw DomainError("thermal-loss channel needs nbar >= 0, got nbar=" + num(nbar));
  return {ChannelKind::ThermalLoss, eta, (1 - eta) * (nbar + 0.5), nbar, 0.0};
}

PhaseInsensitiveChannel make_noisy_amplifier(double eta, double nbar)
{
  require_finite(eta, "eta");
  require_finite(nbar, "nbar");
  if (!(eta > 1))
    throw DomainError("amplifier channel needs eta > 1, got eta=" + num(eta));
  if (nbar < 0)
    throw DomainError("amplifier channel needs nbar >= 0, got nbar=" + num(nbar));
  return {ChannelKind::NoisyAmplifier, eta, (eta - 1) * (nbar + 0.5), nbar, 0.0};
}

PhaseInsensitiveChannel make_additive_noise(double xi)
{
  require_finite(xi, "xi");
  // xi = 0 is the identity channel: infinite squeezing, divergent bounds.
  if (!(xi > 0))
    throw DomainError("additive-noise channel needs xi > 0, got xi=" + num(xi));
  return {ChannelKind::AdditiveNoise, 1.0, xi, 0.0, xi};
}

PhaseInsensitiveChannel make_pure_loss(double eta)
{
  require_finite(eta, "eta");
  if (!(eta > 0 && eta < 1))
    throw DomainError("pure-loss channel needs 0 < eta < 1, got eta=" + num(eta));
  return {ChannelKind::PureLoss, eta, (1 - eta) / 2, 0.0, 0.0};
}

PhaseInsensitiveChannel make_channel(ChannelKind kind, ChannelParams const &params)
{
  switch (kind) {
  case ChannelKind::ThermalLoss: return make_thermal_loss(params.eta, params.nbar);
  case ChannelKind::NoisyAmplifier: return make_noisy_amplifier(params.eta, params.nbar);
  case ChannelKind::AdditiveNoise: return make_additive_noise(params.xi);
  case ChannelKind::PureLoss: return make_pure_loss(params.eta);
  }
  throw DomainError("unknown channel kind");
}

PhaseInsensitiveChannel parse_channel(std::string_view text)
{
  auto const colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("channel spec '" + std::string(text) + "' lacks '<kind>:'");
  std::string_view const kind_name = text.substr(0, colon);

  ChannelKind kind;
  std::vector<std::string_view> keys;
  if (kind_name == "thermal") {
    kind = ChannelKind::ThermalLoss;
    keys = {"eta", "nbar"};
  } else if (kind_name == "amp") {
    kind = ChannelKind::NoisyAmplifier;
    keys = {"eta", "nbar"};
  } else if (kind_name == "additive") {
    kind = ChannelKind::AdditiveNoise;
    keys = {"xi"};
  } else if (kind_name == "pureloss") {
    kind = ChannelKind::PureLoss;
    keys = {"eta"};
  } else {
    throw ParseError("unknown channel kind '" + std::string(kind_name) + "'");
  }

  std::map<std::string, double, std::less<>> values;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto const comma = rest.find(',');
    std::string_view const item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);

    auto const eq = item.find('=');
    std::string const key(item.substr(0, eq));
    if (eq == std::string_view::npos)
      throw ParseError("key '" + key + "' has no value");
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ParseError("unknown key '" + key + "' for channel kind '" + std::string(kind_name) + "'");
    if (values.contains(key))
      throw ParseError("duplicate key '" + key + "'");

    std::string_view const value = item.substr(eq + 1);
    double x = 0;
    auto const [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty())
      throw ParseError("key '" + key + "' has non-numeric value '" + std::string(value) + "'");
    values.emplace(key, x);
  }
  for (auto key : keys)
    if (!values.contains(key))
      throw ParseError("missing key '" + std::string(key) + "' for channel kind '" + std::string(kind_name) + "'");

  ChannelParams params;
  if (auto it = values.find("eta"); it != values.end())
    params.eta = it->second;
  if (auto it = values.find("nbar"); it != values.end())
    params.nbar = it->second;
  if (auto it = values.find("xi"); it != values.end())
    params.xi = it->second;
  return make_channel(kind, params);
}

GaussianState<double> apply_channel(PhaseInsensitiveChannel const &channel, GaussianState<double> const &state)
{
  if (state.modes() != 1)
    throw DimensionError("apply_channel expects a single-mode state, got " + std::to_string(state.modes()) + " modes");
  return apply_channel_to_mode(channel, state, 0);
}

GaussianState<double> apply_channel_to_mode(PhaseInsensitiveChannel const &channel, GaussianState<double> const &state,
                                            Eigen::Index mode)
{
  if (mode < 0 || mode >= state.modes())
    throw DimensionError("mode index " + std::to_string(mode) + " out of range");
  Eigen::VectorXd t = Eigen::VectorXd::Ones(state.cm().rows());
  t.segment<2>(2 * mode).setConstant(std::sqrt(channel.eta()));
  Eigen::VectorXd mean = t.asDiagonal() * state.mean();
  Eigen::MatrixXd cm = t.asDiagonal() * state.cm() * t.asDiagonal();
  cm.block<2, 2>(2 * mode, 2 * mode) += channel.nu() * Eigen::Matrix2d::Identity();
  return {std::move(mean), cm};
}

bool phi_vanishing_threshold(PhaseInsensitiveChannel const &channel)
{
  double const eta = channel.eta();
  switch (channel.kind()) {
  case ChannelKind::ThermalLoss: return channel.nbar() >= eta / (1 - eta);
  case ChannelKind::NoisyAmplifier: return channel.nbar() >= 1 / (eta - 1);
  case ChannelKind::AdditiveNoise: return channel.xi() >= 1;
  case ChannelKind::PureLoss: return false;
  }
  return false;
}

} // namespace skcap

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "skcap/channel.hpp"

namespace skcap::cli {

enum ExitCode : int
{
  Success = 0,
  ParseFailure = 2,
  DomainFailure = 3,
  NumericalFailure = 4,
};

enum class Scale
{
  Linear,
  Log,
};

/// One-parameter sweep over a channel template such as `thermal:nbar=1`
/// with `param = "eta"`.
struct SweepConfig
{
  std::string channel_template;
  std::string param;
  double start = 0;
  double stop = 0;
  int steps = 0;
  Scale scale = Scale::Linear;
  bool want_plob = false;
  bool want_psi_opt = false;
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// Grid values of the sweep (endpoints included).
std::vector<double> sweep_grid(SweepConfig const &config);

/// Channels for every grid point; throws before anything is computed if
/// any point is outside the kind's domain.
std::vector<PhaseInsensitiveChannel> sweep_channels(SweepConfig const &config);

/// Splits `thermal:eta=0.5,nbar=1,thermal:eta=0.9,nbar=1` into links; a
/// comma-separated item containing ':' starts a new link.
std::vector<PhaseInsensitiveChannel> parse_chain_links(std::string_view text);

/// 12 significant digits, '.' separator, independent of the global locale.
std::string format_number(double x);

/// Entry point behind the `skcap` executable. Writes results to `out` and
/// diagnostics to `err`; returns the process exit code.
int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace skcap::cli

#pragma once

#include <cstdint>
#include <vector>

#include "skcap/bounds.hpp"

namespace skcap {

/// Linear repeater chain: links[i] connects node i to node i+1.
struct ChainSpec
{
  std::vector<PhaseInsensitiveChannel> links;
  std::vector<double> per_link_bounds;
};

struct ChainBound
{
  double psi_chain;
  std::size_t argmin_link;
  std::vector<double> per_link_psi;
};

/// min_i Psi(link_i); ties resolve to the lowest index. Per-link errors are
/// rethrown with the link index in the message.
ChainBound chain_bound(ChainSpec &chain);
ChainBound chain_bound(std::vector<PhaseInsensitiveChannel> const &links);

struct EquidistantChain
{
  double psi_chain;
  double phi_chain;
  double link_xi;
  int repeaters;
};

/// N repeaters splitting additive noise xi_total into N+1 links of xi_total/(N+1).
EquidistantChain equidistant_additive_chain(double xi_total, int repeaters);

struct SplittingComparison
{
  double equidistant_psi;
  double best_random_psi;
  bool equidistant_is_best;
};

/// Compares the equidistant split against `trials` random splittings of the
/// same total noise (uniform on the simplex, seeded).
SplittingComparison compare_splittings(double xi_total, int repeaters, int trials, std::uint64_t seed = 11);

} // namespace skcap

#include "skcap/repeater.hpp"

#include <cmath>
#include <string>

#include "skcap/random.hpp"

namespace skcap {

ChainBound chain_bound(ChainSpec &chain)
{
  if (chain.links.empty())
    throw DomainError("chain needs at least one link");
  std::vector<double> psis;
  psis.reserve(chain.links.size());
  for (std::size_t i = 0; i < chain.links.size(); ++i) {
    try {
      psis.push_back(psi_bound(chain.links[i]).psi);
    } catch (SimulationDomainError const &e) {
      throw SimulationDomainError("link " + std::to_string(i) + ": " + e.what());
    } catch (DomainError const &e) {
      throw DomainError("link " + std::to_string(i) + ": " + e.what());
    } catch (NumericalError const &e) {
      throw NumericalError("link " + std::to_string(i) + ": " + e.what());
    }
  }
  std::size_t arg = 0;
  for (std::size_t i = 1; i < psis.size(); ++i)
    if (psis[i] < psis[arg])
      arg = i;
  chain.per_link_bounds = psis;
  return {psis[arg], arg, std::move(psis)};
}

ChainBound chain_bound(std::vector<PhaseInsensitiveChannel> const &links)
{
  ChainSpec chain{links, {}};
  return chain_bound(chain);
}

EquidistantChain equidistant_additive_chain(double xi_total, int repeaters)
{
  if (!(xi_total > 0))
    throw DomainError("total added noise must be positive");
  if (repeaters < 0)
    throw DomainError("number of repeaters must be >= 0");
  double const xi = xi_total / (repeaters + 1);
  auto const link = make_additive_noise(xi);
  ChainSpec chain{std::vector<PhaseInsensitiveChannel>(static_cast<std::size_t>(repeaters + 1), link), {}};
  auto const bound = chain_bound(chain);
  return {bound.psi_chain, phi_bound(link), xi, repeaters};
}

SplittingComparison compare_splittings(double xi_total, int repeaters, int trials, std::uint64_t seed)
{
  auto const equi = equidistant_additive_chain(xi_total, repeaters);
  Rng rng(seed);
  double best = -1;
  std::size_t const n = static_cast<std::size_t>(repeaters + 1);
  for (int t = 0; t < trials; ++t) {
    std::vector<double> w(n);
    double sum = 0;
    for (auto &x : w) {
      x = -std::log(1 - rng.uniform(0, 1));
      sum += x;
    }
    std::vector<PhaseInsensitiveChannel> links;
    for (double x : w)
      links.push_back(make_additive_noise(xi_total * x / sum));
    best = std::max(best, chain_bound(links).psi_chain);
  }
  return {equi.psi_chain, best, trials == 0 || equi.psi_chain >= best - 1e-12};
}

} // namespace skcap

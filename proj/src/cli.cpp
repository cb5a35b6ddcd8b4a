#include "skcap/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "skcap/bounds.hpp"
#include "skcap/fock.hpp"
#include "skcap/repeater.hpp"

namespace skcap::cli {

using Json = nlohmann::ordered_json;

std::string format_number(double x)
{
  char buf[64];
  auto const [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  if (ec != std::errc{})
    return "nan";
  return std::string(buf, ptr);
}

namespace {

std::string exact_number(double x)
{
  char buf[64];
  auto const [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

Json matrix_json(Eigen::Matrix4d const &m)
{
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j)
      row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json bound_json(BoundResult const &br)
{
  Json j;
  j["channel"] = br.channel.spec();
  j["psi_bits"] = br.psi;
  j["phi_bits"] = br.phi;
  if (br.plob)
    j["plob_bits"] = *br.plob;
  j["resource_cm"] = matrix_json(br.resource_cm);
  j["separable_cm"] = matrix_json(br.separable_cm);
  auto const nus = williamson_eigenvalues(br.resource_cm).nus;
  j["diagnostics"] = {{"r", br.resource.r},
                      {"a", br.resource.a},
                      {"b", br.resource.b},
                      {"c", br.resource.c},
                      {"c_sep", br.separable_cm(0, 2)},
                      {"sympl_eigs", nus},
                      {"resource_flavor", std::string(to_string(br.resource.flavor))},
                      {"entropy_term_bits", br.terms.entropy_term},
                      {"sigma_cross_bits", br.terms.sigma_cross}};
  return j;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
  std::vector<std::string_view> out;
  while (true) {
    auto const pos = text.find(sep);
    out.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos)
      break;
    text = text.substr(pos + 1);
  }
  return out;
}

// Runs f(i) for i in [0, n) on up to `jobs` threads; results are written by
// index so output order never depends on scheduling.
template <typename F> void parallel_for(std::size_t n, int jobs, F f)
{
  std::size_t const workers = std::min<std::size_t>(std::max(1, jobs), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure)
            failure = std::current_exception();
        }
      }
    });
  for (auto &t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

std::string resolve_format(std::string const &requested, char const *fallback)
{
  std::string const f = requested.empty() ? fallback : requested;
  if (f != "csv" && f != "json")
    throw ParseError("unknown --format '" + f + "' (expected csv or json)");
  return f;
}

} // namespace

std::vector<double> sweep_grid(SweepConfig const &config)
{
  if (config.steps < 2)
    throw ParseError("sweep needs --steps >= 2");
  if (!(config.start < config.stop))
    throw ParseError("sweep needs --start < --stop");
  if (config.scale == Scale::Log && !(config.start > 0))
    throw DomainError("log-scale sweep needs --start > 0");
  std::vector<double> grid(static_cast<std::size_t>(config.steps));
  double const lo = config.scale == Scale::Log ? std::log(config.start) : config.start;
  double const hi = config.scale == Scale::Log ? std::log(config.stop) : config.stop;
  for (int i = 0; i < config.steps; ++i) {
    double const t = lo + (hi - lo) * i / (config.steps - 1);
    grid[static_cast<std::size_t>(i)] = config.scale == Scale::Log ? std::exp(t) : t;
  }
  grid.front() = config.start;
  grid.back() = config.stop;
  return grid;
}

std::vector<PhaseInsensitiveChannel> sweep_channels(SweepConfig const &config)
{
  if (config.param.empty())
    throw ParseError("sweep needs --param");
  auto const colon = config.channel_template.find(':');
  std::string const head = colon == std::string::npos ? config.channel_template + ":" : config.channel_template;
  std::string const sep = (head.back() == ':') ? "" : ",";
  if (head.find(config.param + "=") != std::string::npos)
    throw ParseError("free parameter '" + config.param + "' is fixed in the template");
  std::vector<PhaseInsensitiveChannel> channels;
  for (double x : sweep_grid(config))
    channels.push_back(parse_channel(head + sep + config.param + "=" + exact_number(x)));
  return channels;
}

std::vector<PhaseInsensitiveChannel> parse_chain_links(std::string_view text)
{
  std::vector<std::string> specs;
  for (auto item : split(text, ',')) {
    if (item.find(':') != std::string_view::npos)
      specs.emplace_back(item);
    else if (specs.empty())
      throw ParseError("chain spec must start with '<kind>:', got '" + std::string(item) + "'");
    else
      specs.back() += "," + std::string(item);
  }
  std::vector<PhaseInsensitiveChannel> links;
  for (auto const &s : specs)
    links.push_back(parse_channel(s));
  if (links.empty())
    throw ParseError("empty chain");
  return links;
}

namespace {

struct Globals
{
  std::string format;
  int jobs = 1;
  std::uint64_t seed = 1;
};

int cmd_bound(Globals const &g, std::string const &spec, std::ostream &out)
{
  auto const br = psi_bound(parse_channel(spec));
  if (resolve_format(g.format, "json") == "json") {
    out << bound_json(br).dump(2) << "\n";
  } else {
    out << "channel,psi_bits,phi_bits" << (br.plob ? ",plob_bits" : "") << "\n";
    out << br.channel.spec() << "," << format_number(br.psi) << "," << format_number(br.phi);
    if (br.plob)
      out << "," << format_number(*br.plob);
    out << "\n";
  }
  return Success;
}

int cmd_sweep(Globals const &g, SweepConfig config, std::ostream &out)
{
  config.seed = g.seed;
  config.jobs = g.jobs;
  std::string const format = resolve_format(g.format, "csv");
  auto const channels = sweep_channels(config);
  if (config.want_plob && channels.front().kind() != ChannelKind::PureLoss)
    throw ParseError("output 'plob' is only defined for pureloss sweeps");
  auto const grid = sweep_grid(config);

  struct Row
  {
    double psi, phi, plob, psi_opt;
  };
  std::vector<Row> rows(channels.size());
  parallel_for(channels.size(), config.jobs, [&](std::size_t i) {
    auto const br = psi_bound(channels[i]);
    Row row{br.psi, br.phi, br.plob.value_or(0.0), 0.0};
    if (config.want_psi_opt)
      row.psi_opt = optimize_separable_bound(br.resource, {.seed = config.seed}).psi_opt;
    rows[i] = row;
  });

  if (format == "csv") {
    out << "param,psi_bits,phi_bits" << (config.want_plob ? ",plob_bits" : "")
        << (config.want_psi_opt ? ",psi_opt_bits" : "") << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << format_number(grid[i]) << "," << format_number(rows[i].psi) << "," << format_number(rows[i].phi);
      if (config.want_plob)
        out << "," << format_number(rows[i].plob);
      if (config.want_psi_opt)
        out << "," << format_number(rows[i].psi_opt);
      out << "\n";
    }
  } else {
    Json j;
    j["template"] = config.channel_template;
    j["param"] = config.param;
    j["seed"] = config.seed;
    Json arr = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Json r;
      r["param"] = grid[i];
      r["psi_bits"] = rows[i].psi;
      r["phi_bits"] = rows[i].phi;
      if (config.want_plob)
        r["plob_bits"] = rows[i].plob;
      if (config.want_psi_opt)
        r["psi_opt_bits"] = rows[i].psi_opt;
      arr.push_back(r);
    }
    j["rows"] = arr;
    out << j.dump(2) << "\n";
  }
  return Success;
}

std::optional<std::pair<double, int>> parse_equidistant(std::string_view text)
{
  constexpr std::string_view prefix = "equidistant:";
  if (!text.starts_with(prefix))
    return std::nullopt;
  std::optional<double> xi;
  std::optional<int> n;
  for (auto item : split(text.substr(prefix.size()), ',')) {
    auto const eq = item.find('=');
    std::string const key(item.substr(0, eq));
    if (eq == std::string_view::npos)
      throw ParseError("key '" + key + "' has no value");
    auto const value = item.substr(eq + 1);
    if (key == "xi") {
      double x = 0;
      auto const [p, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
      if (ec != std::errc{} || p != value.data() + value.size() || value.empty())
        throw ParseError("key 'xi' has non-numeric value '" + std::string(value) + "'");
      xi = x;
    } else if (key == "N") {
      int x = 0;
      auto const [p, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
      if (ec != std::errc{} || p != value.data() + value.size() || value.empty())
        throw ParseError("key 'N' has non-integer value '" + std::string(value) + "'");
      n = x;
    } else {
      throw ParseError("unknown key '" + key + "' for equidistant chain");
    }
  }
  if (!xi)
    throw ParseError("missing key 'xi' for equidistant chain");
  if (!n)
    throw ParseError("missing key 'N' for equidistant chain");
  return std::pair{*xi, *n};
}

int cmd_chain(Globals const &g, std::string const &spec, std::ostream &out)
{
  std::string const format = resolve_format(g.format, "json");
  if (auto const equi = parse_equidistant(spec)) {
    auto const [xi, n] = *equi;
    auto const top = equidistant_additive_chain(xi, n);
    std::vector<EquidistantChain> table;
    for (int k = 0; k <= n; ++k)
      table.push_back(equidistant_additive_chain(xi, k));
    if (format == "csv") {
      out << "N,link_xi,psi_chain_bits,phi_chain_bits\n";
      for (auto const &row : table)
        out << row.repeaters << "," << format_number(row.link_xi) << "," << format_number(row.psi_chain) << ","
            << format_number(row.phi_chain) << "\n";
      return Success;
    }
    auto const link = make_additive_noise(top.link_xi);
    Json j;
    j["links"] = std::vector<std::string>(static_cast<std::size_t>(n + 1), link.spec());
    j["per_link_psi_bits"] = std::vector<double>(static_cast<std::size_t>(n + 1), top.psi_chain);
    j["psi_chain_bits"] = top.psi_chain;
    j["argmin_link"] = 0;
    j["phi_chain_bits"] = top.phi_chain;
    Json rows = Json::array();
    for (auto const &row : table)
      rows.push_back({{"N", row.repeaters},
                      {"link_xi", row.link_xi},
                      {"psi_chain_bits", row.psi_chain},
                      {"phi_chain_bits", row.phi_chain}});
    j["n_sweep"] = rows;
    out << j.dump(2) << "\n";
    return Success;
  }

  auto const links = parse_chain_links(spec);
  auto const bound = chain_bound(links);
  double phi_chain = phi_bound(links.front());
  for (auto const &l : links)
    phi_chain = std::min(phi_chain, phi_bound(l));
  if (format == "csv") {
    out << "link,channel,psi_bits,phi_bits\n";
    for (std::size_t i = 0; i < links.size(); ++i)
      out << i << "," << links[i].spec() << "," << format_number(bound.per_link_psi[i]) << ","
          << format_number(phi_bound(links[i])) << "\n";
    return Success;
  }
  Json j;
  Json names = Json::array();
  for (auto const &l : links)
    names.push_back(l.spec());
  j["links"] = names;
  j["per_link_psi_bits"] = bound.per_link_psi;
  j["psi_chain_bits"] = bound.psi_chain;
  j["argmin_link"] = bound.argmin_link;
  j["phi_chain_bits"] = phi_chain;
  out << j.dump(2) << "\n";
  return Success;
}

int cmd_verify(Globals const &g, std::string const &spec, int samples, double tol, std::ostream &out)
{
  auto const channel = parse_channel(spec);
  auto const report = verify_simulation(channel, samples, tol, g.seed);
  if (resolve_format(g.format, "json") == "json") {
    Json j;
    j["channel"] = channel.spec();
    j["pass"] = report.pass;
    j["max_moment_error"] = report.max_moment_error;
    j["tol"] = tol;
    j["samples"] = report.samples;
    j["seed"] = report.seed;
    j["r"] = report.r;
    j["resource_flavor"] = std::string(to_string(report.flavor));
    if (!report.note.empty())
      j["note"] = report.note;
    out << j.dump(2) << "\n";
  } else {
    out << "channel,pass,max_moment_error,samples,seed\n"
        << channel.spec() << "," << (report.pass ? "true" : "false") << "," << format_number(report.max_moment_error)
        << "," << report.samples << "," << report.seed << "\n";
  }
  return report.pass ? Success : NumericalFailure;
}

int cmd_oracle(Globals const &g, std::string const &spec, std::vector<int> const &cutoffs, std::ostream &out,
               std::ostream &err)
{
  auto const channel = parse_channel(spec);
  for (int c : cutoffs)
    if (c < 2 || c > 200)
      throw DomainError("cutoffs must lie in [2, 200]");
  auto const table = convergence_scan(channel, cutoffs);
  if (resolve_format(g.format, "csv") == "csv") {
    out << "cutoff,oracle_bits,delta_vs_formula_bits\n";
    for (auto const &row : table.rows)
      out << row.cutoff << "," << format_number(row.oracle_bits) << "," << format_number(row.delta_bits) << "\n";
    if (!table.warning.empty())
      err << "warning: " << table.warning << "\n";
  } else {
    Json j;
    j["channel"] = channel.spec();
    j["formula_bits"] = table.formula_bits;
    Json rows = Json::array();
    for (auto const &row : table.rows)
      rows.push_back({{"cutoff", row.cutoff},
                      {"oracle_bits", row.oracle_bits},
                      {"delta_vs_formula_bits", row.delta_bits},
                      {"trace_deficit", row.deficit}});
    j["rows"] = rows;
    j["converged"] = table.converged;
    if (!table.warning.empty())
      j["warning"] = table.warning;
    out << j.dump(2) << "\n";
  }
  return Success;
}

} // namespace

int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Secret-key capacity bounds for phase-insensitive bosonic Gaussian channels", "skcap"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format: csv or json");
  app.add_option("--jobs", g.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized steps");

  std::string spec;
  auto *bound = app.add_subcommand("bound", "Psi, Phi (and the pure-loss capacity) for one channel");
  bound->add_option("channel", spec, "Channel spec, e.g. thermal:eta=0.9,nbar=1")->required();

  SweepConfig sweep;
  std::string scale = "linear";
  std::string outputs = "psi,phi";
  auto *sw = app.add_subcommand("sweep", "Bounds along one channel parameter");
  sw->add_option("template", sweep.channel_template, "Channel template without the free key, e.g. thermal:nbar=1")
      ->required();
  sw->add_option("--param", sweep.param, "Free parameter (eta, nbar or xi)")->required();
  sw->add_option("--start", sweep.start, "First grid value")->required();
  sw->add_option("--stop", sweep.stop, "Last grid value")->required();
  sw->add_option("--steps", sweep.steps, "Number of grid points")->required();
  sw->add_option("--scale", scale, "linear or log");
  sw->add_option("--outputs", outputs, "Subset of psi,phi,plob,psi_opt");

  auto *chain = app.add_subcommand("chain", "Repeater-chain bound");
  chain->add_option("links", spec, "Comma-separated links, or equidistant:xi=..,N=..")->required();

  int samples = 100;
  double tol = 1e-10;
  auto *verify = app.add_subcommand("verify", "Check the teleportation simulation on moments");
  verify->add_option("channel", spec, "Channel spec")->required();
  verify->add_option("--samples", samples, "Random inputs")->check(CLI::PositiveNumber);
  verify->add_option("--tol", tol, "Max allowed moment discrepancy");

  std::string cutoffs = "15,25,35";
  auto *oracle = app.add_subcommand("oracle-check", "Fock-space oracle convergence table");
  oracle->add_option("channel", spec, "Channel spec")->required();
  oracle->add_option("--cutoffs", cutoffs, "Comma-separated Fock cutoffs");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("skcap");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char const *> argv;
  for (auto const &a : argv_store)
    argv.push_back(a.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (CLI::CallForHelp const &) {
    out << app.help();
    return Success;
  } catch (CLI::ParseError const &e) {
    err << "error: " << e.what() << "\n";
    return ParseFailure;
  }

  try {
    if (*bound)
      return cmd_bound(g, spec, out);
    if (*sw) {
      if (scale == "linear")
        sweep.scale = Scale::Linear;
      else if (scale == "log")
        sweep.scale = Scale::Log;
      else
        throw ParseError("unknown --scale '" + scale + "'");
      for (auto item : split(outputs, ',')) {
        if (item == "psi" || item == "phi")
          continue;
        if (item == "plob")
          sweep.want_plob = true;
        else if (item == "psi_opt")
          sweep.want_psi_opt = true;
        else
          throw ParseError("unknown output '" + std::string(item) + "'");
      }
      return cmd_sweep(g, sweep, out);
    }
    if (*chain)
      return cmd_chain(g, spec, out);
    if (*verify)
      return cmd_verify(g, spec, samples, tol, out);
    if (*oracle) {
      std::vector<int> list;
      for (auto item : split(cutoffs, ',')) {
        int c = 0;
        auto const [p, ec] = std::from_chars(item.data(), item.data() + item.size(), c);
        if (ec != std::errc{} || p != item.data() + item.size() || item.empty())
          throw ParseError("bad cutoff '" + std::string(item) + "'");
        list.push_back(c);
      }
      return cmd_oracle(g, spec, list, out, err);
    }
  } catch (ParseError const &e) {
    err << "parse error: " << e.what() << "\n";
    return ParseFailure;
  } catch (DomainError const &e) {
    err << "domain error: " << e.what() << "\n";
    return DomainFailure;
  } catch (std::exception const &e) {
    err << "numerical error: " << e.what() << "\n";
    return NumericalFailure;
  }
  return ParseFailure;
}

} // namespace skcap::cli

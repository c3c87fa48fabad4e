#include "ccnacct/cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ccnacct/analytic/analytic.hpp"
#include "ccnacct/core/errors.hpp"
#include "ccnacct/crsd/collision.hpp"
#include "ccnacct/sim/simulator.hpp"

namespace ccnacct {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string quoted(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

int report(std::ostream& err, std::string_view kind, std::string_view message, int status) {
  err << fmt::format("error: kind={} message=\"{}\"\n", kind, quoted(message));
  return status;
}

std::vector<std::uint64_t> range(std::uint64_t from, std::uint64_t to, std::uint64_t step) {
  if (step == 0) throw UsageError("step must be positive");
  if (from > to) throw UsageError(fmt::format("empty range {}..{}", from, to));
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = from; v <= to; v += step) {
    out.push_back(v);
    if (to - v < step) break;
  }
  return out;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  bool serial = false;
};

int simulate(const SimulateArgs& a, std::ostream& out) {
  Scenario sc = load_scenario(a.scenario);
  std::vector<std::uint64_t> seeds = a.seed ? std::vector{*a.seed} : sc.seeds;
  const std::string dir = a.out_dir.empty() ? sc.output_dir : a.out_dir;
  std::filesystem::create_directories(dir);

  const auto reports = a.serial ? run_sweep_serial(sc.config, seeds) : run_sweep(sc.config, seeds);
  for (const auto& r : reports) {
    std::ostringstream ledger;
    r.write_ledger_csv(ledger);
    write_file_atomic(fmt::format("{}/report_seed{}.csv", dir, r.seed), r.csv());
    write_file_atomic(fmt::format("{}/ledger_seed{}.csv", dir, r.seed), ledger.str());
    out << fmt::format("seed {}: interests={} producer_interests={} pint_count={} cache_hits={} "
                       "conservation={}\n",
                       r.seed, r.consumers.interests, r.producer_interests(),
                       r.producer_pint_count(), r.cache_hits,
                       !r.conservation_checked ? "n/a" : r.conservation_ok ? "ok" : "FAILED");
  }
  std::ostringstream summary;
  write_summary_csv(summary, reports);
  write_file_atomic(dir + "/summary.csv", summary.str());
  out << fmt::format("wrote {} run(s) to {}\n", reports.size(), dir);
  return 0;
}

// --- analytic ---------------------------------------------------------------

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

std::string counts_csv(Scheme scheme, const std::vector<std::uint64_t>& gammas) {
  std::string text = "gamma,p_l,p_r\n";
  for (auto g : gammas) {
    const auto c = message_counts(scheme, g);
    text += fmt::format("{},{},{}\n", g, c.p_l, c.p_r);
  }
  return text;
}

std::string overhead_csv(const std::vector<std::size_t>& links, const std::vector<std::size_t>& payloads,
                         std::size_t name_bytes) {
  std::string text = "links,payload_bytes,link,ratio,extra_bytes\n";
  for (auto n : links) {
    if (n < 1) throw UsageError("link counts must be at least 1");
    for (auto p : payloads) {
      for (const auto& l : overhead_profile(p, name_bytes, n)) {
        text += fmt::format("{},{},{},{:.9f},{}\n", n, p, l.link, l.ratio, l.extra_bytes);
      }
    }
  }
  return text;
}

// --- collision --------------------------------------------------------------

std::string collision_csv(unsigned bits, const std::vector<std::uint64_t>& draws, bool exact) {
  if (bits == 0) throw UsageError("bits must be positive");
  if (exact && bits > 64) throw UsageError("exact mode supports at most 64 bits");
  std::string text = "bits,s,probability\n";
  for (auto s : draws) {
    const double p = exact ? collision_probability_direct(bits, s) : collision_probability(bits, s);
    text += fmt::format("{},{},{:.12e}\n", bits, s, p);
  }
  return text;
}

// --- topo check -------------------------------------------------------------

int topo_check(const std::string& path, std::ostream& out) {
  const auto t = Topology::from_file(path);
  t.validate();
  const auto routes = build_fibs(t);
  std::size_t depth = 0;
  for (auto d : routes.distance) depth = std::max(depth, d);
  out << fmt::format("ok: {} nodes ({} routers, {} consumers, {} producers), {} links, "
                     "{} prefixes, max distance {}\n",
                     t.nodes.size(), t.count(Role::kRouter), t.count(Role::kConsumer),
                     t.count(Role::kProducer), t.links.size(), t.prefixes.size(), depth);
  return 0;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError(fmt::format("cannot write {}", tmp));
    f << content;
    if (!f.flush()) throw ConfigError(fmt::format("cannot write {}", tmp));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ConfigError(fmt::format("cannot rename {} to {}: {}", tmp, path, ec.message()));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pInt accounting simulator and analytic models", "ccnacct"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "run a scenario file");
  simulate_cmd->add_option("scenario", sim.scenario, "scenario file")->required();
  simulate_cmd->add_option("--seed", sim.seed, "run a single seed instead of the scenario's list");
  simulate_cmd->add_option("--out", sim.out_dir, "output directory (default: scenario 'output')");
  simulate_cmd->add_flag("--serial", sim.serial, "run seeds one after another");

  auto* analytic_cmd = app.add_subcommand("analytic", "closed-form message counts and overheads");
  analytic_cmd->require_subcommand(1);
  std::string scheme_text, out_path;
  std::uint64_t gamma_from = 1, gamma_to = 10, gamma_step = 1;
  auto* counts_cmd = analytic_cmd->add_subcommand("counts", "p_l and p_r over a gamma range");
  counts_cmd->add_option("--scheme", scheme_text, "ENCRYPTION, PINT or CACHELESS")->required();
  counts_cmd->add_option("--gamma-from", gamma_from);
  counts_cmd->add_option("--gamma-to", gamma_to);
  counts_cmd->add_option("--gamma-step", gamma_step);
  counts_cmd->add_option("--out", out_path, "write CSV here instead of stdout");

  std::vector<std::size_t> links{2, 3, 4};
  std::vector<std::size_t> payloads{10, 100, 1000, 10000, 100000, 1000000};
  std::size_t name_bytes = kDefaultNameBytes;
  auto* overhead_cmd = analytic_cmd->add_subcommand("overhead", "per-link pInt/content byte ratio");
  overhead_cmd->add_option("--links", links, "link counts")->delimiter(',');
  overhead_cmd->add_option("--payloads", payloads, "payload sizes in bytes")->delimiter(',');
  overhead_cmd->add_option("--name-bytes", name_bytes, "encoded name field size");
  overhead_cmd->add_option("--out", out_path, "write CSV here instead of stdout");

  unsigned bits = 0;
  std::uint64_t s_from = 1, s_to = 1, s_step = 1;
  std::string mode = "log";
  auto* collision_cmd = app.add_subcommand("collision", "nonce collision probability table");
  collision_cmd->add_option("--bits", bits, "nonce width N")->required();
  collision_cmd->add_option("--from", s_from, "first draw count");
  collision_cmd->add_option("--to", s_to, "last draw count");
  collision_cmd->add_option("--step", s_step);
  collision_cmd->add_option("--mode", mode)->check(CLI::IsMember({"exact", "log"}));
  collision_cmd->add_option("--out", out_path, "write CSV here instead of stdout");

  std::string topo_path;
  auto* topo_cmd = app.add_subcommand("topo", "topology utilities");
  topo_cmd->require_subcommand(1);
  auto* check_cmd = topo_cmd->add_subcommand("check", "parse and validate a topology file");
  check_cmd->add_option("file", topo_path)->required();

  std::vector<std::string> argv_store{"ccnacct"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return report(err, "UsageError", e.what(), 2);
  }

  try {
    if (simulate_cmd->parsed()) return simulate(sim, out);
    if (counts_cmd->parsed()) {
      const auto scheme = parse_scheme(scheme_text);
      emit(out_path, counts_csv(scheme, range(gamma_from, gamma_to, gamma_step)), out);
      return 0;
    }
    if (overhead_cmd->parsed()) {
      emit(out_path, overhead_csv(links, payloads, name_bytes), out);
      return 0;
    }
    if (collision_cmd->parsed()) {
      emit(out_path, collision_csv(bits, range(s_from, s_to, s_step), mode == "exact"), out);
      return 0;
    }
    if (check_cmd->parsed()) return topo_check(topo_path, out);
  } catch (const UsageError& e) {
    return report(err, "UsageError", e.what(), 2);
  } catch (const ConfigError& e) {
    return report(err, "ConfigError", e.what(), 1);
  } catch (const FieldError& e) {
    return report(err, "FieldError", e.what(), 2);
  } catch (const Error& e) {
    return report(err, "Error", e.what(), 1);
  } catch (const std::exception& e) {
    return report(err, "InternalError", e.what(), 1);
  }
  return report(err, "UsageError", "no command", 2);
}

}  // namespace ccnacct

// wsnsim: round-based clustering simulator for dense sensor networks.
//
//   wsnsim run --protocol leach --seed 1 --rounds 10 --out results/
//   wsnsim compare -P leach,qibeec,qibeec2 --seed 1..20 --out results/

#include <iostream>

#include "CLI11.hpp"
#include "wsnsim/cli.hpp"

namespace {

struct Flags {
  std::string protocol;
  std::string seed;
  std::string config;
  std::string out = ".";
  std::optional<int> rounds;
  std::optional<std::uint32_t> nodes;
  std::optional<double> length;
  std::optional<double> sensing_range;
};

void add_common(CLI::App& cmd, Flags& f, const char* protocol_help) {
  cmd.add_option("-P,--protocol", f.protocol, protocol_help);
  cmd.add_option("--seed", f.seed, "seed, or inclusive range a..b");
  cmd.add_option("--rounds", f.rounds, "number of rounds");
  cmd.add_option("--nodes", f.nodes, "node count");
  cmd.add_option("--length", f.length, "field side length in meters");
  cmd.add_option("--sensing-range", f.sensing_range, "sensing range in meters");
  cmd.add_option("--config", f.config, "JSON configuration file");
  cmd.add_option("--out", f.out, "output directory");
}

wsnsim::RunSpec to_spec(const Flags& f) {
  wsnsim::RunSpec spec;
  if (!f.protocol.empty()) spec.protocols = wsnsim::parse_protocol_list(f.protocol);
  if (!f.seed.empty()) spec.seeds = wsnsim::parse_seed_range(f.seed);
  if (!f.config.empty()) spec.config_path = f.config;
  spec.out_dir = f.out;
  spec.rounds = f.rounds;
  spec.nodes = f.nodes;
  spec.length = f.length;
  spec.sensing_range = f.sensing_range;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Round-based clustering simulator for dense wireless sensor networks"};
  app.require_subcommand(1);

  Flags run_flags, compare_flags;
  auto* run = app.add_subcommand("run", "simulate one protocol with one seed");
  add_common(*run, run_flags, "leach, eelbcrp, qibeec or qibeec2");
  auto* compare = app.add_subcommand("compare", "simulate several protocols over a seed range");
  add_common(*compare, compare_flags, "comma-separated protocol list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? wsnsim::kExitOk : wsnsim::kExitUsage;
  }

  try {
    if (run->parsed()) return wsnsim::cmd_run(to_spec(run_flags), std::cout, std::cerr);
    return wsnsim::cmd_compare(to_spec(compare_flags), std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return wsnsim::kExitUsage;
  }
}

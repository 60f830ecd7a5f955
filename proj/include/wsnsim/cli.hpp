// `run` and `compare` commands, kept separate from argument parsing so they
// can be driven directly.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wsnsim/model.hpp"

namespace wsnsim {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitIo = 2 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeedRange {
  std::uint64_t first = 1;
  std::uint64_t last = 1;
};

/// "7" or "1..20" (inclusive). Throws std::invalid_argument.
SeedRange parse_seed_range(std::string_view text);

/// Comma-separated protocol names. Throws std::invalid_argument.
std::vector<Protocol> parse_protocol_list(std::string_view text);

struct RunSpec {
  std::vector<Protocol> protocols;  // empty: take the config's protocol
  std::optional<SeedRange> seeds;   // empty: take the config's seed
  std::filesystem::path out_dir = ".";
  std::optional<std::filesystem::path> config_path;
  std::optional<int> rounds;
  std::optional<std::uint32_t> nodes;
  std::optional<double> length;
  std::optional<double> sensing_range;
};

/// Defaults, then the config file, then flag overrides; validated.
NetworkConfig resolve_config(const RunSpec& spec);

/// One line echoing the config and its threshold quantities.
std::string run_header(const NetworkConfig& config);

int cmd_run(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_compare(const RunSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace wsnsim

// Domain types shared by every stage of the simulator: field geometry,
// nodes, configuration, and the seeded random stream.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wsnsim {

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

/// Euclidean distance in meters.
double distance(const Position& a, const Position& b) noexcept;

using NodeId = std::uint32_t;

enum class Role : std::uint8_t { Head, Member, Idle, Dead };
enum class TypeMark : char { Head = 'C', Normal = 'N' };

struct Node {
  NodeId id = 0;
  Position pos;
  double energy = 0.0;  // joules
  Role role = Role::Member;
  TypeMark type_mark = TypeMark::Normal;
  std::optional<int> level;
  std::optional<NodeId> cluster_head;
  // Rounds elapsed since this node last served as head. Incremented at the
  // start of every election, so a fresh value of 0 means "head this round".
  int rounds_since_head = 0;

  bool alive() const noexcept { return role != Role::Dead; }

  friend bool operator==(const Node&, const Node&) = default;
};

enum class Protocol : std::uint8_t { Leach, Eelbcrp, Qibeec, Qibeec2 };

std::string_view to_string(Protocol p) noexcept;
/// Throws std::invalid_argument for names outside {leach, eelbcrp, qibeec, qibeec2}.
Protocol parse_protocol(std::string_view name);

/// First-order radio model coefficients, all in SI units.
struct EnergyParams {
  double e_elec = 50e-9;     // J/bit, transmit/receive electronics
  double e_da = 5e-9;        // J/bit/signal, aggregation
  double eps_fs = 10e-12;    // J/bit/m^2, free-space amplifier
  double eps_mp = 0.0013e-12;  // J/bit/m^4, multipath amplifier
  std::uint32_t k_bits = 4000;
  double e_init = 0.05;      // J per node
};

struct LeachParams {
  double p = 0.05;
};

struct EelbcrpParams {
  double p = 0.05;
  double c = 1.0;
  double ring_width = 25.0;
  double energy_exponent = 1.0;
};

struct QibeecParams {
  double p = 0.05;
  double sparse_fraction = 0.5;
  double p2 = 0.02;
};

/// Protocol parameters for all families; only the block matching
/// NetworkConfig::protocol is consulted during a run.
struct ProtocolParams {
  LeachParams leach;
  EelbcrpParams eelbcrp;
  QibeecParams qibeec;
};

struct NetworkConfig {
  double length = 100.0;   // field side L, meters
  double area = 10000.0;   // A, must equal L^2
  std::uint32_t nodes = 200;
  double sensing_range = 15.0;
  int rounds = 200;
  Position bs{50.0, 50.0};
  Protocol protocol = Protocol::Qibeec;
  ProtocolParams params;
  EnergyParams energy;
  std::uint64_t seed = 1;

  /// Election probability of the configured protocol.
  double head_probability() const noexcept;
};

/// Raised for configuration values that break an invariant. `key()` names
/// the offending configuration key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Throws ConfigError on the first violated invariant.
void validate(const NetworkConfig& config);

/// Field of a square network with side `length` and the base station at its centre.
NetworkConfig square_field(double length, std::uint32_t nodes, double sensing_range);

/// ⌊1/p⌋, the LEACH epoch length in rounds (at least 1).
int epoch_length(double p) noexcept;

/// Deterministic stream. Built on mt19937_64, whose output sequence is fixed
/// by the standard; the distributions are implemented here so draws do not
/// depend on the standard library vendor.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform real in [0, 1) with 53 bits of resolution.
  double uniform() noexcept;
  /// Uniform integer in [0, bound), bound > 0. Unbiased (rejection).
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// Uniform random permutation of 0..n-1 (Fisher-Yates).
  std::vector<std::uint32_t> permutation(std::uint32_t n);

 private:
  std::mt19937_64 engine_;
};

/// N nodes placed uniformly over [0, L]^2, all alive with e_init and
/// immediately eligible for election.
std::vector<Node> deploy_nodes(const NetworkConfig& config, RandomSource& rng);

std::size_t count_alive(std::span<const Node> nodes) noexcept;

}  // namespace wsnsim

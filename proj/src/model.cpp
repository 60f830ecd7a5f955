#include "wsnsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wsnsim {

double distance(const Position& a, const Position& b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::string_view to_string(Protocol p) noexcept {
  switch (p) {
    case Protocol::Leach: return "leach";
    case Protocol::Eelbcrp: return "eelbcrp";
    case Protocol::Qibeec: return "qibeec";
    case Protocol::Qibeec2: return "qibeec2";
  }
  return "unknown";
}

Protocol parse_protocol(std::string_view name) {
  for (auto p : {Protocol::Leach, Protocol::Eelbcrp, Protocol::Qibeec, Protocol::Qibeec2}) {
    if (to_string(p) == name) return p;
  }
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

double NetworkConfig::head_probability() const noexcept {
  switch (protocol) {
    case Protocol::Leach: return params.leach.p;
    case Protocol::Eelbcrp: return params.eelbcrp.p;
    case Protocol::Qibeec:
    case Protocol::Qibeec2: return params.qibeec.p;
  }
  return params.leach.p;
}

namespace {

void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ConfigError(key, what);
}

bool is_probability(double p) { return p > 0.0 && p <= 1.0; }

}  // namespace

void validate(const NetworkConfig& c) {
  require(std::isfinite(c.length) && c.length > 0.0, "lengthM", "field length must be positive");
  require(std::abs(c.area - c.length * c.length) <= 1e-9 * c.length * c.length, "lengthM",
          "area must equal length squared (square field)");
  require(c.nodes >= 1, "nodes", "at least one node is required");
  require(std::isfinite(c.sensing_range) && c.sensing_range > 0.0, "sensingRangeM",
          "sensing range must be positive");
  require(c.rounds >= 1, "rounds", "at least one round is required");
  require(c.bs.x >= 0.0 && c.bs.x <= c.length && c.bs.y >= 0.0 && c.bs.y <= c.length, "bs",
          "base station must lie inside the field");

  require(is_probability(c.params.leach.p), "p", "must lie in (0, 1]");
  require(is_probability(c.params.eelbcrp.p), "p", "must lie in (0, 1]");
  require(c.params.eelbcrp.c > 0.0, "c", "must be positive");
  require(c.params.eelbcrp.ring_width > 0.0, "ringWidthM", "must be positive");
  require(c.params.eelbcrp.energy_exponent > 0.0, "energyExponent", "must be positive");
  require(is_probability(c.params.qibeec.p), "p", "must lie in (0, 1]");
  require(is_probability(c.params.qibeec.p2), "p2", "must lie in (0, 1]");
  require(is_probability(c.params.qibeec.sparse_fraction), "sparseFraction", "must lie in (0, 1]");

  const auto& e = c.energy;
  require(e.e_elec > 0.0, "eElecNj", "must be positive");
  require(e.e_da > 0.0, "eDaNj", "must be positive");
  require(e.eps_fs > 0.0, "epsFsPj", "must be positive");
  require(e.eps_mp > 0.0, "epsMpPj", "must be positive");
  require(e.k_bits > 0, "packetBits", "must be a positive integer");
  require(e.e_init > 0.0, "eInitJ", "must be positive");
}

NetworkConfig square_field(double length, std::uint32_t nodes, double sensing_range) {
  NetworkConfig c;
  c.length = length;
  c.area = length * length;
  c.nodes = nodes;
  c.sensing_range = sensing_range;
  c.bs = {length / 2.0, length / 2.0};
  return c;
}

int epoch_length(double p) noexcept {
  // The epsilon absorbs representation error, e.g. 1/0.05 just below 20.
  return std::max(1, static_cast<int>(std::floor(1.0 / p + 1e-9)));
}

double RandomSource::uniform() noexcept {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::below(std::uint64_t bound) noexcept {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return v % bound;
}

std::vector<std::uint32_t> RandomSource::permutation(std::uint32_t n) {
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  for (std::uint32_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[below(i)]);
  }
  return order;
}

std::vector<Node> deploy_nodes(const NetworkConfig& config, RandomSource& rng) {
  std::vector<Node> nodes(config.nodes);
  const int epoch = epoch_length(config.head_probability());
  for (NodeId i = 0; i < config.nodes; ++i) {
    auto& n = nodes[i];
    n.id = i;
    n.pos.x = rng.uniform() * config.length;
    n.pos.y = rng.uniform() * config.length;
    n.energy = config.energy.e_init;
    n.rounds_since_head = epoch;
  }
  return nodes;
}

std::size_t count_alive(std::span<const Node> nodes) noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.alive(); }));
}

}  // namespace wsnsim

#include "wsnsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <thread>

namespace wsnsim {

namespace {

class EnergyLedger {
 public:
  EnergyLedger(std::vector<Node>& nodes, RoundTrace* trace) : nodes_(nodes), trace_(trace) {}

  // A node either funds the whole action or spends what it has left and dies
  // without performing it.
  bool debit(NodeId id, DebitKind kind, double joules) {
    Node& n = nodes_[id];
    if (!n.alive()) return false;
    const bool funded = n.energy >= joules;
    const double spent = funded ? joules : n.energy;
    n.energy -= spent;
    consumed_ += spent;
    if (n.energy <= 0.0) {
      n.energy = 0.0;
      n.role = Role::Dead;
    }
    if (trace_) trace_->debits.push_back({id, kind, spent, funded});
    return funded;
  }

  double consumed() const noexcept { return consumed_; }

 private:
  std::vector<Node>& nodes_;
  RoundTrace* trace_;
  double consumed_ = 0.0;
};

struct Election {
  std::vector<NodeId> heads;
  Route route;
};

Election elect(SimState& s, int r) {
  const auto& cfg = s.config;
  Election e;
  switch (cfg.protocol) {
    case Protocol::Leach:
      e.heads = leach_elect(s.nodes, cfg.params.leach, r, s.rng);
      break;
    case Protocol::Eelbcrp:
      e.heads = eelbcrp_elect(s.nodes, cfg.params.eelbcrp, cfg.bs, cfg.energy.e_init, r, s.rng);
      e.route = eelbcrp_route(s.nodes, e.heads);
      return e;
    case Protocol::Qibeec:
      e.heads = qibeec_elect(s.nodes, cfg.params.qibeec, s.thresholds.m, r, s.rng);
      break;
    case Protocol::Qibeec2: {
      auto two = qibeec2_elect(s.nodes, cfg.params.qibeec, s.thresholds.m, r, s.rng);
      e.heads = std::move(two.level2);
      e.heads.insert(e.heads.end(), two.level1.begin(), two.level1.end());
      std::sort(e.heads.begin(), e.heads.end());
      e.route = std::move(two.uplinks);
      return e;
    }
  }
  for (NodeId h : e.heads) e.route[h] = std::nullopt;
  return e;
}

bool uses_rda(Protocol p) { return p == Protocol::Qibeec || p == Protocol::Qibeec2; }

double total_energy(std::span<const Node> nodes) {
  double sum = 0.0;
  for (const auto& n : nodes) sum += n.energy;
  return sum;
}

}  // namespace

SimState make_state(const NetworkConfig& config) {
  validate(config);
  SimState s{config, compute_thresholds(config), RandomSource(config.seed), {}, 0, false};
  s.nodes = deploy_nodes(config, s.rng);
  if (config.protocol == Protocol::Eelbcrp) {
    const auto levels = assign_levels(s.nodes, config.bs, config.params.eelbcrp.ring_width);
    for (auto& n : s.nodes) n.level = levels[n.id];
  }
  return s;
}

std::size_t count_redundant(std::span<const Node> nodes, std::span<const NodeId> transmitters,
                            double t_r) {
  std::vector<NodeId> order(transmitters.begin(), transmitters.end());
  std::sort(order.begin(), order.end());
  std::size_t redundant = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (distance(nodes[order[i]].pos, nodes[order[j]].pos) <= t_r) {
        ++redundant;
        break;
      }
    }
  }
  return redundant;
}

RoundMetrics run_round(SimState& s, RoundTrace* trace) {
  const int r = s.round++;
  const auto& cfg = s.config;
  const auto& e = cfg.energy;
  const std::size_t n_total = s.nodes.size();

  RoundMetrics m;
  m.round = r + 1;
  if (count_alive(s.nodes) == 0) {
    m.dead = n_total;
    return m;
  }

  if (uses_rda(cfg.protocol) && !s.sparse_reached) {
    const std::size_t dead = n_total - count_alive(s.nodes);
    s.sparse_reached = is_sparse(dead, n_total, cfg.params.qibeec.sparse_fraction);
  }

  auto election = elect(s, r);
  const auto& heads = election.heads;

  if (uses_rda(cfg.protocol) && !s.sparse_reached) {
    const auto activity = rda(s.nodes, heads, s.thresholds.t_r, s.rng);
    for (auto& n : s.nodes) {
      if (n.role == Role::Member && activity[n.id] == Activity::Idle) n.role = Role::Idle;
    }
  }

  auto clusters = cfg.protocol == Protocol::Eelbcrp ? form_level_clusters(s.nodes, heads)
                                                    : form_clusters(s.nodes, heads);
  for (const auto& c : clusters) {
    for (NodeId id : c.members) s.nodes[id].cluster_head = c.head;
  }

  EnergyLedger ledger(s.nodes, trace);
  std::vector<NodeId> transmitters;
  std::map<NodeId, std::size_t> received;

  // TDMA data phase: one slot per member, in slot order.
  for (const auto& c : clusters) {
    const Node& head = s.nodes[c.head];
    for (NodeId id : c.members) {
      if (!head.alive()) break;
      const double d = distance(s.nodes[id].pos, head.pos);
      if (!ledger.debit(id, DebitKind::MemberTx, tx_energy(e, d))) continue;
      transmitters.push_back(id);
      if (!ledger.debit(c.head, DebitKind::HeadRx, rx_energy(e))) break;
      ++received[c.head];
      ++m.packets_member_to_ch;
    }
  }

  for (NodeId h : heads) {
    ledger.debit(h, DebitKind::Aggregation, aggregation_energy(e, received[h] + 1));
  }

  // Uplink, outermost hop first so relays hold their inbound packets
  // before transmitting.
  std::map<NodeId, int> depth;
  std::function<int(NodeId)> depth_of = [&](NodeId h) {
    if (auto it = depth.find(h); it != depth.end()) return it->second;
    const auto& next = election.route[h];
    const int d = next ? 1 + depth_of(*next) : 0;
    depth[h] = d;
    return d;
  };
  std::vector<NodeId> order(heads.begin(), heads.end());
  for (NodeId h : order) depth_of(h);
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return depth[a] > depth[b]; });

  std::map<NodeId, std::size_t> relayed;
  for (NodeId h : order) {
    if (!s.nodes[h].alive()) continue;
    if (relayed[h] > 0 &&
        !ledger.debit(h, DebitKind::Aggregation, aggregation_energy(e, relayed[h]))) {
      continue;
    }
    std::optional<NodeId> next = election.route[h];
    if (next && !s.nodes[*next].alive()) next.reset();
    const Position target = next ? s.nodes[*next].pos : cfg.bs;
    if (!ledger.debit(h, DebitKind::UplinkTx, tx_energy(e, distance(s.nodes[h].pos, target)))) {
      continue;
    }
    ++m.packets_ch_uplink;
    if (next && ledger.debit(*next, DebitKind::RelayRx, rx_energy(e))) ++relayed[*next];
  }

  m.alive = count_alive(s.nodes);
  m.dead = n_total - m.alive;
  m.heads = heads.size();
  m.idle = static_cast<std::size_t>(std::count_if(
      s.nodes.begin(), s.nodes.end(), [](const Node& n) { return n.role == Role::Idle; }));
  m.redundant_packets = count_redundant(s.nodes, transmitters, s.thresholds.t_r);
  m.avg_packets_per_head =
      m.heads > 0 ? static_cast<double>(m.packets_member_to_ch) / static_cast<double>(m.heads) : 0.0;
  m.energy_consumed_j = ledger.consumed();
  m.energy_remaining_j = total_energy(s.nodes);

  if (trace) {
    trace->heads = heads;
    trace->clusters = std::move(clusters);
    trace->route = std::move(election.route);
    trace->transmitters = std::move(transmitters);
  }
  return m;
}

std::vector<RoundMetrics> run_simulation(const NetworkConfig& config) {
  if (config.rounds == 0) {
    auto probe = config;
    probe.rounds = 1;
    validate(probe);
    return {};
  }
  auto state = make_state(config);
  std::vector<RoundMetrics> series;
  series.reserve(static_cast<std::size_t>(config.rounds));
  for (int i = 0; i < config.rounds; ++i) {
    series.push_back(run_round(state));
    if (series.back().alive == 0) break;
  }
  return series;
}

std::vector<std::vector<RoundMetrics>> run_batch(std::span<const NetworkConfig> configs,
                                                 unsigned threads) {
  std::vector<std::vector<RoundMetrics>> results(configs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, configs.size())));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(configs.size());
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
          try {
            results[i] = run_simulation(configs[i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return results;
}

}  // namespace wsnsim

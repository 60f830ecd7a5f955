#include "wsnsim/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wsnsim {

namespace {

// Resets alive nodes to Member for the new round and advances their
// rounds_since_head counter. Returns the per-id draw set: nodes that have not
// served as head since the current epoch began (the set G) and that pass the
// protocol-specific predicate.
template <class Predicate>
std::vector<bool> begin_election(std::vector<Node>& nodes, int epoch, int r, Predicate&& extra) {
  const int phase = r % epoch;
  std::vector<bool> in_draw(nodes.size(), false);
  for (auto& n : nodes) {
    if (!n.alive()) continue;
    n.role = Role::Member;
    n.cluster_head.reset();
    ++n.rounds_since_head;
    const bool passes = extra(n);
    in_draw[n.id] = passes && n.rounds_since_head > phase;
  }
  return in_draw;
}

// Max residual energy, lowest id on ties; the draw set is preferred and the
// whole alive population is the last resort.
std::optional<NodeId> fallback_head(const std::vector<Node>& nodes, const std::vector<bool>& in_draw) {
  std::optional<NodeId> best;
  auto consider = [&](bool restrict) {
    for (const auto& n : nodes) {
      if (!n.alive() || (restrict && !in_draw[n.id])) continue;
      if (!best || n.energy > nodes[*best].energy) best = n.id;
    }
  };
  consider(true);
  if (!best) consider(false);
  return best;
}

void crown(std::vector<Node>& nodes, NodeId id) {
  auto& n = nodes[id];
  n.role = Role::Head;
  n.rounds_since_head = 0;
  n.cluster_head = id;
}

template <class Threshold>
std::vector<NodeId> draw_heads(std::vector<Node>& nodes, std::vector<bool>& in_draw, Threshold&& t,
                               RandomSource& rng) {
  std::vector<NodeId> heads;
  for (const auto& n : nodes) {
    if (!n.alive() || !in_draw[n.id]) continue;
    if (rng.uniform() < t(n)) heads.push_back(n.id);
  }
  return heads;
}

std::vector<NodeId> finish_election(std::vector<Node>& nodes, std::vector<NodeId> heads,
                                    const std::vector<bool>& in_draw) {
  if (heads.empty()) {
    if (auto f = fallback_head(nodes, in_draw)) heads.push_back(*f);
  }
  for (NodeId h : heads) crown(nodes, h);
  return heads;
}

std::optional<NodeId> nearest(const Node& from, std::span<const Node> nodes,
                              std::span<const NodeId> candidates) {
  std::optional<NodeId> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (NodeId c : candidates) {
    const double d = distance(from.pos, nodes[c].pos);
    if (d < best_d || (d == best_d && c < *best)) {
      best = c;
      best_d = d;
    }
  }
  return best;
}

std::vector<NodeId> sorted(std::span<const NodeId> ids) {
  std::vector<NodeId> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double leach_threshold(double p, int r, bool eligible) noexcept {
  if (!eligible) return 0.0;
  const int phase = r % epoch_length(p);
  const double denom = 1.0 - p * phase;
  if (denom <= 0.0) return 1.0;
  return std::clamp(p / denom, 0.0, 1.0);
}

std::vector<NodeId> leach_elect(std::vector<Node>& nodes, const LeachParams& params, int r,
                                RandomSource& rng) {
  auto in_draw = begin_election(nodes, epoch_length(params.p), r, [](Node& n) {
    n.type_mark = TypeMark::Normal;
    return true;
  });
  auto heads = draw_heads(
      nodes, in_draw, [&](const Node&) { return leach_threshold(params.p, r, true); }, rng);
  return finish_election(nodes, std::move(heads), in_draw);
}

std::vector<Cluster> form_clusters(std::span<const Node> nodes, std::span<const NodeId> heads) {
  const auto ordered = sorted(heads);
  std::vector<Cluster> clusters;
  clusters.reserve(ordered.size());
  std::map<NodeId, std::size_t> slot;
  for (NodeId h : ordered) {
    slot[h] = clusters.size();
    clusters.push_back({h, {}, nodes[h].level});
  }
  for (const auto& n : nodes) {
    if (n.role != Role::Member) continue;
    if (auto h = nearest(n, nodes, ordered)) clusters[slot[*h]].members.push_back(n.id);
  }
  return clusters;
}

std::vector<int> assign_levels(std::span<const Node> nodes, const Position& bs, double ring_width) {
  std::vector<int> levels(nodes.size(), 1);
  for (const auto& n : nodes) {
    const double d = distance(n.pos, bs);
    levels[n.id] = std::max(1, static_cast<int>(std::ceil(d / ring_width)));
  }
  return levels;
}

double eelbcrp_threshold(const EelbcrpParams& params, int r, int level, double d_bs, double e_cur,
                         double e_ini, bool eligible) {
  const double upper = level * params.ring_width;
  const double lower = (level - 1) * params.ring_width;
  const double slack = 1e-9 * params.ring_width;
  if (d_bs < lower - slack || d_bs > upper + slack) {
    throw std::domain_error("distance to base station outside the band of level " +
                            std::to_string(level));
  }
  if (!eligible) return 0.0;
  const double base = params.p * params.c / (1.0 - params.p * (r % epoch_length(params.p)));
  const double dist_factor = std::clamp((upper - d_bs) / (upper - lower), 0.0, 1.0);
  const double energy_factor = std::pow(std::clamp(e_cur / e_ini, 0.0, 1.0), params.energy_exponent);
  return std::clamp(base * dist_factor * energy_factor, 0.0, 1.0);
}

std::vector<NodeId> eelbcrp_elect(std::vector<Node>& nodes, const EelbcrpParams& params,
                                  const Position& bs, double e_ini, int r, RandomSource& rng) {
  auto in_draw = begin_election(nodes, epoch_length(params.p), r, [](Node& n) {
    n.type_mark = TypeMark::Normal;
    return true;
  });
  auto heads = draw_heads(
      nodes, in_draw,
      [&](const Node& n) {
        return eelbcrp_threshold(params, r, n.level.value_or(1), distance(n.pos, bs), n.energy,
                                 e_ini, true);
      },
      rng);
  return finish_election(nodes, std::move(heads), in_draw);
}

std::vector<Cluster> form_level_clusters(std::span<const Node> nodes,
                                         std::span<const NodeId> heads) {
  const auto ordered = sorted(heads);
  std::map<int, std::vector<NodeId>> by_level;
  std::map<NodeId, std::size_t> slot;
  std::vector<Cluster> clusters;
  for (NodeId h : ordered) {
    by_level[nodes[h].level.value_or(1)].push_back(h);
    slot[h] = clusters.size();
    clusters.push_back({h, {}, nodes[h].level});
  }
  for (const auto& n : nodes) {
    if (n.role != Role::Member) continue;
    auto same = by_level.find(n.level.value_or(1));
    auto h = same != by_level.end() ? nearest(n, nodes, same->second) : nearest(n, nodes, ordered);
    if (h) clusters[slot[*h]].members.push_back(n.id);
  }
  return clusters;
}

Route eelbcrp_route(std::span<const Node> nodes, std::span<const NodeId> heads) {
  std::map<int, std::vector<NodeId>> by_level;
  for (NodeId h : sorted(heads)) by_level[nodes[h].level.value_or(1)].push_back(h);
  Route route;
  for (auto it = by_level.begin(); it != by_level.end(); ++it) {
    for (NodeId h : it->second) {
      if (it == by_level.begin()) {
        route[h] = std::nullopt;
      } else {
        route[h] = nearest(nodes[h], nodes, std::prev(it)->second);
      }
    }
  }
  return route;
}

bool qibeec_eligible(Node& node, double m) noexcept {
  const bool ok = node.energy >= m;
  node.type_mark = ok ? TypeMark::Head : TypeMark::Normal;
  return ok;
}

std::vector<NodeId> qibeec_elect(std::vector<Node>& nodes, const QibeecParams& params, double m,
                                 int r, RandomSource& rng) {
  auto in_draw = begin_election(nodes, epoch_length(params.p), r,
                                [m](Node& n) { return qibeec_eligible(n, m); });
  auto heads = draw_heads(
      nodes, in_draw, [&](const Node&) { return leach_threshold(params.p, r, true); }, rng);
  return finish_election(nodes, std::move(heads), in_draw);
}

std::vector<Activity> rda(std::span<const Node> nodes, std::span<const NodeId> heads, double t_r,
                          RandomSource& rng) {
  std::vector<Activity> state(nodes.size(), Activity::Idle);
  std::vector<NodeId> active;
  std::vector<bool> is_head(nodes.size(), false);
  for (NodeId h : heads) {
    is_head[h] = true;
    state[h] = Activity::Active;
    active.push_back(h);
  }
  std::vector<NodeId> candidates;
  for (const auto& n : nodes) {
    if (n.alive() && !is_head[n.id]) candidates.push_back(n.id);
  }
  for (std::uint32_t k : rng.permutation(static_cast<std::uint32_t>(candidates.size()))) {
    const Node& n = nodes[candidates[k]];
    const bool covered = std::any_of(active.begin(), active.end(), [&](NodeId a) {
      return distance(n.pos, nodes[a].pos) <= t_r;
    });
    if (!covered) {
      state[n.id] = Activity::Active;
      active.push_back(n.id);
    }
  }
  return state;
}

bool is_sparse(std::size_t dead, std::size_t n, double sparse_fraction) noexcept {
  if (n == 0) return true;
  return static_cast<double>(dead) / static_cast<double>(n) >= sparse_fraction;
}

TwoLevelElection qibeec2_elect(std::vector<Node>& nodes, const QibeecParams& params, double m,
                               int r, RandomSource& rng) {
  auto in_draw = begin_election(nodes, epoch_length(params.p), r,
                                [m](Node& n) { return qibeec_eligible(n, m); });
  for (auto& n : nodes) n.level.reset();
  TwoLevelElection out;
  out.level2 = draw_heads(nodes, in_draw, [&](const Node&) { return params.p2; }, rng);
  for (NodeId h : out.level2) in_draw[h] = false;
  out.level1 = draw_heads(
      nodes, in_draw, [&](const Node&) { return leach_threshold(params.p, r, true); }, rng);
  if (out.level1.empty() && out.level2.empty()) out.level1 = finish_election(nodes, {}, in_draw);
  for (NodeId h : out.level2) {
    crown(nodes, h);
    nodes[h].level = 2;
    out.uplinks[h] = std::nullopt;
  }
  for (NodeId h : out.level1) {
    crown(nodes, h);
    nodes[h].level = 1;
    auto up = nearest(nodes[h], nodes, out.level2);
    out.uplinks[h] = up;
    if (up) nodes[h].cluster_head = *up;
  }
  return out;
}

}  // namespace wsnsim

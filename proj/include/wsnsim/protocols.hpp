// Per-round decision procedures for LEACH, EELBCRP, and QIBEEC (single- and
// two-level): head election, cluster formation, redundancy idling, and
// inter-head routing.
//
// Election functions mutate the node vector: elected heads get Role::Head and
// rounds_since_head = 0, the remaining alive nodes get Role::Member. All other
// functions are read-only over the nodes.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wsnsim/model.hpp"

namespace wsnsim {

/// A head's members in TDMA slot order (ascending node id).
struct Cluster {
  NodeId head = 0;
  std::vector<NodeId> members;
  std::optional<int> level;
};

/// Next hop for each head; std::nullopt means the base station.
using Route = std::map<NodeId, std::optional<NodeId>>;

enum class Activity : std::uint8_t { Active, Idle };

// ---- LEACH ------------------------------------------------------------------

/// p / (1 - p (r mod ⌊1/p⌋)) for eligible nodes, else 0; clamped to [0, 1].
double leach_threshold(double p, int r, bool eligible) noexcept;

/// r is the zero-based round index.
std::vector<NodeId> leach_elect(std::vector<Node>& nodes, const LeachParams& params, int r,
                                RandomSource& rng);

/// Every alive node that is neither head nor idle joins its nearest head
/// (ties to the lowest head id). Returns one cluster per head, ordered by head id.
std::vector<Cluster> form_clusters(std::span<const Node> nodes, std::span<const NodeId> heads);

// ---- EELBCRP ----------------------------------------------------------------

/// level = ⌈d(n, bs) / ring_width⌉, at least 1. Indexed by NodeId.
std::vector<int> assign_levels(std::span<const Node> nodes, const Position& bs, double ring_width);

/// Throws std::domain_error when d_bs lies outside the level's band
/// [(level-1) w, level w].
double eelbcrp_threshold(const EelbcrpParams& params, int r, int level, double d_bs, double e_cur,
                         double e_ini, bool eligible);

/// Nodes must carry their level. Eligibility set Z: not head since the current epoch began.
std::vector<NodeId> eelbcrp_elect(std::vector<Node>& nodes, const EelbcrpParams& params,
                                  const Position& bs, double e_ini, int r, RandomSource& rng);

/// Members join the nearest head on their own level; a member whose level
/// has no head joins the nearest head overall.
std::vector<Cluster> form_level_clusters(std::span<const Node> nodes,
                                         std::span<const NodeId> heads);

/// A head at level i forwards to the nearest head on the greatest populated
/// level below i; heads with no populated inner level go to the base station.
Route eelbcrp_route(std::span<const Node> nodes, std::span<const NodeId> heads);

// ---- QIBEEC -----------------------------------------------------------------

/// Residual energy ≥ m. Marks the node 'C' on success and 'N' otherwise.
bool qibeec_eligible(Node& node, double m) noexcept;

/// LEACH election restricted to nodes passing qibeec_eligible.
std::vector<NodeId> qibeec_elect(std::vector<Node>& nodes, const QibeecParams& params, double m,
                                 int r, RandomSource& rng);

/// Greedy redundancy idling. Heads are seeded Active; the alive non-head
/// nodes are visited in a fresh uniform random order and go Idle iff an
/// already-Active node lies within t_r. Indexed by NodeId; dead nodes
/// report Idle.
std::vector<Activity> rda(std::span<const Node> nodes, std::span<const NodeId> heads, double t_r,
                          RandomSource& rng);

bool is_sparse(std::size_t dead, std::size_t n, double sparse_fraction) noexcept;

struct TwoLevelElection {
  std::vector<NodeId> level1;
  std::vector<NodeId> level2;
  Route uplinks;
};

/// Level-2 heads are drawn first (Bernoulli p2 over eligible nodes), then
/// level-1 heads by the LEACH threshold over the remaining eligible nodes.
/// Level-1 heads uplink to their nearest level-2 head, or to the base
/// station when there is none.
TwoLevelElection qibeec2_elect(std::vector<Node>& nodes, const QibeecParams& params, double m,
                               int r, RandomSource& rng);

}  // namespace wsnsim

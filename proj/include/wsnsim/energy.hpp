// First-order radio model and the threshold quantities that gate head
// eligibility and redundancy idling.
#pragma once

#include <cstddef>

#include "wsnsim/model.hpp"

namespace wsnsim {

struct ThresholdDistance {
  double m_d;  // minimum distance A / 4L
  double t_d;  // sqrt(m_d^2 + m_d^2)
};

struct Thresholds {
  double m_d;
  double t_d;
  double m;    // threshold energy, joules
  double t_r;  // threshold range, meters
  double d0;   // amplifier crossover distance
};

ThresholdDistance threshold_distance(const NetworkConfig& config) noexcept;

/// Energy to aggregate one signal and send one packet over t_d in free space:
/// (e_elec + e_da) k + eps_fs k t_d^2.
double threshold_energy(const EnergyParams& e, double t_d) noexcept;

/// Sr L / N.
double threshold_range(const NetworkConfig& config) noexcept;

/// sqrt(eps_fs / eps_mp).
double crossover_distance(const EnergyParams& e) noexcept;

Thresholds compute_thresholds(const NetworkConfig& config) noexcept;

/// Transmit cost of one packet: free-space d^2 amplifier below d0, multipath d^4 at or above.
double tx_energy(const EnergyParams& e, double d) noexcept;
double rx_energy(const EnergyParams& e) noexcept;
double aggregation_energy(const EnergyParams& e, std::size_t signals) noexcept;

}  // namespace wsnsim

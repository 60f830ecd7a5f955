#include "wsnsim/energy.hpp"

#include <cmath>

namespace wsnsim {

ThresholdDistance threshold_distance(const NetworkConfig& config) noexcept {
  const double m_d = config.area / (4.0 * config.length);
  return {m_d, std::sqrt(m_d * m_d + m_d * m_d)};
}

double threshold_energy(const EnergyParams& e, double t_d) noexcept {
  const double k = e.k_bits;
  return (e.e_elec + e.e_da) * k + e.eps_fs * k * (t_d * t_d);
}

double threshold_range(const NetworkConfig& config) noexcept {
  return config.sensing_range / static_cast<double>(config.nodes) * config.length;
}

double crossover_distance(const EnergyParams& e) noexcept { return std::sqrt(e.eps_fs / e.eps_mp); }

Thresholds compute_thresholds(const NetworkConfig& config) noexcept {
  const auto [m_d, t_d] = threshold_distance(config);
  return {m_d, t_d, threshold_energy(config.energy, t_d), threshold_range(config),
          crossover_distance(config.energy)};
}

double tx_energy(const EnergyParams& e, double d) noexcept {
  const double k = e.k_bits;
  const double d2 = d * d;
  if (d < crossover_distance(e)) return e.e_elec * k + e.eps_fs * k * d2;
  return e.e_elec * k + e.eps_mp * k * d2 * d2;
}

double rx_energy(const EnergyParams& e) noexcept { return e.e_elec * e.k_bits; }

double aggregation_energy(const EnergyParams& e, std::size_t signals) noexcept {
  return e.e_da * e.k_bits * static_cast<double>(signals);
}

}  // namespace wsnsim

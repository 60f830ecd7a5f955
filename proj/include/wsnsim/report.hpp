// Metric export: per-run CSV, cross-seed summaries, and SVG line charts.
#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsnsim/engine.hpp"

namespace wsnsim {

using Series = std::vector<RoundMetrics>;

inline constexpr std::string_view kRunCsvHeader =
    "round,protocol,seed,alive,dead,heads,idle,packets_member_to_ch,packets_ch_uplink,"
    "redundant_packets,avg_packets_per_head,energy_consumed_j,energy_remaining_j";

inline constexpr std::string_view kSummaryCsvHeader =
    "protocol,seeds,dead_final,first_death_round,half_death_round,dense_avg_packets_per_head,"
    "sparse_avg_packets_per_head,total_redundant_packets";

/// Rounds windows used by the comparison, inclusive.
struct RoundWindow {
  int first;
  int last;
};
inline constexpr RoundWindow kDenseWindow{1, 10};
inline constexpr RoundWindow kSparseWindow{151, 200};

/// %.9g
std::string format_real(double v);

void write_run_csv(std::ostream& out, Protocol protocol, std::uint64_t seed, const Series& series);

double median(std::vector<double> values);

/// Mean of avg_packets_per_head over the window; rounds after extinction
/// count as zero. NaN when the window lies beyond the configured rounds.
double window_mean_packets(const Series& series, RoundWindow window, int rounds);

/// Dead count after round `round` (the last row when the run went extinct early).
std::size_t dead_at(const Series& series, int round);

/// First round whose dead count reaches `threshold`; rounds + 1 if never.
int death_round(const Series& series, std::size_t threshold, int rounds);

/// Alive count per round 1..rounds, padded with zero after extinction.
std::vector<double> alive_curve(const Series& series, int rounds);

struct ComparisonSummary {
  Protocol protocol;
  std::size_t seeds = 0;
  double dead_final = 0.0;
  double first_death_round = 0.0;
  double half_death_round = 0.0;
  double dense_avg_packets_per_head = 0.0;
  double sparse_avg_packets_per_head = 0.0;
  double total_redundant_packets = 0.0;
};

/// Medians over the per-seed runs of one protocol.
ComparisonSummary summarize(Protocol protocol, std::span<const Series> runs, int rounds,
                            std::size_t nodes);

void write_summary_csv(std::ostream& out, std::span<const ComparisonSummary> rows);

struct PlotLine {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
};

/// Self-contained SVG document, one polyline per line.
std::string render_line_chart(const PlotSpec& spec, std::span<const PlotLine> lines);

}  // namespace wsnsim

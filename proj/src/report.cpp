#include "wsnsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace wsnsim {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_run_csv(std::ostream& out, Protocol protocol, std::uint64_t seed, const Series& series) {
  out << kRunCsvHeader << '\n';
  for (const auto& m : series) {
    out << m.round << ',' << to_string(protocol) << ',' << seed << ',' << m.alive << ',' << m.dead
        << ',' << m.heads << ',' << m.idle << ',' << m.packets_member_to_ch << ','
        << m.packets_ch_uplink << ',' << m.redundant_packets << ','
        << format_real(m.avg_packets_per_head) << ',' << format_real(m.energy_consumed_j) << ','
        << format_real(m.energy_remaining_j) << '\n';
  }
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double window_mean_packets(const Series& series, RoundWindow window, int rounds) {
  const int last = std::min(window.last, rounds);
  if (last < window.first) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (const auto& m : series) {
    if (m.round >= window.first && m.round <= last) sum += m.avg_packets_per_head;
  }
  return sum / (last - window.first + 1);
}

std::size_t dead_at(const Series& series, int round) {
  if (series.empty()) return 0;
  for (const auto& m : series) {
    if (m.round == round) return m.dead;
  }
  return series.back().round < round ? series.back().dead : 0;
}

int death_round(const Series& series, std::size_t threshold, int rounds) {
  for (const auto& m : series) {
    if (m.dead >= threshold) return m.round;
  }
  return rounds + 1;
}

std::vector<double> alive_curve(const Series& series, int rounds) {
  std::vector<double> alive(static_cast<std::size_t>(std::max(rounds, 0)), 0.0);
  for (const auto& m : series) {
    if (m.round >= 1 && m.round <= rounds) alive[m.round - 1] = static_cast<double>(m.alive);
  }
  return alive;
}

ComparisonSummary summarize(Protocol protocol, std::span<const Series> runs, int rounds,
                            std::size_t nodes) {
  std::vector<double> dead, first, half, dense, sparse, redundant;
  for (const auto& s : runs) {
    dead.push_back(static_cast<double>(dead_at(s, rounds)));
    first.push_back(death_round(s, 1, rounds));
    half.push_back(death_round(s, (nodes + 1) / 2, rounds));
    dense.push_back(window_mean_packets(s, kDenseWindow, rounds));
    sparse.push_back(window_mean_packets(s, kSparseWindow, rounds));
    double total = 0.0;
    for (const auto& m : s) total += static_cast<double>(m.redundant_packets);
    redundant.push_back(total);
  }
  return {protocol,       runs.size(),    median(dead),      median(first),
          median(half),   median(dense),  median(sparse),    median(redundant)};
}

void write_summary_csv(std::ostream& out, std::span<const ComparisonSummary> rows) {
  out << kSummaryCsvHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.protocol) << ',' << r.seeds << ',' << format_real(r.dead_final) << ','
        << format_real(r.first_death_round) << ',' << format_real(r.half_death_round) << ','
        << format_real(r.dense_avg_packets_per_head) << ','
        << format_real(r.sparse_avg_packets_per_head) << ','
        << format_real(r.total_redundant_packets) << '\n';
  }
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_line_chart(const PlotSpec& spec, std::span<const PlotLine> lines) {
  constexpr double width = 640, height = 420;
  constexpr double left = 70, right = 150, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_max = 0.0;
  for (const auto& line : lines) {
    for (double x : line.x) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
    }
    for (double y : line.y) {
      if (std::isfinite(y)) y_max = std::max(y_max, y);
    }
  }
  if (!std::isfinite(x_min)) x_min = 0.0, x_max = 1.0;
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.05;

  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return top + plot_h - y / y_max * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << xml_escape(spec.title) << "</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" fill=\"none\">\n"
      << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
      << "\"/>\n</g>\n";
  constexpr int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double xv = x_min + (x_max - x_min) * i / ticks;
    const double yv = y_max * i / ticks;
    svg << "<text x=\"" << fixed(px(xv)) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << fixed(xv, 0) << "</text>\n"
        << "<text x=\"" << left - 6 << "\" y=\"" << fixed(py(yv) + 4) << "\" text-anchor=\"end\">"
        << fixed(yv, yv < 10 ? 1 : 0) << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 18 << "\" text-anchor=\"middle\">"
      << xml_escape(spec.x_label) << "</text>\n"
      << "<text transform=\"translate(18," << top + plot_h / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << xml_escape(spec.y_label) << "</text>\n";

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const char* colour = kPalette[i % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    const std::size_t n = std::min(line.x.size(), line.y.size());
    for (std::size_t k = 0; k < n; ++k) {
      const double y = std::isfinite(line.y[k]) ? line.y[k] : 0.0;
      svg << (k ? " " : "") << fixed(px(line.x[k])) << ',' << fixed(py(y));
    }
    svg << "\"/>\n";
    const double ly = top + 10 + 20.0 * static_cast<double>(i);
    svg << "<line x1=\"" << left + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + plot_w + 40
        << "\" y2=\"" << ly << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << left + plot_w + 46 << "\" y=\"" << ly + 4 << "\">" << xml_escape(line.label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace wsnsim

#include "wsnsim/cli.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "wsnsim/config_io.hpp"
#include "wsnsim/energy.hpp"
#include "wsnsim/engine.hpp"
#include "wsnsim/report.hpp"

namespace wsnsim {

namespace {

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("invalid seed '" + std::string(s) + "'");
  }
  return v;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << contents;
  if (!f) throw IoError("write failed for " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::filesystem::path run_csv_path(const std::filesystem::path& dir, Protocol p, std::uint64_t seed) {
  return dir / (std::string(to_string(p)) + "-seed" + std::to_string(seed) + ".csv");
}

std::string run_csv(Protocol p, std::uint64_t seed, const Series& series) {
  std::ostringstream os;
  write_run_csv(os, p, seed, series);
  return os.str();
}

// Runs the body, mapping failures onto exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

SeedRange parse_seed_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const auto s = parse_u64(text);
    return {s, s};
  }
  SeedRange r{parse_u64(text.substr(0, dots)), parse_u64(text.substr(dots + 2))};
  if (r.last < r.first) throw std::invalid_argument("empty seed range '" + std::string(text) + "'");
  return r;
}

std::vector<Protocol> parse_protocol_list(std::string_view text) {
  std::vector<Protocol> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(parse_protocol(part));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

NetworkConfig resolve_config(const RunSpec& spec) {
  NetworkConfig c = spec.config_path ? load_config(*spec.config_path) : NetworkConfig{};
  if (spec.length) set_length(c, *spec.length);
  if (spec.nodes) c.nodes = *spec.nodes;
  if (spec.sensing_range) c.sensing_range = *spec.sensing_range;
  if (spec.rounds) c.rounds = *spec.rounds;
  if (!spec.protocols.empty()) c.protocol = spec.protocols.front();
  if (spec.seeds) c.seed = spec.seeds->first;
  validate(c);
  return c;
}

std::string run_header(const NetworkConfig& c) {
  const auto t = compute_thresholds(c);
  std::ostringstream os;
  os << "protocol=" << to_string(c.protocol) << " seed=" << c.seed
     << " L=" << format_real(c.length) << " A=" << format_real(c.area) << " N=" << c.nodes
     << " Sr=" << format_real(c.sensing_range) << " rounds=" << c.rounds
     << " eInit=" << format_real(c.energy.e_init) << " | M_d=" << format_real(t.m_d)
     << " T_d=" << format_real(t.t_d) << " M=" << format_real(t.m) << " T(r)=" << format_real(t.t_r)
     << " d0=" << format_real(t.d0);
  return os.str();
}

int cmd_run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (spec.seeds && spec.seeds->first != spec.seeds->last) {
      throw std::invalid_argument("run takes a single seed; use compare for ranges");
    }
    if (spec.protocols.size() > 1) {
      throw std::invalid_argument("run takes a single protocol; use compare for several");
    }
    const auto config = resolve_config(spec);
    out << run_header(config) << '\n';
    const auto series = run_simulation(config);
    ensure_dir(spec.out_dir);
    write_file(run_csv_path(spec.out_dir, config.protocol, config.seed),
               run_csv(config.protocol, config.seed, series));
    return static_cast<int>(kExitOk);
  });
}

int cmd_compare(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (spec.protocols.size() < 2) throw std::invalid_argument("compare needs at least two protocols");
    const auto base = resolve_config(spec);
    const SeedRange seeds = spec.seeds.value_or(SeedRange{base.seed, base.seed});

    std::vector<NetworkConfig> cells;
    for (Protocol p : spec.protocols) {
      for (std::uint64_t s = seeds.first;; ++s) {
        auto c = base;
        c.protocol = p;
        c.seed = s;
        cells.push_back(c);
        if (s == seeds.last) break;
      }
    }
    out << run_header(base) << '\n';
    const auto results = run_batch(cells);

    ensure_dir(spec.out_dir);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      write_file(run_csv_path(spec.out_dir, cells[i].protocol, cells[i].seed),
                 run_csv(cells[i].protocol, cells[i].seed, results[i]));
    }

    const std::size_t per_protocol = cells.size() / spec.protocols.size();
    std::vector<ComparisonSummary> rows;
    std::vector<PlotLine> lifetime, dense, sparse;
    for (std::size_t pi = 0; pi < spec.protocols.size(); ++pi) {
      const Protocol p = spec.protocols[pi];
      const std::span<const Series> runs(results.data() + pi * per_protocol, per_protocol);
      rows.push_back(summarize(p, runs, base.rounds, base.nodes));

      // Per-round medians across seeds.
      PlotLine life{std::string(to_string(p)), {}, {}};
      PlotLine dn = life, sp = life;
      std::vector<std::vector<double>> alive;
      for (const auto& s : runs) alive.push_back(alive_curve(s, base.rounds));
      for (int r = 1; r <= base.rounds; ++r) {
        std::vector<double> a, pk;
        for (std::size_t k = 0; k < runs.size(); ++k) {
          a.push_back(alive[k][r - 1]);
          double v = 0.0;
          for (const auto& m : runs[k]) {
            if (m.round == r) v = m.avg_packets_per_head;
          }
          pk.push_back(v);
        }
        life.x.push_back(r);
        life.y.push_back(median(a));
        if (r >= kDenseWindow.first && r <= kDenseWindow.last) {
          dn.x.push_back(r);
          dn.y.push_back(median(pk));
        }
        if (r >= kSparseWindow.first && r <= kSparseWindow.last) {
          sp.x.push_back(r);
          sp.y.push_back(median(pk));
        }
      }
      lifetime.push_back(std::move(life));
      dense.push_back(std::move(dn));
      sparse.push_back(std::move(sp));
    }

    std::ostringstream summary;
    write_summary_csv(summary, rows);
    write_file(spec.out_dir / "summary.csv", summary.str());
    const std::string seed_note = " (median of " + std::to_string(per_protocol) + " seeds)";
    write_file(spec.out_dir / "lifetime.svg",
               render_line_chart({"Network lifetime" + seed_note, "round", "alive nodes"}, lifetime));
    write_file(spec.out_dir / "packets_dense.svg",
               render_line_chart({"Packets at heads, dense phase" + seed_note, "round",
                                  "packets received per head per round"},
                                 dense));
    write_file(spec.out_dir / "packets_sparse.svg",
               render_line_chart({"Packets at heads, late phase" + seed_note, "round",
                                  "packets received per head per round"},
                                 sparse));
    out << summary.str();
    return static_cast<int>(kExitOk);
  });
}

}  // namespace wsnsim

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "wsnsim/cli.hpp"
#include "wsnsim/config_io.hpp"
#include "wsnsim/report.hpp"

using namespace wsnsim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  for (std::string cell; std::getline(is, cell, ',');) out.push_back(cell);
  return out;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("wsnsim-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

std::string error_key(const nlohmann::json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("config documents") {
  SUBCASE("empty document gives the defaults") {
    const auto c = parse_config(nlohmann::json::object());
    CHECK(c.length == 100.0);
    CHECK(c.area == 10000.0);
    CHECK(c.nodes == 200);
    CHECK(c.sensing_range == 15.0);
    CHECK(c.rounds == 200);
    CHECK(c.protocol == Protocol::Qibeec);
    CHECK(c.bs == Position{50, 50});
  }

  SUBCASE("errors name the key") {
    CHECK(error_key({{"nodes", 0}}) == "nodes");
    CHECK(error_key({{"nodes", -3}}) == "nodes");
    CHECK(error_key({{"nodes", "many"}}) == "nodes");
    CHECK(error_key({{"node", 10}}) == "node");
    CHECK(error_key({{"protocol", "pegasis"}}) == "protocol");
    CHECK(error_key({{"p", 0.0}}) == "p");
    CHECK(error_key({{"lengthM", -1}}) == "lengthM");
    CHECK(error_key({{"eInitJ", 0}}) == "eInitJ");
    CHECK(error_key(nlohmann::json::array()) == "<document>");
  }

  SUBCASE("keys map onto the model with unit conversion") {
    const auto c = parse_config({{"lengthM", 20},
                                 {"nodes", 10},
                                 {"sensingRangeM", 3},
                                 {"protocol", "eelbcrp"},
                                 {"seed", 9},
                                 {"p", 0.1},
                                 {"ringWidthM", 5},
                                 {"eElecNj", 40},
                                 {"epsFsPj", 20},
                                 {"packetBits", 2000},
                                 {"eInitJ", 1.5}});
    CHECK(c.area == 400);
    CHECK(c.bs == Position{10, 10});
    CHECK(c.protocol == Protocol::Eelbcrp);
    CHECK(c.params.eelbcrp.p == 0.1);
    CHECK(c.params.eelbcrp.ring_width == 5);
    CHECK(c.energy.e_elec == doctest::Approx(40e-9));
    CHECK(c.energy.eps_fs == doctest::Approx(20e-12));
    CHECK(c.energy.k_bits == 2000);
    CHECK(c.seed == 9);
  }

  SUBCASE("to_json round trips") {
    NetworkConfig c;
    c.protocol = Protocol::Qibeec2;
    c.params.qibeec.p2 = 0.03;
    const auto back = parse_config(to_json(c));
    CHECK(back.protocol == Protocol::Qibeec2);
    CHECK(back.params.qibeec.p2 == doctest::Approx(0.03));
    CHECK(back.energy.eps_mp == doctest::Approx(c.energy.eps_mp));
  }

  SUBCASE("files") {
    const auto dir = scratch("config");
    CHECK_THROWS_AS(load_config(dir / "missing.json"), ConfigError);
    std::ofstream(dir / "bad.json") << "{ nodes: ";
    CHECK_THROWS_AS(load_config(dir / "bad.json"), ConfigError);
    std::ofstream(dir / "ok.json") << R"({"sensingRangeM": 15, "nodes": 200, "lengthM": 100})";
    RunSpec spec;
    spec.config_path = dir / "ok.json";
    const auto header = run_header(resolve_config(spec));
    CHECK(header.find("T(r)=7.5") != std::string::npos);
  }
}

TEST_CASE("seed and protocol parsing") {
  const auto one = parse_seed_range("7");
  CHECK(one.first == 7);
  CHECK(one.last == 7);
  const auto range = parse_seed_range("1..20");
  CHECK(range.first == 1);
  CHECK(range.last == 20);
  CHECK_THROWS_AS(parse_seed_range("5..2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_seed_range("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_seed_range(""), std::invalid_argument);

  CHECK(parse_protocol_list("leach,qibeec") == std::vector<Protocol>{Protocol::Leach, Protocol::Qibeec});
  CHECK_THROWS_AS(parse_protocol_list("leach,"), std::invalid_argument);
}

TEST_CASE("flags override the file, which overrides defaults") {
  const auto dir = scratch("override");
  std::ofstream(dir / "c.json") << R"({"nodes": 50, "rounds": 30, "lengthM": 40})";
  RunSpec spec;
  spec.config_path = dir / "c.json";
  spec.rounds = 12;
  const auto c = resolve_config(spec);
  CHECK(c.nodes == 50);
  CHECK(c.rounds == 12);
  CHECK(c.bs == Position{20, 20});
}

TEST_CASE("cmd_run") {
  const auto dir = scratch("run");
  RunSpec spec;
  spec.protocols = {Protocol::Leach};
  spec.seeds = SeedRange{1, 1};
  spec.rounds = 10;
  spec.out_dir = dir;
  std::ostringstream out, err;
  REQUIRE(cmd_run(spec, out, err) == kExitOk);
  CHECK(out.str().find("M_d=25") != std::string::npos);

  const auto csv = slurp(dir / "leach-seed1.csv");
  const auto rows = lines(csv);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == kRunCsvHeader);
  CHECK(split(rows[1]).size() == 13);
  CHECK(split(rows[1])[0] == "1");
  CHECK(split(rows[10])[0] == "10");

  REQUIRE(cmd_run(spec, out, err) == kExitOk);
  CHECK(slurp(dir / "leach-seed1.csv") == csv);

  SUBCASE("qibeec dense rows carry no redundancy") {
    RunSpec q;
    q.protocols = {Protocol::Qibeec};
    q.seeds = SeedRange{1, 1};
    q.out_dir = dir;
    REQUIRE(cmd_run(q, out, err) == kExitOk);
    const auto qr = lines(slurp(dir / "qibeec-seed1.csv"));
    for (std::size_t i = 1; i < qr.size(); ++i) {
      const auto cells = split(qr[i]);
      if (std::stoul(cells[4]) >= 100) break;  // sparse from here on
      REQUIRE(cells[9] == "0");
    }
  }

  SUBCASE("errors map to exit codes") {
    RunSpec bad = spec;
    bad.nodes = 0;
    CHECK(cmd_run(bad, out, err) == kExitUsage);
    bad = spec;
    bad.seeds = SeedRange{1, 3};
    CHECK(cmd_run(bad, out, err) == kExitUsage);
    bad = spec;
    std::ofstream(dir / "blocker") << "x";
    bad.out_dir = dir / "blocker" / "sub";
    CHECK(cmd_run(bad, out, err) == kExitIo);
  }
}

TEST_CASE("cmd_compare writes the full artifact set") {
  const auto dir = scratch("compare");
  RunSpec spec;
  spec.protocols = {Protocol::Leach, Protocol::Qibeec};
  spec.seeds = SeedRange{1, 20};
  spec.out_dir = dir;
  std::ostringstream out, err;
  REQUIRE(cmd_compare(spec, out, err) == kExitOk);

  const auto summary = lines(slurp(dir / "summary.csv"));
  REQUIRE(summary.size() == 3);
  CHECK(summary[0] == kSummaryCsvHeader);
  CHECK(split(summary[1])[0] == "leach");
  CHECK(split(summary[1])[1] == "20");
  CHECK(split(summary[2])[1] == "20");
  CHECK(std::stod(split(summary[2])[2]) < std::stod(split(summary[1])[2]));

  for (std::uint64_t s = 1; s <= 20; ++s) {
    CHECK(fs::exists(dir / ("leach-seed" + std::to_string(s) + ".csv")));
    CHECK(fs::exists(dir / ("qibeec-seed" + std::to_string(s) + ".csv")));
  }

  const auto life = slurp(dir / "lifetime.svg");
  CHECK(count_of(life, "<polyline") == 2);
  const auto first_points = life.substr(life.find("points=\""));
  const auto pts = first_points.substr(8, first_points.find('"', 8) - 8);
  CHECK(count_of(pts, ",") == 200);
  for (const char* name : {"lifetime.svg", "packets_dense.svg", "packets_sparse.svg"}) {
    const auto svg = slurp(dir / name);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);
    CHECK(count_of(svg, "<text") == count_of(svg, "</text>"));
  }
  CHECK(count_of(slurp(dir / "packets_dense.svg"), ",") >= 20);

  std::ostringstream out2;
  const auto before = slurp(dir / "summary.csv");
  const auto life_before = life;
  REQUIRE(cmd_compare(spec, out2, err) == kExitOk);
  CHECK(slurp(dir / "summary.csv") == before);
  CHECK(slurp(dir / "lifetime.svg") == life_before);

  RunSpec single = spec;
  single.protocols = {Protocol::Leach};
  CHECK(cmd_compare(single, out, err) == kExitUsage);
}

TEST_CASE("report helpers") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(1.0 / 3.0) == "0.333333333");
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 2, 3}) == 2.5);

  Series s;
  for (int r = 1; r <= 5; ++r) {
    RoundMetrics m;
    m.round = r;
    m.dead = static_cast<std::size_t>(r * 2);
    m.alive = 10 - m.dead;
    m.avg_packets_per_head = r;
    s.push_back(m);
  }
  CHECK(window_mean_packets(s, {1, 10}, 20) == doctest::Approx(15.0 / 10));
  CHECK(std::isnan(window_mean_packets(s, {151, 200}, 100)));
  CHECK(dead_at(s, 3) == 6);
  CHECK(dead_at(s, 9) == 10);
  CHECK(death_round(s, 1, 20) == 1);
  CHECK(death_round(s, 5, 20) == 3);
  CHECK(death_round(s, 11, 20) == 21);
  const auto curve = alive_curve(s, 7);
  CHECK(curve.size() == 7);
  CHECK(curve[0] == 8);
  CHECK(curve[6] == 0);
}

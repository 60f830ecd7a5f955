#include "wsnsim/config_io.hpp"

#include <fstream>
#include <functional>
#include <map>

namespace wsnsim {

namespace {

using nlohmann::json;

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  return v.get<std::int64_t>();
}

std::uint32_t as_count(const json& v, const std::string& key) {
  const auto n = as_integer(v, key);
  if (n < 0 || n > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError(key, "out of range");
  }
  return static_cast<std::uint32_t>(n);
}

using Setter = std::function<void(NetworkConfig&, const json&, const std::string&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"lengthM", [](auto& c, auto& v, auto& k) { set_length(c, as_number(v, k)); }},
      {"nodes", [](auto& c, auto& v, auto& k) { c.nodes = as_count(v, k); }},
      {"sensingRangeM", [](auto& c, auto& v, auto& k) { c.sensing_range = as_number(v, k); }},
      {"rounds",
       [](auto& c, auto& v, auto& k) {
         const auto n = as_integer(v, k);
         if (n < 0 || n > std::numeric_limits<int>::max()) throw ConfigError(k, "out of range");
         c.rounds = static_cast<int>(n);
       }},
      {"protocol",
       [](auto& c, auto& v, auto& k) {
         if (!v.is_string()) throw ConfigError(k, "expected a string");
         try {
           c.protocol = parse_protocol(v.template get<std::string>());
         } catch (const std::invalid_argument& e) {
           throw ConfigError(k, e.what());
         }
       }},
      {"seed",
       [](auto& c, auto& v, auto& k) {
         if (!v.is_number_integer() || (!v.is_number_unsigned() && v.template get<std::int64_t>() < 0))
           throw ConfigError(k, "expected a non-negative integer");
         c.seed = v.template get<std::uint64_t>();
       }},
      {"p",
       [](auto& c, auto& v, auto& k) {
         const double p = as_number(v, k);
         c.params.leach.p = p;
         c.params.eelbcrp.p = p;
         c.params.qibeec.p = p;
       }},
      {"p2", [](auto& c, auto& v, auto& k) { c.params.qibeec.p2 = as_number(v, k); }},
      {"c", [](auto& c, auto& v, auto& k) { c.params.eelbcrp.c = as_number(v, k); }},
      {"ringWidthM", [](auto& c, auto& v, auto& k) { c.params.eelbcrp.ring_width = as_number(v, k); }},
      {"energyExponent",
       [](auto& c, auto& v, auto& k) { c.params.eelbcrp.energy_exponent = as_number(v, k); }},
      {"sparseFraction",
       [](auto& c, auto& v, auto& k) { c.params.qibeec.sparse_fraction = as_number(v, k); }},
      {"eElecNj", [](auto& c, auto& v, auto& k) { c.energy.e_elec = as_number(v, k) * 1e-9; }},
      {"eDaNj", [](auto& c, auto& v, auto& k) { c.energy.e_da = as_number(v, k) * 1e-9; }},
      {"epsFsPj", [](auto& c, auto& v, auto& k) { c.energy.eps_fs = as_number(v, k) * 1e-12; }},
      {"epsMpPj", [](auto& c, auto& v, auto& k) { c.energy.eps_mp = as_number(v, k) * 1e-12; }},
      {"packetBits", [](auto& c, auto& v, auto& k) { c.energy.k_bits = as_count(v, k); }},
      {"eInitJ", [](auto& c, auto& v, auto& k) { c.energy.e_init = as_number(v, k); }},
  };
  return table;
}

}  // namespace

void set_length(NetworkConfig& config, double length) {
  config.length = length;
  config.area = length * length;
  config.bs = {length / 2.0, length / 2.0};
}

NetworkConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");
  NetworkConfig config;
  const auto& table = setters();
  for (const auto& [key, value] : doc.items()) {
    auto it = table.find(key);
    if (it == table.end()) throw ConfigError(key, "unknown configuration key");
    it->second(config, value, key);
  }
  validate(config);
  return config;
}

NetworkConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open configuration file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const NetworkConfig& c) {
  return {
      {"lengthM", c.length},
      {"nodes", c.nodes},
      {"sensingRangeM", c.sensing_range},
      {"rounds", c.rounds},
      {"protocol", std::string(to_string(c.protocol))},
      {"seed", c.seed},
      {"p", c.head_probability()},
      {"p2", c.params.qibeec.p2},
      {"c", c.params.eelbcrp.c},
      {"ringWidthM", c.params.eelbcrp.ring_width},
      {"energyExponent", c.params.eelbcrp.energy_exponent},
      {"sparseFraction", c.params.qibeec.sparse_fraction},
      {"eElecNj", c.energy.e_elec * 1e9},
      {"eDaNj", c.energy.e_da * 1e9},
      {"epsFsPj", c.energy.eps_fs * 1e12},
      {"epsMpPj", c.energy.eps_mp * 1e12},
      {"packetBits", c.energy.k_bits},
      {"eInitJ", c.energy.e_init},
  };
}

}  // namespace wsnsim

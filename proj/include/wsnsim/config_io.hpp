// JSON configuration documents.
//
// Flat object, camelCase keys; absent keys keep their defaults and unknown
// keys are rejected:
//
//   lengthM nodes sensingRangeM rounds protocol seed
//   p p2 c ringWidthM energyExponent sparseFraction
//   eElecNj eDaNj epsFsPj epsMpPj packetBits eInitJ
#pragma once

#include <filesystem>
#include <string_view>

#include "json.hpp"

#include "wsnsim/model.hpp"

namespace wsnsim {

/// Defaults with every key of `doc` applied, validated. Throws ConfigError.
NetworkConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a file. Missing files and malformed JSON are reported
/// as ConfigError as well.
NetworkConfig load_config(const std::filesystem::path& path);

/// Moves the field side and re-centres the base station.
void set_length(NetworkConfig& config, double length);

nlohmann::json to_json(const NetworkConfig& config);

}  // namespace wsnsim

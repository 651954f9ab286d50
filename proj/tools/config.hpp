#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "stochdyn/binary_form.hpp"
#include "stochdyn/generating_system.hpp"
#include "stochdyn/local_heights.hpp"
#include "stochdyn/riccati.hpp"
#include "stochdyn/unicritical.hpp"

namespace stochdyn::cli {

using Json = nlohmann::ordered_json;

// Parsed contents of a config file.  Any of the three blocks may be
// absent; commands validate the ones they need.
struct SystemConfig {
  std::optional<GeneratingSystem> system;
  std::optional<UnicriticalFamily> family;
  std::optional<std::vector<FpPolySelfMap>> fp_maps;
  std::uint64_t fp_characteristic = 0;
};

SystemConfig parse_config(const Json& j);
SystemConfig load_config(const std::string& path);

// Canonical re-serialization: parse(serialize(parse(x))) == parse(x).
Json serialize_config(const SystemConfig& config);

// "a/b" or "a"; "1/0" is infinity.
ProjectivePoint parse_point(const std::string& s);

// Comma-separated ascending coefficients c_i of x^i y^(e-i).
DivisorForm parse_divisor(const std::string& s);

// "inf" or a prime.
Place parse_place(const std::string& s);

// Comma-separated map indices.
Word parse_word_list(const std::string& s);

} // namespace stochdyn::cli

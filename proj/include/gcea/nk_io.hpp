#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <gcea/error.hpp>
#include <gcea/nk_landscape.hpp>

namespace gcea {

// Landscape files are JSON objects:
//   {"n": N, "k": K, "seed": S, "neighbors": [[...], ...], "tables": [[...], ...]}
// Reals are written in shortest round-trip form, so reloading is bit-exact.

inline nlohmann::json to_json(const NkLandscape& land) {
  nlohmann::json j;
  j["n"] = land.n();
  j["k"] = land.k();
  j["seed"] = land.seed();
  j["neighbors"] = land.neighbors();
  j["tables"] = land.tables();
  return j;
}

inline std::string to_json_text(const NkLandscape& land) { return to_json(land).dump() + "\n"; }

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string("landscape: missing field '") + name + "'");
  return *it;
}

inline std::uint64_t unsigned_field(const nlohmann::json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw FormatError(std::string("landscape: field '") + name +
                      "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace detail

inline NkLandscape landscape_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("landscape: top level must be an object");
  const auto n = detail::unsigned_field(j, "n");
  const auto k = detail::unsigned_field(j, "k");
  const auto seed = detail::unsigned_field(j, "seed");
  if (n < 1) throw FormatError("landscape: field 'n' must be >= 1");
  if (k >= n) throw FormatError("landscape: field 'k' must be <= n-1");
  if (k + 1 >= 58) throw FormatError("landscape: field 'k' too large");

  const auto& nb = detail::field(j, "neighbors");
  const auto& tb = detail::field(j, "tables");
  if (!nb.is_array() || nb.size() != n) {
    throw FormatError("landscape: field 'neighbors' must be an array of n arrays");
  }
  if (!tb.is_array() || tb.size() != n) {
    throw FormatError("landscape: field 'tables' must be an array of n arrays");
  }
  std::vector<std::vector<std::size_t>> neighbors(n);
  std::vector<std::vector<double>> tables(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string where = "[" + std::to_string(i) + "]";
    if (!nb[i].is_array()) throw FormatError("landscape: field 'neighbors" + where + "' not an array");
    for (const auto& v : nb[i]) {
      if (!v.is_number_unsigned()) {
        throw FormatError("landscape: field 'neighbors" + where + "' holds a non-index value");
      }
      neighbors[i].push_back(v.get<std::size_t>());
    }
    if (!tb[i].is_array()) throw FormatError("landscape: field 'tables" + where + "' not an array");
    for (const auto& v : tb[i]) {
      if (!v.is_number()) {
        throw FormatError("landscape: field 'tables" + where + "' holds a non-numeric value");
      }
      tables[i].push_back(v.get<double>());
    }
  }
  try {
    return NkLandscape(n, k, seed, std::move(neighbors), std::move(tables));
  } catch (const FormatError& e) {
    throw FormatError(std::string("landscape: ") + e.what());
  }
}

inline void save(const NkLandscape& land, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open '" + path.string() + "' for writing");
  out << to_json_text(land);
  if (!out) throw ParameterError("failed writing '" + path.string() + "'");
}

inline NkLandscape load_landscape(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open landscape file '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("landscape: invalid JSON in '" + path.string() + "': " + e.what());
  }
  return landscape_from_json(j);
}

}  // namespace gcea

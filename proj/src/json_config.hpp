#ifndef UAVDET_SRC_JSON_CONFIG_HPP_
#define UAVDET_SRC_JSON_CONFIG_HPP_

#include <initializer_list>
#include <string>
#include <string_view>

#include <fmt/format.h>
#include <json.hpp>

#include "uavdet/error.hpp"
#include "uavdet/oracle_detector.hpp"
#include "uavdet/scene.hpp"

namespace uavdet::detail {

inline nlohmann::json parse_json_object(std::string_view text, std::string_view what) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("{}: invalid JSON: {}", what, e.what()));
  }
  if (!j.is_object()) throw ConfigError(fmt::format("{}: expected a JSON object", what));
  return j;
}

inline void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<std::string_view> known,
                                std::string_view what) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(fmt::format("{}: unknown key '{}'", what, key));
  }
}

inline double number_field(const nlohmann::json& j, const char* key, double fallback, std::string_view what) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(fmt::format("{}.{}: expected a number", what, key));
  return j[key].get<double>();
}

inline long long integer_field(const nlohmann::json& j, const char* key, long long fallback,
                               std::string_view what) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw ConfigError(fmt::format("{}.{}: expected an integer", what, key));
  return j[key].get<long long>();
}

inline IntRange range_field(const nlohmann::json& j, const char* key, IntRange fallback, std::string_view what) {
  if (!j.contains(key)) return fallback;
  const auto& v = j[key];
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    throw ConfigError(fmt::format("{}.{}: expected [min, max] integers", what, key));
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

inline SceneSpec scene_spec_from_json(const nlohmann::json& j, std::string_view what) {
  reject_unknown_keys(j, {"width", "height", "obstacles", "persons", "size", "background", "seed"}, what);
  SceneSpec s;
  s.width = static_cast<int>(integer_field(j, "width", s.width, what));
  s.height = static_cast<int>(integer_field(j, "height", s.height, what));
  s.obstacle_count = range_field(j, "obstacles", s.obstacle_count, what);
  s.person_count = range_field(j, "persons", s.person_count, what);
  s.size_range = range_field(j, "size", s.size_range, what);
  if (j.contains("background")) {
    const auto& b = j["background"];
    if (b == "flat") {
      s.background = Background::Flat;
    } else if (b == "two-tone") {
      s.background = Background::TwoTone;
    } else {
      throw ConfigError(fmt::format("{}.background: expected \"flat\" or \"two-tone\"", what));
    }
  }
  s.seed = static_cast<std::uint64_t>(integer_field(j, "seed", 0, what));
  return s;
}

inline NoiseModel noise_from_json(const nlohmann::json& j, std::string_view what) {
  reject_unknown_keys(j, {"jitter_sigma", "drop_rate", "spurious_rate", "offset_x", "offset_y",
                          "confidence_spread"},
                      what);
  NoiseModel n;
  n.jitter_sigma = number_field(j, "jitter_sigma", 0.0, what);
  n.drop_rate = number_field(j, "drop_rate", 0.0, what);
  n.spurious_rate = number_field(j, "spurious_rate", 0.0, what);
  n.offset_x = number_field(j, "offset_x", 0.0, what);
  n.offset_y = number_field(j, "offset_y", 0.0, what);
  n.confidence_law.spread = number_field(j, "confidence_spread", 0.05, what);
  try {
    validate(n);
  } catch (const ParameterError& e) {
    throw ConfigError(fmt::format("{}: {}", what, e.what()));
  }
  return n;
}

}  // namespace uavdet::detail

#endif  // UAVDET_SRC_JSON_CONFIG_HPP_

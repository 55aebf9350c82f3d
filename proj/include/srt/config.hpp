#pragma once

// JSON run configuration.
//
//   {
//     "n": 16, "gamma_m_db": 70, "beta": 0.1,
//     "rate_macro_overall": 3, "rate_small_overall": 3,
//     "rate_macro_secrecy": 1, "rate_small_secrecy": 1,
//     "links": {
//       "antenna_mu":  {"distance": 300, "alpha": 2.5, "fading_var": 1},
//       "antenna_su":  {...}, "antenna_eve": {...},
//       "sbs_mu": {...}, "sbs_su": {...}, "sbs_eve": {...}
//     }
//   }
//
// Every key is optional and falls back to the default geometry. Fields of the
// antenna_* links may be a number (shared by all antennas) or an array of n
// numbers. Unknown keys are rejected.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "srt/channel_model.hpp"
#include "srt/errors.hpp"

namespace srt {

struct ExperimentConfig {
  SystemConfig system;
  Topology topology = default_topology();

  std::size_t antennaCount() const { return topology.antennaCount(); }

  bool uniformAntennas() const {
    auto same = [](const std::vector<LinkSpec>& v) {
      for (const auto& l : v)
        if (!(l == v.front())) return false;
      return true;
    };
    return same(topology.antennaToMu) && same(topology.antennaToSu) && same(topology.antennaToEve);
  }

  // The same geometry with n antennas (antenna links must be uniform).
  Topology with_antennas(std::size_t n) const {
    if (n < 1) throw InvalidParameter("antenna count must be at least 1");
    if (!uniformAntennas())
      throw ConfigError("varying the antenna count requires identical antenna links in the config");
    Topology t = topology;
    t.antennaToMu.assign(n, topology.antennaToMu.front());
    t.antennaToSu.assign(n, topology.antennaToSu.front());
    t.antennaToEve.assign(n, topology.antennaToEve.front());
    return t;
  }

  void validate() const {
    system.validate();
    topology.validate();
  }
};

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!known.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

inline double number_at(const json& obj, const std::string& key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

// Length of any array-valued field of the antenna links, if present.
inline std::optional<std::size_t> antenna_array_length(const json& links) {
  std::optional<std::size_t> len;
  for (const char* name : {"antenna_mu", "antenna_su", "antenna_eve"}) {
    if (!links.contains(name) || !links.at(name).is_object()) continue;
    for (const auto& [_, v] : links.at(name).items()) {
      if (!v.is_array()) continue;
      if (len && *len != v.size()) throw ConfigError(std::string("links.") + name + ": array lengths disagree");
      len = v.size();
    }
  }
  return len;
}

inline std::vector<LinkSpec> antenna_links(const json& links, const std::string& name, std::size_t n,
                                           const LinkSpec& fallback) {
  std::vector<LinkSpec> out(n, fallback);
  if (!links.contains(name)) return out;
  const std::string where = "links." + name;
  const auto& obj = links.at(name);
  reject_unknown(obj, {"distance", "alpha", "fading_var"}, where);
  auto apply = [&](const char* key, double LinkSpec::*field) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (v.is_number()) {
      for (auto& l : out) l.*field = v.get<double>();
    } else if (v.is_array()) {
      if (v.size() != n) throw ConfigError(where + "." + key + ": expected " + std::to_string(n) + " entries");
      for (std::size_t i = 0; i < n; ++i) {
        if (!v[i].is_number()) throw ConfigError(where + "." + key + ": expected numbers");
        out[i].*field = v[i].get<double>();
      }
    } else {
      throw ConfigError(where + "." + key + ": expected a number or an array");
    }
  };
  apply("distance", &LinkSpec::distance);
  apply("alpha", &LinkSpec::pathLossExp);
  apply("fading_var", &LinkSpec::smallScaleVar);
  return out;
}

inline LinkSpec sbs_link(const json& links, const std::string& name, const LinkSpec& fallback) {
  if (!links.contains(name)) return fallback;
  const std::string where = "links." + name;
  const auto& obj = links.at(name);
  reject_unknown(obj, {"distance", "alpha", "fading_var"}, where);
  LinkSpec l = fallback;
  l.distance = number_at(obj, "distance", l.distance, where);
  l.pathLossExp = number_at(obj, "alpha", l.pathLossExp, where);
  l.smallScaleVar = number_at(obj, "fading_var", l.smallScaleVar, where);
  return l;
}

inline json link_json(const std::vector<LinkSpec>& v) {
  auto field = [&](double LinkSpec::*f) {
    bool same = true;
    for (const auto& l : v) same = same && l.*f == v.front().*f;
    if (same) return json(v.front().*f);
    json arr = json::array();
    for (const auto& l : v) arr.push_back(l.*f);
    return arr;
  };
  return json{{"distance", field(&LinkSpec::distance)},
              {"alpha", field(&LinkSpec::pathLossExp)},
              {"fading_var", field(&LinkSpec::smallScaleVar)}};
}

inline json link_json(const LinkSpec& l) {
  return json{{"distance", l.distance}, {"alpha", l.pathLossExp}, {"fading_var", l.smallScaleVar}};
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& root) {
  using detail::number_at;
  detail::reject_unknown(root,
                         {"n", "gamma_m_db", "beta", "rate_macro_overall", "rate_small_overall",
                          "rate_macro_secrecy", "rate_small_secrecy", "links"},
                         "config");
  const nlohmann::json links = root.contains("links") ? root.at("links") : nlohmann::json::object();
  detail::reject_unknown(links, {"antenna_mu", "antenna_su", "antenna_eve", "sbs_mu", "sbs_su", "sbs_eve"}, "links");

  const auto arrayLen = detail::antenna_array_length(links);
  std::size_t n = 16;
  if (root.contains("n")) {
    const auto& v = root.at("n");
    if (!v.is_number_integer() || v.get<long long>() < 1) throw ConfigError("config.n: expected a positive integer");
    n = v.get<std::size_t>();
    if (arrayLen && *arrayLen != n) throw ConfigError("config.n disagrees with the antenna link arrays");
  } else if (arrayLen) {
    n = *arrayLen;
  }

  const ExperimentConfig defaults;
  const Topology base = default_topology(1);
  ExperimentConfig cfg;
  cfg.system.gammaM_dB = number_at(root, "gamma_m_db", defaults.system.gammaM_dB, "config");
  cfg.system.smr = number_at(root, "beta", defaults.system.smr, "config");
  cfg.system.rateMacroOverall = number_at(root, "rate_macro_overall", defaults.system.rateMacroOverall, "config");
  cfg.system.rateSmallOverall = number_at(root, "rate_small_overall", defaults.system.rateSmallOverall, "config");
  cfg.system.rateMacroSecrecy = number_at(root, "rate_macro_secrecy", defaults.system.rateMacroSecrecy, "config");
  cfg.system.rateSmallSecrecy = number_at(root, "rate_small_secrecy", defaults.system.rateSmallSecrecy, "config");
  cfg.topology.antennaToMu = detail::antenna_links(links, "antenna_mu", n, base.antennaToMu.front());
  cfg.topology.antennaToSu = detail::antenna_links(links, "antenna_su", n, base.antennaToSu.front());
  cfg.topology.antennaToEve = detail::antenna_links(links, "antenna_eve", n, base.antennaToEve.front());
  cfg.topology.sbsToMu = detail::sbs_link(links, "sbs_mu", base.sbsToMu);
  cfg.topology.sbsToSu = detail::sbs_link(links, "sbs_su", base.sbsToSu);
  cfg.topology.sbsToEve = detail::sbs_link(links, "sbs_eve", base.sbsToEve);
  try {
    cfg.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(root);
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

// Fully resolved form; parse_config(to_json(c)) == c.
inline nlohmann::json to_json(const ExperimentConfig& c) {
  return nlohmann::json{
      {"n", c.antennaCount()},
      {"gamma_m_db", c.system.gammaM_dB},
      {"beta", c.system.smr},
      {"rate_macro_overall", c.system.rateMacroOverall},
      {"rate_small_overall", c.system.rateSmallOverall},
      {"rate_macro_secrecy", c.system.rateMacroSecrecy},
      {"rate_small_secrecy", c.system.rateSmallSecrecy},
      {"links",
       {{"antenna_mu", detail::link_json(c.topology.antennaToMu)},
        {"antenna_su", detail::link_json(c.topology.antennaToSu)},
        {"antenna_eve", detail::link_json(c.topology.antennaToEve)},
        {"sbs_mu", detail::link_json(c.topology.sbsToMu)},
        {"sbs_su", detail::link_json(c.topology.sbsToSu)},
        {"sbs_eve", detail::link_json(c.topology.sbsToEve)}}}};
}

}  // namespace srt

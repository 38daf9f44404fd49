#pragma once

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wreathcut/group.hpp"

namespace testutil {

inline wreathcut::GroupPtr c2_wr_z() {
  return wreathcut::GroupDescriptor::wreath(wreathcut::GroupDescriptor::cyclic(2),
                                            wreathcut::GroupDescriptor::integers());
}

inline wreathcut::GroupPtr z_wr_z() {
  return wreathcut::GroupDescriptor::wreath(wreathcut::GroupDescriptor::integers(),
                                            wreathcut::GroupDescriptor::integers());
}

/// Deterministic pseudo-random element: a word of `len` generators.
inline wreathcut::GroupElement random_word(const wreathcut::GroupDescriptor& g, std::mt19937& rng,
                                           int len) {
  auto gens = wreathcut::generators(g);
  std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
  wreathcut::GroupElement cur = wreathcut::identity(g);
  for (int i = 0; i < len; ++i) cur = wreathcut::mul(g, cur, gens[pick(rng)]);
  return cur;
}

/// Wreath element over Z with C2-style lamp values given as lit sites.
inline wreathcut::GroupElement lamps_at(const wreathcut::GroupDescriptor& g,
                                        const std::vector<long long>& sites, long long cursor) {
  using namespace wreathcut;
  WreathElement w;
  std::vector<long long> sorted = sites;
  std::sort(sorted.begin(), sorted.end());
  for (long long s : sorted) {
    w.lamps.emplace_back(GroupElement::from_int(s), make_int(*g.lamp, 1));
  }
  w.cursor = GroupElement::from_int(cursor);
  return GroupElement::from_wreath(std::make_shared<const WreathElement>(std::move(w)));
}

/// Wreath element over Z with arbitrary integer lamp values.
inline wreathcut::GroupElement lamps_valued(const wreathcut::GroupDescriptor& g,
                                            const std::vector<std::pair<long long, long long>>& lamps,
                                            long long cursor) {
  using namespace wreathcut;
  std::map<GroupElement, GroupElement> m;
  for (const auto& [site, value] : lamps) {
    m.emplace(GroupElement::from_int(site), make_int(*g.lamp, value));
  }
  WreathElement w;
  GroupElement lamp_id = identity(*g.lamp);
  for (const auto& [site, value] : m) {
    if (!(value == lamp_id)) w.lamps.emplace_back(site, value);
  }
  w.cursor = GroupElement::from_int(cursor);
  return GroupElement::from_wreath(std::make_shared<const WreathElement>(std::move(w)));
}

inline const std::map<std::string, std::string>& baselines() {
  static std::map<std::string, std::string> values = [] {
    std::map<std::string, std::string> out;
    std::ifstream in(WREATHCUT_BASELINES);
    if (!in) throw std::runtime_error("cannot open baselines file " WREATHCUT_BASELINES);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      out[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
  }();
  return values;
}

inline long long baseline_int(const std::string& key) {
  auto it = baselines().find(key);
  if (it == baselines().end()) throw std::runtime_error("missing baseline key: " + key);
  return std::stoll(it->second);
}

inline double baseline_double(const std::string& key) {
  auto it = baselines().find(key);
  if (it == baselines().end()) throw std::runtime_error("missing baseline key: " + key);
  return std::stod(it->second);
}

}  // namespace testutil

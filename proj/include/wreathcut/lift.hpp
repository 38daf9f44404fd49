#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wreathcut/cuts.hpp"
#include "wreathcut/group.hpp"
#include "wreathcut/rational.hpp"
#include "wreathcut/wreath.hpp"

namespace wreathcut {

/// Population data (supports or cursors) too close to the window boundary, or
/// not window members at all. Rejected outright so no separating cut can be
/// silently truncated away.
struct WindowMarginError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Lamp values prescribed outside a base cut B. Normalized: sites sorted,
/// identity values never stored, support disjoint from B.
struct ExternalConfig {
  std::vector<std::pair<GroupElement, GroupElement>> entries;

  friend bool operator==(const ExternalConfig& a, const ExternalConfig& b) {
    return a.entries == b.entries;
  }
  friend bool operator<(const ExternalConfig& a, const ExternalConfig& b) {
    return a.entries < b.entries;
  }
};

/// The cut E(B, f) on a wreath product: elements whose cursor lies in the base
/// cut B and whose lamps outside B equal the external config f.
struct LiftedCut {
  CutId base;
  ExternalConfig config;
};

/// Whether a base-group element lies in the cut named by `id`.
inline bool in_base_cut(const CutMeasure& m, const CutId& id, const GroupElement& site) {
  switch (id.kind) {
    case CutKind::ThresholdUp: return site.as_int() >= id.threshold;
    case CutKind::ThresholdDown: return site.as_int() <= id.threshold;
    case CutKind::HalfspaceUp: return site.as_vector().at(id.axis) >= id.threshold;
    case CutKind::HalfspaceDown: return site.as_vector().at(id.axis) <= id.threshold;
    case CutKind::Explicit: return explicit_member(m.cuts.at(id.index), site);
  }
  throw std::logic_error("in_base_cut: unknown cut kind");
}

/// Membership of a wreath element in a lifted cut, straight from the
/// definition (cursor in B, lamps restricted to the full complement of B equal
/// the config). Window-free; serves as the oracle for the enumeration route.
inline bool lifted_member(const CutMeasure& m, const LiftedCut& c, const GroupDescriptor& g,
                          const GroupElement& a) {
  if (g.kind != GroupKind::Wreath) throw DescriptorMismatch("lifted_member: not a wreath element");
  const WreathElement& w = a.as_wreath();
  if (!in_base_cut(m, c.base, w.cursor)) return false;
  size_t matched = 0;
  for (const auto& [site, value] : w.lamps) {
    if (in_base_cut(m, c.base, site)) continue;
    auto it = std::lower_bound(
        c.config.entries.begin(), c.config.entries.end(), site,
        [](const auto& entry, const GroupElement& s) { return entry.first < s; });
    if (it == c.config.entries.end() || !(it->first == site) || !(it->second == value)) return false;
    ++matched;
  }
  return matched == c.config.entries.size();
}

/// The closed-form side of the lifted distance: measure of base cuts
/// separating supp(a^{-1}b) together with the two cursors.
inline Rat lifted_separation(const CutMeasure& m, const GroupDescriptor& g, const GroupElement& a,
                             const GroupElement& b) {
  if (!m.orientation_closed) {
    throw std::invalid_argument("lifted_separation: measure must be complement-closed");
  }
  std::vector<GroupElement> S = support_diff(g, a, b);
  S.push_back(a.as_wreath().cursor);
  S.push_back(b.as_wreath().cursor);
  return separation_measure(m, S);
}

// ---------------------------------------------------------------------------
// Enumeration over a finite population
// ---------------------------------------------------------------------------

struct LiftedEnumeration {
  GroupPtr group;
  CutMeasure measure;
  WindowEnumeration base;                       // window + base cut traces
  std::vector<LiftedCut> cuts;                  // deterministic order
  std::vector<Rat> weights;                     // parallel to cuts
  std::vector<uint32_t> base_index;             // cuts[i] lifts base.cuts[base_index[i]]
  std::vector<GroupElement> population;         // sorted, deduplicated
  std::vector<std::vector<uint32_t>> member_rows;  // per population element, sorted cut indices
};

constexpr size_t kDefaultLiftBudget = 50'000'000;

namespace detail {

/// Index of `x` in the sorted window, or npos.
inline size_t window_index(const std::vector<GroupElement>& window, const GroupElement& x) {
  auto it = std::lower_bound(window.begin(), window.end(), x);
  if (it == window.end() || !(*it == x)) return static_cast<size_t>(-1);
  return static_cast<size_t>(it - window.begin());
}

/// Margin rule: every site must be a window member and, for the coordinate
/// families, at distance >= 1 from the window's extremes on every axis.
inline size_t checked_window_index(const CutMeasure& m, const std::vector<GroupElement>& window,
                                   const GroupElement& site) {
  size_t idx = window_index(window, site);
  if (idx == static_cast<size_t>(-1)) {
    throw WindowMarginError("enumerate_lifted: population site outside window");
  }
  auto check_axis = [](long long v, long long lo, long long hi) {
    if (v <= lo || v >= hi) {
      throw WindowMarginError("enumerate_lifted: population site on window boundary");
    }
  };
  if (m.family == CutFamilyKind::ThresholdZ) {
    check_axis(site.as_int(), window.front().as_int(), window.back().as_int());
  } else if (m.family == CutFamilyKind::HalfspaceZd) {
    for (int axis = 0; axis < m.dim; ++axis) {
      long long lo = window.front().as_vector().at(axis), hi = lo;
      for (const auto& w : window) {
        lo = std::min(lo, w.as_vector().at(axis));
        hi = std::max(hi, w.as_vector().at(axis));
      }
      check_axis(site.as_vector().at(axis), lo, hi);
    }
  }
  return idx;
}

}  // namespace detail

/// Materializes every lifted cut that separates at least one population pair,
/// with membership rows for exact distance queries. Weight of E(B, f) equals
/// the (aggregated) weight of its base cut class.
inline LiftedEnumeration enumerate_lifted(const CutMeasure& m, GroupPtr g,
                                          std::vector<GroupElement> population,
                                          std::vector<GroupElement> window,
                                          size_t budget = kDefaultLiftBudget) {
  if (!g || g->kind != GroupKind::Wreath) {
    throw DescriptorMismatch("enumerate_lifted: descriptor is not a wreath product");
  }
  LiftedEnumeration out;
  out.group = g;
  out.measure = m;
  out.base = enumerate_window(m, std::move(window));

  std::sort(population.begin(), population.end());
  population.erase(std::unique(population.begin(), population.end()), population.end());
  out.population = std::move(population);

  const size_t npop = out.population.size();
  const auto& wcuts = out.base.cuts;

  // Candidate cuts keyed by (base cut, external config); values are
  // provisional ids in discovery order, remapped after pruning.
  std::map<std::pair<uint32_t, ExternalConfig>, uint32_t> candidates;
  std::vector<uint32_t> member_count;
  std::vector<std::vector<uint32_t>> rows(npop);

  for (size_t pi = 0; pi < npop; ++pi) {
    const WreathElement& w = out.population[pi].as_wreath();
    size_t cursor_idx = detail::checked_window_index(m, out.base.window, w.cursor);
    std::vector<std::pair<size_t, const GroupElement*>> lamp_sites;
    lamp_sites.reserve(w.lamps.size());
    for (const auto& [site, value] : w.lamps) {
      lamp_sites.emplace_back(detail::checked_window_index(m, out.base.window, site), &value);
    }
    for (uint32_t bi = 0; bi < wcuts.size(); ++bi) {
      const auto& mask = wcuts[bi].mask;
      if (!mask[cursor_idx]) continue;
      ExternalConfig config;
      for (size_t li = 0; li < lamp_sites.size(); ++li) {
        if (mask[lamp_sites[li].first]) continue;
        config.entries.emplace_back(w.lamps[li].first, *lamp_sites[li].second);
      }
      auto [it, fresh] =
          candidates.try_emplace({bi, std::move(config)}, static_cast<uint32_t>(candidates.size()));
      if (fresh) {
        if (candidates.size() > budget) throw BudgetExceeded("enumerate_lifted: cut budget exceeded");
        member_count.push_back(0);
      }
      rows[pi].push_back(it->second);
      ++member_count[it->second];
    }
  }

  // Keep only cuts that separate some pair: strictly between 0 and |pop|
  // members. Final ids follow the map's (base id order, config order).
  std::vector<uint32_t> remap(member_count.size(), UINT32_MAX);
  for (const auto& [key, provisional] : candidates) {
    if (member_count[provisional] == 0 || member_count[provisional] == npop) continue;
    remap[provisional] = static_cast<uint32_t>(out.cuts.size());
    out.cuts.push_back(LiftedCut{wcuts[key.first].id, key.second});
    out.weights.push_back(wcuts[key.first].weight);
    out.base_index.push_back(key.first);
  }
  out.member_rows.resize(npop);
  for (size_t pi = 0; pi < npop; ++pi) {
    auto& row = out.member_rows[pi];
    row.reserve(rows[pi].size());
    for (uint32_t provisional : rows[pi]) {
      if (remap[provisional] != UINT32_MAX) row.push_back(remap[provisional]);
    }
    std::sort(row.begin(), row.end());
  }
  return out;
}

inline size_t population_index(const LiftedEnumeration& en, const GroupElement& a) {
  auto it = std::lower_bound(en.population.begin(), en.population.end(), a);
  if (it == en.population.end() || !(*it == a)) {
    throw std::invalid_argument("lifted enumeration: element outside population");
  }
  return static_cast<size_t>(it - en.population.begin());
}

/// Exact lifted distance between two population members: total weight of
/// enumerated cuts containing exactly one of them.
inline Rat lifted_distance_exact(const LiftedEnumeration& en, size_t ia, size_t ib) {
  const auto& ra = en.member_rows.at(ia);
  const auto& rb = en.member_rows.at(ib);
  Rat total(0);
  size_t i = 0, j = 0;
  while (i < ra.size() || j < rb.size()) {
    if (j == rb.size() || (i < ra.size() && ra[i] < rb[j])) {
      total += en.weights[ra[i++]];
    } else if (i == ra.size() || rb[j] < ra[i]) {
      total += en.weights[rb[j++]];
    } else {
      ++i;
      ++j;
    }
  }
  return total;
}

inline Rat lifted_distance_exact(const LiftedEnumeration& en, const GroupElement& a,
                                 const GroupElement& b) {
  return lifted_distance_exact(en, population_index(en, a), population_index(en, b));
}

/// Window-free exact lifted distance for the complement-closed threshold
/// family on Z. Walks every threshold in the data's span and counts, per the
/// membership case analysis, how many lifted cuts over that threshold separate
/// the pair: both cursors inside B contribute 2 when their outside configs
/// differ, a split cursor pair contributes exactly 1 (the outside element lies
/// in no cut over B), anything else 0. Second route against the enumeration.
inline Rat lifted_distance_direct(const CutMeasure& m, const GroupDescriptor& g,
                                  const GroupElement& a, const GroupElement& b) {
  if (m.family != CutFamilyKind::ThresholdZ || !m.orientation_closed) {
    throw std::invalid_argument("lifted_distance_direct: needs a closed ThresholdZ measure");
  }
  if (g.kind != GroupKind::Wreath || g.base->kind != GroupKind::Integers) {
    throw DescriptorMismatch("lifted_distance_direct: needs a wreath product over Z");
  }
  std::vector<GroupElement> diff = support_diff(g, a, b);
  long long x = a.as_wreath().cursor.as_int();
  long long y = b.as_wreath().cursor.as_int();
  if (diff.empty() && x == y) return Rat(0);

  bool have_diff = !diff.empty();
  long long min_diff = have_diff ? diff.front().as_int() : 0;
  long long max_diff = have_diff ? diff.back().as_int() : 0;
  long long lo = std::min(x, y), hi = std::max(x, y);
  if (have_diff) {
    lo = std::min(lo, min_diff);
    hi = std::max(hi, max_diff);
  }

  long long count = 0;
  for (long long t = lo - 1; t <= hi + 1; ++t) {
    // Upward cut {n >= t}: lamp prefixes below t decide the matching configs.
    bool prefix_differs = have_diff && min_diff < t;
    bool ax = x >= t, bx = y >= t;
    if (ax && bx) {
      count += prefix_differs ? 2 : 0;
    } else if (ax != bx) {
      count += 1;
    }
    // Downward cut {n <= t}: suffixes above t decide.
    bool suffix_differs = have_diff && max_diff > t;
    bool ay = x <= t, by = y <= t;
    if (ay && by) {
      count += suffix_differs ? 2 : 0;
    } else if (ay != by) {
      count += 1;
    }
  }
  return m.uniform_weight * Rat(count);
}

}  // namespace wreathcut

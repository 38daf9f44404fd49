#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <stdexcept>
#include <vector>

#include "wreathcut/group.hpp"
#include "wreathcut/rational.hpp"

namespace wreathcut {

// ---------------------------------------------------------------------------
// Cut identities
// ---------------------------------------------------------------------------

/// ThresholdUp t is the set {n >= t} in Z; ThresholdDown t is {n <= t}.
/// HalfspaceUp/Down are the per-axis analogues {v : v_axis >= t} in Z^d.
/// Explicit refers into a CutMeasure's cut list by index.
enum class CutKind : uint8_t { ThresholdUp, ThresholdDown, HalfspaceUp, HalfspaceDown, Explicit };

struct CutId {
  CutKind kind = CutKind::ThresholdUp;
  int axis = 0;
  long long threshold = 0;
  int index = 0;

  friend auto operator<=>(const CutId&, const CutId&) = default;
};

/// Explicitly listed cut: a finite member set within the ambient group, or
/// the complement of one when `complemented` is set.
struct ExplicitCut {
  std::vector<GroupElement> members;  // sorted, distinct
  bool complemented = false;
  Rat weight{1};
};

inline bool explicit_member(const ExplicitCut& c, const GroupElement& x) {
  bool in = std::binary_search(c.members.begin(), c.members.end(), x);
  return c.complemented ? !in : in;
}

// ---------------------------------------------------------------------------
// Cut measures
// ---------------------------------------------------------------------------

enum class CutFamilyKind : uint8_t { ThresholdZ, HalfspaceZd, Explicit };

/// A weighted family of cuts on a base group. The implicit kinds (ThresholdZ,
/// HalfspaceZd) are never materialized: separation queries use closed forms
/// and only enumerate_window builds finite traces. `orientation_closed`
/// records whether complements are part of the family; for implicit kinds a
/// closed family carries every cut in both directions at `uniform_weight`.
struct CutMeasure {
  CutFamilyKind family = CutFamilyKind::ThresholdZ;
  int dim = 1;  // HalfspaceZd only
  bool orientation_closed = false;
  Rat uniform_weight{1};
  std::vector<ExplicitCut> cuts;  // Explicit only

  static CutMeasure threshold_z(Rat w = Rat(1), bool closed = false) {
    CutMeasure m;
    m.family = CutFamilyKind::ThresholdZ;
    m.uniform_weight = w;
    m.orientation_closed = closed;
    if (w < Rat(0)) throw std::invalid_argument("threshold_z: negative weight");
    return m;
  }

  static CutMeasure halfspace_zd(int d, Rat w = Rat(1), bool closed = false) {
    if (d < 1) throw std::invalid_argument("halfspace_zd: dimension must be >= 1");
    if (w < Rat(0)) throw std::invalid_argument("halfspace_zd: negative weight");
    CutMeasure m;
    m.family = CutFamilyKind::HalfspaceZd;
    m.dim = d;
    m.uniform_weight = w;
    m.orientation_closed = closed;
    return m;
  }

  static CutMeasure explicit_family(std::vector<ExplicitCut> cuts, bool closed = false) {
    CutMeasure m;
    m.family = CutFamilyKind::Explicit;
    m.orientation_closed = closed;
    for (auto& c : cuts) {
      if (c.weight < Rat(0)) throw std::invalid_argument("explicit_family: negative weight");
      std::sort(c.members.begin(), c.members.end());
      c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
    }
    m.cuts = std::move(cuts);
    return m;
  }
};

namespace detail {

inline std::pair<long long, long long> int_range(const std::vector<GroupElement>& S) {
  long long lo = S.front().as_int(), hi = lo;
  for (const auto& x : S) {
    long long v = x.as_int();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

}  // namespace detail

/// Total weight of cuts separating S (meeting both S and its complement).
/// Closed forms: ThresholdZ gives max(S) − min(S) per orientation; HalfspaceZd
/// sums the per-axis spans. Explicit families are scanned directly.
inline Rat separation_measure(const CutMeasure& m, const std::vector<GroupElement>& S) {
  if (S.empty()) throw std::invalid_argument("separation_measure: empty set");
  Rat factor = m.orientation_closed ? Rat(2) : Rat(1);
  switch (m.family) {
    case CutFamilyKind::ThresholdZ: {
      auto [lo, hi] = detail::int_range(S);
      return m.uniform_weight * factor * Rat(hi - lo);
    }
    case CutFamilyKind::HalfspaceZd: {
      long long span = 0;
      for (int axis = 0; axis < m.dim; ++axis) {
        long long lo = S.front().as_vector().at(axis), hi = lo;
        for (const auto& x : S) {
          long long v = x.as_vector().at(axis);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        span += hi - lo;
      }
      return m.uniform_weight * factor * Rat(span);
    }
    case CutFamilyKind::Explicit: {
      Rat total(0);
      for (const auto& c : m.cuts) {
        bool seen_in = false, seen_out = false;
        for (const auto& x : S) {
          (explicit_member(c, x) ? seen_in : seen_out) = true;
          if (seen_in && seen_out) break;
        }
        if (seen_in && seen_out) total += c.weight;
      }
      return total;
    }
  }
  throw std::logic_error("separation_measure: unknown family");
}

inline Rat cut_pseudometric(const CutMeasure& m, const GroupElement& x, const GroupElement& y) {
  if (x == y) return Rat(0);
  return separation_measure(m, {x, y});
}

/// New measure mu(A) = rho(A) + rho(complement of A) over the family extended
/// by all complements. The induced pseudometric lies within a factor of 2 of
/// the original. For implicit families: closing an open family keeps the
/// uniform weight (the complements had weight 0); closing again doubles it.
inline CutMeasure complement_close(const CutMeasure& m) {
  CutMeasure out = m;
  if (m.family != CutFamilyKind::Explicit) {
    if (m.orientation_closed) {
      out.uniform_weight *= 2;
    } else {
      out.orientation_closed = true;
    }
    return out;
  }
  using Key = std::pair<std::vector<GroupElement>, bool>;
  std::map<Key, Rat> rho;
  for (const auto& c : m.cuts) rho[{c.members, c.complemented}] += c.weight;
  std::map<Key, Rat> mu;
  for (const auto& [key, w] : rho) {
    mu[key] += w;
    mu[{key.first, !key.second}] += w;
  }
  out.cuts.clear();
  for (const auto& [key, w] : mu) {
    out.cuts.push_back(ExplicitCut{key.first, key.second, w});
  }
  out.orientation_closed = true;
  return out;
}

// ---------------------------------------------------------------------------
// Window enumeration
// ---------------------------------------------------------------------------

/// One cut restricted to a window: representative id, membership mask over
/// the (sorted) window, and the total weight of all cuts sharing this trace.
struct WindowCut {
  CutId id;
  std::vector<char> mask;
  Rat weight;
};

struct WindowEnumeration {
  std::vector<GroupElement> window;  // sorted, deduplicated
  std::vector<WindowCut> cuts;       // sorted by id; proper, pairwise-distinct masks
};

namespace detail {

inline bool proper_mask(const std::vector<char>& mask) {
  bool any = false, all = true;
  for (char c : mask) {
    any |= (c != 0);
    all &= (c != 0);
  }
  return any && !all;
}

/// Emits the up/down threshold classes along one integer coordinate. Between
/// consecutive distinct values v < v' there are v' − v integer thresholds with
/// the same trace; they aggregate into one entry whose representative id is
/// the smallest threshold in the class.
template <class Coord>
inline void emit_threshold_classes(const std::vector<GroupElement>& window, Coord coord,
                                   CutKind up_kind, CutKind down_kind, int axis, Rat w,
                                   bool closed, std::vector<WindowCut>& out) {
  std::vector<long long> values;
  values.reserve(window.size());
  for (const auto& x : window) values.push_back(coord(x));
  std::vector<long long> distinct = values;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (size_t i = 1; i < distinct.size(); ++i) {
    Rat class_weight = w * Rat(distinct[i] - distinct[i - 1]);
    WindowCut up;
    up.id = CutId{up_kind, axis, distinct[i - 1] + 1, 0};
    up.weight = class_weight;
    up.mask.reserve(values.size());
    for (long long v : values) up.mask.push_back(v >= distinct[i] ? 1 : 0);
    out.push_back(std::move(up));
    if (closed) {
      WindowCut down;
      down.id = CutId{down_kind, axis, distinct[i - 1], 0};
      down.weight = class_weight;
      down.mask.reserve(values.size());
      for (long long v : values) down.mask.push_back(v <= distinct[i - 1] ? 1 : 0);
      out.push_back(std::move(down));
    }
  }
}

}  // namespace detail

/// Materializes every cut with a proper trace on the window, one entry per
/// distinct trace with aggregated weight, deterministically ordered by id.
inline WindowEnumeration enumerate_window(const CutMeasure& m, std::vector<GroupElement> window) {
  if (window.empty()) throw std::invalid_argument("enumerate_window: empty window");
  std::sort(window.begin(), window.end());
  window.erase(std::unique(window.begin(), window.end()), window.end());

  std::vector<WindowCut> raw;
  switch (m.family) {
    case CutFamilyKind::ThresholdZ:
      detail::emit_threshold_classes(
          window, [](const GroupElement& x) { return x.as_int(); }, CutKind::ThresholdUp,
          CutKind::ThresholdDown, 0, m.uniform_weight, m.orientation_closed, raw);
      break;
    case CutFamilyKind::HalfspaceZd:
      for (int axis = 0; axis < m.dim; ++axis) {
        detail::emit_threshold_classes(
            window, [axis](const GroupElement& x) { return x.as_vector().at(axis); },
            CutKind::HalfspaceUp, CutKind::HalfspaceDown, axis, m.uniform_weight,
            m.orientation_closed, raw);
      }
      break;
    case CutFamilyKind::Explicit:
      for (size_t i = 0; i < m.cuts.size(); ++i) {
        WindowCut wc;
        wc.id = CutId{CutKind::Explicit, 0, 0, static_cast<int>(i)};
        wc.weight = m.cuts[i].weight;
        wc.mask.reserve(window.size());
        for (const auto& x : window) wc.mask.push_back(explicit_member(m.cuts[i], x) ? 1 : 0);
        raw.push_back(std::move(wc));
      }
      break;
  }

  // Merge identical traces (possible across axes or explicit duplicates):
  // weights add, the smallest id represents the class.
  std::map<std::vector<char>, std::pair<CutId, Rat>> by_mask;
  for (auto& wc : raw) {
    if (!detail::proper_mask(wc.mask)) continue;
    auto [it, fresh] = by_mask.try_emplace(std::move(wc.mask), wc.id, wc.weight);
    if (!fresh) {
      it->second.first = std::min(it->second.first, wc.id);
      it->second.second += wc.weight;
    }
  }

  WindowEnumeration out;
  out.window = std::move(window);
  out.cuts.reserve(by_mask.size());
  for (const auto& [mask, id_weight] : by_mask) {
    out.cuts.push_back(WindowCut{id_weight.first, mask, id_weight.second});
  }
  std::sort(out.cuts.begin(), out.cuts.end(),
            [](const WindowCut& a, const WindowCut& b) { return a.id < b.id; });
  return out;
}

}  // namespace wreathcut

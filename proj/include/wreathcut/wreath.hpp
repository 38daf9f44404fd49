#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wreathcut/group.hpp"

namespace wreathcut {

inline GroupElement wreath_mul(const GroupDescriptor& g, const GroupElement& a,
                               const GroupElement& b) {
  if (g.kind != GroupKind::Wreath) throw DescriptorMismatch("wreath_mul: not a wreath descriptor");
  return mul(g, a, b);
}

inline GroupElement wreath_inv(const GroupDescriptor& g, const GroupElement& a) {
  if (g.kind != GroupKind::Wreath) throw DescriptorMismatch("wreath_inv: not a wreath descriptor");
  return inv(g, a);
}

/// Sites where the lamp configurations of `a` and `b` differ, i.e. the support
/// of a^{-1} b's lamp part. Sorted merge over the two normalized lamp lists.
inline std::vector<GroupElement> support_diff(const GroupDescriptor& g, const GroupElement& a,
                                              const GroupElement& b) {
  if (g.kind != GroupKind::Wreath) throw DescriptorMismatch("support_diff: not a wreath descriptor");
  const auto& la = a.as_wreath().lamps;
  const auto& lb = b.as_wreath().lamps;
  std::vector<GroupElement> out;
  size_t i = 0, j = 0;
  while (i < la.size() || j < lb.size()) {
    if (j == lb.size() || (i < la.size() && la[i].first < lb[j].first)) {
      out.push_back(la[i++].first);
    } else if (i == la.size() || lb[j].first < la[i].first) {
      out.push_back(lb[j++].first);
    } else {
      if (!(la[i].second == lb[j].second)) out.push_back(la[i].first);
      ++i;
      ++j;
    }
  }
  return out;
}

/// Word distance in any supported group: closed form where one exists,
/// recursive lamplighter length for wreath products.
inline long long base_dist(const GroupDescriptor& g, const GroupElement& a, const GroupElement& b);

// ---------------------------------------------------------------------------
// Travelling-salesman tours over the base group
// ---------------------------------------------------------------------------

/// Shortest walk start -> (visit every point) -> end, scored by the base
/// group's word metric.
struct TspInstance {
  GroupPtr space;
  GroupElement start;
  GroupElement end;
  std::vector<GroupElement> points;  // deduplicated internally
};

constexpr size_t kMaxTspPoints = 16;

namespace detail {

inline std::vector<GroupElement> dedup_points(const TspInstance& inst) {
  std::vector<GroupElement> pts = inst.points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace detail

/// Exact tour length by Held-Karp dynamic programming over subsets.
/// `order_out`, if given, receives the visiting order; among optimal tours the
/// lexicographically smallest point sequence is chosen.
inline long long tsp_tour_dp(const TspInstance& inst,
                             std::vector<GroupElement>* order_out = nullptr) {
  const GroupDescriptor& g = *inst.space;
  std::vector<GroupElement> pts = detail::dedup_points(inst);
  size_t n = pts.size();
  if (n > kMaxTspPoints) throw std::invalid_argument("tsp_tour_dp: too many points");
  if (order_out) order_out->clear();
  if (n == 0) return base_dist(g, inst.start, inst.end);

  std::vector<long long> to_end(n);
  std::vector<std::vector<long long>> d(n, std::vector<long long>(n));
  for (size_t i = 0; i < n; ++i) {
    to_end[i] = base_dist(g, pts[i], inst.end);
    for (size_t j = 0; j < n; ++j) d[i][j] = base_dist(g, pts[i], pts[j]);
  }

  // rest[mask][i]: cheapest completion when standing at pts[i] with `mask`
  // already visited (i in mask). Filled in decreasing order of mask size.
  const long long inf = std::numeric_limits<long long>::max() / 4;
  size_t full = (size_t{1} << n) - 1;
  std::vector<std::vector<long long>> rest(full + 1, std::vector<long long>(n, inf));
  std::vector<size_t> masks(full + 1);
  for (size_t m = 0; m <= full; ++m) masks[m] = m;
  std::sort(masks.begin(), masks.end(), [](size_t a, size_t b) {
    return __builtin_popcountll(a) > __builtin_popcountll(b);
  });
  for (size_t mask : masks) {
    for (size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      if (mask == full) {
        rest[mask][i] = to_end[i];
        continue;
      }
      long long best = inf;
      for (size_t j = 0; j < n; ++j) {
        if (mask >> j & 1) continue;
        best = std::min(best, d[i][j] + rest[mask | (size_t{1} << j)][j]);
      }
      rest[mask][i] = best;
    }
  }

  long long total = inf;
  for (size_t i = 0; i < n; ++i) {
    total = std::min(total, base_dist(g, inst.start, pts[i]) + rest[size_t{1} << i][i]);
  }

  if (order_out) {
    // Walk the table forward, always taking the smallest-index (hence
    // lexicographically smallest, since pts is sorted) optimal next point.
    size_t mask = 0;
    long long remaining = total;
    GroupElement cur = inst.start;
    while (mask != full) {
      for (size_t j = 0; j < n; ++j) {
        if (mask >> j & 1) continue;
        long long step = base_dist(g, cur, pts[j]);
        if (step + rest[mask | (size_t{1} << j)][j] == remaining) {
          order_out->push_back(pts[j]);
          remaining -= step;
          cur = pts[j];
          mask |= size_t{1} << j;
          break;
        }
      }
    }
  }
  return total;
}

/// Closed-form tour length over the integer line: sweep to one extreme first,
/// then to the other, whichever orientation is cheaper.
inline long long tsp_tour_sweep_z(const TspInstance& inst) {
  if (inst.space->kind != GroupKind::Integers) {
    throw DescriptorMismatch("tsp_tour_sweep_z: base group is not the integers");
  }
  long long s = inst.start.as_int();
  long long t = inst.end.as_int();
  long long lo = std::min(s, t), hi = std::max(s, t);
  for (const auto& p : inst.points) {
    lo = std::min(lo, p.as_int());
    hi = std::max(hi, p.as_int());
  }
  long long left_first = (s - lo) + (hi - lo) + (hi - t);
  long long right_first = (hi - s) + (hi - lo) + (t - lo);
  return std::min(left_first, right_first);
}

/// Exact tour length; dispatches to the integer-line closed form when it
/// applies and to subset DP otherwise.
inline long long tsp_tour(const TspInstance& inst) {
  if (inst.space->kind == GroupKind::Integers) return tsp_tour_sweep_z(inst);
  return tsp_tour_dp(inst);
}

// ---------------------------------------------------------------------------
// Lamplighter word length
// ---------------------------------------------------------------------------

/// Word distance between two wreath elements under the standard generators:
/// an optimal cursor tour covering every differing site, plus the lamp-group
/// cost of fixing each such site. Exact for base groups where the cursor tour
/// is exact (always, via DP) as long as the differing-site count stays within
/// the DP's subset limit.
inline long long lamplighter_length(const GroupDescriptor& g, const GroupElement& a,
                                    const GroupElement& b) {
  if (g.kind != GroupKind::Wreath) throw DescriptorMismatch("lamplighter_length: not a wreath descriptor");
  const WreathElement& wa = a.as_wreath();
  const WreathElement& wb = b.as_wreath();
  std::vector<GroupElement> sites = support_diff(g, a, b);
  TspInstance inst{g.base, wa.cursor, wb.cursor, sites};
  long long tour = tsp_tour(inst);
  long long lamp_cost = 0;
  for (const auto& z : sites) {
    lamp_cost += base_dist(*g.lamp, lamp_at(g, wa, z), lamp_at(g, wb, z));
  }
  return tour + lamp_cost;
}

inline long long base_dist(const GroupDescriptor& g, const GroupElement& a, const GroupElement& b) {
  if (g.kind == GroupKind::Wreath) return lamplighter_length(g, a, b);
  return dist_closed(g, a, b);
}

}  // namespace wreathcut

#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "wreathcut/cuts.hpp"
#include "wreathcut/embed.hpp"
#include "wreathcut/group.hpp"
#include "wreathcut/lift.hpp"
#include "wreathcut/rational.hpp"

namespace wreathcut {

/// A coordinate's image under a group action left the finite window. Actions
/// are partial by design: aborting beats silently truncating, which would
/// fake results.
struct WindowEscape : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Action context
// ---------------------------------------------------------------------------

/// Finite-window stage for the coordinate actions: a wreath product over Z,
/// the closed uniform threshold measure, the window interval, and the block
/// weights. The cut family here is the per-threshold (unaggregated) one:
/// upward cuts {n >= t} for t in (lo, hi], downward {n <= t} for t in [lo, hi).
struct ActionContext {
  GroupPtr group;
  CutMeasure measure;
  long long lo = 0;
  long long hi = 0;
  EmbeddingConfig cfg;
};

inline ActionContext make_action_context(GroupPtr g, const CutMeasure& m, long long lo,
                                         long long hi, EmbeddingConfig cfg = EmbeddingConfig()) {
  if (!g || g->kind != GroupKind::Wreath || g->base->kind != GroupKind::Integers) {
    throw DescriptorMismatch("action context: needs a wreath product over Z");
  }
  if (m.family != CutFamilyKind::ThresholdZ || !m.orientation_closed) {
    throw std::invalid_argument("action context: needs a closed ThresholdZ measure");
  }
  if (!(lo < 0 && 0 < hi)) {
    throw std::invalid_argument("action context: window must strictly contain 0");
  }
  return ActionContext{std::move(g), m, lo, hi, cfg};
}

namespace detail {

inline void check_site_in_window(const ActionContext& ctx, long long z, const char* who) {
  if (z < ctx.lo || z > ctx.hi) throw WindowEscape(std::string(who) + ": site left the window");
}

/// Valid threshold range per orientation (cuts with a nonempty proper
/// intersection with the window interval).
inline bool threshold_in_window(const ActionContext& ctx, CutKind kind, long long t) {
  if (kind == CutKind::ThresholdUp) return ctx.lo < t && t <= ctx.hi;
  return ctx.lo <= t && t < ctx.hi;  // ThresholdDown
}

inline bool cursor_in_threshold(CutKind kind, long long t, long long cursor) {
  return kind == CutKind::ThresholdUp ? cursor >= t : cursor <= t;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Centered embedding coordinates
// ---------------------------------------------------------------------------

/// Psi relative to the identity element: psi_centered(a) = Psi(a) − Psi(e),
/// materialized directly (supports only, finitely many F-block terms). The
/// cocycle identity is exact for the centered map; the uncentered window-
/// complete map differs from it by the constant vector Psi(e).
inline SparseVector psi_centered(const ActionContext& ctx, const GroupElement& a) {
  const GroupDescriptor& g = *ctx.group;
  const WreathElement& w = a.as_wreath();
  long long cursor = w.cursor.as_int();
  detail::check_site_in_window(ctx, cursor, "psi_centered cursor");

  SparseVector out;
  Rat half_c1 = ctx.cfg.c1() / Rat(2);
  GroupElement lamp_id = identity(*g.lamp);
  for (const auto& [site, value] : w.lamps) {
    detail::check_site_in_window(ctx, site.as_int(), "psi_centered lamp");
    out.add(LambdaCoord{site, value}, half_c1);
    out.add(LambdaCoord{site, lamp_id}, -half_c1);
  }

  Rat wc2 = ctx.cfg.c2() * ctx.measure.uniform_weight;
  auto add_cuts = [&](CutKind kind, long long t_lo, long long t_hi) {
    for (long long t = t_lo; t <= t_hi; ++t) {
      bool has_a = detail::cursor_in_threshold(kind, t, cursor);
      bool has_e = detail::cursor_in_threshold(kind, t, 0);
      if (!has_a && !has_e) continue;
      ExternalConfig config;  // a's lamps outside the cut
      for (const auto& [site, value] : w.lamps) {
        if (!detail::cursor_in_threshold(kind, t, site.as_int())) {
          config.entries.emplace_back(site, value);
        }
      }
      CutId id{kind, 0, t, 0};
      if (config.entries.empty()) {
        if (has_a != has_e) out.add(FCoord{id, config}, has_a ? wc2 : -wc2);
      } else {
        if (has_a) out.add(FCoord{id, config}, wc2);
        if (has_e) out.add(FCoord{id, ExternalConfig{}}, -wc2);
      }
    }
  };
  add_cuts(CutKind::ThresholdUp, ctx.lo + 1, ctx.hi);
  add_cuts(CutKind::ThresholdDown, ctx.lo, ctx.hi - 1);
  return out;
}

// ---------------------------------------------------------------------------
// The theta action
// ---------------------------------------------------------------------------

/// Image of a lifted threshold cut under left multiplication by the actor
/// (f, x): E(B, h) -> E(xB, f|_{(xB)^c} · T_x h). Throws WindowEscape if the
/// translated cut or any config site leaves the window.
inline LiftedCut act_on_cut(const ActionContext& ctx, const GroupElement& actor,
                            const LiftedCut& c) {
  const GroupDescriptor& g = *ctx.group;
  const WreathElement& wa = actor.as_wreath();
  long long x = wa.cursor.as_int();
  if (c.base.kind != CutKind::ThresholdUp && c.base.kind != CutKind::ThresholdDown) {
    throw std::invalid_argument("act_on_cut: only threshold cuts act here");
  }
  LiftedCut out;
  out.base = CutId{c.base.kind, 0, c.base.threshold + x, 0};
  if (!detail::threshold_in_window(ctx, out.base.kind, out.base.threshold)) {
    throw WindowEscape("act_on_cut: translated cut left the window");
  }
  // Pointwise product actor-lamps * shifted config, restricted to the
  // translated cut's complement.
  std::map<GroupElement, GroupElement> merged;
  for (const auto& [site, value] : c.config.entries) {
    long long moved = site.as_int() + x;
    detail::check_site_in_window(ctx, moved, "act_on_cut config");
    merged.emplace(GroupElement::from_int(moved), value);
  }
  for (const auto& [site, value] : wa.lamps) {
    long long z = site.as_int();
    detail::check_site_in_window(ctx, z, "act_on_cut actor lamp");
    if (detail::cursor_in_threshold(out.base.kind, out.base.threshold, z)) continue;
    auto it = merged.find(site);
    if (it == merged.end()) {
      merged.emplace(site, value);
    } else {
      it->second = mul(*g.lamp, value, it->second);
    }
  }
  GroupElement lamp_id = identity(*g.lamp);
  for (const auto& [site, value] : merged) {
    if (value == lamp_id) continue;
    out.config.entries.emplace_back(site, value);
  }
  return out;
}

/// The isometric action on embedding coordinates: Lambda entries shift by the
/// cursor and get multiplied by the actor's lamp at the target site; F entries
/// move along act_on_cut. A permutation with values carried unchanged.
inline SparseVector theta_apply(const ActionContext& ctx, const GroupElement& actor,
                                const SparseVector& v) {
  const GroupDescriptor& g = *ctx.group;
  const WreathElement& wa = actor.as_wreath();
  long long x = wa.cursor.as_int();
  detail::check_site_in_window(ctx, x, "theta cursor");

  SparseVector out;
  for (const auto& [coord, value] : v.entries()) {
    if (std::holds_alternative<LambdaCoord>(coord)) {
      const auto& lc = std::get<LambdaCoord>(coord);
      long long moved = lc.site.as_int() + x;
      detail::check_site_in_window(ctx, moved, "theta lambda site");
      GroupElement site = GroupElement::from_int(moved);
      GroupElement lamp_val = mul(*g.lamp, lamp_at(g, wa, site), lc.value);
      out.add(LambdaCoord{site, lamp_val}, value);
    } else {
      const auto& fc = std::get<FCoord>(coord);
      LiftedCut moved = act_on_cut(ctx, actor, LiftedCut{fc.base, fc.config});
      out.add(FCoord{moved.base, moved.config}, value);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cocycle and invariance checks
// ---------------------------------------------------------------------------

struct CocycleReport {
  bool ok = false;
  Rat max_residual{0};
};

/// Checks psi(a·b) = theta(a)·psi(b) + psi(a) coordinatewise in exact
/// rationals (centered coordinates; see psi_centered).
inline CocycleReport cocycle_check(const ActionContext& ctx, const GroupElement& a,
                                   const GroupElement& b) {
  GroupElement ab = mul(*ctx.group, a, b);
  SparseVector lhs = psi_centered(ctx, ab);
  SparseVector rhs = theta_apply(ctx, a, psi_centered(ctx, b)) + psi_centered(ctx, a);
  SparseVector diff = lhs - rhs;
  CocycleReport report;
  for (const auto& [coord, value] : diff.entries()) {
    report.max_residual = std::max(report.max_residual, boost::abs(value));
  }
  report.ok = diff.empty();
  return report;
}

/// Translation invariance of a cut measure over a window: weight(hB) equals
/// weight(B) for every enumerated cut whose translate stays inside. Supports
/// the implicit coordinate families (shift along each axis) and explicit
/// families over integer sites. Throws WindowMarginError when the shift
/// leaves nothing to check.
inline bool measure_invariance_check(const CutMeasure& m, const GroupElement& shift,
                                     std::vector<GroupElement> window) {
  if (window.empty()) throw std::invalid_argument("measure_invariance_check: empty window");
  std::sort(window.begin(), window.end());
  window.erase(std::unique(window.begin(), window.end()), window.end());
  size_t checked = 0;
  if (m.family == CutFamilyKind::ThresholdZ || m.family == CutFamilyKind::HalfspaceZd) {
    WindowEnumeration en = enumerate_window(m, window);
    // Weight lookup by exact cut id; requires an interval/box window so every
    // threshold class is a single integer step.
    std::map<CutId, Rat> weight_of;
    for (const auto& c : en.cuts) {
      if (c.weight != m.uniform_weight) {
        throw std::invalid_argument(
            "measure_invariance_check: window must be a full interval/box (classes of size 1)");
      }
      weight_of.emplace(c.id, c.weight);
    }
    for (const auto& [id, w] : weight_of) {
      long long delta = m.family == CutFamilyKind::ThresholdZ ? shift.as_int()
                                                              : shift.as_vector().at(id.axis);
      CutId moved{id.kind, id.axis, id.threshold + delta, 0};
      auto it = weight_of.find(moved);
      if (it == weight_of.end()) continue;  // translate left the window
      ++checked;
      if (it->second != w) return false;
    }
  } else {
    std::map<std::pair<std::vector<GroupElement>, bool>, Rat> weight_of;
    for (const auto& c : m.cuts) weight_of.emplace(std::make_pair(c.members, c.complemented), c.weight);
    for (const auto& c : m.cuts) {
      std::vector<GroupElement> moved;
      moved.reserve(c.members.size());
      bool inside = true;
      for (const auto& s : c.members) {
        GroupElement t = GroupElement::from_int(s.as_int() + shift.as_int());
        inside = inside && std::binary_search(window.begin(), window.end(), t);
        moved.push_back(std::move(t));
      }
      if (!inside) continue;
      ++checked;
      auto it = weight_of.find({moved, c.complemented});
      if (it == weight_of.end() || it->second != c.weight) return false;
    }
  }
  if (checked == 0) {
    throw WindowMarginError("measure_invariance_check: shift too large for the window");
  }
  return true;
}

}  // namespace wreathcut

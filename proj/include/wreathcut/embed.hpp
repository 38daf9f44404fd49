#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wreathcut/cuts.hpp"
#include "wreathcut/group.hpp"
#include "wreathcut/lift.hpp"
#include "wreathcut/rational.hpp"
#include "wreathcut/wreath.hpp"

namespace wreathcut {

// ---------------------------------------------------------------------------
// Sparse vectors over Lambda-block and F-block coordinates
// ---------------------------------------------------------------------------

/// Lambda-block coordinate: (base site, lamp value).
struct LambdaCoord {
  GroupElement site;
  GroupElement value;

  friend bool operator==(const LambdaCoord& a, const LambdaCoord& b) {
    return a.site == b.site && a.value == b.value;
  }
};

/// F-block coordinate: a lifted cut.
struct FCoord {
  CutId base;
  ExternalConfig config;

  friend bool operator==(const FCoord& a, const FCoord& b) {
    return a.base == b.base && a.config == b.config;
  }
};

using Coord = std::variant<LambdaCoord, FCoord>;

inline int compare(const Coord& a, const Coord& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  if (std::holds_alternative<LambdaCoord>(a)) {
    const auto& x = std::get<LambdaCoord>(a);
    const auto& y = std::get<LambdaCoord>(b);
    int c = compare(x.site, y.site);
    if (c != 0) return c;
    return compare(x.value, y.value);
  }
  const auto& x = std::get<FCoord>(a);
  const auto& y = std::get<FCoord>(b);
  if (x.base != y.base) return x.base < y.base ? -1 : 1;
  if (x.config == y.config) return 0;
  return x.config < y.config ? -1 : 1;
}

struct CoordLess {
  bool operator()(const Coord& a, const Coord& b) const { return compare(a, b) < 0; }
};

/// Exact-rational sparse vector; zero entries are never stored.
class SparseVector {
 public:
  using Map = std::map<Coord, Rat, CoordLess>;

  void add(const Coord& c, const Rat& v) {
    if (v == Rat(0)) return;
    auto [it, fresh] = entries_.try_emplace(c, v);
    if (!fresh) {
      it->second += v;
      if (it->second == Rat(0)) entries_.erase(it);
    }
  }

  void scale(const Rat& c) {
    if (c == Rat(0)) {
      entries_.clear();
      return;
    }
    for (auto& [coord, v] : entries_) v *= c;
  }

  Rat l1_norm() const {
    Rat total(0);
    for (const auto& [coord, v] : entries_) total += boost::abs(v);
    return total;
  }

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Map& entries() const { return entries_; }

  friend SparseVector operator+(const SparseVector& a, const SparseVector& b) {
    SparseVector out = a;
    for (const auto& [coord, v] : b.entries_) out.add(coord, v);
    return out;
  }

  friend SparseVector operator-(const SparseVector& a, const SparseVector& b) {
    SparseVector out = a;
    for (const auto& [coord, v] : b.entries_) out.add(coord, -v);
    return out;
  }

  friend bool operator==(const SparseVector& a, const SparseVector& b) {
    return a.entries_ == b.entries_;
  }

  /// Exact l1 distance by sorted-map merge (no temporary difference vector).
  static Rat l1_distance(const SparseVector& a, const SparseVector& b) {
    Rat total(0);
    auto ia = a.entries_.begin(), ib = b.entries_.begin();
    CoordLess less;
    while (ia != a.entries_.end() || ib != b.entries_.end()) {
      if (ib == b.entries_.end() ||
          (ia != a.entries_.end() && less(ia->first, ib->first))) {
        total += boost::abs(ia->second);
        ++ia;
      } else if (ia == a.entries_.end() || less(ib->first, ia->first)) {
        total += boost::abs(ib->second);
        ++ib;
      } else {
        total += boost::abs(ia->second - ib->second);
        ++ia;
        ++ib;
      }
    }
    return total;
  }

 private:
  Map entries_;
};

// ---------------------------------------------------------------------------
// Embedding configuration
// ---------------------------------------------------------------------------

/// Weights of the two blocks: c1 = b/(1+b), c2 = 1/(1+b) with b = alpha − eps.
/// Always c1 + c2 = 1 and c1 = b·c2, which the chain's AM-GM step relies on.
struct EmbeddingConfig {
  Rat alpha{1};
  Rat eps{0};
  double p = 1.0;

  EmbeddingConfig() = default;
  EmbeddingConfig(Rat alpha_, Rat eps_, double p_ = 1.0) : alpha(alpha_), eps(eps_), p(p_) {
    validate();
  }

  void validate() const {
    if (alpha <= Rat(0) || alpha > Rat(1)) throw std::invalid_argument("alpha must be in (0,1]");
    if (eps < Rat(0) || eps >= alpha) throw std::invalid_argument("eps must be in [0, alpha)");
    if (p < 1.0) throw std::invalid_argument("p must be >= 1");
  }

  Rat beta() const { return alpha - eps; }
  Rat c1() const { return beta() / (Rat(1) + beta()); }
  Rat c2() const { return Rat(1) / (Rat(1) + beta()); }

  /// The exponent the lower-bound chain certifies; numerically equals c1.
  double chain_exponent() const { return to_double(c1()); }
};

// ---------------------------------------------------------------------------
// The two blocks and Psi
// ---------------------------------------------------------------------------

/// Lambda block of a lamp configuration over a fixed finite window: value 1/2
/// at (z, f(z)) for EVERY window site z, identity lamps included. The
/// window-complete convention makes ||Lambda(f) − Lambda(g)||_1 equal the
/// number of differing sites exactly, whether or not identities are involved.
inline SparseVector lambda_coords(const GroupDescriptor& g, const GroupElement& a,
                                  const std::vector<GroupElement>& window) {
  if (g.kind != GroupKind::Wreath) throw DescriptorMismatch("lambda_coords: not a wreath element");
  const WreathElement& w = a.as_wreath();
  for (const auto& [site, value] : w.lamps) {
    if (!std::binary_search(window.begin(), window.end(), site)) {
      throw WindowMarginError("lambda_coords: lamp support outside window");
    }
  }
  SparseVector out;
  Rat half(1, 2);
  for (const auto& z : window) {
    out.add(LambdaCoord{z, lamp_at(g, w, z)}, half);
  }
  return out;
}

/// F block: weight(c) at every enumerated lifted cut containing the element.
inline SparseVector f_coords(const LiftedEnumeration& en, const GroupElement& a) {
  size_t idx = population_index(en, a);
  SparseVector out;
  for (uint32_t ci : en.member_rows[idx]) {
    out.add(FCoord{en.cuts[ci].base, en.cuts[ci].config}, en.weights[ci]);
  }
  return out;
}

/// The embedding Psi(a) = c1·Lambda ⊕ c2·F over a lifted enumeration.
inline SparseVector psi(const LiftedEnumeration& en, const EmbeddingConfig& cfg,
                        const GroupElement& a) {
  SparseVector lam = lambda_coords(*en.group, a, en.base.window);
  lam.scale(cfg.c1());
  SparseVector f = f_coords(en, a);
  f.scale(cfg.c2());
  return lam + f;
}

/// ||Psi(a) − Psi(b)||_1 computed through the block identities:
/// c1·|support difference| + c2·(exact lifted distance). Cheap enough to run
/// over every pair of a ball; cross-checked against materialized vectors.
inline Rat psi_distance(const LiftedEnumeration& en, const EmbeddingConfig& cfg, size_t ia,
                        size_t ib) {
  const GroupElement& a = en.population[ia];
  const GroupElement& b = en.population[ib];
  long long s = static_cast<long long>(support_diff(*en.group, a, b).size());
  return cfg.c1() * Rat(s) + cfg.c2() * lifted_distance_exact(en, ia, ib);
}

// ---------------------------------------------------------------------------
// Lower-bound chain
// ---------------------------------------------------------------------------

/// The four chain quantities for one pair, with every step's explicit
/// constant. All comparisons that can be exact are exact rationals; the
/// power steps run in doubles with a relative slack of 1e-9.
struct ChainReport {
  long long support_size = 0;   // s = |supp a^{-1}b|
  long long tour_length = 0;    // cursor tour covering the differing sites
  long long lamplight_dist = 0; // tour + s (unit lamp moves)
  Rat l1{0};                    // ||Psi(a) − Psi(b)||_1, exact
  Rat weighted{0};              // c1·s + c2·d_nu, exact (equals l1)
  double geometric = 0;         // s^c1 · d_nu^c2 (AM-GM lower bound)
  double tour_bound = 0;        // ((1+s)·max base distance)^e
  double distance_power = 0;    // lamplight_dist^e
  double kappa = 0;             // certified constant: l1 >= kappa·distance_power
  bool degenerate = false;      // no cursor movement needed (max distance 0)
  bool step_weighted = false;   // l1 >= weighted (exact)
  bool step_geometric = false;  // weighted >= geometric
  bool step_tour = false;       // max(geometric, c2·d_nu) >= 2^{-e}·tour_bound
  bool step_distance = false;   // tour_bound >= 3^{-e}·distance_power
  bool ok = false;
};

/// Verifies the lower-bound chain for one pair over a closed unit-style
/// ThresholdZ measure. Requires uniform weight >= 1 so that the derived step
/// constants are valid as stated.
inline ChainReport chain_check(const CutMeasure& m, const GroupDescriptor& g,
                               const EmbeddingConfig& cfg, const GroupElement& a,
                               const GroupElement& b) {
  if (m.family != CutFamilyKind::ThresholdZ || !m.orientation_closed || m.uniform_weight < Rat(1)) {
    throw std::invalid_argument("chain_check: needs a closed ThresholdZ measure with weight >= 1");
  }
  ChainReport r;
  std::vector<GroupElement> diff = support_diff(g, a, b);
  r.support_size = static_cast<long long>(diff.size());
  const GroupElement& x = a.as_wreath().cursor;
  const GroupElement& y = b.as_wreath().cursor;
  r.tour_length = tsp_tour(TspInstance{g.base, x, y, diff});
  r.lamplight_dist = r.tour_length + r.support_size;

  Rat d_nu = lifted_distance_direct(m, g, a, b);
  r.l1 = cfg.c1() * Rat(r.support_size) + cfg.c2() * d_nu;
  if (a == b) {
    r.ok = true;
    r.step_weighted = r.step_geometric = r.step_tour = r.step_distance = true;
    return r;
  }

  // Largest base distance from x to the data the tour must reach.
  long long max_dist = dist_closed(*g.base, x, y);
  for (const auto& z : diff) max_dist = std::max(max_dist, dist_closed(*g.base, x, z));

  double e = cfg.chain_exponent();
  double s = static_cast<double>(r.support_size);
  double dnu = to_double(d_nu);
  r.weighted = cfg.c1() * Rat(r.support_size) + cfg.c2() * d_nu;
  r.geometric = r.support_size > 0 ? std::pow(s, e) * std::pow(dnu, 1.0 - e) : 0.0;
  r.tour_bound = std::pow((1.0 + s) * static_cast<double>(max_dist), e);
  r.distance_power = std::pow(static_cast<double>(r.lamplight_dist), e);

  const double slack = 1.0 - 1e-9;
  r.step_weighted = r.l1 >= r.weighted;  // exact; equality by construction
  r.step_geometric = to_double(r.weighted) >= r.geometric * slack;
  double c2_dnu = to_double(cfg.c2()) * dnu;
  r.step_tour = std::max(r.geometric, c2_dnu) >= std::pow(2.0, -e) * r.tour_bound * slack;
  r.degenerate = (max_dist == 0);
  if (r.degenerate) {
    // Only the cursor's own lamp differs: the Lambda block alone carries the
    // bound, ||dPsi|| >= c1·s = c1·d >= c1·d^e.
    r.kappa = to_double(cfg.c1());
    r.step_distance = to_double(r.l1) >= r.kappa * r.distance_power * slack;
    r.ok = r.step_weighted && r.step_distance;
    r.step_tour = true;
    return r;
  }
  r.step_distance = r.tour_bound >= std::pow(3.0, -e) * r.distance_power * slack;
  r.kappa = std::pow(6.0, -e);
  r.ok = r.step_weighted && r.step_geometric && r.step_tour && r.step_distance &&
         to_double(r.l1) >= r.kappa * r.distance_power * slack;
  return r;
}

// ---------------------------------------------------------------------------
// Snowflake transfer to L_p
// ---------------------------------------------------------------------------

/// Distance after the L1 -> Lp transfer: d1^(1/p) for p <= 2, d1^(1/2) beyond
/// (the p > 2 leg embeds L2 into Lp isometrically), i.e. d1^max{1/2, 1/p}.
inline double snowflake_distance(double d1, double p) {
  if (p < 1.0) throw std::invalid_argument("snowflake_distance: p must be >= 1");
  if (d1 < 0.0) throw std::invalid_argument("snowflake_distance: negative distance");
  return std::pow(d1, std::max(0.5, 1.0 / p));
}

}  // namespace wreathcut

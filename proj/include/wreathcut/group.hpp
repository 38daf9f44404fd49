#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wreathcut {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Element payload does not match the group descriptor it is used with.
struct DescriptorMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A breadth-first search exceeded its radius cap without finding the target.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration grew past the configured element budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Group descriptors
// ---------------------------------------------------------------------------

enum class GroupKind : uint8_t { Integers, IntegerLattice, Cyclic, Wreath };

struct GroupDescriptor;
using GroupPtr = std::shared_ptr<const GroupDescriptor>;

/// Describes one of the supported concrete groups: Z, Z^d, C_n, or a wreath
/// product lamp^(base) x base built from two smaller descriptors.
struct GroupDescriptor {
  GroupKind kind;
  int dim = 0;            // IntegerLattice only
  long long modulus = 0;  // Cyclic only
  GroupPtr lamp;          // Wreath only
  GroupPtr base;          // Wreath only

  static GroupPtr integers() {
    auto g = std::make_shared<GroupDescriptor>();
    g->kind = GroupKind::Integers;
    return g;
  }

  static GroupPtr lattice(int d) {
    if (d < 1) throw std::invalid_argument("lattice: dimension must be >= 1");
    auto g = std::make_shared<GroupDescriptor>();
    g->kind = GroupKind::IntegerLattice;
    g->dim = d;
    return g;
  }

  static GroupPtr cyclic(long long n) {
    if (n < 2) throw std::invalid_argument("cyclic: order must be >= 2");
    auto g = std::make_shared<GroupDescriptor>();
    g->kind = GroupKind::Cyclic;
    g->modulus = n;
    return g;
  }

  static GroupPtr wreath(GroupPtr lamp, GroupPtr base) {
    if (!lamp || !base) throw std::invalid_argument("wreath: null factor");
    auto g = std::make_shared<GroupDescriptor>();
    g->kind = GroupKind::Wreath;
    g->lamp = std::move(lamp);
    g->base = std::move(base);
    return g;
  }
};

inline bool same_descriptor(const GroupDescriptor& a, const GroupDescriptor& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case GroupKind::Integers: return true;
    case GroupKind::IntegerLattice: return a.dim == b.dim;
    case GroupKind::Cyclic: return a.modulus == b.modulus;
    case GroupKind::Wreath:
      return same_descriptor(*a.lamp, *b.lamp) && same_descriptor(*a.base, *b.base);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Group elements
// ---------------------------------------------------------------------------

struct WreathElement;

/// Value-semantic element of any supported group. The payload variant mirrors
/// the descriptor kind: integer for Z and C_n, coordinate vector for Z^d, and
/// a shared immutable (lamps, cursor) record for wreath products.
class GroupElement {
 public:
  using WreathPtr = std::shared_ptr<const WreathElement>;

  GroupElement() : v_(static_cast<long long>(0)) {}

  static GroupElement from_int(long long n) { return GroupElement(Payload(n)); }
  static GroupElement from_vector(std::vector<long long> v) {
    return GroupElement(Payload(std::move(v)));
  }
  static GroupElement from_wreath(WreathPtr w) { return GroupElement(Payload(std::move(w))); }

  bool is_int() const { return std::holds_alternative<long long>(v_); }
  bool is_vector() const { return std::holds_alternative<std::vector<long long>>(v_); }
  bool is_wreath() const { return std::holds_alternative<WreathPtr>(v_); }

  long long as_int() const {
    if (!is_int()) throw DescriptorMismatch("element is not integer-valued");
    return std::get<long long>(v_);
  }
  const std::vector<long long>& as_vector() const {
    if (!is_vector()) throw DescriptorMismatch("element is not a lattice vector");
    return std::get<std::vector<long long>>(v_);
  }
  const WreathElement& as_wreath() const;

  friend int compare(const GroupElement& a, const GroupElement& b);

 private:
  using Payload = std::variant<long long, std::vector<long long>, WreathPtr>;
  explicit GroupElement(Payload p) : v_(std::move(p)) {}
  Payload v_;
};

/// Lamp configuration plus cursor. Lamp entries are sorted by site and never
/// contain an identity lamp value, so equal elements have equal records.
struct WreathElement {
  std::vector<std::pair<GroupElement, GroupElement>> lamps;  // (site, value)
  GroupElement cursor;
};

inline const WreathElement& GroupElement::as_wreath() const {
  if (!is_wreath()) throw DescriptorMismatch("element is not a wreath pair");
  return *std::get<WreathPtr>(v_);
}

/// Total order on elements: by payload kind first, then deep lexicographic
/// comparison. Gives deterministic set/map enumeration everywhere.
inline int compare(const GroupElement& a, const GroupElement& b) {
  if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index() ? -1 : 1;
  if (a.is_int()) {
    long long x = a.as_int(), y = b.as_int();
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  if (a.is_vector()) {
    const auto& x = a.as_vector();
    const auto& y = b.as_vector();
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
    }
    return 0;
  }
  const WreathElement& x = a.as_wreath();
  const WreathElement& y = b.as_wreath();
  if (x.lamps.size() != y.lamps.size()) return x.lamps.size() < y.lamps.size() ? -1 : 1;
  for (size_t i = 0; i < x.lamps.size(); ++i) {
    int c = compare(x.lamps[i].first, y.lamps[i].first);
    if (c != 0) return c;
    c = compare(x.lamps[i].second, y.lamps[i].second);
    if (c != 0) return c;
  }
  return compare(x.cursor, y.cursor);
}

inline bool operator==(const GroupElement& a, const GroupElement& b) { return compare(a, b) == 0; }
inline bool operator!=(const GroupElement& a, const GroupElement& b) { return compare(a, b) != 0; }
inline bool operator<(const GroupElement& a, const GroupElement& b) { return compare(a, b) < 0; }

// ---------------------------------------------------------------------------
// Descriptor-directed operations
// ---------------------------------------------------------------------------

inline GroupElement identity(const GroupDescriptor& g);
inline GroupElement mul(const GroupDescriptor& g, const GroupElement& a, const GroupElement& b);
inline GroupElement inv(const GroupDescriptor& g, const GroupElement& a);

namespace detail {

inline long long mod_reduce(long long v, long long n) {
  long long r = v % n;
  return r < 0 ? r + n : r;
}

/// Builds a normalized wreath element from an arbitrary site->value map.
inline GroupElement make_wreath(const GroupDescriptor& g,
                                std::map<GroupElement, GroupElement> lamps,
                                GroupElement cursor) {
  WreathElement w;
  GroupElement lamp_id = identity(*g.lamp);
  for (auto& [site, value] : lamps) {
    if (value == lamp_id) continue;
    w.lamps.emplace_back(site, value);
  }
  w.cursor = std::move(cursor);
  return GroupElement::from_wreath(std::make_shared<const WreathElement>(std::move(w)));
}

}  // namespace detail

inline GroupElement identity(const GroupDescriptor& g) {
  switch (g.kind) {
    case GroupKind::Integers:
    case GroupKind::Cyclic:
      return GroupElement::from_int(0);
    case GroupKind::IntegerLattice:
      return GroupElement::from_vector(std::vector<long long>(g.dim, 0));
    case GroupKind::Wreath: {
      WreathElement w;
      w.cursor = identity(*g.base);
      return GroupElement::from_wreath(std::make_shared<const WreathElement>(std::move(w)));
    }
  }
  throw std::logic_error("identity: unknown group kind");
}

/// Descriptor-aware integer constructor; reduces modulo n for cyclic groups.
inline GroupElement make_int(const GroupDescriptor& g, long long v) {
  switch (g.kind) {
    case GroupKind::Integers: return GroupElement::from_int(v);
    case GroupKind::Cyclic: return GroupElement::from_int(detail::mod_reduce(v, g.modulus));
    default: throw DescriptorMismatch("make_int: group is not integer-valued");
  }
}

/// Structural validity of an element under a descriptor: payload kind, vector
/// dimension, cyclic residue range, and normalized lamp records (recursively).
inline bool belongs(const GroupDescriptor& g, const GroupElement& a) {
  switch (g.kind) {
    case GroupKind::Integers:
      return a.is_int();
    case GroupKind::Cyclic:
      return a.is_int() && a.as_int() >= 0 && a.as_int() < g.modulus;
    case GroupKind::IntegerLattice:
      return a.is_vector() && static_cast<int>(a.as_vector().size()) == g.dim;
    case GroupKind::Wreath: {
      if (!a.is_wreath()) return false;
      const WreathElement& w = a.as_wreath();
      if (!belongs(*g.base, w.cursor)) return false;
      GroupElement lamp_id = identity(*g.lamp);
      for (size_t i = 0; i < w.lamps.size(); ++i) {
        if (!belongs(*g.base, w.lamps[i].first)) return false;
        if (!belongs(*g.lamp, w.lamps[i].second)) return false;
        if (w.lamps[i].second == lamp_id) return false;  // identity value stored
        if (i > 0 && !(w.lamps[i - 1].first < w.lamps[i].first)) return false;  // unsorted/dup
      }
      return true;
    }
  }
  return false;
}

inline void require_member(const GroupDescriptor& g, const GroupElement& a, const char* who) {
  if (!belongs(g, a)) throw DescriptorMismatch(std::string(who) + ": element does not fit descriptor");
}

/// Lamp value at a site, identity if the site is unset.
inline GroupElement lamp_at(const GroupDescriptor& g, const WreathElement& w,
                            const GroupElement& site) {
  auto it = std::lower_bound(w.lamps.begin(), w.lamps.end(), site,
                             [](const auto& entry, const GroupElement& s) { return entry.first < s; });
  if (it != w.lamps.end() && it->first == site) return it->second;
  return identity(*g.lamp);
}

inline GroupElement mul(const GroupDescriptor& g, const GroupElement& a, const GroupElement& b) {
  switch (g.kind) {
    case GroupKind::Integers:
      return GroupElement::from_int(a.as_int() + b.as_int());
    case GroupKind::Cyclic:
      return GroupElement::from_int(detail::mod_reduce(a.as_int() + b.as_int(), g.modulus));
    case GroupKind::IntegerLattice: {
      const auto& x = a.as_vector();
      const auto& y = b.as_vector();
      if (x.size() != y.size()) throw DescriptorMismatch("mul: lattice dimension mismatch");
      std::vector<long long> out(x.size());
      for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
      return GroupElement::from_vector(std::move(out));
    }
    case GroupKind::Wreath: {
      const WreathElement& wa = a.as_wreath();
      const WreathElement& wb = b.as_wreath();
      // (f, x)(h, y) = (z -> f(z) * h(x^{-1} z), x y); the right factor's lamps
      // land at sites translated by the left cursor.
      std::map<GroupElement, GroupElement> lamps;
      for (const auto& [site, value] : wa.lamps) lamps.emplace(site, value);
      for (const auto& [site, value] : wb.lamps) {
        GroupElement moved = mul(*g.base, wa.cursor, site);
        auto it = lamps.find(moved);
        if (it == lamps.end()) {
          lamps.emplace(std::move(moved), value);
        } else {
          it->second = mul(*g.lamp, it->second, value);
        }
      }
      return detail::make_wreath(g, std::move(lamps), mul(*g.base, wa.cursor, wb.cursor));
    }
  }
  throw std::logic_error("mul: unknown group kind");
}

inline GroupElement inv(const GroupDescriptor& g, const GroupElement& a) {
  switch (g.kind) {
    case GroupKind::Integers:
      return GroupElement::from_int(-a.as_int());
    case GroupKind::Cyclic:
      return GroupElement::from_int(detail::mod_reduce(-a.as_int(), g.modulus));
    case GroupKind::IntegerLattice: {
      std::vector<long long> out = a.as_vector();
      for (auto& c : out) c = -c;
      return GroupElement::from_vector(std::move(out));
    }
    case GroupKind::Wreath: {
      const WreathElement& w = a.as_wreath();
      // (f, x)^{-1} = (z -> f(x z)^{-1}, x^{-1})
      GroupElement xinv = inv(*g.base, w.cursor);
      std::map<GroupElement, GroupElement> lamps;
      for (const auto& [site, value] : w.lamps) {
        lamps.emplace(mul(*g.base, xinv, site), inv(*g.lamp, value));
      }
      return detail::make_wreath(g, std::move(lamps), std::move(xinv));
    }
  }
  throw std::logic_error("inv: unknown group kind");
}

// ---------------------------------------------------------------------------
// Word metrics and balls
// ---------------------------------------------------------------------------

/// Standard symmetric generating set. For wreath products: base generators
/// acting on the cursor plus single-lamp flips at the origin.
inline std::vector<GroupElement> generators(const GroupDescriptor& g) {
  switch (g.kind) {
    case GroupKind::Integers:
      return {GroupElement::from_int(-1), GroupElement::from_int(1)};
    case GroupKind::Cyclic: {
      std::vector<GroupElement> out;
      out.push_back(GroupElement::from_int(1));
      if (g.modulus > 2) out.push_back(GroupElement::from_int(g.modulus - 1));
      return out;
    }
    case GroupKind::IntegerLattice: {
      std::vector<GroupElement> out;
      for (int sign : {-1, 1}) {
        for (int i = 0; i < g.dim; ++i) {
          std::vector<long long> v(g.dim, 0);
          v[i] = sign;
          out.push_back(GroupElement::from_vector(std::move(v)));
        }
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    case GroupKind::Wreath: {
      std::vector<GroupElement> out;
      for (const auto& t : generators(*g.base)) {
        WreathElement w;
        w.cursor = t;
        out.push_back(GroupElement::from_wreath(std::make_shared<const WreathElement>(std::move(w))));
      }
      GroupElement base_id = identity(*g.base);
      for (const auto& s : generators(*g.lamp)) {
        WreathElement w;
        w.lamps.emplace_back(base_id, s);
        w.cursor = base_id;
        out.push_back(GroupElement::from_wreath(std::make_shared<const WreathElement>(std::move(w))));
      }
      return out;
    }
  }
  throw std::logic_error("generators: unknown group kind");
}

/// Closed-form word distance for the non-wreath kinds.
inline long long dist_closed(const GroupDescriptor& g, const GroupElement& a,
                             const GroupElement& b) {
  switch (g.kind) {
    case GroupKind::Integers:
      return std::llabs(a.as_int() - b.as_int());
    case GroupKind::Cyclic: {
      long long r = detail::mod_reduce(a.as_int() - b.as_int(), g.modulus);
      return std::min(r, g.modulus - r);
    }
    case GroupKind::IntegerLattice: {
      const auto& x = a.as_vector();
      const auto& y = b.as_vector();
      if (x.size() != y.size()) throw DescriptorMismatch("dist_closed: dimension mismatch");
      long long s = 0;
      for (size_t i = 0; i < x.size(); ++i) s += std::llabs(x[i] - y[i]);
      return s;
    }
    case GroupKind::Wreath:
      throw DescriptorMismatch("dist_closed: no closed form for wreath products");
  }
  throw std::logic_error("dist_closed: unknown group kind");
}

constexpr size_t kDefaultBallBudget = 5'000'000;

struct Ball {
  std::vector<GroupElement> elements;  // sorted by (length, element order)
  std::vector<int> lengths;            // parallel to elements
};

/// Breadth-first ball of the given radius around the identity. Deterministic:
/// output is sorted by word length, then by element order. Throws
/// BudgetExceeded once more than `budget` elements have been discovered.
inline Ball ball_with_lengths(const GroupDescriptor& g, int radius,
                              size_t budget = kDefaultBallBudget) {
  if (radius < 0) throw std::invalid_argument("ball: negative radius");
  std::vector<GroupElement> gens = generators(g);
  std::map<GroupElement, int> seen;
  std::vector<GroupElement> frontier{identity(g)};
  seen.emplace(frontier.front(), 0);
  for (int depth = 1; depth <= radius && !frontier.empty(); ++depth) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier) {
      for (const auto& s : gens) {
        GroupElement y = mul(g, x, s);
        if (seen.emplace(y, depth).second) {
          if (seen.size() > budget) throw BudgetExceeded("ball: element budget exceeded");
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  Ball out;
  out.elements.reserve(seen.size());
  out.lengths.reserve(seen.size());
  std::vector<std::pair<int, const GroupElement*>> order;
  order.reserve(seen.size());
  for (const auto& [elem, len] : seen) order.emplace_back(len, &elem);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& p, const auto& q) { return p.first < q.first; });
  for (const auto& [len, elem] : order) {
    out.elements.push_back(*elem);
    out.lengths.push_back(len);
  }
  return out;
}

inline std::vector<GroupElement> ball(const GroupDescriptor& g, int radius,
                                      size_t budget = kDefaultBallBudget) {
  return ball_with_lengths(g, radius, budget).elements;
}

/// Word length of `a` by breadth-first search, independent of any closed form.
/// Throws CapExceeded if the element is not found within `radius_cap`.
inline long long word_length_bfs(const GroupDescriptor& g, const GroupElement& a,
                                 int radius_cap, size_t budget = kDefaultBallBudget) {
  GroupElement id = identity(g);
  if (a == id) return 0;
  std::vector<GroupElement> gens = generators(g);
  std::set<GroupElement> seen{id};
  std::vector<GroupElement> frontier{id};
  for (int depth = 1; depth <= radius_cap && !frontier.empty(); ++depth) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier) {
      for (const auto& s : gens) {
        GroupElement y = mul(g, x, s);
        if (y == a) return depth;
        if (seen.insert(y).second) {
          if (seen.size() > budget) throw BudgetExceeded("word_length_bfs: element budget exceeded");
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  throw CapExceeded("word_length_bfs: radius cap exceeded");
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

inline std::string element_str(const GroupElement& a) {
  if (a.is_int()) return std::to_string(a.as_int());
  if (a.is_vector()) {
    std::string s = "(";
    const auto& v = a.as_vector();
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    return s + ")";
  }
  const WreathElement& w = a.as_wreath();
  std::string s = "([";
  for (size_t i = 0; i < w.lamps.size(); ++i) {
    if (i) s += " ";
    s += element_str(w.lamps[i].first) + ":" + element_str(w.lamps[i].second);
  }
  s += "], " + element_str(w.cursor) + ")";
  return s;
}

}  // namespace wreathcut

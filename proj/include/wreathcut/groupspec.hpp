#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "wreathcut/group.hpp"

namespace wreathcut {

/// Nesting depth of wreath constructors (Z, Z^d, C<n> are depth 0).
inline int wreath_depth(const GroupDescriptor& g) {
  if (g.kind != GroupKind::Wreath) return 0;
  return 1 + std::max(wreath_depth(*g.lamp), wreath_depth(*g.base));
}

constexpr int kMaxWreathDepth = 3;

/// Canonical rendering of the group grammar: Z | Z^d | C<n> | wr(lamp,base).
inline std::string format_group(const GroupDescriptor& g) {
  switch (g.kind) {
    case GroupKind::Integers: return "Z";
    case GroupKind::IntegerLattice: return "Z^" + std::to_string(g.dim);
    case GroupKind::Cyclic: return "C" + std::to_string(g.modulus);
    case GroupKind::Wreath:
      return "wr(" + format_group(*g.lamp) + "," + format_group(*g.base) + ")";
  }
  throw std::logic_error("format_group: unknown kind");
}

namespace detail {

struct GroupParser {
  const std::string& text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("group spec '" + text + "': " + why + " at position " +
                                std::to_string(pos));
  }

  void skip_spaces() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_spaces();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  long long parse_number() {
    skip_spaces();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected a number");
    return std::stoll(text.substr(start, pos - start));
  }

  GroupPtr parse_spec() {
    skip_spaces();
    if (pos >= text.size()) fail("unexpected end");
    if (text.compare(pos, 3, "wr(") == 0) {
      pos += 3;
      GroupPtr lamp = parse_spec();
      if (!eat(',')) fail("expected ','");
      GroupPtr base = parse_spec();
      if (!eat(')')) fail("expected ')'");
      return GroupDescriptor::wreath(std::move(lamp), std::move(base));
    }
    if (text[pos] == 'Z') {
      ++pos;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        long long d = parse_number();
        if (d < 1 || d > 16) fail("lattice dimension out of range");
        return GroupDescriptor::lattice(static_cast<int>(d));
      }
      return GroupDescriptor::integers();
    }
    if (text[pos] == 'C') {
      ++pos;
      long long n = parse_number();
      if (n < 2) fail("cyclic order must be >= 2");
      return GroupDescriptor::cyclic(n);
    }
    fail("expected Z, Z^d, C<n> or wr(...)");
  }
};

}  // namespace detail

inline GroupPtr parse_group(const std::string& s) {
  detail::GroupParser parser{s};
  GroupPtr g = parser.parse_spec();
  parser.skip_spaces();
  if (parser.pos != s.size()) parser.fail("trailing characters");
  if (wreath_depth(*g) > kMaxWreathDepth) {
    throw std::invalid_argument("group spec '" + s + "': wreath nesting deeper than " +
                                std::to_string(kMaxWreathDepth));
  }
  return g;
}

}  // namespace wreathcut

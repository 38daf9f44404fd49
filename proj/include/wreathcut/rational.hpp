#pragma once

#include <boost/rational.hpp>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace wreathcut {

// Exact rational arithmetic for cut weights, separation measures and
// embedding coordinates. Magnitudes stay tiny (window sizes, small
// denominators from alpha/eps), so 64-bit components are plenty.
using Rat = boost::rational<long long>;

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Canonical "p/q" rendering (q always printed, keeps output schema stable).
inline std::string rat_string(const Rat& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Parses "p", "p/q" or a plain decimal like "0.25" into an exact rational.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rat: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long num = std::stoll(s.substr(0, slash));
    long long den = std::stoll(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rat: zero denominator");
    return Rat(num, den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rat(std::stoll(s));
  std::string frac = s.substr(dot + 1);
  if (frac.size() > 15) throw std::invalid_argument("parse_rat: too many decimal digits");
  long long den = 1;
  for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  std::string whole = s.substr(0, dot);
  bool neg = !whole.empty() && whole[0] == '-';
  long long ipart = (whole.empty() || whole == "-" || whole == "+") ? 0 : std::stoll(whole);
  long long fpart = frac.empty() ? 0 : std::stoll(frac);
  Rat r = Rat(std::llabs(ipart)) + Rat(fpart, den);
  return neg ? -r : r;
}

}  // namespace wreathcut

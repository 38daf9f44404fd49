#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wreathcut/rational.hpp"

namespace wreathcut {

// ---------------------------------------------------------------------------
// Moduli: nondecreasing functions on nonnegative integers, value(0) = 0
// ---------------------------------------------------------------------------

/// A compression modulus with a memoized evaluation rule. V is the value type
/// (exact Rat for the DP layer, double where square roots enter). Instances
/// are immutable once evaluated; the memo is per-instance and shared across
/// copies. Building a memo is single-threaded; completed instances are safe
/// to read in parallel.
template <class V>
class Modulus {
 public:
  using Rule = std::function<V(long long)>;

  Modulus(std::string name, Rule rule)
      : name_(std::move(name)), rule_(std::move(rule)), memo_(std::make_shared<Memo>()) {}

  const std::string& name() const { return name_; }

  V value(long long t) const {
    if (t < 0) throw std::invalid_argument("modulus " + name_ + ": negative argument");
    if (t == 0) return V(0);
    auto it = memo_->find(t);
    if (it != memo_->end()) return it->second;
    V v = rule_(t);
    if (v < V(0)) throw std::domain_error("modulus " + name_ + ": negative value at t=" + std::to_string(t));
    memo_->emplace(t, v);
    return v;
  }

  bool nondecreasing_up_to(long long t_max) const {
    V prev = value(0);
    for (long long t = 1; t <= t_max; ++t) {
      V cur = value(t);
      if (cur < prev) return false;
      prev = cur;
    }
    return true;
  }

  static Modulus identity() {
    return Modulus("identity", [](long long t) { return V(t); });
  }

  static Modulus linear(V slope) {
    return Modulus("linear", [slope](long long t) { return slope * V(t); });
  }

  static Modulus power_int(int k) {
    if (k < 1) throw std::invalid_argument("power_int: exponent must be >= 1");
    return Modulus("power" + std::to_string(k), [k](long long t) {
      V out(1);
      for (int i = 0; i < k; ++i) out *= V(t);
      return out;
    });
  }

  static Modulus from_table(std::string name, std::vector<V> values) {
    if (values.empty() || !(values.front() == V(0))) {
      throw std::invalid_argument("from_table: values must start with 0");
    }
    return Modulus(std::move(name), [values = std::move(values)](long long t) {
      if (t >= static_cast<long long>(values.size())) {
        throw std::out_of_range("table modulus: argument beyond table");
      }
      return values[static_cast<size_t>(t)];
    });
  }

  /// Rescales so that value(1) >= 1 (multiplying by 1/value(1) when it is
  /// below 1); value(1) = 0 is rejected.
  Modulus rescaled_unit() const {
    V at_one = value(1);
    if (at_one == V(0)) throw std::invalid_argument("rescaled_unit: value(1) = 0");
    if (!(at_one < V(1))) return *this;
    V factor = V(1) / at_one;
    Modulus self = *this;
    return Modulus(name_ + "#unit", [self, factor](long long t) { return factor * self.value(t); });
  }

 private:
  using Memo = std::map<long long, V>;
  std::string name_;
  Rule rule_;
  std::shared_ptr<Memo> memo_;
};

// ---------------------------------------------------------------------------
// Partition minima and the eta / tau / nu calculus
// ---------------------------------------------------------------------------

/// g(k) = min { sum m(s_i) : s_i positive integers, sum s_i = k } for every
/// k <= t, by the standard coin-change style DP. g(0) = 0 (empty partition).
template <class V>
inline std::vector<V> partition_min_table(const Modulus<V>& m, long long t) {
  if (t < 0) throw std::invalid_argument("partition_min_table: negative argument");
  std::vector<V> g(static_cast<size_t>(t) + 1, V(0));
  for (long long k = 1; k <= t; ++k) {
    V best = m.value(k);  // single part
    for (long long s = 1; s < k; ++s) {
      V cand = m.value(s) + g[static_cast<size_t>(k - s)];
      if (cand < best) best = cand;
    }
    g[static_cast<size_t>(k)] = best;
  }
  return g;
}

template <class V>
inline V partition_min(const Modulus<V>& m, long long t) {
  return partition_min_table(m, t).back();
}

/// eta1(t) = min over 0 <= j <= t of xi1(j) + partition_min(tau1, t − j):
/// one xi1 part plus a tau1 partition of the remainder.
template <class V>
inline V eta1(const Modulus<V>& xi1, const Modulus<V>& tau1, long long t) {
  if (t < 0) throw std::invalid_argument("eta1: negative argument");
  std::vector<V> table = partition_min_table(tau1, t);
  V best = xi1.value(0) + table[static_cast<size_t>(t)];
  for (long long j = 1; j <= t; ++j) {
    V cand = xi1.value(j) + table[static_cast<size_t>(t - j)];
    if (cand < best) best = cand;
  }
  return best;
}

/// eta2(t) = t · (xi2(t) + tau2(t)), the superlinear upper combination.
template <class V>
inline V eta2(const Modulus<V>& xi2, const Modulus<V>& tau2, long long t) {
  if (t < 0) throw std::invalid_argument("eta2: negative argument");
  return V(t) * (xi2.value(t) + tau2.value(t));
}

/// Linear-cap replacement for eta2: a Lipschitz upper bound t · unit rate.
template <class V>
inline V eta2_linear(const Modulus<V>& xi2, const Modulus<V>& tau2, long long t) {
  if (t < 0) throw std::invalid_argument("eta2_linear: negative argument");
  return V(t) * (xi2.value(1) + tau2.value(1));
}

/// tau1(t) = sqrt(partition_min(rho1, t)); leaves exact arithmetic.
inline double tau1_lift(const Modulus<Rat>& rho1, long long t) {
  return std::sqrt(to_double(partition_min(rho1, t)));
}

/// The lifted square-root modulus as a reusable object.
inline Modulus<double> make_tau1_modulus(const Modulus<Rat>& rho1) {
  return Modulus<double>("tau1[" + rho1.name() + "]",
                         [rho1](long long t) { return tau1_lift(rho1, t); });
}

inline Modulus<double> as_double_modulus(const Modulus<Rat>& m) {
  return Modulus<double>(m.name(), [m](long long t) { return to_double(m.value(t)); });
}

/// Lower/upper compression moduli after the L1 -> Lp transfer:
/// nu1 = (eta1 with xi1 := sqrt-lift of rho1, tau1 as given)^max{1/2,1/p},
/// nu2 = t^max{1/2,1/p}.
inline std::pair<double, double> nu_moduli(const Modulus<Rat>& rho1, const Modulus<Rat>& tau1,
                                           double p, long long t) {
  if (p < 1.0) throw std::invalid_argument("nu_moduli: p must be >= 1");
  if (t < 0) throw std::invalid_argument("nu_moduli: negative argument");
  double exponent = std::max(0.5, 1.0 / p);
  Modulus<double> xi = make_tau1_modulus(rho1);
  Modulus<double> tau = as_double_modulus(tau1);
  double inner = eta1(xi, tau, t);
  double nu1 = std::pow(inner, exponent);
  double nu2 = std::pow(static_cast<double>(t), exponent);
  return {nu1, nu2};
}

// ---------------------------------------------------------------------------
// Bound arithmetic
// ---------------------------------------------------------------------------

/// Compression bound for a wreath product from factor exponents:
/// max{1/p, 1/2} · min{aG, aH/(1+aH)}, evaluated exactly.
inline Rat thm11_bound(const Rat& alpha_g, const Rat& alpha_h, const Rat& p) {
  if (alpha_g < Rat(0) || alpha_g > Rat(1) || alpha_h < Rat(0) || alpha_h > Rat(1)) {
    throw std::invalid_argument("thm11_bound: exponents must lie in [0,1]");
  }
  if (p < Rat(1)) throw std::invalid_argument("thm11_bound: p must be >= 1");
  Rat transfer = std::max(Rat(1) / p, Rat(1, 2));
  Rat core = std::min(alpha_g, alpha_h / (Rat(1) + alpha_h));
  return transfer * core;
}

/// Iterated bound a_1 = 1, a_{k+1} = min{1, a_k/(1+a_k)}; closes to 1/k.
inline Rat iterated_bound(int k) {
  if (k < 1) throw std::invalid_argument("iterated_bound: k must be >= 1");
  Rat a(1);
  for (int i = 1; i < k; ++i) {
    a = std::min(Rat(1), a / (Rat(1) + a));
  }
  return a;
}

// ---------------------------------------------------------------------------
// Unboundedness witness
// ---------------------------------------------------------------------------

template <class V>
struct WitnessReport {
  long long n = 0;   // least N with min(xi1(N), tau1(N)) >= M
  V eta_value{};     // eta1(M·N)
  bool ok = false;   // eta1(M·N) > M
};

/// Finds the least N with min(xi1(N), tau1(N)) >= M and checks the growth
/// witness eta1(M·N) > M. Both moduli must already be rescaled to >= 1 at 1.
template <class V>
inline WitnessReport<V> unboundedness_witness(const Modulus<V>& xi1, const Modulus<V>& tau1,
                                              long long m_target, long long n_cap = 100000) {
  if (m_target < 1) throw std::invalid_argument("unboundedness_witness: M must be >= 1");
  WitnessReport<V> out;
  for (long long n = 1; n <= n_cap; ++n) {
    if (!(xi1.value(n) < V(m_target)) && !(tau1.value(n) < V(m_target))) {
      out.n = n;
      out.eta_value = eta1(xi1, tau1, m_target * n);
      out.ok = V(m_target) < out.eta_value;
      return out;
    }
  }
  throw std::runtime_error("unboundedness_witness: no N found within cap (modulus bounded?)");
}

}  // namespace wreathcut

// Acceptance gate: nine pass/fail criteria covering the exact block
// identities, dual-route equivalences, the lower-bound chain, modulus
// calculus, equivariance and the Lp transfer. Each criterion prints one
// line; any failure flips the exit code.

#include <wreathcut/wreathcut.hpp>

#include "test_util.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace wreathcut;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

std::vector<GroupElement> int_window(long long lo, long long hi) {
  std::vector<GroupElement> w;
  for (long long v = lo; v <= hi; ++v) w.push_back(GroupElement::from_int(v));
  return w;
}

GroupElement random_z_wr_z(std::mt19937& rng) {
  std::uniform_int_distribution<long long> site(-6, 6), value(-3, 3), cursor(-6, 6);
  std::uniform_int_distribution<int> nlamps(0, 5);
  std::vector<std::pair<long long, long long>> lamps;
  int n = nlamps(rng);
  for (int i = 0; i < n; ++i) lamps.emplace_back(site(rng), value(rng));
  static wreathcut::GroupPtr g = testutil::z_wr_z();
  return testutil::lamps_valued(*g, lamps, cursor(rng));
}

// --------------------------------------------------------------------------
// 1. Lambda block: ||Lambda(f) - Lambda(g)||_1 == |supp f^-1 g|, exact.
// --------------------------------------------------------------------------
void criterion_lambda(std::string& detail) {
  GroupPtr g = testutil::c2_wr_z();
  Ball b = ball_with_lengths(*g, 5);
  std::vector<GroupElement> window = int_window(-7, 7);
  std::vector<SparseVector> lam;
  lam.reserve(b.elements.size());
  for (const auto& a : b.elements) lam.push_back(lambda_coords(*g, a, window));
  size_t pairs = 0;
  for (size_t i = 0; i < b.elements.size(); ++i) {
    for (size_t k = i + 1; k < b.elements.size(); ++k) {
      Rat d = SparseVector::l1_distance(lam[i], lam[k]);
      long long s = static_cast<long long>(support_diff(*g, b.elements[i], b.elements[k]).size());
      check(d == Rat(s), "lambda distance != support difference in ball(C2 wr Z, 5)");
      ++pairs;
    }
  }

  GroupPtr zz = testutil::z_wr_z();
  std::vector<GroupElement> wide = int_window(-8, 8);
  std::mt19937 rng(11);
  for (int t = 0; t < 1000; ++t) {
    GroupElement a = random_z_wr_z(rng), c = random_z_wr_z(rng);
    Rat d = SparseVector::l1_distance(lambda_coords(*zz, a, wide), lambda_coords(*zz, c, wide));
    long long s = static_cast<long long>(support_diff(*zz, a, c).size());
    check(d == Rat(s), "lambda distance != support difference on random Z wr Z pair");
  }
  detail = std::to_string(pairs) + " ball pairs + 1000 random pairs, exact";
}

// --------------------------------------------------------------------------
// 2. Cut closed forms against window enumeration, exact.
// --------------------------------------------------------------------------
void criterion_closed_forms(std::string& detail) {
  std::mt19937 rng(22);
  std::uniform_int_distribution<long long> zcoord(-50, 50), latcoord(-20, 20);
  std::uniform_int_distribution<int> zsize(2, 8), latsize(2, 6), coin(0, 1), dpick(2, 3);

  for (int t = 0; t < 250; ++t) {
    CutMeasure m = CutMeasure::threshold_z(coin(rng) ? Rat(1) : Rat(3, 2), coin(rng) != 0);
    std::vector<GroupElement> S;
    int n = zsize(rng);
    for (int i = 0; i < n; ++i) S.push_back(GroupElement::from_int(zcoord(rng)));
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    WindowEnumeration en = enumerate_window(m, S);
    Rat total(0);
    for (const auto& c : en.cuts) total += c.weight;
    check(total == separation_measure(m, S), "threshold closed form != enumeration total");
  }

  for (int t = 0; t < 250; ++t) {
    int d = dpick(rng);
    CutMeasure m = CutMeasure::halfspace_zd(d, coin(rng) ? Rat(1) : Rat(3, 2), coin(rng) != 0);
    std::vector<GroupElement> S;
    int n = latsize(rng);
    for (int i = 0; i < n; ++i) {
      std::vector<long long> v(static_cast<size_t>(d));
      for (auto& x : v) x = latcoord(rng);
      S.push_back(GroupElement::from_vector(std::move(v)));
    }
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    if (S.size() < 2) continue;
    WindowEnumeration en = enumerate_window(m, S);
    Rat total(0);
    for (const auto& c : en.cuts) total += c.weight;
    check(total == separation_measure(m, S), "halfspace closed form != enumeration total");
  }
  detail = "500 random sets, thresholds and halfspaces, exact";
}

// --------------------------------------------------------------------------
// 3. Lift sandwich: separation <= lifted distance <= 2 * separation.
// --------------------------------------------------------------------------
void criterion_sandwich(std::string& detail) {
  GroupPtr g = testutil::c2_wr_z();
  CutMeasure m = CutMeasure::threshold_z(Rat(1), true);
  std::vector<GroupElement> pop = ball(*g, 4);
  LiftedEnumeration en = enumerate_lifted(m, g, pop, int_window(-8, 8));
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  size_t pairs = 0;
  for (size_t i = 0; i < en.population.size(); ++i) {
    for (size_t k = i + 1; k < en.population.size(); ++k) {
      Rat mu = lifted_separation(m, *g, en.population[i], en.population[k]);
      Rat d = lifted_distance_exact(en, i, k);
      check(mu <= d && d <= Rat(2) * mu, "sandwich bracket violated in ball(C2 wr Z, 4)");
      if (mu > Rat(0)) {
        double r = to_double(d / mu);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      ++pairs;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu pairs, ratio range [%.6g, %.6g]", pairs, lo, hi);
  detail = buf;
}

// --------------------------------------------------------------------------
// 4. Word-metric surrogate equals BFS; ball sizes match frozen baselines.
// --------------------------------------------------------------------------
void criterion_word_metric(std::string& detail) {
  GroupPtr g = testutil::c2_wr_z();
  Ball b = ball_with_lengths(*g, 8);
  check(static_cast<long long>(b.elements.size()) == testutil::baseline_int("ball_c2_wr_z_r8_size"),
        "ball(C2 wr Z, 8) size drifted from baseline");
  GroupElement id = identity(*g);
  for (size_t i = 0; i < b.elements.size(); ++i) {
    check(lamplighter_length(*g, id, b.elements[i]) == b.lengths[i],
          "surrogate != BFS length on ball(C2 wr Z, 8)");
  }

  GroupPtr zz = testutil::z_wr_z();
  Ball bz = ball_with_lengths(*zz, 5);
  check(static_cast<long long>(bz.elements.size()) == testutil::baseline_int("ball_z_wr_z_r5_size"),
        "ball(Z wr Z, 5) size drifted from baseline");
  double rlo = testutil::baseline_double("lamplighter_ratio_lo");
  double rhi = testutil::baseline_double("lamplighter_ratio_hi");
  check(rlo > 0, "frozen ratio bracket must have positive lower end");
  GroupElement idz = identity(*zz);
  double seen_lo = std::numeric_limits<double>::infinity(), seen_hi = 0;
  for (size_t i = 0; i < bz.elements.size(); ++i) {
    if (bz.lengths[i] == 0) continue;
    double ratio = static_cast<double>(lamplighter_length(*zz, idz, bz.elements[i])) /
                   static_cast<double>(bz.lengths[i]);
    seen_lo = std::min(seen_lo, ratio);
    seen_hi = std::max(seen_hi, ratio);
    check(rlo <= ratio && ratio <= rhi, "surrogate/BFS ratio left the frozen bracket");
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu + %zu elements, ratio in [%.6g, %.6g]", b.elements.size(),
                bz.elements.size(), seen_lo, seen_hi);
  detail = buf;
}

// --------------------------------------------------------------------------
// 5. Compression fit over ball(C2 wr Z, 6): alpha_hat >= 0.4 and the fitted
//    lower bound holds on every sampled pair; the per-pair chain certifies
//    its own constant as well.
// --------------------------------------------------------------------------
void criterion_compression(std::string& detail) {
  GroupPtr g = testutil::c2_wr_z();
  EmbeddingConfig cfg(Rat(1), Rat(0), 1.0);
  CutMeasure m = CutMeasure::threshold_z(Rat(1), true);
  Ball b = ball_with_lengths(*g, 6);
  LiftedEnumeration en = enumerate_lifted(m, g, b.elements, int_window(-9, 9));
  std::vector<size_t> ids;
  ids.reserve(b.elements.size());
  for (const auto& a : b.elements) ids.push_back(population_index(en, a));

  PairDataset ds;
  ds.elements = b.elements;
  for (size_t i = 0; i < b.elements.size(); ++i) {
    for (size_t k = i + 1; k < b.elements.size(); ++k) {
      PairRow row;
      row.d = static_cast<double>(base_dist(*g, b.elements[i], b.elements[k]));
      row.D = to_double(psi_distance(en, cfg, ids[i], ids[k]));
      row.src_id = static_cast<int>(i);
      row.dst_id = static_cast<int>(k);
      ds.rows.push_back(row);
    }
  }
  FitResult fit = fit_compression(ds);
  check(fit.alpha_hat >= 0.4, "fitted exponent below 0.4");
  check(fit.kappa_hat > 0, "fitted constant not positive");
  for (const auto& row : ds.rows) {
    check(row.D >= fit.kappa_hat * std::pow(row.d, fit.alpha_hat) * (1.0 - 1e-12),
          "fitted lower bound violated on a sampled pair");
  }
  for (size_t i = 0; i < b.elements.size(); ++i) {
    for (size_t k = i + 1; k < b.elements.size(); ++k) {
      check(chain_check(m, *g, cfg, b.elements[i], b.elements[k]).ok,
            "per-pair chain inequality failed");
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu rows, alpha_hat=%.4f kappa_hat=%.4f", ds.rows.size(),
                fit.alpha_hat, fit.kappa_hat);
  detail = buf;
}

// --------------------------------------------------------------------------
// 6. Modulus DP against exhaustive composition enumeration; monotonicity;
//    unboundedness witnesses.
// --------------------------------------------------------------------------
Rat brute_partition(const Modulus<Rat>& m, long long t) {
  if (t == 0) return Rat(0);
  Rat best = m.value(t);
  for (long long j = 1; j < t; ++j) best = std::min(best, m.value(j) + brute_partition(m, t - j));
  return best;
}

void criterion_moduli(std::string& detail) {
  std::vector<Rat> harmonic{Rat(0)};
  for (long long k = 1; k <= 20; ++k) harmonic.push_back(harmonic.back() + Rat(1, k));
  std::vector<Rat> jump{Rat(0)};
  for (long long k = 1; k <= 20; ++k) jump.push_back(Rat(k) + (k >= 4 ? Rat(20) : Rat(0)));
  std::vector<Modulus<Rat>> fixtures = {
      Modulus<Rat>::identity(),
      Modulus<Rat>::power_int(2),
      Modulus<Rat>::linear(Rat(3, 2)),
      Modulus<Rat>::from_table("harmonic", harmonic),
      Modulus<Rat>::from_table("jump", jump),
  };
  for (const auto& m : fixtures) {
    for (long long t = 0; t <= 18; ++t) {
      check(partition_min(m, t) == brute_partition(m, t),
            "partition DP != brute force for " + m.name());
    }
  }
  for (const auto& xi : {fixtures[1], fixtures[0], fixtures[3]}) {
    for (const auto& tau : {fixtures[0], fixtures[2]}) {
      Rat prev(-1);
      for (long long t = 1; t <= 18; ++t) {
        Rat best = xi.value(t);
        for (long long j = 1; j < t; ++j) {
          best = std::min(best, xi.value(j) + brute_partition(tau, t - j));
        }
        Rat got = eta1(xi, tau, t);
        check(got == best, "eta1 != exhaustive split for " + xi.name() + "/" + tau.name());
        check(got > prev, "eta1 not strictly increasing for " + xi.name() + "/" + tau.name());
        prev = got;
      }
    }
  }
  for (long long m_target : {2LL, 5LL, 10LL}) {
    auto w = unboundedness_witness(Modulus<Rat>::identity(), Modulus<Rat>::identity(), m_target);
    check(w.ok && w.eta_value > Rat(m_target),
          "witness eta1(MN) <= M at M=" + std::to_string(m_target));
  }
  detail = "5 fixtures, t <= 18 exhaustive, witnesses M in {2,5,10}";
}

// --------------------------------------------------------------------------
// 7. Bound arithmetic, exact.
// --------------------------------------------------------------------------
void criterion_bounds(std::string& detail) {
  check(thm11_bound(Rat(1), Rat(1), Rat(2)) == Rat(1, 4), "thm11_bound(1,1,2) != 1/4");
  for (int k = 1; k <= 10; ++k) {
    check(iterated_bound(k) == Rat(1, k), "iterated_bound(" + std::to_string(k) + ") != 1/k");
  }
  detail = "thm11_bound(1,1,2)=1/4, iterated_bound(k)=1/k for k<=10";
}

// --------------------------------------------------------------------------
// 8. Cocycle identity, isometric action, measure invariance.
// --------------------------------------------------------------------------
void criterion_cocycle(std::string& detail) {
  GroupPtr g = testutil::c2_wr_z();
  CutMeasure m = CutMeasure::threshold_z(Rat(1), true);
  ActionContext ctx = make_action_context(g, m, -12, 12, EmbeddingConfig(Rat(1), Rat(0), 1.0));
  std::vector<GroupElement> b = ball(*g, 3);
  std::mt19937 rng(88);
  std::uniform_int_distribution<size_t> pick(0, b.size() - 1);
  for (int t = 0; t < 500; ++t) {
    const GroupElement& a = b[pick(rng)];
    const GroupElement& c = b[pick(rng)];
    CocycleReport rep = cocycle_check(ctx, a, c);
    check(rep.ok && rep.max_residual == Rat(0), "cocycle residual nonzero");
    SparseVector v = psi_centered(ctx, c);
    check(theta_apply(ctx, a, v).l1_norm() == v.l1_norm(), "action is not an l1 isometry");
  }
  for (long long h = -3; h <= 3; ++h) {
    check(measure_invariance_check(m, GroupElement::from_int(h), int_window(-20, 20)),
          "threshold measure not invariant under shift " + std::to_string(h));
  }
  detail = "500 pairs from ball(C2 wr Z, 3), shifts |h| <= 3, exact";
}

// --------------------------------------------------------------------------
// 9. Snowflake transfer: refit scales alpha_hat by max{1/2, 1/p}; the
//    transformed metric keeps the triangle inequality.
// --------------------------------------------------------------------------
void criterion_snowflake(std::string& detail) {
  for (double a : {0.5, 0.7, 1.0}) {
    PairDataset ds;
    for (long long d = 1; d <= 40; ++d) {
      PairRow row;
      row.d = static_cast<double>(d);
      row.D = std::pow(static_cast<double>(d), a);
      ds.rows.push_back(row);
    }
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      PairDataset snow = ds;
      for (auto& row : snow.rows) row.D = snowflake_distance(row.D, p);
      FitResult fit = fit_compression(snow);
      double want = a * std::max(0.5, 1.0 / p);
      check(std::abs(fit.alpha_hat - want) <= 1e-6,
            "refit exponent off by more than 1e-6 at p=" + std::to_string(p));
    }
  }
  std::mt19937 rng(99);
  std::uniform_int_distribution<long long> coord(-1000000, 1000000);
  for (int t = 0; t < 10000; ++t) {
    long long x = coord(rng), y = coord(rng), z = coord(rng);
    double ab = static_cast<double>(std::llabs(x - y));
    double bc = static_cast<double>(std::llabs(y - z));
    double ac = static_cast<double>(std::llabs(x - z));
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      check(snowflake_distance(ac, p) <=
                (snowflake_distance(ab, p) + snowflake_distance(bc, p)) * (1.0 + 1e-12),
            "snowflaked triangle inequality violated");
    }
  }
  detail = "3 exponents x 4 values of p within 1e-6; 10000 triples";
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(std::string&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "lambda block distance identity", 10, criterion_lambda},
      {2, "cut closed forms vs enumeration", 5, criterion_closed_forms},
      {3, "lifted cut sandwich bracket", 60, criterion_sandwich},
      {4, "word-metric surrogate vs BFS", 120, criterion_word_metric},
      {5, "compression fit and chain bound", 120, criterion_compression},
      {6, "modulus DP vs exhaustive search", 30, criterion_moduli},
      {7, "bound arithmetic", 1, criterion_bounds},
      {8, "equivariance cocycle identity", 60, criterion_cocycle},
      {9, "snowflake transfer refit", 10, criterion_snowflake},
  };
  int passed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    std::string why;
    try {
      c.run(detail);
    } catch (const std::exception& e) {
      ok = false;
      why = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && secs > c.limit_s) {
      ok = false;
      why = "time limit exceeded (" + std::to_string(c.limit_s) + "s)";
    }
    std::printf("[%d] %-36s %s %6.2fs  %s\n", c.id, c.name, ok ? "PASS" : "FAIL", secs,
                ok ? detail.c_str() : why.c_str());
    if (ok) ++passed;
  }
  std::printf("acceptance: %d/9 criteria passed\n", passed);
  return passed == 9 ? 0 : 1;
}

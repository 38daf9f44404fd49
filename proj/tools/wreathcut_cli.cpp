// Command-line front end: balls, explicit embeddings, verification suites,
// exponent arithmetic and compression fits for wreath products.
//
// Exit codes: 0 success (all assertions pass), 1 verification failure,
// 2 usage or domain error.

#include <wreathcut/wreathcut.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using nlohmann::json;
using namespace wreathcut;

// ---------------------------------------------------------------------------
// Shared option plumbing
// ---------------------------------------------------------------------------

struct Opts {
  std::string group = "wr(C2,Z)";
  int radius = -1;  // -1: subcommand default
  std::string window;
  std::string alpha = "1";
  std::string eps = "0";
  std::string p = "1";
  uint64_t seed = 1;
  int steps = -1;
  int count = -1;
  std::string out;
  std::string format;
  bool break_weight = false;
};

void add_group(CLI::App* sub, Opts& o) {
  sub->add_option("--group", o.group, "group spec: Z | Z^d | C<n> | wr(<lamp>,<base>)")
      ->capture_default_str();
}

void add_radius(CLI::App* sub, Opts& o, const char* help) {
  sub->add_option("--radius", o.radius, help);
}

void add_window(CLI::App* sub, Opts& o) {
  sub->add_option("--window", o.window, "base window LO:HI (default sized from the radius)");
}

void add_embedding(CLI::App* sub, Opts& o) {
  sub->add_option("--alpha", o.alpha, "target compression exponent, rational in (0,1]")
      ->capture_default_str();
  sub->add_option("--eps", o.eps, "exponent slack, rational in [0,alpha)")->capture_default_str();
}

void add_p(CLI::App* sub, Opts& o) {
  sub->add_option("--p", o.p, "Lp exponent, rational >= 1")->capture_default_str();
}

void add_out(CLI::App* sub, Opts& o) {
  sub->add_option("--out", o.out, "write output here instead of stdout");
}

void add_format(CLI::App* sub, Opts& o, const std::string& choices, std::string def) {
  o.format = std::move(def);
  sub->add_option("--format", o.format, "output format: " + choices)->capture_default_str();
}

long long radius_or(const Opts& o, long long def) { return o.radius < 0 ? def : o.radius; }

std::pair<long long, long long> window_or(const Opts& o, long long lo, long long hi) {
  if (o.window.empty()) return {lo, hi};
  auto colon = o.window.find(':', 1);  // skip a leading minus sign
  if (colon == std::string::npos) {
    throw std::invalid_argument("--window expects LO:HI, got '" + o.window + "'");
  }
  long long wlo, whi;
  try {
    wlo = std::stoll(o.window.substr(0, colon));
    whi = std::stoll(o.window.substr(colon + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("--window expects integer bounds, got '" + o.window + "'");
  }
  if (wlo >= whi) throw std::invalid_argument("--window needs LO < HI");
  return {wlo, whi};
}

size_t env_budget(size_t fallback) {
  const char* s = std::getenv("WREATH_EMBED_BUDGET");
  if (!s || !*s) return fallback;
  try {
    unsigned long long v = std::stoull(s);
    if (v == 0) throw std::invalid_argument("zero");
    return static_cast<size_t>(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("WREATH_EMBED_BUDGET must be a positive integer, got '" +
                                std::string(s) + "'");
  }
}

EmbeddingConfig embedding_config(const Opts& o) {
  return EmbeddingConfig(parse_rat(o.alpha), parse_rat(o.eps), to_double(parse_rat(o.p)));
}

GroupPtr wreath_over_z(const Opts& o, const char* who) {
  GroupPtr g = parse_group(o.group);
  if (g->kind != GroupKind::Wreath || g->base->kind != GroupKind::Integers) {
    throw std::invalid_argument(std::string(who) + " needs a wreath product over Z, got '" +
                                format_group(*g) + "'");
  }
  return g;
}

std::vector<GroupElement> int_window(long long lo, long long hi) {
  std::vector<GroupElement> w;
  w.reserve(static_cast<size_t>(hi - lo + 1));
  for (long long v = lo; v <= hi; ++v) w.push_back(GroupElement::from_int(v));
  return w;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open " + out_path);
  f << text;
}

std::string kv_lines(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string s;
  for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
  return s;
}

json kv_json(const std::vector<std::pair<std::string, std::string>>& kv) {
  json j = json::object();
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

std::string csv_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

// ---------------------------------------------------------------------------
// ball: enumerate a word-metric ball with lengths
// ---------------------------------------------------------------------------

int run_ball(const Opts& o) {
  GroupPtr g = parse_group(o.group);
  long long r = radius_or(o, 3);
  Ball b = ball_with_lengths(*g, static_cast<int>(r), env_budget(kDefaultBallBudget));

  if (o.format == "json") {
    json j;
    j["group"] = format_group(*g);
    j["radius"] = r;
    j["size"] = b.elements.size();
    json rows = json::array();
    for (size_t i = 0; i < b.elements.size(); ++i) {
      rows.push_back({{"id", i}, {"length", b.lengths[i]}, {"element", element_str(b.elements[i])}});
    }
    j["elements"] = std::move(rows);
    emit(j.dump(2) + "\n", o.out);
  } else if (o.format == "csv") {
    std::string s = "id,length,element\n";
    for (size_t i = 0; i < b.elements.size(); ++i) {
      s += std::to_string(i) + "," + std::to_string(b.lengths[i]) + "," +
           csv_quote(element_str(b.elements[i])) + "\n";
    }
    emit(s, o.out);
  } else {
    throw std::invalid_argument("ball: unknown format '" + o.format + "'");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// embed: materialize the embedding over a ball
// ---------------------------------------------------------------------------

struct EmbedData {
  GroupPtr g;
  EmbeddingConfig cfg;
  long long radius = 0;
  long long lo = 0, hi = 0;
  Ball ball;
  LiftedEnumeration en;
  std::vector<size_t> ids;  // ball order -> population index
};

EmbedData build_embedding(const Opts& o, long long default_radius) {
  EmbedData d;
  d.g = wreath_over_z(o, "embed");
  d.cfg = embedding_config(o);
  d.radius = radius_or(o, default_radius);
  std::tie(d.lo, d.hi) = window_or(o, -(d.radius + 3), d.radius + 3);
  d.ball = ball_with_lengths(*d.g, static_cast<int>(d.radius), env_budget(kDefaultBallBudget));
  CutMeasure m = CutMeasure::threshold_z(Rat(1), /*closed=*/true);
  d.en = enumerate_lifted(m, d.g, d.ball.elements, int_window(d.lo, d.hi),
                          env_budget(kDefaultLiftBudget));
  d.ids.reserve(d.ball.elements.size());
  for (const auto& a : d.ball.elements) d.ids.push_back(population_index(d.en, a));
  return d;
}

std::vector<std::pair<std::string, std::string>> embed_metadata(const EmbedData& d,
                                                                const Opts& o) {
  return {
      {"group", format_group(*d.g)},
      {"policy", "exhaustive_ball"},
      {"radius", std::to_string(d.radius)},
      {"window_lo", std::to_string(d.lo)},
      {"window_hi", std::to_string(d.hi)},
      {"alpha", rat_string(d.cfg.alpha)},
      {"eps", rat_string(d.cfg.eps)},
      {"p", format_double12(d.cfg.p)},
      {"c1", rat_string(d.cfg.c1())},
      {"c2", rat_string(d.cfg.c2())},
      {"cut_count", std::to_string(d.en.cuts.size())},
      {"population", std::to_string(d.en.population.size())},
  };
}

int run_embed(const Opts& o) {
  EmbedData d = build_embedding(o, 3);
  size_t n = d.ball.elements.size();

  if (o.format == "json") {
    json j;
    for (const auto& [k, v] : embed_metadata(d, o)) j[k] = v;
    json elems = json::array();
    for (const auto& a : d.ball.elements) elems.push_back(element_str(a));
    j["elements"] = std::move(elems);
    json matrix = json::array();
    for (size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (size_t k = 0; k < n; ++k) {
        Rat dist = i == k ? Rat(0)
                          : psi_distance(d.en, d.cfg, d.ids[std::min(i, k)], d.ids[std::max(i, k)]);
        row.push_back(rat_string(dist));
      }
      matrix.push_back(std::move(row));
    }
    j["matrix"] = std::move(matrix);
    emit(j.dump(2) + "\n", o.out);
  } else if (o.format == "csv") {
    PairDataset ds;
    ds.elements = d.ball.elements;
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = i + 1; k < n; ++k) {
        PairRow row;
        row.d = static_cast<double>(base_dist(*d.g, d.ball.elements[i], d.ball.elements[k]));
        row.D = snowflake_distance(to_double(psi_distance(d.en, d.cfg, d.ids[i], d.ids[k])),
                                   d.cfg.p);
        row.src_id = static_cast<int>(i);
        row.dst_id = static_cast<int>(k);
        ds.rows.push_back(row);
      }
    }
    for (const auto& [k, v] : embed_metadata(d, o)) ds.metadata[k] = v;
    if (o.out.empty()) {
      std::ostringstream s;
      write_dataset_csv(ds, s);
      std::cout << s.str();
    } else {
      write_dataset_files(ds, o.out, o.out + ".meta");
      std::cout << "rows=" << ds.rows.size() << "\ncsv=" << o.out << "\nmeta=" << o.out + ".meta"
                << "\n";
    }
  } else {
    throw std::invalid_argument("embed: unknown format '" + o.format + "'");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bounds: exact exponent arithmetic for a group spec
// ---------------------------------------------------------------------------

Rat core_exponent(const GroupDescriptor& g) {
  if (g.kind != GroupKind::Wreath) return Rat(1);
  return thm11_bound(core_exponent(*g.base), core_exponent(*g.lamp), Rat(1));
}

int run_bounds(const Opts& o) {
  GroupPtr g = parse_group(o.group);
  Rat p = parse_rat(o.p);
  Rat core = core_exponent(*g);
  Rat transfer = std::max(Rat(1) / p, Rat(1, 2));
  std::vector<std::pair<std::string, std::string>> kv = {
      {"group", format_group(*g)},
      {"wreath_depth", std::to_string(wreath_depth(*g))},
      {"p", rat_string(p)},
      {"l1_exponent", rat_string(core)},
      {"lp_exponent", rat_string(transfer * core)},
  };
  if (g->kind == GroupKind::Wreath) {
    kv.emplace_back("base_exponent", rat_string(core_exponent(*g->base)));
    kv.emplace_back("lamp_exponent", rat_string(core_exponent(*g->lamp)));
  }
  if (o.format == "json") {
    emit(kv_json(kv).dump(2) + "\n", o.out);
  } else if (o.format == "kv") {
    emit(kv_lines(kv), o.out);
  } else {
    throw std::invalid_argument("bounds: unknown format '" + o.format + "'");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify: dual-route checks with optional fault injection
// ---------------------------------------------------------------------------

int verify_lift_sandwich(const Opts& o) {
  GroupPtr g = wreath_over_z(o, "verify lift-sandwich");
  long long r = radius_or(o, 3);
  auto [lo, hi] = window_or(o, -(r + 3), r + 3);
  std::vector<GroupElement> pop = ball(*g, static_cast<int>(r), env_budget(kDefaultBallBudget));

  CutMeasure honest = CutMeasure::threshold_z(Rat(1), /*closed=*/true);
  // Fault injection: the closed-form route gets a doubled weight, so the two
  // routes must disagree on every separated pair.
  CutMeasure direct_measure =
      CutMeasure::threshold_z(o.break_weight ? Rat(2) : Rat(1), /*closed=*/true);

  LiftedEnumeration en =
      enumerate_lifted(honest, g, pop, int_window(lo, hi), env_budget(kDefaultLiftBudget));

  size_t n = en.population.size();
  size_t pairs = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = i + 1; k < n; ++k) {
      const GroupElement& a = en.population[i];
      const GroupElement& b = en.population[k];
      Rat exact = lifted_distance_exact(en, i, k);
      Rat direct = lifted_distance_direct(direct_measure, *g, a, b);
      Rat mu = lifted_separation(honest, *g, a, b);
      ++pairs;
      bool routes_agree = exact == direct;
      bool sandwich = mu <= exact && exact <= Rat(2) * mu;
      if (!routes_agree || !sandwich) {
        std::cout << "counterexample: a=" << element_str(a) << " b=" << element_str(b)
                  << " exact=" << rat_string(exact) << " direct=" << rat_string(direct)
                  << " separation=" << rat_string(mu) << "\n";
        std::cout << "verify lift-sandwich: FAIL ("
                  << (routes_agree ? "sandwich violated" : "route mismatch") << ")\n";
        return 1;
      }
      if (mu > Rat(0)) {
        double ratio = to_double(exact / mu);
        min_ratio = std::min(min_ratio, ratio);
        max_ratio = std::max(max_ratio, ratio);
      }
    }
  }
  std::cout << kv_lines({{"group", format_group(*g)},
                         {"radius", std::to_string(r)},
                         {"window", std::to_string(lo) + ":" + std::to_string(hi)},
                         {"population", std::to_string(n)},
                         {"cuts", std::to_string(en.cuts.size())},
                         {"pairs", std::to_string(pairs)},
                         {"min_ratio", format_double12(min_ratio)},
                         {"max_ratio", format_double12(max_ratio)},
                         {"result", "pass"}});
  return 0;
}

int verify_cocycle(const Opts& o) {
  GroupPtr g = wreath_over_z(o, "verify cocycle");
  long long r = radius_or(o, 3);
  auto [lo, hi] = window_or(o, -(3 * r + 3), 3 * r + 3);
  ActionContext ctx = make_action_context(g, CutMeasure::threshold_z(Rat(1), true), lo, hi,
                                          embedding_config(o));
  std::vector<GroupElement> b = ball(*g, static_cast<int>(r), env_budget(kDefaultBallBudget));

  std::vector<std::pair<size_t, size_t>> todo;
  size_t n = b.size();
  if (n * n <= 4096) {
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) todo.emplace_back(i, k);
  } else {
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<size_t> pick(0, n - 1);
    for (int i = 0; i < 2000; ++i) todo.emplace_back(pick(rng), pick(rng));
  }

  Rat max_residual(0);
  for (auto [i, k] : todo) {
    CocycleReport rep = cocycle_check(ctx, b[i], b[k]);
    max_residual = std::max(max_residual, rep.max_residual);
    if (!rep.ok) {
      std::cout << "counterexample: a=" << element_str(b[i]) << " b=" << element_str(b[k])
                << " residual=" << rat_string(rep.max_residual) << "\n";
      std::cout << "verify cocycle: FAIL\n";
      return 1;
    }
  }
  std::cout << kv_lines({{"group", format_group(*g)},
                         {"radius", std::to_string(r)},
                         {"window", std::to_string(lo) + ":" + std::to_string(hi)},
                         {"pairs", std::to_string(todo.size())},
                         {"max_residual", rat_string(max_residual)},
                         {"result", "pass"}});
  return 0;
}

Rat brute_partition_min(const Modulus<Rat>& m, long long t, std::vector<Rat>& memo,
                        std::vector<char>& have) {
  if (t == 0) return Rat(0);
  if (have[static_cast<size_t>(t)]) return memo[static_cast<size_t>(t)];
  Rat best = m.value(t);
  for (long long j = 1; j < t; ++j) {
    best = std::min(best, m.value(j) + brute_partition_min(m, t - j, memo, have));
  }
  memo[static_cast<size_t>(t)] = best;
  have[static_cast<size_t>(t)] = 1;
  return best;
}

int verify_moduli(const Opts&) {
  size_t checks = 0, failures = 0;
  auto expect = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      std::cout << "counterexample: " << what << "\n";
    }
  };

  std::vector<Modulus<Rat>> fixtures = {
      Modulus<Rat>::identity(),
      Modulus<Rat>::power_int(2),
      Modulus<Rat>::linear(Rat(3, 2)),
      Modulus<Rat>::from_table("concave", {Rat(0), Rat(1), Rat(3, 2), Rat(11, 6), Rat(25, 12),
                                           Rat(137, 60), Rat(49, 20), Rat(363, 140), Rat(761, 280),
                                           Rat(7129, 2520), Rat(7381, 2520), Rat(83711, 27720),
                                           Rat(86021, 27720), Rat(1145993, 360360),
                                           Rat(1171733, 360360), Rat(1195757, 360360)}),
  };
  for (const auto& m : fixtures) {
    std::vector<Rat> memo(16);
    std::vector<char> have(16, 0);
    for (long long t = 0; t <= 14; ++t) {
      expect(partition_min(m, t) == brute_partition_min(m, t, memo, have),
             "partition_min(" + m.name() + ", " + std::to_string(t) + ") != brute recursion");
    }
  }

  // eta1 against a direct scan over the split point.
  Modulus<Rat> id = Modulus<Rat>::identity();
  Modulus<Rat> sq = Modulus<Rat>::power_int(2);
  for (long long t = 1; t <= 12; ++t) {
    Rat best = sq.value(t);  // j = t, empty partition part
    for (long long j = 1; j < t; ++j) best = std::min(best, sq.value(j) + partition_min(id, t - j));
    expect(eta1(sq, id, t) == best, "eta1(power2, identity, " + std::to_string(t) + ")");
    expect(eta1(id, id, t) == Rat(t), "eta1(identity, identity, " + std::to_string(t) + ")");
  }
  for (long long t = 1; t <= 10; ++t) {
    expect(eta2(id, id, t) == Rat(2 * t * t), "eta2(identity pair, " + std::to_string(t) + ")");
    expect(eta2_linear(sq, id, t) <= eta2(sq, id, t),
           "eta2_linear cap at t=" + std::to_string(t));
  }

  expect(thm11_bound(Rat(1), Rat(1), Rat(2)) == Rat(1, 4), "thm11_bound(1,1,2) != 1/4");
  expect(thm11_bound(Rat(1), Rat(1), Rat(1)) == Rat(1, 2), "thm11_bound(1,1,1) != 1/2");
  expect(thm11_bound(Rat(1, 2), Rat(1), Rat(1)) == Rat(1, 2), "thm11_bound(1/2,1,1) != 1/2");
  for (int k = 1; k <= 8; ++k) {
    expect(iterated_bound(k) == Rat(1, k), "iterated_bound(" + std::to_string(k) + ") != 1/k");
  }
  for (long long m_target : {2LL, 5LL, 10LL}) {
    auto w = unboundedness_witness(id, id, m_target);
    expect(w.ok && w.n == m_target && w.eta_value == Rat(m_target * m_target),
           "unboundedness_witness(identity, identity, M=" + std::to_string(m_target) + ")");
  }

  std::cout << kv_lines({{"checks", std::to_string(checks)},
                         {"failures", std::to_string(failures)},
                         {"result", failures == 0 ? "pass" : "fail"}});
  return failures == 0 ? 0 : 1;
}

int verify_chain(const Opts& o) {
  GroupPtr g = wreath_over_z(o, "verify chain");
  long long r = radius_or(o, 3);
  EmbeddingConfig cfg = embedding_config(o);
  CutMeasure m = CutMeasure::threshold_z(Rat(1), /*closed=*/true);
  std::vector<GroupElement> b = ball(*g, static_cast<int>(r), env_budget(kDefaultBallBudget));

  size_t pairs = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < b.size(); ++i) {
    for (size_t k = i + 1; k < b.size(); ++k) {
      ChainReport rep = chain_check(m, *g, cfg, b[i], b[k]);
      ++pairs;
      if (!rep.ok) {
        std::cout << "counterexample: a=" << element_str(b[i]) << " b=" << element_str(b[k])
                  << " l1=" << rat_string(rep.l1) << " required="
                  << format_double12(rep.kappa * rep.distance_power) << "\n";
        std::cout << "verify chain: FAIL\n";
        return 1;
      }
      if (rep.distance_power > 0) {
        min_margin = std::min(min_margin, to_double(rep.l1) / rep.distance_power);
      }
    }
  }
  double e = cfg.chain_exponent();
  std::cout << kv_lines({{"group", format_group(*g)},
                         {"radius", std::to_string(r)},
                         {"pairs", std::to_string(pairs)},
                         {"exponent", format_double12(e)},
                         {"kappa_regular", format_double12(std::pow(6.0, -e))},
                         {"kappa_degenerate", rat_string(cfg.c1())},
                         {"min_margin", format_double12(min_margin)},
                         {"result", "pass"}});
  return 0;
}

int run_verify(const Opts& o, const std::string& which) {
  if (o.break_weight && which != "lift-sandwich") {
    throw std::invalid_argument("--break-weight only applies to 'lift-sandwich'");
  }
  if (which == "lift-sandwich") return verify_lift_sandwich(o);
  if (which == "cocycle") return verify_cocycle(o);
  if (which == "moduli") return verify_moduli(o);
  if (which == "chain") return verify_chain(o);
  throw std::invalid_argument("verify: unknown check '" + which +
                              "' (expected lift-sandwich|cocycle|moduli|chain)");
}

// ---------------------------------------------------------------------------
// compression: sample pairs, fit the exponent, report distortion
// ---------------------------------------------------------------------------

int run_compression(const Opts& o) {
  GroupPtr g = wreath_over_z(o, "compression");
  EmbeddingConfig cfg = embedding_config(o);

  bool walk = o.steps >= 0 || o.count >= 0;
  SamplePolicy policy = walk ? SamplePolicy::random_walk(o.steps < 0 ? 12 : o.steps,
                                                         o.count < 0 ? 200 : o.count, o.seed)
                             : SamplePolicy::exhaustive_ball(static_cast<int>(radius_or(o, 4)));

  // Two phases: draw the pairs first, then embed the sampled population.
  PairDataset ds = sample_pairs(g, policy, [](const GroupElement&, const GroupElement&) {
    return 0.0;
  }, env_budget(kDefaultBallBudget));

  long long reach = walk ? policy.steps : policy.radius;
  auto [lo, hi] = window_or(o, -(reach + 3), reach + 3);
  CutMeasure m = CutMeasure::threshold_z(Rat(1), /*closed=*/true);
  LiftedEnumeration en =
      enumerate_lifted(m, g, ds.elements, int_window(lo, hi), env_budget(kDefaultLiftBudget));
  for (auto& row : ds.rows) {
    size_t ia = population_index(en, ds.elements[static_cast<size_t>(row.src_id)]);
    size_t ib = population_index(en, ds.elements[static_cast<size_t>(row.dst_id)]);
    size_t i = std::min(ia, ib), k = std::max(ia, ib);
    row.D = snowflake_distance(to_double(psi_distance(en, cfg, i, k)), cfg.p);
  }

  FitResult fit = fit_compression(ds);
  DistortionReport dist = distortion_report(ds);

  ds.metadata["group"] = format_group(*g);
  ds.metadata["alpha"] = rat_string(cfg.alpha);
  ds.metadata["eps"] = rat_string(cfg.eps);
  ds.metadata["p"] = format_double12(cfg.p);
  ds.metadata["window_lo"] = std::to_string(lo);
  ds.metadata["window_hi"] = std::to_string(hi);
  ds.metadata["cut_count"] = std::to_string(en.cuts.size());
  ds.metadata["population"] = std::to_string(en.population.size());
  ds.metadata["alpha_hat"] = format_double12(fit.alpha_hat);
  ds.metadata["kappa_hat"] = format_double12(fit.kappa_hat);
  ds.metadata["lipschitz"] = format_double12(dist.lipschitz);
  ds.metadata["max_expansion"] = format_double12(dist.max_expansion);
  ds.metadata["min_ratio"] = format_double12(dist.min_ratio);
  ds.metadata["rows"] = std::to_string(ds.rows.size());

  if (!o.out.empty()) write_dataset_files(ds, o.out, o.out + ".meta");

  std::vector<std::pair<std::string, std::string>> kv(ds.metadata.begin(), ds.metadata.end());
  if (o.format == "json") {
    std::cout << kv_json(kv).dump(2) << "\n";
  } else if (o.format == "kv") {
    std::cout << kv_lines(kv);
  } else {
    throw std::invalid_argument("compression: unknown format '" + o.format + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constructive L1/Lp embeddings of wreath products"};
  app.require_subcommand(1);
  int rc = 0;

  Opts ball_o;
  CLI::App* ball_cmd = app.add_subcommand("ball", "enumerate a word-metric ball with lengths");
  add_group(ball_cmd, ball_o);
  add_radius(ball_cmd, ball_o, "ball radius (default 3)");
  add_out(ball_cmd, ball_o);
  add_format(ball_cmd, ball_o, "csv|json", "csv");
  ball_cmd->callback([&] { rc = run_ball(ball_o); });

  Opts embed_o;
  CLI::App* embed_cmd =
      app.add_subcommand("embed", "materialize the cut embedding over a ball");
  add_group(embed_cmd, embed_o);
  add_radius(embed_cmd, embed_o, "ball radius (default 3)");
  add_window(embed_cmd, embed_o);
  add_embedding(embed_cmd, embed_o);
  add_p(embed_cmd, embed_o);
  add_out(embed_cmd, embed_o);
  add_format(embed_cmd, embed_o, "json (exact distance matrix) | csv (pair rows + .meta sidecar)",
             "json");
  embed_cmd->callback([&] { rc = run_embed(embed_o); });

  Opts bounds_o;
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "exact compression-exponent arithmetic for a group spec");
  add_group(bounds_cmd, bounds_o);
  add_p(bounds_cmd, bounds_o);
  add_out(bounds_cmd, bounds_o);
  add_format(bounds_cmd, bounds_o, "kv|json", "kv");
  bounds_cmd->callback([&] { rc = run_bounds(bounds_o); });

  Opts verify_o;
  std::string which;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run one verification suite");
  verify_cmd->add_option("which", which, "lift-sandwich | cocycle | moduli | chain")->required();
  add_group(verify_cmd, verify_o);
  add_radius(verify_cmd, verify_o, "ball radius (default 3)");
  add_window(verify_cmd, verify_o);
  add_embedding(verify_cmd, verify_o);
  add_p(verify_cmd, verify_o);
  verify_cmd->add_option("--seed", verify_o.seed, "RNG seed for sampled pair sets")
      ->capture_default_str();
  verify_cmd->add_flag("--break-weight", verify_o.break_weight,
                       "fault injection: double the closed-form route's cut weight; "
                       "lift-sandwich must then fail with a counterexample");
  verify_cmd->callback([&] { rc = run_verify(verify_o, which); });

  Opts comp_o;
  CLI::App* comp_cmd =
      app.add_subcommand("compression", "sample pairs, fit the compression exponent");
  add_group(comp_cmd, comp_o);
  add_radius(comp_cmd, comp_o, "exhaustive ball radius (default 4)");
  comp_cmd->add_option("--steps", comp_o.steps,
                       "random-walk steps per endpoint (switches to walk sampling)");
  comp_cmd->add_option("--count", comp_o.count, "random-walk pair count (default 200)");
  comp_cmd->add_option("--seed", comp_o.seed, "random-walk RNG seed")->capture_default_str();
  add_window(comp_cmd, comp_o);
  add_embedding(comp_cmd, comp_o);
  add_p(comp_cmd, comp_o);
  add_out(comp_cmd, comp_o);
  add_format(comp_cmd, comp_o, "kv|json", "kv");
  comp_cmd->callback([&] { rc = run_compression(comp_o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "wreathcut: error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

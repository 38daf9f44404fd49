#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wreathcut/group.hpp"
#include "wreathcut/wreath.hpp"

namespace wreathcut {

// ---------------------------------------------------------------------------
// Pair datasets
// ---------------------------------------------------------------------------

struct PairRow {
  double d = 0;   // word-metric distance (exact integer, stored as double)
  double D = 0;   // embedded distance
  int src_id = 0;
  int dst_id = 0;
};

struct PairDataset {
  std::vector<GroupElement> elements;           // id -> element
  std::vector<PairRow> rows;                    // d > 0 on every row
  std::map<std::string, std::string> metadata;  // flat sidecar, sorted keys
};

struct SamplePolicy {
  enum class Kind { ExhaustiveBall, RandomWalk };
  Kind kind = Kind::ExhaustiveBall;
  int radius = 0;       // ExhaustiveBall
  int steps = 0;        // RandomWalk: generator steps per endpoint
  int count = 0;        // RandomWalk: pairs to draw
  uint64_t seed = 0;    // RandomWalk: mandatory for reproducibility

  static SamplePolicy exhaustive_ball(int r) {
    SamplePolicy p;
    p.kind = Kind::ExhaustiveBall;
    p.radius = r;
    return p;
  }
  static SamplePolicy random_walk(int steps, int count, uint64_t seed) {
    SamplePolicy p;
    p.kind = Kind::RandomWalk;
    p.steps = steps;
    p.count = count;
    p.seed = seed;
    return p;
  }
};

using PairDistance = std::function<double(const GroupElement&, const GroupElement&)>;

/// Samples element pairs and records (word distance, embedded distance) rows.
/// Word distance comes from the closed forms (lamplighter length for wreath
/// products); the embedded distance is supplied by the caller. Zero-distance
/// pairs never enter the dataset.
inline PairDataset sample_pairs(GroupPtr g, const SamplePolicy& policy,
                                const PairDistance& embedded,
                                size_t budget = kDefaultBallBudget) {
  PairDataset ds;
  if (policy.kind == SamplePolicy::Kind::ExhaustiveBall) {
    ds.elements = ball(*g, policy.radius, budget);
    for (size_t i = 0; i < ds.elements.size(); ++i) {
      for (size_t j = i + 1; j < ds.elements.size(); ++j) {
        PairRow row;
        row.d = static_cast<double>(base_dist(*g, ds.elements[i], ds.elements[j]));
        row.D = embedded(ds.elements[i], ds.elements[j]);
        row.src_id = static_cast<int>(i);
        row.dst_id = static_cast<int>(j);
        ds.rows.push_back(row);
      }
    }
    ds.metadata["policy"] = "exhaustive_ball";
    ds.metadata["radius"] = std::to_string(policy.radius);
  } else {
    std::mt19937_64 rng(policy.seed);
    std::vector<GroupElement> gens = generators(*g);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    auto walk = [&]() {
      GroupElement cur = identity(*g);
      for (int s = 0; s < policy.steps; ++s) cur = mul(*g, cur, gens[pick(rng)]);
      return cur;
    };
    for (int i = 0; i < policy.count; ++i) {
      GroupElement a = walk();
      GroupElement b = walk();
      for (int retry = 0; a == b && retry < 64; ++retry) b = walk();
      if (a == b) continue;  // both walks collapsed; skip the degenerate pair
      PairRow row;
      row.src_id = static_cast<int>(ds.elements.size());
      ds.elements.push_back(a);
      row.dst_id = static_cast<int>(ds.elements.size());
      ds.elements.push_back(b);
      row.d = static_cast<double>(base_dist(*g, a, b));
      row.D = embedded(a, b);
      ds.rows.push_back(row);
    }
    ds.metadata["policy"] = "random_walk";
    ds.metadata["steps"] = std::to_string(policy.steps);
    ds.metadata["count"] = std::to_string(policy.count);
    ds.metadata["seed"] = std::to_string(policy.seed);
  }
  return ds;
}

// ---------------------------------------------------------------------------
// Compression fit and distortion summaries
// ---------------------------------------------------------------------------

struct FitResult {
  double alpha_hat = 0;
  double kappa_hat = 0;
};

/// Lower-envelope power-law fit: for each distinct d take the minimum D, run
/// least squares on log D_min vs log d, then shrink kappa to the largest
/// constant with D >= kappa·d^alpha on every row. The envelope, not the mean,
/// is what a compression exponent bounds.
inline FitResult fit_compression(const PairDataset& ds) {
  std::map<double, double> envelope;  // d -> min D
  for (const auto& row : ds.rows) {
    if (row.d <= 0) throw std::invalid_argument("fit_compression: nonpositive distance row");
    auto [it, fresh] = envelope.try_emplace(row.d, row.D);
    if (!fresh) it->second = std::min(it->second, row.D);
  }
  if (envelope.size() < 2) {
    throw std::invalid_argument("fit_compression: need at least two distinct distances");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [d, dmin] : envelope) {
    if (dmin <= 0) throw std::invalid_argument("fit_compression: zero envelope value");
    double x = std::log(d), y = std::log(dmin);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(envelope.size());
  FitResult fit;
  fit.alpha_hat = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double kappa = std::numeric_limits<double>::infinity();
  for (const auto& row : ds.rows) {
    kappa = std::min(kappa, row.D / std::pow(row.d, fit.alpha_hat));
  }
  fit.kappa_hat = kappa;
  return fit;
}

struct DistortionReport {
  double max_expansion = 0;  // max D/d over all rows
  double min_ratio = 0;      // min D/d over all rows
  double lipschitz = 0;      // max D/d over unit-distance rows (all rows if none)
};

inline DistortionReport distortion_report(const PairDataset& ds) {
  if (ds.rows.empty()) throw std::invalid_argument("distortion_report: empty dataset");
  DistortionReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  double unit_max = -1;
  for (const auto& row : ds.rows) {
    double ratio = row.D / row.d;
    rep.max_expansion = std::max(rep.max_expansion, ratio);
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    if (row.d == 1.0) unit_max = std::max(unit_max, ratio);
  }
  rep.lipschitz = unit_max >= 0 ? unit_max : rep.max_expansion;
  return rep;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

inline std::string format_double12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline void write_dataset_csv(const PairDataset& ds, std::ostream& out) {
  out << "d,D,src_id,dst_id\n";
  for (const auto& row : ds.rows) {
    out << format_double12(row.d) << "," << format_double12(row.D) << "," << row.src_id << ","
        << row.dst_id << "\n";
  }
}

inline void write_metadata(const PairDataset& ds, std::ostream& out) {
  for (const auto& [key, value] : ds.metadata) out << key << "=" << value << "\n";
}

inline void write_dataset_files(const PairDataset& ds, const std::string& csv_path,
                                const std::string& meta_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open " + csv_path);
  write_dataset_csv(ds, csv);
  std::ofstream meta(meta_path);
  if (!meta) throw std::runtime_error("cannot open " + meta_path);
  write_metadata(ds, meta);
}

}  // namespace wreathcut

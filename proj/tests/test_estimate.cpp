#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "wreathcut/estimate.hpp"

using namespace wreathcut;

namespace {

PairDataset synthetic_power(GroupPtr g, int radius, double exponent, double scale = 1.0) {
  return sample_pairs(g, SamplePolicy::exhaustive_ball(radius),
                      [=](const GroupElement& a, const GroupElement& b) {
                        double d = static_cast<double>(base_dist(*g, a, b));
                        return scale * std::pow(d, exponent);
                      });
}

}  // namespace

TEST_CASE("exhaustive ball sampling") {
  auto z = GroupDescriptor::integers();
  PairDataset ds = sample_pairs(z, SamplePolicy::exhaustive_ball(2),
                                [](const GroupElement&, const GroupElement&) { return 1.0; });
  CHECK(ds.elements.size() == 5);
  CHECK(ds.rows.size() == 10);  // all unordered pairs
  CHECK(ds.metadata.at("policy") == "exhaustive_ball");
  CHECK(ds.metadata.at("radius") == "2");
  for (const auto& row : ds.rows) {
    CHECK(row.src_id < row.dst_id);
    long long x = ds.elements[static_cast<size_t>(row.src_id)].as_int();
    long long y = ds.elements[static_cast<size_t>(row.dst_id)].as_int();
    CHECK(row.d == static_cast<double>(std::llabs(x - y)));
  }

  SECTION("wreath products use the lamplighter metric") {
    auto g = testutil::c2_wr_z();
    Ball b = ball_with_lengths(*g, 3);
    PairDataset w = sample_pairs(g, SamplePolicy::exhaustive_ball(3),
                                 [](const GroupElement&, const GroupElement&) { return 1.0; });
    CHECK(w.elements.size() == b.elements.size());
    CHECK(w.rows.size() == b.elements.size() * (b.elements.size() - 1) / 2);
    for (const auto& row : w.rows) {
      if (row.src_id != 0) continue;  // identity is always id 0
      CHECK(row.d == static_cast<double>(b.lengths[static_cast<size_t>(row.dst_id)]));
    }
  }
}

TEST_CASE("random walk sampling is seeded and reproducible") {
  auto g = testutil::c2_wr_z();
  auto embed = [&](const GroupElement& a, const GroupElement& b) {
    return std::sqrt(static_cast<double>(lamplighter_length(*g, a, b)));
  };
  PairDataset first = sample_pairs(g, SamplePolicy::random_walk(8, 50, 1234), embed);
  PairDataset second = sample_pairs(g, SamplePolicy::random_walk(8, 50, 1234), embed);
  PairDataset other = sample_pairs(g, SamplePolicy::random_walk(8, 50, 99), embed);

  REQUIRE(first.rows.size() == second.rows.size());
  CHECK(first.rows.size() <= 50);
  CHECK(!first.rows.empty());
  bool identical = true;
  for (size_t i = 0; i < first.rows.size(); ++i) {
    identical = identical && first.rows[i].d == second.rows[i].d &&
                first.rows[i].D == second.rows[i].D &&
                first.rows[i].src_id == second.rows[i].src_id &&
                first.rows[i].dst_id == second.rows[i].dst_id;
    CHECK(first.rows[i].d >= 1.0);
    CHECK(first.rows[i].dst_id == first.rows[i].src_id + 1);
  }
  CHECK(identical);
  CHECK(first.metadata.at("seed") == "1234");
  CHECK(first.metadata.at("policy") == "random_walk");

  bool differs = first.rows.size() != other.rows.size();
  for (size_t i = 0; !differs && i < first.rows.size(); ++i) {
    differs = first.rows[i].d != other.rows[i].d || first.rows[i].D != other.rows[i].D;
  }
  CHECK(differs);
}

TEST_CASE("compression fit recovers exact power laws") {
  auto z = GroupDescriptor::integers();

  SECTION("square root data") {
    FitResult fit = fit_compression(synthetic_power(z, 6, 0.5));
    CHECK(fit.alpha_hat == Catch::Approx(0.5).epsilon(1e-9));
    CHECK(fit.kappa_hat == Catch::Approx(1.0).epsilon(1e-9));
  }

  SECTION("linear data") {
    FitResult fit = fit_compression(synthetic_power(z, 6, 1.0, 2.5));
    CHECK(fit.alpha_hat == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(fit.kappa_hat == Catch::Approx(2.5).epsilon(1e-9));
  }

  SECTION("constant data fits exponent zero") {
    PairDataset ds = sample_pairs(z, SamplePolicy::exhaustive_ball(4),
                                  [](const GroupElement&, const GroupElement&) { return 3.0; });
    FitResult fit = fit_compression(ds);
    CHECK(std::abs(fit.alpha_hat) < 1e-12);
    CHECK(fit.kappa_hat == Catch::Approx(3.0));
  }

  SECTION("the envelope ignores inflated rows") {
    auto g = GroupDescriptor::integers();
    PairDataset ds = sample_pairs(g, SamplePolicy::exhaustive_ball(6),
                                  [&](const GroupElement& a, const GroupElement& b) {
                                    double d = static_cast<double>(base_dist(*g, a, b));
                                    double base = std::sqrt(d);
                                    // pairs touching the identity pay extra
                                    bool touches = a == identity(*g) || b == identity(*g);
                                    return touches ? 1.5 * base : base;
                                  });
    FitResult fit = fit_compression(ds);
    CHECK(fit.alpha_hat == Catch::Approx(0.5).epsilon(1e-9));
    CHECK(fit.kappa_hat == Catch::Approx(1.0).epsilon(1e-9));
  }

  SECTION("kappa certifies every row") {
    PairDataset ds = sample_pairs(z, SamplePolicy::exhaustive_ball(6),
                                  [](const GroupElement& a, const GroupElement& b) {
                                    double d = std::abs(static_cast<double>(a.as_int() - b.as_int()));
                                    double wobble = 1.0 + 0.3 * std::sin(3.7 * a.as_int() + b.as_int());
                                    return wobble * std::pow(d, 0.7);
                                  });
    FitResult fit = fit_compression(ds);
    for (const auto& row : ds.rows) {
      CHECK(row.D >= fit.kappa_hat * std::pow(row.d, fit.alpha_hat) * (1.0 - 1e-12));
    }
  }

  SECTION("scaling the embedding scales kappa and keeps alpha") {
    FitResult base = fit_compression(synthetic_power(z, 5, 0.5));
    FitResult scaled = fit_compression(synthetic_power(z, 5, 0.5, 4.0));
    CHECK(scaled.alpha_hat == Catch::Approx(base.alpha_hat).epsilon(1e-12));
    CHECK(scaled.kappa_hat == Catch::Approx(4.0 * base.kappa_hat).epsilon(1e-12));
  }

  SECTION("degenerate datasets are rejected") {
    PairDataset single;
    single.rows.push_back(PairRow{1.0, 1.0, 0, 1});
    CHECK_THROWS_AS(fit_compression(single), std::invalid_argument);
    PairDataset zero;
    zero.rows.push_back(PairRow{0.0, 1.0, 0, 1});
    zero.rows.push_back(PairRow{2.0, 1.0, 0, 2});
    CHECK_THROWS_AS(fit_compression(zero), std::invalid_argument);
  }
}

TEST_CASE("distortion summaries") {
  PairDataset ds;
  ds.rows.push_back(PairRow{1.0, 3.0, 0, 1});
  ds.rows.push_back(PairRow{2.0, 2.0, 0, 2});
  ds.rows.push_back(PairRow{4.0, 6.0, 1, 2});
  DistortionReport rep = distortion_report(ds);
  CHECK(rep.max_expansion == Catch::Approx(3.0));
  CHECK(rep.min_ratio == Catch::Approx(1.0));
  CHECK(rep.lipschitz == Catch::Approx(3.0));  // from the d = 1 row

  SECTION("identity embedding") {
    auto z = GroupDescriptor::integers();
    PairDataset ident = sample_pairs(z, SamplePolicy::exhaustive_ball(3),
                                     [](const GroupElement& a, const GroupElement& b) {
                                       return std::abs(
                                           static_cast<double>(a.as_int() - b.as_int()));
                                     });
    DistortionReport r = distortion_report(ident);
    CHECK(r.max_expansion == Catch::Approx(1.0));
    CHECK(r.min_ratio == Catch::Approx(1.0));
    CHECK(r.lipschitz == Catch::Approx(1.0));
  }

  SECTION("no unit rows falls back to the global maximum") {
    PairDataset far;
    far.rows.push_back(PairRow{2.0, 5.0, 0, 1});
    CHECK(distortion_report(far).lipschitz == Catch::Approx(2.5));
  }

  CHECK_THROWS_AS(distortion_report(PairDataset{}), std::invalid_argument);
}

TEST_CASE("dataset export formats") {
  PairDataset ds;
  ds.rows.push_back(PairRow{1.0, 0.5, 0, 1});
  ds.rows.push_back(PairRow{2.0, 4.0, 0, 2});
  ds.metadata["policy"] = "exhaustive_ball";
  ds.metadata["radius"] = "2";

  SECTION("csv header and 12-significant-digit values") {
    std::ostringstream out;
    write_dataset_csv(ds, out);
    CHECK(out.str() == "d,D,src_id,dst_id\n1,0.5,0,1\n2,4,0,2\n");

    CHECK(format_double12(1.0 / 3.0) == "0.333333333333");
    CHECK(format_double12(2.0) == "2");
    CHECK(format_double12(1234567.25) == "1234567.25");
  }

  SECTION("metadata sidecar is flat key=value, sorted") {
    std::ostringstream out;
    write_metadata(ds, out);
    CHECK(out.str() == "policy=exhaustive_ball\nradius=2\n");
  }

  SECTION("file round trip") {
    std::string csv_path = "/tmp/wreathcut_test_pairs.csv";
    std::string meta_path = "/tmp/wreathcut_test_pairs.meta";
    write_dataset_files(ds, csv_path, meta_path);
    std::ifstream csv(csv_path);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "d,D,src_id,dst_id");
    std::ifstream meta(meta_path);
    std::string line;
    std::getline(meta, line);
    CHECK(line == "policy=exhaustive_ball");
  }
}

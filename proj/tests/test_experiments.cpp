#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "heraldnet/experiments.hpp"

using namespace heraldnet;

TEST(Format, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(15.068416968694), "15.0684169687");
  EXPECT_EQ(format_number(0.0), "0");
}

TEST(Grid, InclusiveAndValidated) {
  const auto g = radius_grid(0.0, 50.0, 0.5);
  ASSERT_EQ(g.size(), 101u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 50.0);
  EXPECT_EQ(radius_grid(1.0, 1.0, 0.3).size(), 1u);
  EXPECT_THROW(radius_grid(0.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(radius_grid(2.0, 1.0, 0.1), std::invalid_argument);
}

TEST(Sweep, RecordsAndOrder) {
  const std::vector<Scheme> schemes{Scheme::sc, Scheme::sd};
  const std::vector<int> parties{4, 8};
  const auto radii = radius_grid(0.0, 10.0, 2.5);
  const auto recs = sweep_vs_radius(schemes, parties, radii);
  ASSERT_EQ(recs.size(), 2u * 2u * 5u);
  EXPECT_EQ(recs[0].scheme, Scheme::sc);
  EXPECT_EQ(recs[0].parties, 4);
  EXPECT_EQ(recs[4].radius_km, 10.0);
  EXPECT_EQ(recs[5].parties, 8);
  EXPECT_EQ(recs[10].scheme, Scheme::sd);
  for (const auto& r : recs) {
    EXPECT_NEAR(r.eta, eta_for_geometry(r.scheme, {r.parties, r.radius_km, r.alpha}), 1e-12);
    EXPECT_DOUBLE_EQ(r.h_th, lhv_threshold(r.parties));
    EXPECT_EQ(r.source, Provenance::analytic);
    if (r.radius_km == 0.0) {
      EXPECT_EQ(r.p_suc, r.p_hr);
      EXPECT_EQ(r.h_eff, 1.0);
    }
  }
  const std::vector<double> unsorted{1.0, 0.5};
  EXPECT_THROW(sweep_vs_radius(schemes, parties, unsorted), std::invalid_argument);
  EXPECT_THROW(sweep_vs_radius(schemes, parties, std::vector<double>{}), std::invalid_argument);
}

TEST(Sweep, EfficiencyCurvesCrossOnceForEightParties) {
  const std::vector<Scheme> schemes{Scheme::sc, Scheme::sd};
  const std::vector<int> parties{8};
  const auto radii = radius_grid(0.5, 50.0, 0.5);
  const auto recs = sweep_vs_radius(schemes, parties, radii);
  const std::size_t n = radii.size();
  int flips = 0;
  double flip_at = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const bool before = recs[n + i - 1].h_eff > recs[i - 1].h_eff;
    const bool after = recs[n + i].h_eff > recs[i].h_eff;
    if (before != after) {
      ++flips;
      flip_at = radii[i];
    }
  }
  EXPECT_EQ(flips, 1);
  const double rc = crossover_radius(8);
  EXPECT_GT(flip_at, rc);
  EXPECT_LE(flip_at - 0.5, rc);
}

TEST(Sweep, SuccessCrossingNeedsThirteenParties) {
  const std::vector<Scheme> schemes{Scheme::sc, Scheme::sd};
  const auto radii = radius_grid(0.5, 50.0, 0.5);
  for (int n : {4, 8, 12, 13, 20}) {
    const std::vector<int> parties{n};
    const auto recs = sweep_vs_radius(schemes, parties, radii);
    bool sd_ahead = false;
    for (std::size_t i = 0; i < radii.size(); ++i) sd_ahead |= recs[radii.size() + i].p_suc > recs[i].p_suc;
    EXPECT_EQ(sd_ahead, n >= 13) << n;
  }
}

TEST(Sweep, CsvLayout) {
  const std::vector<Scheme> schemes{Scheme::bc};
  const std::vector<int> parties{3};
  const std::vector<double> radii{0.0, 1.0};
  std::ostringstream os;
  write_sweep_csv(os, sweep_vs_radius(schemes, parties, radii));
  EXPECT_EQ(os.str(),
            "scheme,N,R_km,alpha,eta,p_suc,p_hr,h_eff,h_th,source\n"
            "bc,3,0,0.023,1,0.25,0.25,1,0.75,analytic\n"
            "bc,3,1,0.023,0.977262483773,0.217774672936,0.217774672936,1,0.75,analytic\n");
}

TEST(Crossover, Curve) {
  const auto rows = crossover_curve(2, 30);
  ASSERT_EQ(rows.size(), 29u);
  for (const auto& r : rows) {
    if (r.parties <= 6) {
      EXPECT_EQ(r.radius_km, 0.0);
      EXPECT_EQ(r.chord_km, 0.0);
    }
    EXPECT_NEAR(r.chord_km, 2.0 * r.radius_km * std::sin(std::numbers::pi / r.parties), 1e-12);
  }
  EXPECT_NEAR(rows[5].radius_km, 3.307123, 1e-5);
  EXPECT_THROW(crossover_curve(1, 4), std::invalid_argument);
  EXPECT_THROW(crossover_curve(5, 4), std::invalid_argument);
}

TEST(Verify, SmallSuite) {
  const std::vector<int> parties{2};
  const std::vector<double> etas{1.0, 0.5};
  const auto rows = verify_suite(parties, etas);
  ASSERT_EQ(rows.size(), 3u * 2u * 3u);
  EXPECT_EQ(rows[0].case_id, "bc-N2-eta1");
  EXPECT_EQ(rows[0].metric, "p_suc");
  EXPECT_EQ(rows[1].metric, "p_hr");
  EXPECT_EQ(rows[2].metric, "h_eff");
  for (const auto& r : rows) {
    ASSERT_TRUE(r.simulated.has_value()) << r.case_id;
    EXPECT_EQ(r.pass, r.abs_diff <= 1e-9);
    if (r.scheme == Scheme::bc) {
      EXPECT_TRUE(r.pass) << r.case_id << " " << r.metric;
      if (r.metric == "h_eff") EXPECT_NEAR(*r.simulated, 1.0, 1e-12);
    }
    if (r.metric == "p_suc" || r.eta == 1.0) EXPECT_TRUE(r.pass) << r.case_id << " " << r.metric;
    if (r.metric != "p_suc") {
      // the term-by-term closed form always matches
      ASSERT_TRUE(r.enumerated_analytic.has_value());
      EXPECT_NEAR(*r.enumerated_analytic, *r.simulated, 1e-12) << r.case_id << " " << r.metric;
    }
    if (r.metric == "p_hr" && r.scheme == Scheme::sc) EXPECT_TRUE(r.literal_analytic.has_value());
  }
}

TEST(Verify, LossyScAndSdRowsDisagreeWithClosedForms) {
  const std::vector<int> parties{2};
  const std::vector<double> etas{0.9};
  for (const auto& r : verify_suite(parties, etas)) {
    if (r.metric == "p_suc" || r.scheme == Scheme::bc) continue;
    EXPECT_FALSE(r.pass) << r.case_id << " " << r.metric;
    EXPECT_GT(r.abs_diff, 1e-3);
  }
}

TEST(Verify, LiteralScFormFailsEvenWithoutLoss) {
  const std::vector<int> parties{2};
  const std::vector<double> etas{1.0};
  VerificationOptions opts;
  opts.literal_sc_p_hr = true;
  for (const auto& r : verify_suite(parties, etas, opts)) {
    const bool literal_row = r.scheme == Scheme::sc && r.metric == "p_hr";
    EXPECT_EQ(r.pass, !literal_row) << r.case_id << " " << r.metric;
  }
}

TEST(Verify, ZeroTransmissionAndAbortedCases) {
  const std::vector<int> parties{2};
  const std::vector<double> etas{0.0};
  const auto rows = verify_suite(parties, etas);
  for (const auto& r : rows) {
    if (r.metric != "h_eff") continue;
    ASSERT_TRUE(r.error.has_value());
    EXPECT_NE(r.error->find("undefined at eta=0"), std::string::npos);
    EXPECT_FALSE(r.pass);
  }

  VerificationOptions tight;
  tight.term_cap = 10;
  const std::vector<double> lossy{0.5};
  for (const auto& r : verify_suite(parties, lossy, tight)) {
    ASSERT_TRUE(r.error.has_value());
    EXPECT_EQ(r.error->rfind("aborted:", 0), 0u);
    EXPECT_FALSE(r.simulated.has_value());
    EXPECT_FALSE(r.pass);
  }

  const std::vector<int> too_many{7};
  EXPECT_THROW(verify_suite(too_many, lossy), std::invalid_argument);
}

TEST(Verify, IndependentOfWorkerCount) {
  const std::vector<int> parties{2, 3};
  const std::vector<double> etas{0.9, 0.5};
  VerificationOptions one;
  one.workers = 1;
  VerificationOptions four;
  four.workers = 4;
  EXPECT_EQ(verification_report(verify_suite(parties, etas, one)).dump(),
            verification_report(verify_suite(parties, etas, four)).dump());
}

TEST(Verify, ReportShape) {
  const std::vector<int> parties{2};
  const std::vector<double> etas{1.0};
  const auto report = verification_report(verify_suite(parties, etas));
  ASSERT_TRUE(report.contains("rows"));
  EXPECT_EQ(report["rows"].size(), 9u);
  EXPECT_EQ(report["summary"]["total"], 9);
  EXPECT_EQ(report["summary"]["passed"], 9);
  EXPECT_EQ(report["summary"]["failed"], 0);
  const auto& row = report["rows"][0];
  for (const char* key : {"case_id", "scheme", "N", "eta", "metric", "analytic", "simulated", "abs_diff", "pass"})
    EXPECT_TRUE(row.contains(key)) << key;
}

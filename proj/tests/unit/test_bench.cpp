// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "abbe/bench.hpp"
#include "abbe/errors.hpp"

namespace abbe::bench {
namespace {

void expect_worst_is_max(const std::vector<BenchmarkRecord>& records) {
  for (const auto& r : records) {
    ASSERT_FALSE(r.per_user_seconds.empty());
    double m = 0;
    for (double t : r.per_user_seconds) {
      EXPECT_GT(t, 0);
      m = std::max(m, t);
    }
    EXPECT_EQ(r.worst_seconds, m);
  }
}

TEST(Bench, Experiment1Records) {
  Rng rng = Rng::from_u64(1);
  auto recs = experiment1({1, 2, 5}, 3, 50, rng, {1, nullptr});
  ASSERT_EQ(recs.size(), 3u);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(recs[i].experiment, 1);
    EXPECT_EQ(recs[i].params.at("attributes"), 3u);
    EXPECT_EQ(recs[i].per_user_seconds.size(), 1u);
  }
  EXPECT_EQ(recs[2].params.at("users"), 5u);
  expect_worst_is_max(recs);
}

TEST(Bench, Experiment2Records) {
  Rng rng = Rng::from_u64(2);
  auto recs = experiment2({2, 5, 10}, rng, {1, nullptr});
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0].params.at("users"), 1u);
  EXPECT_EQ(recs[1].params.at("attributes"), 5u);
  expect_worst_is_max(recs);
}

TEST(Bench, RejectsBadCounts) {
  Rng rng = Rng::from_u64(3);
  EXPECT_THROW(experiment1({}, 3, 50, rng), Error);
  EXPECT_THROW(experiment1({2, 1}, 3, 50, rng), Error);
  EXPECT_THROW(experiment1({1}, 4, 3, rng), Error);
  EXPECT_THROW(experiment2({0}, rng), Error);
  EXPECT_THROW(experiment3({1}, {}, rng), Error);
  EXPECT_THROW(experiment4({1}, {1}, rng, {0, nullptr}), Error);
}

TEST(Bench, Experiment3HashGatedAndAggregated) {
  Rng rng = Rng::from_u64(4);
  auto recs = experiment3({1, 3}, {1}, rng, {2, nullptr});
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].per_user_seconds.size(), 1u);
  EXPECT_EQ(recs[1].per_user_seconds.size(), 3u);
  for (const auto& r : recs) {
    EXPECT_EQ(r.params.at("file_mib"), 1u);
    EXPECT_EQ(r.counters.at("segments"), 256u);
    EXPECT_EQ(r.counters.at("producer_interests"), r.counters.at("segments"));
  }
  expect_worst_is_max(recs);
}

TEST(Bench, Experiment4EndToEnd) {
  Rng rng = Rng::from_u64(5);
  auto recs = experiment4({1, 2}, {1}, rng, {1, nullptr});
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[1].per_user_seconds.size(), 2u);
  for (const auto& r : recs) {
    EXPECT_EQ(r.experiment, 4);
    EXPECT_LT(r.counters.at("header_bytes"), 1024u);
    EXPECT_EQ(r.counters.at("producer_interests"), r.counters.at("segments"));
  }
  expect_worst_is_max(recs);
}

BenchmarkRecord random_record(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> t(1e-6, 100);
  BenchmarkRecord r;
  r.experiment = 1 + static_cast<int>(gen() % 4);
  if (gen() % 2) r.params["users"] = gen() % 2000;
  if (gen() % 2) r.params["attributes"] = gen() % 2000;
  if (gen() % 2) r.params["file_mib"] = gen() % 600;
  for (std::size_t i = 0, n = 1 + gen() % 10; i < n; ++i) r.per_user_seconds.push_back(t(gen));
  r.worst_seconds = *std::max_element(r.per_user_seconds.begin(), r.per_user_seconds.end());
  return r;
}

TEST(Report, CsvRoundTrip) {
  std::mt19937_64 gen(6);
  HostInfo host = host_info();
  host.cpu += "\nsecond line";
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<BenchmarkRecord> recs;
    for (std::size_t i = 0, n = 1 + gen() % 8; i < n; ++i) recs.push_back(random_record(gen));
    EXPECT_EQ(parse_csv(to_csv(recs, host)), recs);
  }
}

TEST(Report, CsvLayout) {
  BenchmarkRecord r{3, {{"users", 2}, {"file_mib", 5}}, {0.5, 1.25}, 1.25, {}};
  HostInfo host{"h", "Linux", "cpu", 1, "gcc", "2026-01-01T00:00:00Z"};
  std::string csv = to_csv({r}, host);
  EXPECT_EQ(csv,
            "# host: h\n# system: Linux\n# cpu: cpu\n# cores: 1\n# compiler: gcc\n"
            "# timestamp: 2026-01-01T00:00:00Z\n"
            "experiment,users,attributes,file_mib,per_user_seconds,worst_seconds\n"
            "3,2,,5,0.5;1.25,1.25\n");
  EXPECT_THROW(parse_csv("experiment,users\n1,2\n"), Error);
  EXPECT_THROW(parse_csv(csv + "3,2,,5,abc,1\n"), Error);
  EXPECT_THROW(parse_csv(csv + "3,2,,5\n"), Error);
}

TEST(Report, MarkdownHasWorstTimeColumn) {
  BenchmarkRecord r{3, {{"users", 2}, {"file_mib", 50}}, {4.29, 0.79}, 4.29, {}};
  std::string md = to_markdown({r});
  EXPECT_NE(md.find("worst time"), std::string::npos);
  EXPECT_NE(md.find("| 3 | 2 |  | 50 | 4.290 0.790 | 4.290 |"), std::string::npos) << md;
  // One header, one separator, one row.
  EXPECT_EQ(std::count(md.begin(), md.end(), '\n'), 3);
}

TEST(Report, LinearFitAndMonotone) {
  auto f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_DOUBLE_EQ(f.slope, 2);
  EXPECT_DOUBLE_EQ(f.intercept, 1);
  EXPECT_DOUBLE_EQ(f.r_squared, 1);
  // Independent R^2 for a noisy set: squared Pearson correlation.
  std::vector<double> x = {1, 2, 3, 4, 5}, y = {2, 4.5, 5.5, 9, 10};
  double n = 5, sx = 15, sy = 31, sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < 5; ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
  }
  double r = (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  EXPECT_NEAR(fit_line(x, y).r_squared, r * r, 1e-12);
  EXPECT_THROW(fit_line({1}, {1}), Error);

  auto rec = [](double t) { return BenchmarkRecord{1, {}, {t}, t, {}}; };
  EXPECT_TRUE(monotone_within({rec(1), rec(2), rec(1.9)}, 0.1));
  EXPECT_FALSE(monotone_within({rec(1), rec(2), rec(1.5)}, 0.1));
}

TEST(Report, PaperCountLists) {
  auto t1 = table1_user_counts();
  EXPECT_EQ(t1.size(), 27u);
  EXPECT_EQ(t1.front(), 1u);
  EXPECT_EQ(t1.back(), 1000u);
  auto t2 = table2_attribute_counts();
  EXPECT_EQ(t2.size(), 26u);
  EXPECT_EQ(t2.front(), 2u);
  EXPECT_EQ(download_file_sizes_mib(true), (std::vector<std::uint64_t>{50, 100, 500}));
  EXPECT_EQ(download_file_sizes_mib(false), (std::vector<std::uint64_t>{5, 10, 50}));
}

}  // namespace
}  // namespace abbe::bench

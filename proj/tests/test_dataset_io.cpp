#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "fssc/dataset.hpp"
#include "fssc/errors.hpp"

#include "support/builders.hpp"

using namespace fssc;

namespace {

ExpressionDataset load_text(const std::string& text, CsvOptions options = {}) {
  std::istringstream in(text);
  return load_csv(in, options);
}

}  // namespace

TEST_CASE("load_csv parses the golden layout") {
  const auto ds = load_text("id,g1,g2,class\ns1,0.5,1.0,tumor\ns2,0.2,0.3,normal\n");
  CHECK(ds.sample_ids == std::vector<std::string>{"s1", "s2"});
  CHECK(ds.gene_ids == std::vector<std::string>{"g1", "g2"});
  CHECK(ds.labels == std::vector<std::string>{"tumor", "normal"});
  CHECK(ds.class_set == std::vector<std::string>{"tumor", "normal"});
  CHECK(ds.values(0, 0) == 0.5);
  CHECK(ds.values(0, 1) == 1.0);
  CHECK(ds.values(1, 0) == 0.2);
  CHECK(ds.values(1, 1) == 0.3);
}

TEST_CASE("load_csv accepts CRLF and a custom delimiter") {
  const auto ds = load_text("id;g1;class\r\ns1;2.5;a\r\ns2;3.5;b\r\n", {';', "class"});
  CHECK(ds.sample_count() == 2);
  CHECK(ds.values(1, 0) == 3.5);
}

TEST_CASE("load_csv names the offending cell") {
  CHECK_THROWS_WITH_AS(load_text("id,g1,g2,class\ns1,0.5,1.0,tumor\ns2,abc,0.3,normal\n"),
                       doctest::Contains("\"s2\""), ValidationError);
  CHECK_THROWS_WITH_AS(load_text("id,g1,g2,class\ns1,0.5,1.0,tumor\ns2,abc,0.3,normal\n"),
                       doctest::Contains("\"g1\""), ValidationError);
}

TEST_CASE("load_csv rejects non-finite and missing values") {
  CHECK_THROWS_AS(load_text("id,g1,class\ns1,inf,a\ns2,1,b\n"), ValidationError);
  CHECK_THROWS_AS(load_text("id,g1,class\ns1,nan,a\ns2,1,b\n"), ValidationError);
  CHECK_THROWS_AS(load_text("id,g1,class\ns1,,a\ns2,1,b\n"), ValidationError);
}

TEST_CASE("load_csv rejects duplicate ids") {
  CHECK_THROWS_WITH_AS(load_text("id,g1,class\ns1,1,a\ns1,2,b\ns3,3,a\n"),
                       doctest::Contains("duplicate sample id"), ValidationError);
  CHECK_THROWS_WITH_AS(load_text("id,g1,g1,class\ns1,1,2,a\n"),
                       doctest::Contains("duplicate gene id"), ValidationError);
}

TEST_CASE("load_csv structural errors") {
  CHECK_THROWS_WITH_AS(load_text("id,g1,g2\ns1,1,2\n"),
                       doctest::Contains("missing label column"), ValidationError);
  CHECK_THROWS_WITH_AS(load_text("id,g1,class\ns1,1\n"), doctest::Contains("fields"),
                       ValidationError);
  CHECK_THROWS_AS(load_text(""), ValidationError);
  CHECK_THROWS_AS(load_text("id,g1,class\n"), ValidationError);
  CHECK_THROWS_AS(load_text("id,class\ns1,a\n"), ValidationError);
}

TEST_CASE("csv round-trip reproduces the dataset bit-exactly") {
  auto ds = testutil::random_dataset(13, 7, 3, 99);
  ds.values(0, 0) = 1.0 / 3.0;
  ds.values(5, 3) = -2.7182818284590452;
  ds.values(12, 6) = 1e-300;

  std::ostringstream out;
  save_csv(ds, out);
  const auto back = load_text(out.str());

  CHECK(back.sample_ids == ds.sample_ids);
  CHECK(back.gene_ids == ds.gene_ids);
  CHECK(back.labels == ds.labels);
  CHECK(back.class_set == ds.class_set);
  CHECK(back.values == ds.values);
}

TEST_CASE("stratified_split forces exact per-class proportions") {
  const auto ds = testutil::random_dataset(10, 3, 2, 1);
  const auto plan = stratified_split(ds, 0.2, 7);
  REQUIRE(plan.folds.size() == 1);
  const auto& fold = plan.folds[0];
  CHECK(fold.test.size() == 2);
  CHECK(fold.train.size() == 8);

  std::size_t test_a = 0, test_b = 0;
  for (const auto idx : fold.test) (ds.labels[idx] == "A" ? test_a : test_b)++;
  CHECK(test_a == 1);
  CHECK(test_b == 1);
}

TEST_CASE("stratified_split is deterministic per seed") {
  const auto ds = testutil::random_dataset(10, 3, 2, 1);
  const auto a = stratified_split(ds, 0.2, 7);
  const auto b = stratified_split(ds, 0.2, 7);
  CHECK(a.folds[0].train == b.folds[0].train);
  CHECK(a.folds[0].test == b.folds[0].test);

  const auto c = stratified_split(ds, 0.2, 8);
  const bool same = a.folds[0].test == c.folds[0].test;
  CHECK_FALSE(same);  // overwhelmingly unlikely to collide for this fixture
}

TEST_CASE("stratified_split validation") {
  auto ds = testutil::random_dataset(4, 2, 2, 3);
  ds.labels[3] = "C";
  ds.class_set.push_back("C");
  CHECK_THROWS_WITH_AS(stratified_split(ds, 0.25, 0), doctest::Contains("fewer than 2"),
                       ValidationError);

  const auto ok = testutil::random_dataset(4, 2, 2, 3);
  CHECK_THROWS_AS(stratified_split(ok, 0.0, 0), ValidationError);
  CHECK_THROWS_AS(stratified_split(ok, 1.0, 0), ValidationError);
}

TEST_CASE("stratified_kfold counts per class") {
  const auto ds = testutil::random_dataset(10, 3, 2, 4);
  const auto plan = stratified_kfold(ds, 5, 11);
  REQUIRE(plan.folds.size() == 5);
  for (const auto& fold : plan.folds) {
    REQUIRE(fold.test.size() == 2);
    std::size_t a = 0, b = 0;
    for (const auto idx : fold.test) (ds.labels[idx] == "A" ? a : b)++;
    CHECK(a == 1);
    CHECK(b == 1);
  }
}

TEST_CASE("stratified_kfold test folds partition the samples") {
  for (const std::uint64_t seed : {0ULL, 1ULL, 42ULL, 12345ULL}) {
    const auto ds = testutil::random_dataset(23, 2, 3, seed + 100);
    const auto plan = stratified_kfold(ds, 3, seed);
    std::vector<std::size_t> seen;
    for (const auto& fold : plan.folds) {
      seen.insert(seen.end(), fold.test.begin(), fold.test.end());
      // train and test are disjoint and cover everything
      std::set<std::size_t> fold_all(fold.train.begin(), fold.train.end());
      for (const auto idx : fold.test) CHECK(fold_all.insert(idx).second);
      CHECK(fold_all.size() == ds.sample_count());
    }
    std::sort(seen.begin(), seen.end());
    REQUIRE(seen.size() == ds.sample_count());
    for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == i);
  }
}

TEST_CASE("stratified_kfold per-class imbalance stays within 1") {
  const auto ds = testutil::random_dataset(29, 2, 2, 8);  // 15 A, 14 B
  const auto plan = stratified_kfold(ds, 4, 9);
  for (const auto& cls : ds.class_set) {
    std::vector<std::size_t> counts;
    for (const auto& fold : plan.folds) {
      counts.push_back(std::count_if(fold.test.begin(), fold.test.end(),
                                     [&](std::size_t idx) { return ds.labels[idx] == cls; }));
    }
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    CHECK(*hi - *lo <= 1);
  }
}

TEST_CASE("stratified_kfold rejects k beyond the smallest class") {
  const auto ds = testutil::random_dataset(10, 2, 2, 5);
  CHECK_THROWS_WITH_AS(stratified_kfold(ds, 6, 0), doctest::Contains("smallest class"),
                       ValidationError);
  CHECK_THROWS_AS(stratified_kfold(ds, 1, 0), ValidationError);
}

TEST_CASE("split plan JSON round-trip") {
  const auto ds = testutil::random_dataset(12, 2, 2, 6);
  const auto plan = stratified_kfold(ds, 3, 21);

  std::ostringstream out;
  write_split_plan_json(plan, out);
  std::istringstream in(out.str());
  const auto back = read_split_plan_json(in);

  CHECK(back.strategy == plan.strategy);
  CHECK(back.seed == plan.seed);
  REQUIRE(back.folds.size() == plan.folds.size());
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    CHECK(back.folds[f].train == plan.folds[f].train);
    CHECK(back.folds[f].test == plan.folds[f].test);
  }

  std::istringstream bad("{\"strategy\":\"bogus\"}");
  CHECK_THROWS_AS(read_split_plan_json(bad), ValidationError);
}

TEST_CASE("take_samples keeps order and recomputes classes") {
  const auto ds = load_text("id,g1,class\ns1,1,a\ns2,2,b\ns3,3,c\ns4,4,b\n");
  const std::vector<std::size_t> idx{3, 1, 2};
  const auto sub = take_samples(ds, idx);
  CHECK(sub.sample_ids == std::vector<std::string>{"s4", "s2", "s3"});
  CHECK(sub.class_set == std::vector<std::string>{"b", "c"});
  CHECK(sub.values(0, 0) == 4.0);

  const std::vector<std::size_t> bad{9};
  CHECK_THROWS_AS(take_samples(ds, bad), ValidationError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "adasvm/dataset.hpp"
#include "adasvm/errors.hpp"
#include "adasvm/rng.hpp"
#include "adasvm/serialization.hpp"
#include "support/fixtures.hpp"

using namespace adasvm;

TEST_CASE("parse_libsvm fills absent indices with zeros") {
  Dataset d = parse_libsvm("+1 1:0.5 3:2.0\n-1 2:1.0");
  REQUIRE(d.size() == 2);
  REQUIRE(d.n_features() == 3);
  CHECK(d.features(0, 0) == 0.5);
  CHECK(d.features(0, 1) == 0.0);
  CHECK(d.features(0, 2) == 2.0);
  CHECK(d.features(1, 0) == 0.0);
  CHECK(d.features(1, 1) == 1.0);
  CHECK(d.features(1, 2) == 0.0);
  CHECK(d.labels == std::vector<int>{+1, -1});
}

TEST_CASE("parse_libsvm rejects bad input") {
  CHECK_THROWS_AS(parse_libsvm(""), ParseError);
  CHECK_THROWS_AS(parse_libsvm("1 2:1 1:1"), ParseError);     // indices not increasing
  CHECK_THROWS_AS(parse_libsvm("1 2:1 2:3"), ParseError);     // duplicate index
  CHECK_THROWS_AS(parse_libsvm("1 0:1"), ParseError);         // 1-based indices
  CHECK_THROWS_AS(parse_libsvm("x 1:1\n-1 1:2"), ParseError); // bad label
  CHECK_THROWS_AS(parse_libsvm("1 1:abc\n-1 1:2"), ParseError);

  // error messages carry the line number
  try {
    parse_libsvm("+1 1:1\n-1 2:1 1:1");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("normalize_labels maps the smaller raw value to -1") {
  auto [labels, mapping] = normalize_labels({0, 1, 1, 0});
  CHECK(labels == std::vector<int>{-1, +1, +1, -1});
  CHECK(mapping.raw_negative == 0.0);
  CHECK(mapping.raw_positive == 1.0);

  auto [identity, id_mapping] = normalize_labels({-1, +1});
  CHECK(identity == std::vector<int>{-1, +1});
  CHECK(id_mapping.raw_negative == -1.0);

  CHECK_THROWS_AS(normalize_labels({1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(normalize_labels({1, 2, 3}), std::invalid_argument);
}

TEST_CASE("libsvm round trip is the identity") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.next_below(10);
    const std::size_t m = 1 + rng.next_below(5);
    Dataset d = testing::random_grid_dataset(rng, n, m);
    Dataset back = parse_libsvm(serialize_libsvm(d));
    CHECK(back.features == d.features);
    CHECK(back.labels == d.labels);
  }
}

TEST_CASE("csv parsing detects an optional header") {
  Dataset with_header = parse_csv("a,b,label\n0.5,1,1\n0.25,2,0\n");
  Dataset without = parse_csv("0.5,1,1\n0.25,2,0\n");
  CHECK(with_header.features == without.features);
  CHECK(with_header.labels == without.labels);
  CHECK(with_header.labels == std::vector<int>{+1, -1});

  CHECK_THROWS_AS(parse_csv(""), ParseError);
  CHECK_THROWS_AS(parse_csv("h1,h2,label\n"), ParseError);       // header only
  CHECK_THROWS_AS(parse_csv("1,2,1\n3,1\n"), ParseError);        // ragged row
  CHECK_THROWS_AS(parse_csv("1,x,1\n2,3,0\n"), ParseError);      // non-numeric feature
}

TEST_CASE("stratified folds balance both classes") {
  SplitMix64 rng(11);
  Dataset d = testing::random_grid_dataset(rng, 10, 2);
  for (std::size_t i = 0; i < 10; ++i) d.labels[i] = i < 5 ? -1 : +1;

  FoldPlan plan = stratified_kfold(d, 5, 42);
  for (int f = 0; f < 5; ++f) {
    int pos = 0, neg = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (plan.assignments[i] != f) continue;
      (d.labels[i] > 0 ? pos : neg)++;
    }
    CHECK(pos == 1);
    CHECK(neg == 1);
  }
}

TEST_CASE("stratified folds are deterministic and partition the data") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 20 + rng.next_below(40);
    Dataset d = testing::random_grid_dataset(rng, n, 3);
    const int k = 2 + static_cast<int>(rng.next_below(4));
    if (d.count_label(+1) < static_cast<std::size_t>(k) ||
        d.count_label(-1) < static_cast<std::size_t>(k)) {
      continue;
    }
    const std::uint64_t seed = rng.next();
    FoldPlan a = stratified_kfold(d, k, seed);
    FoldPlan b = stratified_kfold(d, k, seed);
    CHECK(a.assignments == b.assignments);

    // every index lands in exactly one fold; per-class sizes differ by <= 1
    for (int label : {-1, +1}) {
      std::vector<int> counts(k, 0);
      for (std::size_t i = 0; i < d.size(); ++i) {
        REQUIRE(a.assignments[i] >= 0);
        REQUIRE(a.assignments[i] < k);
        if (d.labels[i] == label) counts[a.assignments[i]]++;
      }
      CHECK(*std::max_element(counts.begin(), counts.end()) -
                *std::min_element(counts.begin(), counts.end()) <=
            1);
    }
    for (int f = 0; f < k; ++f) {
      CHECK(a.test_indices(f).size() + a.train_indices(f).size() == d.size());
      CHECK(!a.test_indices(f).empty());
    }
  }
}

TEST_CASE("stratified folds reject classes smaller than k") {
  SplitMix64 rng(5);
  Dataset d = testing::random_grid_dataset(rng, 8, 2);
  for (std::size_t i = 0; i < 8; ++i) d.labels[i] = i < 3 ? -1 : +1;
  CHECK_THROWS_AS(stratified_kfold(d, 5, 0), std::invalid_argument);
}

TEST_CASE("fraction_split samples per class") {
  SplitMix64 rng(13);
  Dataset d = testing::random_grid_dataset(rng, 100, 2);
  for (std::size_t i = 0; i < 100; ++i) d.labels[i] = i < 50 ? -1 : +1;

  SplitResult split = fraction_split(d, 0.9, 1);
  CHECK(split.train.size() == 90);
  CHECK(split.test.size() == 10);
  CHECK(split.train.count_label(-1) == 45);
  CHECK(split.train.count_label(+1) == 45);

  Dataset four = testing::random_grid_dataset(rng, 4, 2);
  four.labels = {-1, -1, +1, +1};
  SplitResult half = fraction_split(four, 0.5, 0);
  CHECK(half.train.size() == 2);
  CHECK(half.test.size() == 2);
  CHECK(half.train.count_label(-1) == 1);
  CHECK(half.train.count_label(+1) == 1);

  CHECK_THROWS_AS(fraction_split(testing::separable_pair(), 0.99, 0), std::invalid_argument);
  CHECK_THROWS_AS(fraction_split(four, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(fraction_split(four, 1.0, 0), std::invalid_argument);
}

TEST_CASE("fraction_split is deterministic in the seed") {
  SplitMix64 rng(17);
  Dataset d = testing::random_grid_dataset(rng, 40, 3);
  SplitResult a = fraction_split(d, 0.3, 9);
  SplitResult b = fraction_split(d, 0.3, 9);
  CHECK(a.train.features == b.train.features);
  CHECK(a.train.labels == b.train.labels);
  CHECK(a.test.features == b.test.features);
}

TEST_CASE("fold plan serializes to json") {
  SplitMix64 rng(23);
  Dataset d = testing::random_grid_dataset(rng, 12, 2);
  for (std::size_t i = 0; i < 12; ++i) d.labels[i] = i < 6 ? -1 : +1;
  FoldPlan plan = stratified_kfold(d, 3, 5);
  const std::string json = to_json(plan);
  CHECK(json.find("\"k\": 3") != std::string::npos);
  CHECK(json.find("\"seed\": 5") != std::string::npos);
  CHECK(json.find("\"assignments\"") != std::string::npos);
}

TEST_CASE("monk1 truth table") {
  Dataset d = make_monk1();
  REQUIRE(d.size() == 432);
  REQUIRE(d.n_features() == 6);
  CHECK(d.count_label(+1) == 216);
  CHECK(d.count_label(-1) == 216);
  // first row: a = (1,1,1,1,1,1), a1 == a2 -> +1
  CHECK(d.labels[0] == +1);
  // a5 == 1 forces +1 regardless of a1 vs a2
  for (std::size_t i = 0; i < d.size(); ++i) {
    const bool rule = d.features(i, 0) == d.features(i, 1) || d.features(i, 4) == 1.0;
    CHECK(d.labels[i] == (rule ? +1 : -1));
  }
}

TEST_CASE("dataset validation") {
  Dataset d = testing::separable_pair();
  CHECK_NOTHROW(validate(d));
  d.labels[0] = 2;
  CHECK_THROWS_AS(validate(d), std::invalid_argument);
}

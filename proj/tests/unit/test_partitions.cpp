#include "doctest.h"

#include "gh/partitions.hpp"

using namespace gh;

namespace {

// Every non-increasing even k-vector of weight <= max_weight, by brute force.
std::size_t brute_count(int k, int max_weight) {
  std::size_t count = 0;
  std::vector<int> v(static_cast<std::size_t>(k), 0);
  while (true) {
    int w = 0;
    bool sorted = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      w += 2 * v[i];
      if (i && v[i] > v[i - 1]) sorted = false;
    }
    if (sorted && w <= max_weight) ++count;
    std::size_t i = 0;
    while (i < v.size() && ++v[i] > max_weight / 2) v[i++] = 0;
    if (i == v.size()) return count;
  }
}

}  // namespace

TEST_CASE("enumerate_types small cases") {
  auto one = enumerate_types(1, 4);
  REQUIRE(one.size() == 3);
  CHECK(one[0] == Partition({0}));
  CHECK(one[1] == Partition({2}));
  CHECK(one[2] == Partition({4}));

  auto two = enumerate_types(2, 4);
  REQUIRE(two.size() == 4);
  CHECK(two[0] == Partition({0, 0}));
  CHECK(two[1] == Partition({2, 0}));
  CHECK(two[2] == Partition({2, 2}));
  CHECK(two[3] == Partition({4, 0}));

  CHECK(enumerate_types(2, 0).size() == 1);
}

TEST_CASE("enumeration is graded and strictly increasing") {
  const auto t = enumerate_types(3, 16);
  for (std::size_t i = 1; i < t.size(); ++i) {
    CHECK(t[i - 1] < t[i]);
    CHECK(t[i - 1].weight() <= t[i].weight());
  }
}

TEST_CASE("count_types") {
  CHECK(count_types(1, 20) == 11);
  CHECK(count_types(2, 4) == 4);
  CHECK(count_types(2, 20) == 36);
  for (int k = 1; k <= 3; ++k)
    for (int w = 0; w <= 24; w += 2) {
      CAPTURE(k);
      CAPTURE(w);
      CHECK(count_types(k, w) == Integer(static_cast<unsigned long>(brute_count(k, w))));
      CHECK(count_types(k, w) == Integer(static_cast<unsigned long>(enumerate_types(k, w).size())));
    }
}

TEST_CASE("bad arguments") {
  CHECK_THROWS_AS(enumerate_types(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_types(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(count_types(2, -2), std::invalid_argument);
  CHECK_THROWS_AS(TypePredicate::parse("lambda9:2"), std::invalid_argument);
  CHECK_THROWS_AS(TypePredicate::parse("lambda2_le:x"), std::invalid_argument);
  CHECK_THROWS_AS(Partition({2, 4}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({3}), std::invalid_argument);
}

TEST_CASE("densities") {
  CHECK(density(TypePredicate::always(), 2, 20) == 1);
  CHECK(density(TypePredicate::second_part_at_most(2), 2, 20) == Rational(5, 9));
  Rational prev = 1;
  for (int m = 10; m <= 100; m += 10) {
    const Rational d = density(TypePredicate::second_part_at_most(2), 2, 2 * m);
    CHECK(d < prev);
    prev = d;
  }
  // Complementary predicates on even parts.
  for (int w = 0; w <= 30; w += 2)
    CHECK(density(TypePredicate::second_part_at_most(2), 2, w) +
              density(TypePredicate::second_part_at_least(4), 2, w) ==
          1);
}

TEST_CASE("partition parsing round-trips") {
  for (const auto& p : enumerate_types(3, 10)) CHECK(Partition::parse(p.to_string()) == p);
  CHECK(Partition::parse("(4,2,0)").weight() == 6);
  CHECK_THROWS(Partition::parse("(4,2"));
}

TEST_CASE("restricted partition bounds bracket the count") {
  for (int k = 1; k <= 5; ++k)
    for (int m = 0; m <= 30; ++m) {
      const auto b = restricted_partition_bounds(k, m);
      const Rational p(types_of_weight(k, m));
      CHECK(b.lower <= p);
      CHECK(p <= b.upper);
    }
}

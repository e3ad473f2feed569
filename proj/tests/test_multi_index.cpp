#include "doctest.h"
#include "drstokes/errors.hpp"
#include "drstokes/multi_index.hpp"

using namespace drstokes;

TEST_SUITE("exterior_core") {
  TEST_CASE("multi-index counts match binomials") {
    for (int n = 1; n <= 5; ++n)
      for (int q = 0; q <= n; ++q) CHECK(multi_indices(n, q).size() == static_cast<std::size_t>(binomial(n, q)));
  }

  TEST_CASE("multi-indices are lexicographic and ranked") {
    const auto& Is = multi_indices(4, 2);
    for (std::size_t k = 0; k < Is.size(); ++k) {
      CHECK(rank_of(Is[k]) == k);
      if (k) CHECK(Is[k - 1] < Is[k]);
    }
    CHECK(Is.front().to_string() == "1,2");
    CHECK(Is.back().to_string() == "3,4");
  }

  TEST_CASE("invalid multi-indices are rejected") {
    CHECK_THROWS_AS(MultiIndex(3, {1, 0}), DimensionMismatch);
    CHECK_THROWS_AS(MultiIndex(3, {1, 1}), DimensionMismatch);
    CHECK_THROWS_AS(MultiIndex(3, {3}), DimensionMismatch);
  }

  TEST_CASE("merge sign counts transpositions") {
    CHECK(merge_sign({0}, {1}) == 1);
    CHECK(merge_sign({1}, {0}) == -1);
    CHECK(merge_sign({0}, {0}) == 0);
    CHECK(merge_sign({1, 2}, {0}) == 1);
    CHECK(merge_sign({2}, {0, 1}) == 1);
    CHECK(merge_sign({1}, {0, 2}) == -1);
  }

  TEST_CASE("complement") {
    CHECK(MultiIndex(4, {1, 3}).complement().indices() == std::vector<int>{0, 2});
    CHECK(MultiIndex(3, {}).complement().degree() == 3);
  }
}

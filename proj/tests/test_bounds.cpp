#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "bergman/bounds.hpp"

using namespace bergman;

TEST_CASE("constants") {
  const auto c = bound_constants(0.9);
  CHECK(c.expected_count == doctest::Approx(4.2631578947368421).epsilon(1e-15));
  CHECK(c.rate == doctest::Approx(0.42631578947368421).epsilon(1e-15));
  CHECK(ginibre_expected_count(2.0) == 4.0);
}

TEST_CASE("truncation bounds at R = 0.9") {
  CHECK(wkr_theorem_bound(0.9, 2.0) == doctest::Approx(0.77472048252962529).epsilon(1e-14));
  CHECK(wkr_exact_tail(0.9, 9) == doctest::Approx(0.51830047483347960).epsilon(1e-14));
  const auto r = make_bound_report(0.9, 2.0);
  CHECK(r.truncation == 9);
  CHECK(make_bound_report(0.9, 1.0).truncation == 5);
  CHECK(r.dominance_holds());
  CHECK(r.coincidence_exact < r.wkr_exact_tail);
}

TEST_CASE("coincidence probability against a direct product") {
  for (double radius : {0.5, 0.9, 0.99}) {
    for (std::size_t n : {0u, 3u, 20u}) {
      double keep = 1.0;
      for (std::size_t k = n + 1; k < 20000; ++k) keep *= 1.0 - std::pow(radius, 2.0 * k + 2);
      CHECK(coincidence_exact(radius, n) == doctest::Approx(1.0 - keep).epsilon(1e-10));
    }
  }
}

TEST_CASE("chernoff tails") {
  CHECK(chernoff_lower_tail(10.0, 0.5) == doctest::Approx(0.21561430397073495).epsilon(1e-14));
  CHECK(chernoff_upper_tail(10.0, 0.5) == doctest::Approx(0.33892493675464132).epsilon(1e-14));
  const auto both = chernoff_tail_bounds(10.0, 0.5);
  CHECK(both.lower == chernoff_lower_tail(10.0, 0.5));
  CHECK(both.upper == chernoff_upper_tail(10.0, 0.5));
}

TEST_CASE("convergence margin") {
  CHECK(convergence_margin(0.01, 100.0) == doctest::Approx(2.5951030152878031).epsilon(1e-14));
  CHECK(convergence_margin(0.01, 1e4) == doctest::Approx(-196.40154688404073).epsilon(1e-14));
  CHECK(convergence_margin(0.01, 1e4) < -190.0);
}

TEST_CASE("domains") {
  CHECK_THROWS(bound_constants(1.0));
  CHECK_THROWS(bound_constants(0.0));
  CHECK_THROWS(chernoff_lower_tail(1.0, 1.0));
  CHECK_THROWS(convergence_margin(0.0, 10.0));
}

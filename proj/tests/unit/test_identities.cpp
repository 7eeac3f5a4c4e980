#include "doctest.h"
#include "wdd/identities.hpp"

using namespace wdd::identities;

TEST_CASE("every identity suite passes on a clean build") {
  for (std::uint64_t seed : {1u, 2u, 20240917u}) {
    const auto checks = full_suite(seed);
    CHECK(checks.size() > 60);
    for (const auto& c : checks) {
      INFO(c.suite << ": " << c.name << " err=" << c.max_rel_error);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("the aliased double-sum identities cover every divisor pair") {
  for (std::size_t d : {12, 24}) {
    const auto checks = aliased_wdd(d, 5);
    CHECK(checks.size() == 4);
    for (const auto& c : checks) {
      CHECK(c.passed);
      CHECK(c.max_rel_error < 1e-9);
    }
  }
}

TEST_CASE("an injected sign error fails only its own suite") {
  Faults f;
  f.shifted_product_sign = true;
  bool failed = false;
  for (const auto& c : full_suite(7, f)) {
    if (c.suite.rfind("shifted_product_spectrum", 0) == 0) {
      CHECK_FALSE(c.passed);
      failed = true;
    } else {
      CHECK(c.passed);
    }
  }
  CHECK(failed);
}

TEST_CASE("relative difference helper") {
  const wdd::ComplexVector a{1, 2}, b{1, 2.5};
  CHECK(rel_diff(a, a) == 0.0);
  CHECK(rel_diff(a, b) == doctest::Approx(0.2));
  CHECK(rel_diff(wdd::ComplexVector(3), wdd::ComplexVector(3)) == 0.0);
}

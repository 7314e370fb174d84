#include <doctest.h>

#include "diamond7/congruence.hpp"
#include "oracles.hpp"

using namespace diamond7;

TEST_SUITE("congruence-checker") {
  TEST_CASE("lambda values") {
    CHECK(lambda(Family::K3, 1).value == 6);
    CHECK(lambda(Family::K3, 2).value == 41);
    CHECK(lambda(Family::K5, 1).value == 2);
    CHECK(lambda(Family::K5, 2).value == 37);
    CHECK(lambda(Family::K5, 3).value == 86);
    CHECK(lambda(Family::K5, 4).value == 1801);
    for (int a = 1; a <= 8; ++a) {
      CHECK(6 * lambda(Family::K3, a).value == 5 * pow7(a) + 1);
      const BigInt l5 = 4 * lambda(Family::K5, a).value - 1;
      CHECK((l5 == pow7(a) || l5 == 3 * pow7(a)));
    }
  }

  TEST_CASE("d_3 scans") {
    CHECK(check_theorem_d3(1, 50).pass());
    CHECK(check_theorem_d3(2, 100).pass());
    CHECK(check_theorem_d3(4, 20).pass());
    // cross-check one value against the oracle
    const auto d3 = oracle::diamond_counts(3, 41 + 49 * 3);
    for (int n = 0; n <= 3; ++n) CHECK(d3[49 * n + 41] % 7 == 0);
  }

  TEST_CASE("window stability") {
    const Report small = check_theorem_d3(3, 20);
    const Report large = check_theorem_d3(3, 60);
    CHECK(small.pass());
    CHECK(large.pass());
  }

  TEST_CASE("d_5 cross products") {
    CHECK(check_theorem_d5(1, 0).pass());
    CHECK(check_theorem_d5(1, 50).pass());
    CHECK(check_theorem_d5(2, 20).pass());
  }

  TEST_CASE("corollary") {
    const auto p = oracle::partitions(19);
    CHECK(p[5] == 7);
    CHECK(p[12] == 77);
    CHECK(p[19] == 490);
    CHECK(check_corollary(2, 500).pass());
  }

  TEST_CASE("prefactor identities") {
    CHECK(check_prefactor_identity(Family::K3, 1, 60).pass());
    CHECK(check_prefactor_identity(Family::K3, 2, 60).pass());
    CHECK(check_prefactor_identity(Family::K5, 1, 60).pass());
  }
}

#include <doctest.h>

#include "extalg/error.hpp"
#include "extalg/oracle.hpp"
#include "extalg/resolve.hpp"
#include "support/fixtures.hpp"
#include "support/sampler.hpp"

using namespace extalg;
using namespace extalg::testing;

TEST_CASE("Cech counts for O(n)") {
  CHECK(oracle::cech_O(2, 1, 0) == 3);
  CHECK(oracle::cech_O(2, -3, 2) == 1);
  CHECK(oracle::cech_O(2, 0, 1) == 0);
  for (int n = -6; n <= 6; ++n) {
    CHECK(oracle::cech_O(2, n, 0) == (n >= 0 ? binomial(n + 2, 2) : 0));
    CHECK(oracle::cech_O(2, n, 2) == (n <= -3 ? binomial(-n - 1, 2) : 0));
  }
}

TEST_CASE("Ext two ways") {
  for (int k = 0; k <= 3; ++k) {
    // Ext^k(K, K) lives in internal degree -k, i.e. degree 0 against K[-k].
    auto [a, b] = oracle::ext_two_ways(to_plain(K(1)), to_plain(shift(K(1), -k)), k);
    CHECK(a == k + 1);
    CHECK(b == k + 1);
  }
  for (int k = 1; k <= 3; ++k) {
    auto p = oracle::ext_two_ways(to_plain(Lam(1)), to_plain(J1(1)), k);
    CHECK(p == std::make_pair(0, 0));
    auto i = oracle::ext_two_ways(to_plain(K(1)), to_plain(shift(Lam(1), 2 - k)), k);
    CHECK(i == std::make_pair(0, 0));
  }
}

TEST_CASE("oracle and engine agree on random pairs") {
  Rng rng(17);
  for (int t = 0; t < 15; ++t) {
    GradedModule a = random_module(rng, 1 + t % 2), b = random_module(rng, 1 + t % 2);
    int s = static_cast<int>(rng() % 3) - 2;
    b = shift(b, s);
    for (int k = 0; k <= 2; ++k) {
      auto [x, y] = oracle::ext_two_ways(to_plain(a), to_plain(b), k);
      CHECK(x == y);
      CHECK(x == ext_dim(a, b, k, 0));
    }
    CHECK(oracle::hom_dim(to_plain(a), to_plain(b)) == hom_dim(a, b, 0));
  }
}

TEST_CASE("Betti totals") {
  std::vector<int> b = oracle::betti_totals(to_plain(K(2)), 5);
  for (int k = 0; k <= 5; ++k) CHECK(b[k] == binomial(k + 2, 2));
}

TEST_CASE("Kronecker dimension vectors") {
  CHECK(oracle::kronecker_dims(1, 0) == std::make_pair(1LL, 0LL));
  CHECK(oracle::kronecker_dims(1, 1) == std::make_pair(2LL, 1LL));
  for (int r = 1; r <= 3; ++r)
    for (int k = 1; k <= 6; ++k) {
      auto [a0, b0] = oracle::kronecker_dims(r, k - 1);
      auto [a1, b1] = oracle::kronecker_dims(r, k);
      auto [a2, b2] = oracle::kronecker_dims(r, k + 1);
      CHECK(a2 + a0 == (r + 1) * a1);
      CHECK(b2 + b0 == (r + 1) * b1);
    }
}

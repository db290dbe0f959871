#include <doctest.h>

#include "extalg/error.hpp"
#include "extalg/koszul.hpp"
#include "support/fixtures.hpp"
#include "support/sampler.hpp"

using namespace extalg;
using namespace extalg::testing;

TEST_CASE("Koszul verdicts") {
  for (int r = 1; r <= 3; ++r) {
    KoszulVerdict v = is_koszul(K(r));
    CHECK(v.holds);
    CHECK(v.checked_up_to == kDefaultKoszulBound);
    CHECK_FALSE(v.witness);
  }
  CHECK(is_koszul(omega_K(2, 3)).holds);
  CHECK(is_koszul(J1(2)).holds);

  KoszulVerdict n = is_koszul(lam_mod_j2(2));
  CHECK_FALSE(n.holds);
  REQUIRE(n.witness);
  // Ω(Λ/J²) = J² is generated in degree 2: the first step is already nonlinear.
  CHECK(n.witness->first == 1);
  CHECK(n.witness->second == 2);
  // Linear quotients are Koszul.
  CHECK(is_koszul(linear_quotient(2, 1)).holds);
  CHECK(is_koszul(linear_quotient(1, 1)).holds);
}

TEST_CASE("verdicts are monotone in the bound") {
  KoszulVerdict a = is_koszul(lam_mod_j2(2), 2);
  KoszulVerdict b = is_koszul(lam_mod_j2(2), 8);
  CHECK(a.witness == b.witness);
  KoszulVerdict c = is_koszul(K(2), 3);
  CHECK(c.holds);
  CHECK(c.checked_up_to == 3);
}

TEST_CASE("Koszul implies weakly Koszul implies quasi-Koszul") {
  Rng rng(8);
  int koszul = 0;
  for (int t = 0; t < 40; ++t) {
    GradedModule m = random_module(rng, 1 + t % 2, 1);
    if (!generated_in_one_degree(m)) continue;
    bool k = is_koszul(m, 5).holds, w = is_weakly_koszul(m, 5).holds, q = is_quasi_koszul(m, 5).holds;
    if (k) {
      ++koszul;
      CHECK(w);
    }
    if (w) CHECK(q);
  }
  CHECK(koszul > 0);
  CHECK(is_weakly_koszul(Lam(2)).holds);
  CHECK(classify(K(2)) == KoszulKind::koszul);
}

TEST_CASE("co-Koszul verdicts") {
  CHECK(is_co_koszul(K(2)).holds);
  CHECK(is_co_koszul(Lam(2)).holds);
  // Duality route against the literal socle-quotient check.
  for (int r = 1; r <= 2; ++r) {
    GradedModule j = J1(r);
    CHECK(is_quasi_co_koszul(j).holds == literal_co_koszul_check(j, kDefaultKoszulBound, true, false).holds);
  }
}

TEST_CASE("Koszul dual dimensions") {
  KoszulDualData k = koszul_dual_data(K(2), 6);
  for (int i = 0; i <= 6; ++i) CHECK(k.dims[i] == binomial(i + 2, 2));
  KoszulDualData l = koszul_dual_data(Lam(2), 4);
  CHECK(l.dims[0] == 1);
  for (int i = 1; i <= 4; ++i) CHECK(l.dims[i] == 0);
  // J[1] over two variables: f_k is the rank of P_{k+1} of K.
  KoszulDualData j = koszul_dual_data(J1(1), 5);
  for (int i = 0; i <= 5; ++i) CHECK(j.dims[i] == i + 2);
}

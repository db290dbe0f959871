#include <doctest.h>

#include "extalg/error.hpp"
#include "extalg/oracle.hpp"
#include "extalg/sheaf.hpp"
#include "support/fixtures.hpp"

using namespace extalg;
using namespace extalg::testing;

TEST_CASE("local freeness") {
  for (int r = 1; r <= 2; ++r) {
    CHECK(is_locally_free(K(r)).status == LocalFreeness::locally_free);
    for (int s = 1; s <= 4; ++s) CHECK(is_locally_free(omega_K(r, s)).status == LocalFreeness::locally_free);
  }
  LocallyFreeVerdict p = is_locally_free(linear_quotient(1, 1));
  CHECK(p.status == LocalFreeness::not_locally_free);
  CHECK_FALSE(p.residue.empty());
}

TEST_CASE("local freeness cross-checks agree") {
  for (const GradedModule& m : {K(2), J1(2), omega_K(1, 2), linear_quotient(1, 1), linear_quotient(2, 1)}) {
    LocallyFreeVerdict v = is_locally_free(m, kDefaultTMax, true, true);
    CHECK(v.cross_checks_agree);
  }
}

TEST_CASE("decomposable input needs the summandwise flag") {
  GradedModule m = direct_sum(K(2), J1(2));
  CHECK_THROWS_AS(is_locally_free(m), Error);
  LocallyFreeVerdict v = is_locally_free(m, kDefaultTMax, true);
  CHECK(v.status == LocalFreeness::locally_free);
  CHECK(v.summands == 2);
}

TEST_CASE("Hilbert polynomial and rank") {
  HilbertPoly h = hilbert_poly(K(2));
  for (int n = 0; n < 6; ++n) CHECK(h(n) == (n + 1) * (n + 2) / 2);
  CHECK(h.rank() == 1);
  HilbertPoly z = hilbert_poly(Lam(2));
  CHECK(z.is_zero());
  CHECK(sheaf_rank(Lam(2)) == 0);
  CHECK(sheaf_rank(J1(2)) == 1);
  CHECK(sheaf_rank(omega_K(2, 2)) == 1);
  // BGG rank matches on Koszul modules.
  for (const GradedModule& m : {K(2), J1(2), omega_K(2, 3), soc2(2), direct_sum(K(2), J1(2))})
    CHECK(bgg_rank(m) == sheaf_rank(m));
}

TEST_CASE("twists") {
  CHECK(is_isomorphic(twist(K(2), 1), J1(2)).value);
  for (const GradedModule& m : {J1(2), omega_K(1, 2), soc2(2)})
    CHECK(is_isomorphic(twist(twist(m, 1), -1), m).value);
}

TEST_CASE("cohomology of the structure sheaf") {
  for (int r = 1; r <= 3; ++r) {
    CHECK(cohomology_dim(K(r), 0, 0) == 1);
    for (int q = 1; q <= r; ++q) CHECK(cohomology_dim(K(r), q, 0) == 0);
  }
  CHECK(cohomology_dim(K(2), 0, 1) == 3);
  CHECK(cohomology_dim(K(2), 2, -3) == 1);
  CHECK(cohomology_dim(K(2), 0, -3) == 0);
  CHECK(cohomology_dim(K(2), 1, -3) == 0);

  CohomologyTable t = cohomology_table(K(1), -4, 4);
  CHECK(t.euler_identity_holds());
  for (int n = -4; n <= 4; ++n)
    for (int q = 0; q <= 1; ++q) CHECK(t.at(q, n) == oracle::cech_O(1, n, q));
}

TEST_CASE("twisting shifts the cohomology table") {
  CohomologyTable a = cohomology_table(K(2), -4, 4);
  CohomologyTable b = cohomology_table(twist(K(2), 1), -4, 3);
  for (int n = -4; n <= 3; ++n)
    for (int q = 0; q <= 2; ++q) CHECK(b.at(q, n) == a.at(q, n + 1));
}

TEST_CASE("Serre duality") {
  for (int n = 0; n <= 4; ++n) {
    SerreCheck c = serre_duality_check(K(2), 0, n);
    CHECK(c.holds());
    CHECK(c.lhs == oracle::cech_O(2, n, 0));
  }
  for (int n = -3; n <= 3; ++n) CHECK(serre_duality_check(K(1), 0, n).holds());
  SerreCheck z = serre_duality_check(Lam(2), 1, 0);
  CHECK(z.lhs == 0);
  CHECK(z.rhs == 0);
}

TEST_CASE("sheaf homomorphisms") {
  CHECK(sheaf_hom_dim(K(2), K(2)) == 1);
  CHECK(sheaf_hom_dim(K(2), twist(K(2), 1)) == 3);
  CHECK(sheaf_hom_dim(K(1), twist(K(1), 1)) == 2);
  CHECK(is_indecomposable_sheaf(K(2)).value);
}

TEST_CASE("presentations by syzygies of simples") {
  auto k = syzygy_presentation(K(2));
  REQUIRE(k);
  CHECK(k->t == 0);
  CHECK(k->copies == 1);
  auto o = syzygy_presentation(omega_K(2, 2));
  REQUIRE(o);
  CHECK(o->t == 2);
  CHECK(is_surjective(o->map));
}

TEST_CASE("normalization") {
  GradedModule m = shift(J1(2), -3);
  CHECK(normalize(m) == J1(2));
  // (Λ/J²)_{>=1}[1] is K^3.
  auto kn = koszul_normalization(lam_mod_j2(2));
  REQUIRE(kn);
  CHECK(kn->first == 1);
  CHECK(kn->second == direct_sum(direct_sum(K(2), K(2)), K(2)));
  CHECK_THROWS_AS(normalize(direct_sum(K(2), shift(K(2), -1))), Error);
}

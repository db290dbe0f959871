#include <doctest.h>

#include "extalg/error.hpp"
#include "extalg/ar.hpp"
#include "extalg/koszul.hpp"
#include "support/fixtures.hpp"
#include "support/sampler.hpp"

using namespace extalg;
using namespace extalg::testing;

TEST_CASE("tau round trip") {
  for (int r = 1; r <= 2; ++r) {
    CHECK(is_isomorphic(tau_inverse(tau(K(r))), K(r)).value);
    CHECK(is_isomorphic(tau_inverse(tau(J1(r))), J1(r)).value);
  }
  // τK for two variables: Ω²D(K*), with K* = K[2].
  GradedModule t = tau(K(1));
  CHECK(t.total_dim() == 5);
  CHECK(is_isomorphic(t, shift(syzygy(K(1), 2), 2)).value);
}

TEST_CASE("(D(Ω^k K))*[r+1] = Ω^k K") {
  for (int r = 1; r <= 2; ++r)
    for (int k = 0; k <= 3; ++k) {
      GradedModule o = syzygy(K(r), k);
      CHECK(is_isomorphic(shift(star(dual(o)), r + 1), o).value);
    }
}

TEST_CASE("sigma is a Koszul module of Loewy length two") {
  for (const GradedModule& m : {K(1), K(2), J1(2), soc2(2), omega_K(1, 2)}) {
    SigmaData s = sigma_data(m);
    CHECK(s.equals_radical);
    CHECK(loewy_length(s.sigma) <= 2);
    CHECK(is_koszul(s.sigma).holds);
    CHECK(s.sigma == sigma(m));
  }
}

TEST_CASE("almost split sequence ending at K over two variables") {
  ARSequence s = ar_sequence(K(1));
  CHECK(s.exact);
  CHECK(s.nonsplit);
  CHECK(s.rad_annihilates);
  CHECK(s.ext_dim > 0);
  CHECK(s.probes_lifted == s.probes);
  CHECK(s.certified());
  CHECK(s.middle.total_dim() == s.left.total_dim() + s.right.total_dim());
  MiddleDecomposition md = middle_summands(s);
  // Kronecker mesh: two arrows.
  CHECK(md.count == 2);
  for (const auto& x : md.summands) CHECK(x.composition_nonzero);
}

TEST_CASE("middle term is indecomposable without degree-1 cogenerators") {
  ARSequence s = ar_sequence(J1(2));
  CHECK(s.certified());
  MiddleDecomposition md = middle_summands(s);
  CHECK(md.confident);
  CHECK(md.count == 1);
}

TEST_CASE("preinjective mesh has r+1 arrows") {
  ARSequence s = ar_sequence(K(2));
  CHECK(s.certified());
  CHECK(middle_summands(s).count == 3);
}

TEST_CASE("Loewy length two right terms give the same sequence over Λ/J²") {
  for (const GradedModule& m : {K(1), K(2), soc2(2)}) {
    Loewy2Comparison c = loewy2_compare(ar_sequence(m));
    CHECK(c.holds());
  }
}

TEST_CASE("sigma preserves exact sequences") {
  ARSequence s = ar_sequence(K(2));
  CHECK(sigma_exact_check(s).holds());
  CHECK(is_split(identity_map(K(2))));
  DirectSum d = direct_sum(std::vector<GradedModule>{K(2), J1(2)});
  CHECK_THROWS_AS(sigma_exact_check(d.injections[0], d.projections[1]), Error);

  Rng rng(2);
  int nonsplit = 0;
  for (int t = 0; t < 20 && nonsplit < 3; ++t) {
    Extension e = random_extension(K(2), sigma(K(2)), rng);
    CHECK(is_injective(e.f));
    CHECK(is_surjective(e.g));
    CHECK(is_zero_map(compose(e.g, e.f)));
    if (!e.split) ++nonsplit;
  }
  CHECK(nonsplit > 0);
}

TEST_CASE("component shapes") {
  ComponentReport k = sigma_orbit(K(1), 3);
  CHECK(k.shape == ComponentShape::preinjective_of_loewy2);
  CHECK(k.mesh_additive());
  for (const auto& n : k.nodes) CHECK(n.kronecker_index >= 0);

  ComponentReport s = sigma_orbit(soc2(2), 2);
  CHECK(s.shape == ComponentShape::preinjective_of_loewy2);
  CHECK(s.mesh_additive());

  ComponentReport j = sigma_orbit(J1(2), 1);
  CHECK(j.shape == ComponentShape::ZA_infinity_cone);
  CHECK(j.mesh_additive());
  CHECK(j.hilbert_agree);

  ComponentReport p = sigma_orbit(Lam(2), 2);
  CHECK(p.shape == ComponentShape::projective_component);

  std::string dot = k.dot();
  CHECK(dot.rfind("digraph component {", 0) == 0);
  CHECK(dot.find("->") != std::string::npos);
}

TEST_CASE("rank recursion at depth one") {
  RankTable t = rank_recursion(J1(2), 1);
  CHECK(t.agree);
  CHECK(t.base_case);
  CHECK(t.strictly_increasing);
  CHECK(t.hilbert_agree);
  CHECK(t.sigma_ranks == std::vector<long long>{1, 9});
  CHECK_THROWS_AS(rank_recursion(J1(2), 2, 0, 10), Error);
}

#include <doctest.h>

#include "extalg/error.hpp"
#include "extalg/resolve.hpp"
#include "support/fixtures.hpp"
#include "support/sampler.hpp"

using namespace extalg;
using namespace extalg::testing;

TEST_CASE("projective covers") {
  ResolutionStep k = projective_cover(K(2));
  CHECK(k.cover == Lam(2));
  CHECK(is_isomorphic(k.module, radical_power(Lam(2), 1).module).value);

  GradedModule j = radical_power(Lam(1), 1).module;
  ResolutionStep c = projective_cover(j);
  CHECK(c.cover.d_min() == 1);
  CHECK(c.cover.dims() == std::vector<int>{2, 4, 2});
  CHECK(c.module.total_dim() == c.cover.total_dim() - j.total_dim());

  ResolutionStep l = projective_cover(Lam(2));
  CHECK(l.module.is_zero());
}

TEST_CASE("syzygies") {
  GradedModule o1 = syzygy(K(1), 1);
  CHECK(o1.d_min() == 1);
  CHECK(o1.dims() == std::vector<int>{2, 1});
  GradedModule o2 = syzygy(K(1), 2);
  CHECK(o2.d_min() == 2);
  CHECK(o2.dims() == std::vector<int>{3, 2});
  CHECK(syzygy(Lam(2), 1).is_zero());
}

TEST_CASE("injective envelopes and cosyzygies") {
  ResolutionStep e = injective_envelope(K(1));
  CHECK(is_isomorphic(e.cover, shift(Lam(1), 2)).value);
  CHECK(is_injective(e.map));
  CHECK(cosyzygy(Lam(2), 1).is_zero());
  GradedModule c = cosyzygy(K(1), 1);
  CHECK(c.d_min() == -2);
  // Λ[2]/soc: Λ_0 and Λ_1 sit in degrees -2 and -1.
  CHECK(c.dims() == std::vector<int>{1, 2});
}

TEST_CASE("betti numbers of the simple module") {
  BettiTable b1 = min_resolution(K(1), 8);
  for (int k = 0; k <= 8; ++k) {
    CHECK(b1.total(k) == k + 1);
    CHECK(b1.at(k, k) == k + 1);
  }
  BettiTable b2 = min_resolution(K(2), 6);
  for (int k = 0; k <= 6; ++k) CHECK(b2.total(k) == binomial(k + 2, 2));
  BettiTable bl = min_resolution(Lam(2), 4);
  CHECK(bl.at(0, 0) == 1);
  for (int k = 1; k <= 4; ++k) CHECK(bl.total(k) == 0);
}

TEST_CASE("minimality of every resolution step") {
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    GradedModule m = random_module(rng, 1 + t % 2);
    Resolution res(m);
    for (int k = 0; k < 4; ++k) {
      // The kernel of P_k -> P_{k-1} sits inside J P_k.
      const FreeModule& f = res.term(k);
      for (const auto& [d, u] : res.kernel(k)) {
        if (u.cols() == 0) continue;
        std::vector<int> rad = f.radical_indices(d, 1);
        std::vector<int> out;
        for (int i = 0; i < f.dim(d); ++i)
          if (std::find(rad.begin(), rad.end(), i) == rad.end()) out.push_back(i);
        CHECK(u.select_rows(out).is_zero());
      }
    }
  }
}

TEST_CASE("coresolution betti numbers are those of the dual with degrees negated") {
  Rng rng(4);
  for (int t = 0; t < 8; ++t) {
    GradedModule m = random_module(rng, 1 + t % 2);
    BettiTable co = min_coresolution(m, 3);
    BettiTable pr = min_resolution(dual(m), 3);
    for (const auto& [kd, v] : pr.entries) CHECK(co.at(kd.first, -kd.second) == v);
    for (const auto& [kd, v] : co.entries) CHECK(pr.at(kd.first, -kd.second) == v);
  }
}

TEST_CASE("complete resolution is exact") {
  CompleteResolution c(K(1));
  for (int e = -3; e <= 3; ++e) CHECK(c.exact_at(e));
  CompleteResolution j(J1(2));
  for (int e = -2; e <= 2; ++e) CHECK(j.exact_at(e));
}

TEST_CASE("ext dimensions") {
  // Ext^k(K, K) sits in internal degree -k with dimension C(k+r, r).
  for (int k = 0; k <= 3; ++k) {
    CHECK(ext_dim(K(1), K(1), k, -k) == k + 1);
    CHECK(ext_dim(K(2), K(2), k, -k) == binomial(k + 2, 2));
    CHECK(ext_dim(K(2), K(2), k, 0) == (k == 0 ? 1 : 0));
  }
  CHECK(ext_dim(Lam(2), K(2), 1) == 0);
  CHECK(ext_dim(K(2), Lam(2), 2, -2) == 0);
}

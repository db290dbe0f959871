#include <doctest.h>

#include "extalg/error.hpp"
#include "extalg/gmod.hpp"
#include "extalg/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/sampler.hpp"

using namespace extalg;
using namespace extalg::testing;

namespace {
std::vector<int> dims_at(const GradedModule& m, int lo) {
  CHECK(m.d_min() == lo);
  return m.dims();
}
}  // namespace

TEST_CASE("validate") {
  CHECK(validate(Lam(2)).ok);
  CHECK(validate(K(3)).ok);

  GradedModule bad(ctx_r(1), -1, {1, 1, 1});
  bad.set_action(0, -1, Matrix::from_rows({{1}}, kDefaultPrime));
  bad.set_action(0, 0, Matrix::from_rows({{1}}, kDefaultPrime));
  ValidationReport v = validate(bad);
  CHECK_FALSE(v.ok);
  REQUIRE_FALSE(v.violations.empty());
  CHECK(v.violations.front().i == 0);
  CHECK(v.violations.front().j == 0);
  CHECK(v.violations.front().d == -1);
}

TEST_CASE("free modules") {
  CHECK(dims_at(Lam(1), 0) == std::vector<int>{1, 2, 1});
  CHECK(dims_at(Lam(2), 0) == std::vector<int>{1, 3, 3, 1});
  CHECK(dims_at(free_module(ctx_r(1), 3), 3) == std::vector<int>{1, 2, 1});
}

TEST_CASE("shift and truncation") {
  CHECK(dims_at(shift(K(1), -1), 1) == std::vector<int>{1});
  CHECK(dims_at(truncate(Lam(1), 1), 1) == std::vector<int>{2, 1});
}

TEST_CASE("radical, socle, top") {
  CHECK(dims_at(radical_power(Lam(1), 1).module, 1) == std::vector<int>{2, 1});
  CHECK(radical_power(K(2), 1).module.is_zero());
  CHECK(radical_power(Lam(2), 4).module.is_zero());
  CHECK_FALSE(radical_power(Lam(2), 3).module.is_zero());

  CHECK(dims_at(socle(Lam(1)).module, 2) == std::vector<int>{1});
  CHECK(dims_at(top(Lam(2)).module, 0) == std::vector<int>{1});
  GradedModule j = radical_power(Lam(2), 1).module;
  CHECK(dims_at(socle(j).module, 3) == std::vector<int>{1});
  CHECK(loewy_length(Lam(2)) == 4);
}

TEST_CASE("dual and star") {
  CHECK(dims_at(dual(K(1)), 0) == std::vector<int>{1});
  CHECK(dims_at(dual(Lam(1)), -2) == std::vector<int>{1, 2, 1});
  CHECK(dims_at(dual(radical_power(Lam(1), 1).module), -2) == std::vector<int>{1, 2});
  CHECK(is_isomorphic(star(Lam(2)), Lam(2)).value);
  CHECK(dims_at(star(K(1)), 2) == std::vector<int>{1});
  // D(K)*[r+1] = K.
  for (int r = 1; r <= 3; ++r) CHECK(is_isomorphic(shift(star(dual(K(r))), r + 1), K(r)).value);
}

TEST_CASE("direct sums") {
  CHECK(direct_sum(K(1), GradedModule(ctx_r(1))) == K(1));
  CHECK(dims_at(direct_sum(K(1), K(1)), 0) == std::vector<int>{2});
  GradedModule s = direct_sum(Lam(1), shift(Lam(1), -1));
  CHECK(dims_at(s, 0) == std::vector<int>{1, 3, 3, 1});
}

TEST_CASE("hom spaces") {
  CHECK(hom_dim(K(2), K(2), 0) == 1);
  for (int r = 1; r <= 3; ++r) CHECK(hom_dim(K(r), Lam(r), 0) == 0);
  CHECK(end_algebra(Lam(2)).basis.size() == 1);
  // Degree-s maps K -> Λ exist exactly at s = r+1.
  CHECK(hom_dim(K(2), Lam(2), 3) == 1);
}

TEST_CASE("isomorphism and decomposition") {
  CHECK(is_isomorphic(K(1), shift(K(1), 0)).value);
  CHECK_FALSE(is_isomorphic(K(1), shift(K(1), 1)).value);
  Verdict v = is_indecomposable(direct_sum(K(2), K(2)));
  CHECK_FALSE(v.value);
  CHECK(is_indecomposable(J1(2)).value);
  Decomposition d = decompose(direct_sum(J1(2), K(2)));
  CHECK(d.summands.size() == 2);
}

TEST_CASE("loewy2") {
  CHECK(dims_at(loewy2(Lam(1)), 0) == std::vector<int>{1, 2});
  CHECK(loewy2(K(1)) == K(1));
  CHECK(dims_at(loewy2(J1(2)), 0) == std::vector<int>{3, 3});
}

TEST_CASE("hom space dimensions agree with the oracle on both routes") {
  Rng rng(11);
  // Small pairs take the direct route; sums of Ω^3K[3] have many more generators
  // than socle elements and take the dual one.
  std::vector<std::pair<GradedModule, GradedModule>> pairs;
  for (int t = 0; t < 12; ++t) pairs.push_back({random_module(rng, 2), random_module(rng, 2)});
  GradedModule big = direct_sum(omega_K(2, 3), omega_K(2, 3));
  pairs.push_back({big, big});
  pairs.push_back({direct_sum(big, J1(2)), big});
  for (const auto& [a, b] : pairs) {
    for (int s = -1; s <= 1; ++s) {
      HomSpace h(a, b, s);
      CHECK(h.dim() == oracle::hom_dim(to_plain(shift(a, 0)), to_plain(shift(b, s))));
      for (int k = 0; k < h.dim(); ++k) CHECK(is_linear(h.basis_map(k)));
    }
  }
}

#pragma once

// Seeded generators of small modules for the property suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "extalg/gmod.hpp"
#include "extalg/oracle.hpp"

namespace extalg::testing {

using Rng = std::mt19937_64;

// Submodule generated by the columns of gens[d] in degree d.
Subspaces generated_submodule(const GradedModule& m, const Subspaces& gens);

// Quotient of a free module with one or two generators by a random submodule.
// Never zero; may be decomposable or have projective summands.
GradedModule random_module(Rng& rng, int r, int max_gens = 2);

// Koszul modules generated in degree 0 with no projective summand, from syzygies
// of simples, radical layers of Λ and sums of these, under random base change.
struct Sample {
  GradedModule module;
  std::string name;
};
Sample random_koszul(Rng& rng, int r);

// 0 -> x -f-> y -g-> z -> 0 from a random class in Ext^1(z, x)_0.
// `split` is true when the class happened to be zero.
struct Extension {
  GradedModule x, y, z;
  ModuleMap f, g;
  bool split = false;
};
Extension random_extension(const GradedModule& z, const GradedModule& x, Rng& rng);

// The same module as raw matrices, for the oracle.
oracle::PlainModule to_plain(const GradedModule& m);

}  // namespace extalg::testing

#pragma once

// Slow, independent reference computations. Nothing here touches the module,
// resolution or sheaf code; inputs are plain matrices.

#include <utility>
#include <vector>

#include "extalg/linalg.hpp"

namespace extalg::oracle {

// act[i][d - d_min] is x_i : M_d -> M_{d+1}.
struct PlainModule {
  int r = 1;
  u32 p = kDefaultPrime;
  int d_min = 0;
  std::vector<int> dims;
  std::vector<std::vector<Matrix>> act;

  int dim(int d) const;
  int d_max() const { return d_min + static_cast<int>(dims.size()) - 1; }
  Matrix x(int i, int d) const;
};

// Monomial counts for h^q(O_{P^r}(n)).
long long cech_O(int r, int n, int q);

// dim Ext^k(a, b)_0 via a projective resolution of a, and via an injective
// coresolution of b. Both routes use a brute-force Hom solver.
int ext_via_projective(const PlainModule& a, const PlainModule& b, int k);
int ext_via_injective(const PlainModule& a, const PlainModule& b, int k);
std::pair<int, int> ext_two_ways(const PlainModule& a, const PlainModule& b, int k);

int hom_dim(const PlainModule& a, const PlainModule& b);
// Total ranks of the terms of a minimal projective resolution.
std::vector<int> betti_totals(const PlainModule& m, int length);

// Dimension vector (lower layer, upper layer) of the k-th preinjective module
// of the Kronecker quiver with r+1 arrows, from d_{k+1} = (r+1) d_k - d_{k-1}.
std::pair<long long, long long> kronecker_dims(int r, int k);

}  // namespace extalg::oracle

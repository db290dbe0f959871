#pragma once

#include "extalg/gmod.hpp"
#include "extalg/resolve.hpp"
#include "extalg/sheaf.hpp"

namespace extalg::testing {

inline AlgebraContext ctx_r(int r) { return AlgebraContext{r, kDefaultPrime}; }
inline GradedModule K(int r) { return simple_module(ctx_r(r), 0); }
inline GradedModule Lam(int r) { return free_module(ctx_r(r), 0); }
// J[1], generated in degree 0.
inline GradedModule J1(int r) { return shift(radical_power(Lam(r), 1).module, 1); }
// Ω^s K[s].
inline GradedModule omega_K(int r, int s) { return shift(syzygy(K(r), s), s); }
// soc^2 Λ, generated in degree 0.
inline GradedModule soc2(int r) { return normalize(socle_power(Lam(r), 2).module); }

// Λ/(x_0, .., x_{s-1}).
inline GradedModule linear_quotient(int r, int s) {
  GradedModule lam = Lam(r);
  Matrix rel(lam.dim(1), s, lam.p());
  for (int i = 0; i < s; ++i) rel(i, i) = 1;
  Subspaces u;
  u[1] = rel;
  for (int d = 2; d <= lam.d_max(); ++d) u[d] = Matrix(lam.dim(d), 0, lam.p());
  // Close under the action.
  for (int d = 1; d < lam.d_max(); ++d) {
    Matrix span = u[d + 1];
    for (int i = 0; i < lam.nvars(); ++i) span = hstack(span, lam.action(i, d) * u[d]);
    u[d + 1] = span.cols() ? image_basis(span) : span;
  }
  return quotient(lam, u).module;
}

// Λ/J^2.
inline GradedModule lam_mod_j2(int r) { return loewy2(Lam(r)); }

}  // namespace extalg::testing

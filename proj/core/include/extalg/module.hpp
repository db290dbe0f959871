#pragma once

#include <map>
#include <vector>

#include "extalg/linalg.hpp"

namespace extalg {

// Exterior algebra on x_0..x_r over F_p. Basis e_S, S a subset of {0..r}
// encoded as a bit mask, graded by |S|.
struct AlgebraContext {
  int r = 1;
  u32 p = kDefaultPrime;

  int nvars() const { return r + 1; }
  u32 full_mask() const { return (u32(1) << nvars()) - 1; }
  bool operator==(const AlgebraContext& o) const { return r == o.r && p == o.p; }
  bool operator!=(const AlgebraContext& o) const { return !(*this == o); }
};

using Mask = u32;

int popcount(Mask m);
// e_S * e_T = sign * e_{S|T} when S and T are disjoint.
int ext_mul_sign(Mask s, Mask t);
// x_i * e_S = sign * e_{S+i}; i must not lie in S.
inline int ext_sign(int i, Mask s) { return ext_mul_sign(Mask(1) << i, s); }
// Subsets of {0..n-1} of size k in increasing mask order.
const std::vector<Mask>& subsets_of_size(int n, int k);
// Position of s among the subsets of its size.
int subset_rank(int n, Mask s);
long long binomial(long long n, long long k);

// Finite-dimensional graded left module. dims_[d - d_min] = n_d and
// act_[i][d - d_min] is X_i(d): K^{n_d} -> K^{n_{d+1}}.
class GradedModule {
 public:
  GradedModule() = default;
  explicit GradedModule(const AlgebraContext& ctx);
  GradedModule(const AlgebraContext& ctx, int d_min, std::vector<int> dims);

  const AlgebraContext& ctx() const { return ctx_; }
  u32 p() const { return ctx_.p; }
  int r() const { return ctx_.r; }
  int nvars() const { return ctx_.nvars(); }

  bool is_zero() const { return dims_.empty(); }
  int d_min() const { return d_min_; }
  int d_max() const { return d_min_ + static_cast<int>(dims_.size()) - 1; }
  int dim(int d) const;
  int total_dim() const;
  const std::vector<int>& dims() const { return dims_; }
  bool in_window(int d) const { return !dims_.empty() && d >= d_min() && d <= d_max(); }

  Matrix action(int i, int d) const;
  const Matrix& action_ref(int i, int d) const;
  void set_action(int i, int d, const Matrix& m);

  // Drops zero degrees at both ends of the window.
  void trim();

  bool operator==(const GradedModule& o) const;
  bool operator!=(const GradedModule& o) const { return !(*this == o); }

 private:
  AlgebraContext ctx_;
  int d_min_ = 0;
  std::vector<int> dims_;
  std::vector<std::vector<Matrix>> act_;
};

// Graded map raising degree by `shift`: block(d) sends source_d to target_{d+shift}.
struct ModuleMap {
  GradedModule source;
  GradedModule target;
  int shift = 0;
  std::map<int, Matrix> blocks;

  Matrix block(int d) const;
  void set_block(int d, const Matrix& m) { blocks[d] = m; }
};

ModuleMap zero_map(const GradedModule& a, const GradedModule& b, int shift = 0);
ModuleMap identity_map(const GradedModule& m);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
ModuleMap add_maps(const ModuleMap& a, const ModuleMap& b);
ModuleMap scale_map(const ModuleMap& a, u32 c);
bool is_linear(const ModuleMap& f);
bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);
bool is_zero_map(const ModuleMap& f);

// Free module ⊕_j Λ[-g_j]. Degree d has basis (j, S) with |S| = d - g_j,
// ordered by summand and then by mask.
class FreeModule {
 public:
  FreeModule() = default;
  FreeModule(const AlgebraContext& ctx, std::vector<int> gens);

  const AlgebraContext& ctx() const { return ctx_; }
  const std::vector<int>& gens() const { return gens_; }
  int rank() const { return static_cast<int>(gens_.size()); }
  bool is_zero() const { return gens_.empty(); }
  int d_min() const { return d_min_; }
  int d_max() const { return d_max_; }
  int dim(int d) const;
  int offset(int d, int j) const;
  int index(int d, int j, Mask s) const;

  // e_S applied to the columns of v, which live in degree d.
  Matrix mul(Mask s, int d, const Matrix& v) const;
  Matrix act(int i, int d, const Matrix& v) const { return mul(Mask(1) << i, d, v); }
  // Coordinates of J^k P inside degree d: basis indices with |S| >= k.
  std::vector<int> radical_indices(int d, int k) const;
  GradedModule to_module() const;

 private:
  AlgebraContext ctx_;
  std::vector<int> gens_;
  int d_min_ = 0, d_max_ = -1;
  std::map<int, std::vector<int>> offsets_;  // degree -> prefix offsets per summand
};

}  // namespace extalg

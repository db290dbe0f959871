#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "extalg/module.hpp"

namespace extalg {

// Per-degree subspaces of a module, each given by independent columns.
using Subspaces = std::map<int, Matrix>;

struct SubModule {
  GradedModule module;
  ModuleMap inclusion;
};

struct QuotientModule {
  GradedModule module;
  ModuleMap projection;
};

struct DirectSum {
  GradedModule module;
  std::vector<ModuleMap> injections;
  std::vector<ModuleMap> projections;
};

struct Violation {
  int i = 0, j = 0, d = 0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  std::vector<std::string> shape_errors;
};

GradedModule simple_module(const AlgebraContext& ctx, int degree = 0);
GradedModule free_module(const AlgebraContext& ctx, int g = 0);
GradedModule free_sum(const AlgebraContext& ctx, const std::vector<int>& gens);

ValidationReport validate(const GradedModule& m);

// (m[s])_d = m_{d+s}.
GradedModule shift(const GradedModule& m, int s);
ModuleMap shift_map(const ModuleMap& f, int s);
GradedModule truncate(const GradedModule& m, int k);
SubModule truncate_sub(const GradedModule& m, int k);

SubModule submodule(const GradedModule& m, const Subspaces& u);
QuotientModule quotient(const GradedModule& m, const Subspaces& u);
// Image of a degree-0 map as subspaces of the target.
Subspaces image_subspaces(const ModuleMap& f);
Subspaces kernel_subspaces(const ModuleMap& f);
bool same_subspaces(const Subspaces& a, const Subspaces& b, const GradedModule& ambient);
Subspaces full_subspaces(const GradedModule& m);

Subspaces radical_subspaces(const GradedModule& m, int j);
SubModule radical_power(const GradedModule& m, int j);
Subspaces socle_subspaces(const GradedModule& m, int k = 1);
SubModule socle(const GradedModule& m);
SubModule socle_power(const GradedModule& m, int k);
QuotientModule top(const GradedModule& m);
int loewy_length(const GradedModule& m);
GradedModule loewy2(const GradedModule& m);

// Degrees of a minimal generating set / of the socle, with multiplicity.
std::vector<int> top_degrees(const GradedModule& m);
std::vector<int> socle_degrees(const GradedModule& m);
// Sets *g to the unique generator degree if there is one.
bool generated_in_one_degree(const GradedModule& m, int* g = nullptr);
bool is_semisimple(const GradedModule& m);

GradedModule dual(const GradedModule& m);
// Hom_Λ(m, Λ) with the left structure (x·f)(v) = f(v)x.
GradedModule star(const GradedModule& m);
// D(f): D(target) -> D(source).
ModuleMap dual_map(const ModuleMap& f);
// f*: star(target) -> star(source), φ -> φ∘f. Degree-0 maps only.
ModuleMap star_map(const ModuleMap& f);

DirectSum direct_sum(const std::vector<GradedModule>& parts);
GradedModule direct_sum(const GradedModule& a, const GradedModule& b);

// Free summands are exactly detected by the top monomial acting nontrivially.
bool has_projective_summand(const GradedModule& m);
GradedModule strip_projective(const GradedModule& m);

GradedModule basis_change(const GradedModule& m, std::mt19937_64& rng);

// Matrices of the monomials e_S acting on a fixed module, memoised.
class ActionCache {
 public:
  explicit ActionCache(GradedModule m) : m_(std::move(m)) {}
  const GradedModule& module() const { return m_; }
  const Matrix& mono(Mask s, int d) const;

 private:
  GradedModule m_;
  mutable std::map<std::pair<Mask, int>, Matrix> cache_;
};

// Something with a degreewise Λ-action on coordinates: either an explicit
// module or a free module.
class Ambient {
 public:
  virtual ~Ambient() = default;
  virtual const AlgebraContext& ctx() const = 0;
  virtual int dim(int d) const = 0;
  virtual Matrix mul(Mask s, int d, const Matrix& v) const = 0;
  Matrix act(int i, int d, const Matrix& v) const { return mul(Mask(1) << i, d, v); }
};

class ModuleAmbient : public Ambient {
 public:
  explicit ModuleAmbient(const GradedModule& m) : cache_(m) {}
  const AlgebraContext& ctx() const override { return cache_.module().ctx(); }
  int dim(int d) const override { return cache_.module().dim(d); }
  Matrix mul(Mask s, int d, const Matrix& v) const override;

 private:
  ActionCache cache_;
};

class FreeAmbient : public Ambient {
 public:
  explicit FreeAmbient(FreeModule f) : f_(std::move(f)) {}
  const AlgebraContext& ctx() const override { return f_.ctx(); }
  int dim(int d) const override { return f_.dim(d); }
  Matrix mul(Mask s, int d, const Matrix& v) const override { return f_.mul(s, d, v); }
  const FreeModule& free() const { return f_; }

 private:
  FreeModule f_;
};

struct Generators {
  std::vector<int> degrees;
  std::vector<Matrix> vectors;  // one column each, in ambient coordinates
};

// J·U per degree, computed inside the ambient.
Subspaces radical_of(const Ambient& a, const Subspaces& u);
Generators minimal_generators(const Ambient& a, const Subspaces& u);

struct CoverData {
  Generators gens;
  FreeModule cover;
  std::map<int, Matrix> pi;  // cover_d -> ambient_d
  Subspaces kernel;          // in cover coordinates
};

CoverData cover_of(const Ambient& a, const Subspaces& u, const Generators& gens);
CoverData cover_of(const Ambient& a, const Subspaces& u);

// Generators and relations of a module. Relations are minimal generators of
// the kernel of the cover map, in cover coordinates.
struct Presentation {
  GradedModule module;
  CoverData data;
  std::map<int, Matrix> section;  // module_d -> cover_d with pi * section = 1
  Generators relations;
};

Presentation present(const GradedModule& m);

// Degree-s homomorphisms a -> b, represented by the images of the generators of a.
class HomSpace {
 public:
  HomSpace(const GradedModule& a, const GradedModule& b, int s);
  HomSpace(std::shared_ptr<const Presentation> pa, const GradedModule& b, int s);

  int dim() const { return basis_.cols(); }
  int shift() const { return s_; }
  const Matrix& basis() const { return basis_; }
  const Presentation& presentation() const { return *pa_; }
  const GradedModule& target() const { return cb_.module(); }
  int image_length() const { return basis_.rows(); }

  ModuleMap map_from_images(const Matrix& images) const;
  ModuleMap map_from_coords(const Matrix& coords) const { return map_from_images(basis_ * coords); }
  ModuleMap basis_map(int k) const { return map_from_images(basis_.col(k)); }
  Matrix images_of(const ModuleMap& f) const;
  Matrix coords_of(const ModuleMap& f) const { return coords_in(basis_, images_of(f)); }
  // Evaluates generator images on a cover element of given degree.
  Matrix evaluate(const Matrix& images, int deg, const Matrix& cover_vec) const;
  // Matrix sending generator images to the value on a cover element.
  Matrix evaluation_matrix(int deg, const Matrix& cover_vec) const;

 private:
  void build();

  std::shared_ptr<const Presentation> pa_;
  ActionCache cb_;
  int s_ = 0;
  std::vector<int> offsets_;
  Matrix basis_;
};

std::vector<ModuleMap> hom_space(const GradedModule& a, const GradedModule& b, int s);
int hom_dim(const GradedModule& a, const GradedModule& b, int s);

struct EndAlgebra {
  std::vector<ModuleMap> basis;
  // structure[a][b] = coordinates of basis[a] ∘ basis[b].
  std::vector<std::vector<std::vector<u32>>> structure;
};

EndAlgebra end_algebra(const GradedModule& m);

struct Verdict {
  bool value = false;
  bool confident = true;
  std::string note;
};

Verdict is_isomorphic(const GradedModule& a, const GradedModule& b, std::uint64_t seed = 0, int trials = 20);

struct Decomposition {
  std::vector<GradedModule> summands;
  std::vector<ModuleMap> inclusions;
  std::vector<ModuleMap> projections;
  bool confident = true;
};

// Idempotent from a random endomorphism, or nothing after the trial budget.
std::optional<ModuleMap> find_idempotent(const GradedModule& m, std::mt19937_64& rng, int trials, bool* certain_local);
Verdict is_indecomposable(const GradedModule& m, std::uint64_t seed = 0, int trials = 20);
Decomposition decompose(const GradedModule& m, std::uint64_t seed = 0, int trials = 20);

// Expresses an endomorphism as a single block-diagonal matrix on the total space.
Matrix total_matrix(const ModuleMap& f);

}  // namespace extalg

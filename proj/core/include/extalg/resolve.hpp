#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "extalg/gmod.hpp"

namespace extalg {

// beta_{k,d}: generators of P_k (or socle degrees of I_k) in degree d.
struct BettiTable {
  std::map<std::pair<int, int>, int> entries;
  int length = 0;

  int at(int k, int d) const;
  int total(int k) const;
  // Macaulay layout: column k, row d - k.
  std::string grid() const;
  bool operator==(const BettiTable& o) const { return entries == o.entries && length == o.length; }
};

struct ResolutionStep {
  GradedModule module;  // next (co)syzygy
  GradedModule cover;   // free term
  ModuleMap map;        // cover -> m (projective side), m -> cover (injective side)
};

// Minimal projective resolution kept in free coordinates. P_k is a free module,
// the map P_k -> P_{k-1} sends generator j to generators(k).vectors[j], and the
// kernel of P_k -> P_{k-1} is stored as subspaces of P_k. Terms are built on demand.
class Resolution {
 public:
  explicit Resolution(GradedModule m);

  const GradedModule& module() const { return m_; }
  void ensure(int k);
  int computed() const { return static_cast<int>(steps_.size()) - 1; }

  const FreeModule& term(int k);
  // Images of the generators of P_k: in m for k = 0, in P_{k-1} otherwise.
  const Generators& generators(int k);
  // Degreewise matrices of P_k -> P_{k-1} (P_0 -> m for k = 0).
  const std::map<int, Matrix>& differential(int k);
  // Omega^{k+1} m as subspaces of P_k.
  const Subspaces& kernel(int k);

  GradedModule syzygy(int k);
  ModuleMap differential_map(int k);
  BettiTable betti(int length);

 private:
  GradedModule m_;
  std::vector<CoverData> steps_;
};

ResolutionStep projective_cover(const GradedModule& m);
GradedModule syzygy(const GradedModule& m, int k);
BettiTable min_resolution(const GradedModule& m, int length);

struct Envelope {
  FreeModule free;
  std::vector<int> socle_degrees;  // one per summand Λ[r+1-c]
  ModuleMap embedding;             // m -> free.to_module()
};

// Built directly from socle functionals, not through duality.
Envelope injective_envelope_data(const GradedModule& m);
ResolutionStep injective_envelope(const GradedModule& m);

class Coresolution {
 public:
  explicit Coresolution(GradedModule m);

  void ensure(int k);
  // Omega^{-k} m.
  const GradedModule& cosyzygy(int k);
  const Envelope& envelope(int k);
  // I_k -> Omega^{-(k+1)} m.
  const QuotientModule& cokernel(int k);
  // I_k -> I_{k+1} as a map of explicit modules.
  ModuleMap differential_map(int k);
  BettiTable betti(int length);

 private:
  std::vector<GradedModule> mods_;
  std::vector<Envelope> envs_;
  std::vector<QuotientModule> quots_;
};

GradedModule cosyzygy(const GradedModule& m, int k);
BettiTable min_coresolution(const GradedModule& m, int length);

// Two-sided acyclic complex of free modules through m. Position e >= 0 holds P_e,
// position -1-t holds I_t. Projective summands of m are removed first.
class CompleteResolution {
 public:
  explicit CompleteResolution(const GradedModule& m);

  const GradedModule& module() const { return m_; }
  std::vector<int> generator_degrees(int e);
  GradedModule term(int e);
  // d_e : T_e -> T_{e-1}.
  ModuleMap differential(int e);
  // ker d_e = im d_{e+1} in every degree.
  bool exact_at(int e);

 private:
  GradedModule m_;
  Resolution res_;
  Coresolution cores_;
};

// dim Ext^k(a, b) in internal degree s, from the projective resolution of a.
int ext_dim(Resolution& ra, const GradedModule& b, int k, int s = 0);
int ext_dim(const GradedModule& a, const GradedModule& b, int k, int s = 0);

// Presentation of a free module by its standard generators.
Presentation free_presentation(const FreeModule& f);

}  // namespace extalg

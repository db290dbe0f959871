#pragma once

// The sheaf πF(m) on P^r, computed on the Λ side. Modules are normalized to
// be generated in degree 0 before any sheaf invariant is read.

#include <optional>
#include <string>
#include <vector>

#include "extalg/koszul.hpp"

namespace extalg {

enum class LocalFreeness { locally_free, not_locally_free, inconclusive };
const char* to_string(LocalFreeness s);

struct LocallyFreeVerdict {
  LocalFreeness status = LocalFreeness::inconclusive;
  int witness_t = -1;           // first t with Ω^{-t}m[-t] weakly co-Koszul
  std::vector<int> residue;     // socle degrees >= 1 at the witness
  int summands = 1;
  // Cross-checks at the witness: first t with Ω^{-t}m[-t] co-Koszul and
  // cogenerated in degree 0, and Ext^j(Ω^sΛ₀[s], m)_0 for 0 < j <= r.
  std::optional<int> co_koszul_t;
  int ext_probe_s = -1;
  std::vector<int> ext_probe;
  bool cross_checks_agree = true;
  std::string note;
};

inline constexpr int kDefaultTMax = 20;

// Ω^{-t}m[-t].
GradedModule shifted_cosyzygy(const GradedModule& m, int t);

LocallyFreeVerdict is_locally_free(const GradedModule& m, int t_max = kDefaultTMax, bool summandwise = false,
                                   bool cross_check = false);

struct HilbertPoly {
  int r = 1;
  int start = 0;                   // P(k) = f_k for k >= start
  std::vector<long long> newton;   // Δ^i f(start), i = 0..r
  std::vector<long long> numer;    // monomial coefficients times r!
  long long denom = 1;             // r!

  long long operator()(long long n) const;
  long long rank() const { return newton.empty() ? 0 : newton.back(); }
  bool is_zero() const;
  std::string to_string() const;
};

// m shifted so that its generators sit in degree 0; m must be generated in one degree.
GradedModule normalize(const GradedModule& m);
// Smallest k with m_{>=k}[k] Koszul, searched over the window of m.
std::optional<std::pair<int, GradedModule>> koszul_normalization(const GradedModule& m,
                                                                 int bound = kDefaultKoszulBound);

HilbertPoly hilbert_poly(const GradedModule& m);
long long sheaf_rank(const GradedModule& m);
// Alternating sum of the graded dimensions from the generating degree: the rank
// of the BGG complex of m, which is the rank of πF(m) when m is Koszul.
long long bgg_rank(const GradedModule& m);
long long euler_char(const GradedModule& m, int n);

// Ω^k m[k] for k >= 0, Ω^{-k}m[-k] for k < 0, projective summands removed.
GradedModule twist(const GradedModule& m, int k);

enum class Provenance { stable_ext, euler };

struct CohomologyTable {
  int r = 1;
  int n_lo = 0, n_hi = -1;
  // h[q][n - n_lo]
  std::vector<std::vector<long long>> h;
  std::vector<std::vector<Provenance>> provenance;
  // h^0 read directly from the complete resolution, to check the Euler identity.
  std::vector<long long> h0_direct;
  std::vector<long long> hilbert;

  long long at(int q, int n) const { return h[q][n - n_lo]; }
  bool euler_identity_holds() const;
  // Rows q descending, columns n ascending.
  std::string grid() const;
};

// Count of generators of degree n at position n+q of the complete resolution.
long long tate_count(CompleteResolution& c, int q, int n);

long long cohomology_dim(const GradedModule& m, int q, int n);
CohomologyTable cohomology_table(const GradedModule& m, int n_lo, int n_hi);

struct SerreCheck {
  long long lhs = 0;  // h^q(n)
  long long rhs = 0;  // h^{r-q}(-n-r-1) read on the complete resolution of D(m)
  bool holds() const { return lhs == rhs; }
};

SerreCheck serre_duality_check(const GradedModule& m, int q, int n);

struct SheafHom {
  long long dim = 0;
  int stable_at = -1;  // k with equal values at k and k+1
  std::vector<int> values;
};

// lim_k dim Hom_Λ(Ω^k b[k], Ω^k a[k])_0 = dim Hom(πF(a), πF(b)).
SheafHom sheaf_hom(const GradedModule& a, const GradedModule& b, int k_max = 8);
long long sheaf_hom_dim(const GradedModule& a, const GradedModule& b);
Verdict is_indecomposable_sheaf(const GradedModule& m, int k_max = 8);

struct SyzygyPresentation {
  int t = 0;
  int copies = 0;        // S = Λ₀^copies
  GradedModule source;   // Ω^t S[t]
  ModuleMap map;         // source -> m, surjective
};

std::optional<SyzygyPresentation> syzygy_presentation(const GradedModule& m, int t_max = 8,
                                                      std::uint64_t seed = 0);

}  // namespace extalg

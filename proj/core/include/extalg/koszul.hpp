#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "extalg/resolve.hpp"

namespace extalg {

enum class KoszulKind { koszul, weakly, quasi, none };

const char* to_string(KoszulKind k);

struct KoszulVerdict {
  bool holds = true;
  int checked_up_to = 0;
  // First violation: (k, d) for linearity with d normalized to generation in
  // degree 0, (j, k) for the radical conditions.
  std::optional<std::pair<int, int>> witness;
  std::string note;
};

inline constexpr int kDefaultKoszulBound = 8;

// Requires m generated in a single degree.
KoszulVerdict is_koszul(const GradedModule& m, int bound = kDefaultKoszulBound);
KoszulVerdict is_quasi_koszul(const GradedModule& m, int bound = kDefaultKoszulBound);
KoszulVerdict is_weakly_koszul(const GradedModule& m, int bound = kDefaultKoszulBound);
// Same checks on an existing resolution.
KoszulVerdict is_koszul(Resolution& res, int bound);
KoszulVerdict is_weakly_koszul(Resolution& res, int bound, int max_j);

// Strongest of koszul / weakly / quasi that holds up to the bound.
KoszulKind classify(const GradedModule& m, int bound = kDefaultKoszulBound);

// Co-variants through the duality D: m is (weakly, quasi) co-Koszul iff D(m)
// is (weakly, quasi) Koszul. Cogenerators of I_j then sit in degree c_0 - j.
KoszulVerdict is_co_koszul(const GradedModule& m, int bound = kDefaultKoszulBound);
KoszulVerdict is_weakly_co_koszul(const GradedModule& m, int bound = kDefaultKoszulBound);
KoszulVerdict is_quasi_co_koszul(const GradedModule& m, int bound = kDefaultKoszulBound);

// The socle-quotient conditions on the injective coresolution read literally.
// With printed_index the denominators are taken in I_{j-2} as written;
// otherwise in I_{j-1}. quasi checks condition (1) only; otherwise (1) and (2).
KoszulVerdict literal_co_koszul_check(const GradedModule& m, int bound, bool quasi, bool printed_index);

struct KoszulDualData {
  int generator_degree = 0;
  std::vector<long long> dims;  // f_k = dim Ext^k(m, Λ_0), k = 0..bound
};

// Hilbert function of F(m). Requires m Koszul up to the bound.
KoszulDualData koszul_dual_data(const GradedModule& m, int bound = kDefaultKoszulBound);
KoszulDualData koszul_dual_data(Resolution& res, int bound);

}  // namespace extalg

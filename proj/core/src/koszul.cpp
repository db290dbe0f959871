#include "extalg/koszul.hpp"

#include <sstream>

#include "extalg/error.hpp"

namespace extalg {

const char* to_string(KoszulKind k) {
  switch (k) {
    case KoszulKind::koszul:
      return "koszul";
    case KoszulKind::weakly:
      return "weakly";
    case KoszulKind::quasi:
      return "quasi";
    case KoszulKind::none:
      return "none";
  }
  return "none";
}

KoszulVerdict is_koszul(Resolution& res, int bound) {
  const GradedModule& m = res.module();
  KoszulVerdict v;
  v.checked_up_to = bound;
  if (m.is_zero()) return v;
  int g = 0;
  if (!generated_in_one_degree(m, &g)) fail(ErrorKind::precondition, "module is not generated in a single degree");
  for (int k = 0; k <= bound; ++k) {
    const FreeModule& p = res.term(k);
    if (p.is_zero()) {
      v.note = "resolution terminates at " + std::to_string(k);
      return v;
    }
    for (int d : p.gens())
      if (d != k + g) {
        v.holds = false;
        v.witness = std::make_pair(k, d - g);
        v.checked_up_to = k;
        return v;
      }
  }
  return v;
}

KoszulVerdict is_koszul(const GradedModule& m, int bound) {
  Resolution r(m);
  return is_koszul(r, bound);
}

namespace {

// J^j Omega^k = Omega^k ∩ J^{j+1} P_{k-1} for j in [j_lo, j_hi], 1 <= k <= bound.
KoszulVerdict radical_condition(Resolution& res, int bound, int j_lo, int j_hi) {
  KoszulVerdict v;
  v.checked_up_to = bound;
  for (int k = 1; k <= bound; ++k) {
    const FreeModule& p = res.term(k - 1);
    if (p.is_zero()) {
      v.note = "resolution terminates at " + std::to_string(k - 1);
      return v;
    }
    FreeAmbient amb(p);
    const Subspaces& omega = res.kernel(k - 1);
    Subspaces power = omega;
    for (int j = 0; j <= j_hi; ++j) {
      if (j > 0) power = radical_of(amb, power);
      if (j < j_lo) continue;
      for (const auto& [d, w] : omega) {
        int lhs = power.count(d) ? power.at(d).cols() : 0;
        // Omega_d ∩ J^{j+1}P_d: vectors of Omega_d vanishing off the radical coordinates.
        std::vector<int> rad = p.radical_indices(d, j + 1);
        std::vector<char> in_rad(p.dim(d), 0);
        for (int i : rad) in_rad[i] = 1;
        std::vector<int> outside;
        for (int i = 0; i < p.dim(d); ++i)
          if (!in_rad[i]) outside.push_back(i);
        int rhs = w.cols() - rank(w.select_rows(outside));
        if (lhs != rhs) {
          v.holds = false;
          v.witness = std::make_pair(j, k);
          v.checked_up_to = k;
          std::ostringstream os;
          os << "degree " << d << ": dim J^" << j << "Omega^" << k << " = " << lhs << ", intersection = " << rhs;
          v.note = os.str();
          return v;
        }
      }
    }
  }
  return v;
}

}  // namespace

KoszulVerdict is_weakly_koszul(Resolution& res, int bound, int max_j) { return radical_condition(res, bound, 0, max_j); }

KoszulVerdict is_weakly_koszul(const GradedModule& m, int bound) {
  Resolution r(m);
  return is_weakly_koszul(r, bound, m.nvars() + 1);
}

KoszulVerdict is_quasi_koszul(const GradedModule& m, int bound) {
  Resolution r(m);
  return radical_condition(r, bound, 1, 1);
}

KoszulKind classify(const GradedModule& m, int bound) {
  Resolution r(m);
  if (generated_in_one_degree(m) && is_koszul(r, bound).holds) return KoszulKind::koszul;
  if (is_weakly_koszul(r, bound, m.nvars() + 1).holds) return KoszulKind::weakly;
  if (radical_condition(r, bound, 1, 1).holds) return KoszulKind::quasi;
  return KoszulKind::none;
}

KoszulVerdict is_co_koszul(const GradedModule& m, int bound) {
  GradedModule d = dual(m);
  if (!d.is_zero() && !generated_in_one_degree(d))
    fail(ErrorKind::precondition, "socle is not concentrated in a single degree");
  KoszulVerdict v = is_koszul(d, bound);
  if (v.witness) v.note = "witness read on the dual module";
  return v;
}

KoszulVerdict is_weakly_co_koszul(const GradedModule& m, int bound) { return is_weakly_koszul(dual(m), bound); }

KoszulVerdict is_quasi_co_koszul(const GradedModule& m, int bound) { return is_quasi_koszul(dual(m), bound); }

namespace {

Subspaces image_of(const ModuleMap& q, const Subspaces& u) {
  Subspaces out;
  for (const auto& [d, b] : u) {
    if (b.cols() == 0) continue;
    out[d] = image_basis(q.block(d) * b);
  }
  return out;
}

bool contained(const Subspaces& a, const Subspaces& b, const GradedModule& m) {
  for (const auto& [d, x] : a) {
    if (x.cols() == 0) continue;
    Matrix y = b.count(d) ? b.at(d) : Matrix(m.dim(d), 0, m.p());
    if (rank(hstack(y, x)) != rank(y)) return false;
  }
  return true;
}

Subspaces sum_of(const Subspaces& a, const Subspaces& b, const GradedModule& m) {
  Subspaces out;
  for (int d = m.d_min(); d <= m.d_max(); ++d) {
    Matrix x = a.count(d) ? a.at(d) : Matrix(m.dim(d), 0, m.p());
    Matrix y = b.count(d) ? b.at(d) : Matrix(m.dim(d), 0, m.p());
    out[d] = image_basis(hstack(x, y));
  }
  return out;
}

}  // namespace

KoszulVerdict literal_co_koszul_check(const GradedModule& m, int bound, bool quasi, bool printed_index) {
  KoszulVerdict v;
  v.checked_up_to = bound;
  Coresolution c(m);
  const int top = m.nvars() + 1;
  for (int j = 1; j <= bound; ++j) {
    const QuotientModule& qm = c.cokernel(j - 1);
    const GradedModule& x = qm.module;
    if (x.is_zero()) {
      v.note = "coresolution terminates at " + std::to_string(j - 1);
      return v;
    }
    const GradedModule& inj = qm.projection.source;
    // Condition (1) is the k = 0 instance of the pattern of condition (2). The weakly
    // check includes it, as the radical version includes j = 1.
    int k_hi = quasi ? 0 : top;
    for (int k = 0; k <= k_hi; ++k) {
      Subspaces num = image_of(qm.projection, socle_subspaces(inj, k + 2));
      Subspaces target = socle_subspaces(x, k + 1);
      Subspaces lower = socle_subspaces(x, k);
      // The map lands in soc^{k+1} and must cover it modulo soc^k.
      bool ok = contained(num, target, x) && contained(target, sum_of(num, lower, x), x);
      // Denominator in I_{j-1}: its image must vanish modulo soc^k. A denominator in
      // I_{j-2} lands in the image of I_{j-2}, the kernel of the projection, so needs no check.
      if (ok && !printed_index) ok = contained(image_of(qm.projection, socle_subspaces(inj, k + 1)), lower, x);
      if (!ok) {
        v.holds = false;
        v.witness = std::make_pair(j, k);
        v.checked_up_to = j;
        return v;
      }
    }
  }
  return v;
}

KoszulDualData koszul_dual_data(Resolution& res, int bound) {
  KoszulVerdict v = is_koszul(res, bound);
  if (!v.holds) {
    std::ostringstream os;
    os << "module is not Koszul (witness k=" << v.witness->first << ", d=" << v.witness->second << ")";
    fail(ErrorKind::precondition, os.str());
  }
  KoszulDualData out;
  generated_in_one_degree(res.module(), &out.generator_degree);
  for (int k = 0; k <= bound; ++k) out.dims.push_back(res.term(k).rank());
  return out;
}

KoszulDualData koszul_dual_data(const GradedModule& m, int bound) {
  Resolution r(m);
  return koszul_dual_data(r, bound);
}

}  // namespace extalg

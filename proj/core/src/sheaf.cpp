#include "extalg/sheaf.hpp"

#include <numeric>
#include <sstream>

#include "extalg/error.hpp"

namespace extalg {

const char* to_string(LocalFreeness s) {
  switch (s) {
    case LocalFreeness::locally_free:
      return "locally_free";
    case LocalFreeness::not_locally_free:
      return "not_locally_free";
    case LocalFreeness::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

GradedModule normalize(const GradedModule& m) {
  if (m.is_zero()) return m;
  int g = 0;
  require(generated_in_one_degree(m, &g), "module is not generated in a single degree");
  return shift(m, g);
}

std::optional<std::pair<int, GradedModule>> koszul_normalization(const GradedModule& m, int bound) {
  if (m.is_zero()) return std::make_pair(0, m);
  for (int k = m.d_min(); k <= m.d_max(); ++k) {
    GradedModule n = shift(truncate(m, k), k);
    if (n.is_zero() || !generated_in_one_degree(n)) continue;
    if (is_koszul(n, bound).holds) return std::make_pair(k, n);
  }
  return std::nullopt;
}

namespace {

// Normalized, projective-free, and checked Koszul.
GradedModule koszul_input(const GradedModule& m, int bound = kDefaultKoszulBound) {
  GradedModule n = normalize(strip_projective(m));
  if (n.is_zero()) return n;
  KoszulVerdict v = is_koszul(n, bound);
  if (!v.holds) {
    std::ostringstream os;
    os << "module is not Koszul (witness k=" << v.witness->first << ", d=" << v.witness->second << ")";
    fail(ErrorKind::precondition, os.str());
  }
  return n;
}

}  // namespace

GradedModule shifted_cosyzygy(const GradedModule& m, int t) { return shift(cosyzygy(m, t), -t); }

GradedModule twist(const GradedModule& m, int k) {
  if (k == 0) return strip_projective(m);
  if (k > 0) return shift(syzygy(strip_projective(m), k), k);
  return shift(cosyzygy(strip_projective(m), -k), k);
}

// ---------------------------------------------------------------- local freeness

namespace {

LocallyFreeVerdict decide_indecomposable(const GradedModule& n, int t_max, bool cross_check) {
  LocallyFreeVerdict v;
  Coresolution c(n);
  for (int t = 0; t <= t_max; ++t) {
    GradedModule x = shift(c.cosyzygy(t), -t);
    if (!is_weakly_co_koszul(x).holds) continue;
    v.witness_t = t;
    for (int d : socle_degrees(x))
      if (d >= 1) v.residue.push_back(d);
    v.status = x.d_max() < 1 ? LocalFreeness::locally_free : LocalFreeness::not_locally_free;
    break;
  }
  if (v.witness_t < 0) {
    v.note = "no weakly co-Koszul cosyzygy up to t=" + std::to_string(t_max);
    return v;
  }
  if (!cross_check) return v;
  const bool lf = v.status == LocalFreeness::locally_free;

  for (int t = v.witness_t; t <= t_max; ++t) {
    GradedModule x = shift(c.cosyzygy(t), -t);
    bool socle_at_zero = true;
    for (int d : socle_degrees(x)) socle_at_zero = socle_at_zero && d == 0;
    if (socle_at_zero && is_co_koszul(x).holds) {
      v.co_koszul_t = t;
      break;
    }
  }

  const int r = n.r();
  v.ext_probe_s = v.witness_t + r + 1;
  GradedModule probe = twist(simple_module(n.ctx()), v.ext_probe_s);
  Resolution rp(probe);
  bool vanish = true;
  for (int j = 1; j <= r; ++j) {
    v.ext_probe.push_back(ext_dim(rp, n, j, 0));
    vanish = vanish && v.ext_probe.back() == 0;
  }
  v.cross_checks_agree = (lf == v.co_koszul_t.has_value()) && (lf == vanish);
  return v;
}

}  // namespace

LocallyFreeVerdict is_locally_free(const GradedModule& m, int t_max, bool summandwise, bool cross_check) {
  GradedModule n = koszul_input(m);
  if (n.is_zero()) {
    LocallyFreeVerdict v;
    v.status = LocalFreeness::locally_free;
    v.witness_t = 0;
    v.summands = 0;
    v.note = "zero sheaf";
    return v;
  }
  Verdict ind = is_indecomposable(n);
  if (ind.value) return decide_indecomposable(n, t_max, cross_check);
  require(summandwise, "module is decomposable; use summandwise mode");

  Decomposition dec = decompose(n);
  LocallyFreeVerdict out;
  out.status = LocalFreeness::locally_free;
  out.summands = static_cast<int>(dec.summands.size());
  out.witness_t = 0;
  bool any_inconclusive = false;
  for (const auto& s : dec.summands) {
    LocallyFreeVerdict v = decide_indecomposable(s, t_max, cross_check);
    out.witness_t = std::max(out.witness_t, v.witness_t);
    out.residue.insert(out.residue.end(), v.residue.begin(), v.residue.end());
    out.cross_checks_agree = out.cross_checks_agree && v.cross_checks_agree;
    if (v.status == LocalFreeness::not_locally_free) out.status = LocalFreeness::not_locally_free;
    if (v.status == LocalFreeness::inconclusive) any_inconclusive = true;
  }
  if (any_inconclusive && out.status != LocalFreeness::not_locally_free) out.status = LocalFreeness::inconclusive;
  if (!dec.confident) out.note = "decomposition not certified";
  return out;
}

// ---------------------------------------------------------------- Hilbert polynomial

namespace {

// Generalized binomial C(x, i) for integer x.
long long choose(long long x, int i) {
  long long c = 1;
  for (int j = 0; j < i; ++j) c = c * (x - j) / (j + 1);
  return c;
}

}  // namespace

long long HilbertPoly::operator()(long long n) const {
  long long v = 0;
  for (size_t i = 0; i < newton.size(); ++i) v += newton[i] * choose(n - start, static_cast<int>(i));
  return v;
}

bool HilbertPoly::is_zero() const {
  for (long long c : newton)
    if (c != 0) return false;
  return true;
}

std::string HilbertPoly::to_string() const {
  long long g = denom;
  for (long long c : numer) g = std::gcd(g, c < 0 ? -c : c);
  if (g == 0) g = 1;
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(numer.size()) - 1; i >= 0; --i) {
    long long c = numer[i] / g;
    if (c == 0) continue;
    long long a = c < 0 ? -c : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    if (a != 1 || i == 0) os << a;
    if (i >= 1) os << "n";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) return "0";
  long long d = denom / g;
  if (d == 1) return os.str();
  return "(" + os.str() + ")/" + std::to_string(d);
}

HilbertPoly hilbert_poly(const GradedModule& m) {
  GradedModule n = koszul_input(m);
  HilbertPoly hp;
  hp.r = m.r();
  const int r = hp.r;
  hp.denom = 1;
  for (int i = 2; i <= r; ++i) hp.denom *= i;
  hp.newton.assign(r + 1, 0);
  hp.numer.assign(r + 1, 0);
  if (n.is_zero()) return hp;

  Resolution res(n);
  std::vector<long long> f;
  for (int top = r + 4; top <= 40; top += 2) {
    while (static_cast<int>(f.size()) <= top) f.push_back(res.term(static_cast<int>(f.size())).rank());
    // Rows of finite differences; row r+1 must vanish on a tail of at least two extra points.
    std::vector<std::vector<long long>> diff{f};
    for (int i = 1; i <= r + 1; ++i) {
      std::vector<long long> row;
      for (size_t k = 0; k + 1 < diff.back().size(); ++k) row.push_back(diff.back()[k + 1] - diff.back()[k]);
      diff.push_back(row);
    }
    const auto& last = diff[r + 1];
    int s = static_cast<int>(last.size());
    while (s > 0 && last[s - 1] == 0) --s;
    if (s > top - r - 2) continue;
    hp.start = s;
    for (int i = 0; i <= r; ++i) hp.newton[i] = diff[i][s];
    // r! P(n) = Σ_i newton_i (r!/i!) Π_{j<i} (n - s - j).
    long long fact = 1;
    for (int i = 0; i <= r; ++i) {
      if (i > 0) fact *= i;
      std::vector<long long> poly{1};
      for (int j = 0; j < i; ++j) {
        std::vector<long long> next(poly.size() + 1, 0);
        for (size_t a = 0; a < poly.size(); ++a) {
          next[a + 1] += poly[a];
          next[a] -= poly[a] * (s + j);
        }
        poly = next;
      }
      long long w = hp.newton[i] * (hp.denom / fact);
      for (size_t a = 0; a < poly.size(); ++a) hp.numer[a] += w * poly[a];
    }
    return hp;
  }
  fail(ErrorKind::internal, "Hilbert function did not stabilize by k=40");
}

long long sheaf_rank(const GradedModule& m) { return hilbert_poly(m).rank(); }

long long bgg_rank(const GradedModule& m) {
  int g = 0;
  require(!m.is_zero() && generated_in_one_degree(m, &g), "module must be generated in one degree");
  long long out = 0;
  for (int d = g; d <= m.d_max(); ++d) out += ((d - g) % 2 ? -1 : 1) * m.dim(d);
  return out;
}

long long euler_char(const GradedModule& m, int n) { return hilbert_poly(m)(n); }

// ---------------------------------------------------------------- cohomology

long long tate_count(CompleteResolution& c, int q, int n) {
  long long k = 0;
  for (int d : c.generator_degrees(n + q)) k += d == n;
  return k;
}

long long cohomology_dim(const GradedModule& m, int q, int n) {
  require(q >= 0 && q <= m.r(), "cohomological degree out of range");
  CohomologyTable t = cohomology_table(m, n, n);
  return t.at(q, n);
}

CohomologyTable cohomology_table(const GradedModule& m, int n_lo, int n_hi) {
  require(n_lo <= n_hi, "empty twist window");
  GradedModule n = koszul_input(m);
  CohomologyTable t;
  t.r = m.r();
  t.n_lo = n_lo;
  t.n_hi = n_hi;
  const int width = n_hi - n_lo + 1;
  t.h.assign(t.r + 1, std::vector<long long>(width, 0));
  t.provenance.assign(t.r + 1, std::vector<Provenance>(width, Provenance::stable_ext));
  t.h0_direct.assign(width, 0);
  t.hilbert.assign(width, 0);
  for (int i = 0; i < width; ++i) t.provenance[0][i] = Provenance::euler;
  if (n.is_zero()) return t;

  HilbertPoly hp = hilbert_poly(n);
  CompleteResolution c(n);
  for (int i = 0; i < width; ++i) {
    const int x = n_lo + i;
    long long alt = 0;
    for (int q = 1; q <= t.r; ++q) {
      t.h[q][i] = tate_count(c, q, x);
      alt += (q % 2 ? -1 : 1) * t.h[q][i];
    }
    t.hilbert[i] = hp(x);
    t.h[0][i] = t.hilbert[i] - alt;
    t.h0_direct[i] = tate_count(c, 0, x);
  }
  return t;
}

bool CohomologyTable::euler_identity_holds() const {
  for (size_t i = 0; i < h0_direct.size(); ++i) {
    long long s = h0_direct[i];
    for (int q = 1; q <= r; ++q) s += (q % 2 ? -1 : 1) * h[q][i];
    if (s != hilbert[i]) return false;
    for (int q = 0; q <= r; ++q)
      if (h[q][i] < 0) return false;
  }
  return true;
}

std::string CohomologyTable::grid() const {
  std::ostringstream os;
  const int width = n_hi - n_lo + 1;
  std::vector<std::string> cells;
  size_t w = 2;
  for (int i = 0; i < width; ++i) w = std::max(w, std::to_string(n_lo + i).size());
  for (const auto& row : h)
    for (long long v : row) w = std::max(w, std::to_string(v).size());
  auto pad = [&](const std::string& s) { return std::string(w + 1 - s.size(), ' ') + s; };
  for (int q = r; q >= 0; --q) {
    os << "h" << q << " |";
    for (int i = 0; i < width; ++i) os << pad(h[q][i] ? std::to_string(h[q][i]) : ".");
    os << "\n";
  }
  os << " n |";
  for (int i = 0; i < width; ++i) os << pad(std::to_string(n_lo + i));
  os << "\n";
  return os.str();
}

SerreCheck serre_duality_check(const GradedModule& m, int q, int n) {
  require(q >= 0 && q <= m.r(), "cohomological degree out of range");
  GradedModule k = koszul_input(m);
  SerreCheck s;
  if (k.is_zero()) return s;
  s.lhs = cohomology_dim(k, q, n);
  CompleteResolution c(dual(k));
  s.rhs = tate_count(c, m.r() - q, -n - m.r() - 1);
  return s;
}

// ---------------------------------------------------------------- Hom of sheaves

SheafHom sheaf_hom(const GradedModule& a, const GradedModule& b, int k_max) {
  GradedModule a0 = koszul_input(a), b0 = koszul_input(b);
  SheafHom out;
  if (a0.is_zero() || b0.is_zero()) {
    out.stable_at = 0;
    out.values = {0, 0};
    return out;
  }
  GradedModule ta = a0, tb = b0;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) {
      ta = twist(ta, 1);
      tb = twist(tb, 1);
    }
    out.values.push_back(hom_dim(tb, ta, 0));
    if (k > 0 && out.values[k] == out.values[k - 1]) {
      out.dim = out.values[k];
      out.stable_at = k - 1;
      return out;
    }
  }
  fail(ErrorKind::inconclusive, "sheaf Hom did not stabilize by k=" + std::to_string(k_max));
}

long long sheaf_hom_dim(const GradedModule& a, const GradedModule& b) { return sheaf_hom(a, b).dim; }

Verdict is_indecomposable_sheaf(const GradedModule& m, int k_max) {
  SheafHom h = sheaf_hom(m, m, k_max);
  if (h.dim == 0) return Verdict{false, true, "zero sheaf"};
  GradedModule x = twist(koszul_input(m), h.stable_at);
  return is_indecomposable(x);
}

// ---------------------------------------------------------------- presentations

namespace {

// A surjection from copies of q onto m built from generic maps, if the images
// of all maps q -> m span m.
std::optional<SyzygyPresentation> cover_by(const GradedModule& q, const GradedModule& m, int t,
                                           std::mt19937_64& rng) {
  HomSpace hs(q, m, 0);
  if (hs.dim() == 0) return std::nullopt;
  std::vector<ModuleMap> basis;
  for (int k = 0; k < hs.dim(); ++k) basis.push_back(hs.basis_map(k));
  auto spans = [&](const std::vector<ModuleMap>& maps) {
    for (int d = m.d_min(); d <= m.d_max(); ++d) {
      Matrix img(m.dim(d), 0, m.p());
      for (const auto& f : maps) img = hstack(img, f.block(d));
      if (rank(img) != m.dim(d)) return false;
    }
    return true;
  };
  if (!spans(basis)) return std::nullopt;
  for (int a = 1; a <= hs.dim(); ++a) {
    std::vector<ModuleMap> maps;
    for (int i = 0; i < a; ++i) maps.push_back(hs.map_from_coords(random_matrix(hs.dim(), 1, m.p(), rng)));
    if (!spans(maps)) continue;
    DirectSum src = direct_sum(std::vector<GradedModule>(a, q));
    ModuleMap f = zero_map(src.module, m);
    for (int i = 0; i < a; ++i) f = add_maps(f, compose(maps[i], src.projections[i]));
    return SyzygyPresentation{t, a, src.module, f};
  }
  return std::nullopt;
}

}  // namespace

std::optional<SyzygyPresentation> syzygy_presentation(const GradedModule& m, int t_max, std::uint64_t seed) {
  int g = 0;
  require(!m.is_zero() && generated_in_one_degree(m, &g) && g == 0, "module must be generated in degree 0");
  std::mt19937_64 rng(seed);
  const GradedModule k = simple_module(m.ctx());
  // Try first the stage where Ω^{-t}m[-t] is cogenerated in degree 0.
  int first = -1;
  Coresolution c(strip_projective(m));
  for (int t = 0; t <= t_max && first < 0; ++t) {
    GradedModule x = shift(c.cosyzygy(t), -t);
    if (!x.is_zero() && x.d_max() < 1) first = t;
  }
  std::vector<int> order;
  if (first >= 0) order.push_back(first);
  for (int t = 0; t <= t_max; ++t)
    if (t != first) order.push_back(t);
  for (int t : order)
    if (auto p = cover_by(twist(k, t), m, t, rng)) return p;
  return std::nullopt;
}

}  // namespace extalg

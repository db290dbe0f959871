#include "poly.hpp"

#include "extalg/error.hpp"

namespace extalg::poly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly mul(const Poly& a, const Poly& b, u32 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = add_mod(c[i + j], mul_mod(a[i], b[j], p), p);
  trim(c);
  return c;
}

Poly sub(const Poly& a, const Poly& b, u32 p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    u32 x = i < a.size() ? a[i] : 0;
    u32 y = i < b.size() ? b[i] : 0;
    c[i] = sub_mod(x, y, p);
  }
  trim(c);
  return c;
}

void divmod(const Poly& a, const Poly& b, u32 p, Poly* q, Poly* r) {
  check_internal(!b.empty(), "polynomial division by zero");
  Poly rem = a;
  trim(rem);
  Poly quo;
  u32 lead_inv = inv_mod(b.back(), p);
  if (rem.size() >= b.size()) quo.assign(rem.size() - b.size() + 1, 0);
  while (!rem.empty() && rem.size() >= b.size()) {
    size_t shift = rem.size() - b.size();
    u32 c = mul_mod(rem.back(), lead_inv, p);
    quo[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) rem[shift + i] = sub_mod(rem[shift + i], mul_mod(c, b[i], p), p);
    trim(rem);
  }
  trim(quo);
  if (q) *q = quo;
  if (r) *r = rem;
}

Poly mod(const Poly& a, const Poly& b, u32 p) {
  Poly r;
  divmod(a, b, p, nullptr, &r);
  return r;
}

Poly monic(const Poly& a, u32 p) {
  if (a.empty()) return a;
  u32 inv = inv_mod(a.back(), p);
  Poly c = a;
  for (auto& v : c) v = mul_mod(v, inv, p);
  return c;
}

Poly gcd(Poly a, Poly b, u32 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly ext_gcd(const Poly& a, const Poly& b, u32 p, Poly* u, Poly* v) {
  Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    Poly q, r;
    divmod(r0, r1, p, &q, &r);
    Poly s2 = sub(s0, mul(q, s1, p), p);
    Poly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u32 inv = inv_mod(r0.back(), p);
  for (auto& c : s0) c = mul_mod(c, inv, p);
  for (auto& c : t0) c = mul_mod(c, inv, p);
  if (u) *u = s0;
  if (v) *v = t0;
  return monic(r0, p);
}

Poly derivative(const Poly& a, u32 p) {
  Poly d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(mul_mod(a[i], static_cast<u32>(i % p), p));
  trim(d);
  return d;
}

Poly powmod(const Poly& base, unsigned long long e, const Poly& m, u32 p) {
  Poly result{1};
  result = mod(result, m, p);
  Poly b = mod(base, m, p);
  while (e) {
    if (e & 1) result = mod(mul(result, b, p), m, p);
    b = mod(mul(b, b, p), m, p);
    e >>= 1;
  }
  return result;
}

Poly frobenius(const Poly& base, int k, const Poly& m, u32 p) {
  Poly r = mod(base, m, p);
  for (int i = 0; i < k; ++i) r = powmod(r, p, m, p);
  return r;
}

Poly charpoly(const Matrix& a0) {
  const int n = a0.rows();
  const u32 p = a0.prime();
  check_internal(n == a0.cols(), "charpoly of non-square matrix");
  Matrix h = a0;
  // Similarity reduction to upper Hessenberg form.
  for (int j = 0; j + 2 < n; ++j) {
    int piv = -1;
    for (int i = j + 1; i < n; ++i)
      if (h(i, j)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != j + 1) {
      for (int c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (int rr = 0; rr < n; ++rr) std::swap(h(rr, piv), h(rr, j + 1));
    }
    u32 inv = inv_mod(h(j + 1, j), p);
    for (int k = j + 2; k < n; ++k) {
      u32 f = mul_mod(h(k, j), inv, p);
      if (!f) continue;
      for (int c = 0; c < n; ++c) h(k, c) = sub_mod(h(k, c), mul_mod(f, h(j + 1, c), p), p);
      for (int rr = 0; rr < n; ++rr) h(rr, j + 1) = add_mod(h(rr, j + 1), mul_mod(f, h(rr, k), p), p);
    }
  }
  std::vector<Poly> P(n + 1);
  P[0] = {1};
  for (int k = 1; k <= n; ++k) {
    // P_k = (x - h_kk) P_{k-1} - sum_{i<k} h_{ik} (prod_{j=i+1}^{k} h_{j,j-1}) P_{i-1}, 1-indexed.
    Poly cur = mul(Poly{neg_mod(h(k - 1, k - 1), p), 1}, P[k - 1], p);
    u32 prod = 1;
    for (int i = k - 1; i >= 1; --i) {
      prod = mul_mod(prod, h(i, i - 1), p);
      if (!prod) break;
      u32 c = mul_mod(h(i - 1, k - 1), prod, p);
      if (!c) continue;
      Poly term = P[i - 1];
      for (auto& v : term) v = mul_mod(v, c, p);
      cur = sub(cur, term, p);
    }
    P[k] = cur;
  }
  return P[n];
}

Matrix evaluate(const Poly& f, const Matrix& a) {
  const int n = a.rows();
  const u32 p = a.prime();
  Matrix r(n, n, p);
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    r = r * a;
    for (int d = 0; d < n; ++d) r(d, d) = add_mod(r(d, d), f[i], p);
  }
  return r;
}

namespace {

Poly full_part(const Poly& f, const Poly& g, u32 p) {
  Poly part{1}, rest = f;
  for (;;) {
    Poly t = gcd(rest, g, p);
    if (deg(t) <= 0) break;
    part = mul(part, t, p);
    Poly q;
    divmod(rest, t, p, &q, nullptr);
    rest = q;
  }
  return monic(part, p);
}

}  // namespace

Poly coprime_split(const Poly& f0, u32 p, std::mt19937_64& rng) {
  Poly f = monic(f0, p);
  if (deg(f) < 2) return {};
  Poly g = gcd(f, derivative(f, p), p);
  Poly sf;
  divmod(f, g, p, &sf, nullptr);
  sf = monic(sf, p);
  if (deg(sf) < 2) return {};
  const Poly x{0, 1};
  Poly xp = mod(x, sf, p);
  for (int k = 1; 2 * k <= deg(sf) || k == 1; ++k) {
    xp = powmod(xp, p, sf, p);
    Poly dk = gcd(sf, sub(xp, x, p), p);
    if (deg(dk) <= 0) continue;
    if (deg(dk) < deg(sf)) return full_part(f, dk, p);
    if (deg(sf) == k) return {};
    // All irreducible factors have degree k: split with a random trace element.
    std::uniform_int_distribution<u32> dist(0, p - 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
      Poly t(deg(sf), 0);
      for (auto& c : t) c = dist(rng);
      trim(t);
      if (t.empty()) continue;
      Poly tr = t, cur = t;
      for (int i = 1; i < k; ++i) {
        cur = powmod(cur, p, sf, p);
        Poly s(std::max(tr.size(), cur.size()), 0);
        for (size_t j = 0; j < s.size(); ++j)
          s[j] = add_mod(j < tr.size() ? tr[j] : 0, j < cur.size() ? cur[j] : 0, p);
        trim(s);
        tr = s;
      }
      Poly w = sub(powmod(tr, (p - 1) / 2, sf, p), Poly{1}, p);
      Poly h = gcd(sf, w, p);
      if (deg(h) > 0 && deg(h) < deg(sf)) return full_part(f, h, p);
    }
    return {};
  }
  // sf has no factor of degree <= deg/2, so it is irreducible.
  return {};
}

}  // namespace extalg::poly

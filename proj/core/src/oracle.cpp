#include "extalg/oracle.hpp"

#include <bit>
#include <map>
#include <stdexcept>

namespace extalg::oracle {

int PlainModule::dim(int d) const {
  if (d < d_min || d > d_max()) return 0;
  return dims[d - d_min];
}

Matrix PlainModule::x(int i, int d) const {
  if (d >= d_min && d < d_max()) return act[i][d - d_min];
  return Matrix(dim(d + 1), dim(d), p);
}

namespace {

using Blocks = std::map<int, Matrix>;  // degree-0 map, degree -> matrix

// Degree-ordered basis of Λ: subsets bucketed by size, ascending mask within a bucket.
struct Basis {
  std::vector<std::vector<unsigned>> by_size;
  std::map<unsigned, int> pos;
  explicit Basis(int n) : by_size(n + 1) {
    for (unsigned s = 0; s < (1u << n); ++s) {
      int k = std::popcount(s);
      pos[s] = static_cast<int>(by_size[k].size());
      by_size[k].push_back(s);
    }
  }
};

int below(unsigned s, int i) { return std::popcount(s & ((1u << i) - 1)); }
int above(unsigned s, int i) { return std::popcount(s >> (i + 1)); }

PlainModule empty_like(int r, u32 p, int d_min, std::vector<int> dims) {
  PlainModule m{r, p, d_min, dims, {}};
  m.act.assign(r + 1, {});
  for (int i = 0; i <= r; ++i)
    for (size_t k = 0; k < dims.size(); ++k)
      m.act[i].emplace_back(k + 1 < dims.size() ? dims[k + 1] : 0, dims[k], p);
  return m;
}

// Λ with its generator in degree g, acting by left multiplication.
PlainModule regular(int r, u32 p, int g) {
  const int n = r + 1;
  Basis b(n);
  std::vector<int> dims;
  for (int k = 0; k <= n; ++k) dims.push_back(static_cast<int>(b.by_size[k].size()));
  PlainModule m = empty_like(r, p, g, dims);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (size_t a = 0; a < b.by_size[k].size(); ++a) {
        unsigned s = b.by_size[k][a];
        if (s & (1u << i)) continue;
        int row = b.pos[s | (1u << i)];
        m.act[i][k](row, int(a)) = (below(s, i) & 1) ? p - 1 : 1;
      }
  return m;
}

// D(Λ) shifted so that its socle sits in degree c: a functional on Λ_j lives in degree c - j.
PlainModule coregular(int r, u32 p, int c) {
  const int n = r + 1;
  Basis b(n);
  std::vector<int> dims;
  for (int j = n; j >= 0; --j) dims.push_back(static_cast<int>(b.by_size[j].size()));
  PlainModule m = empty_like(r, p, c - n, dims);
  // (x_i f)(e_T) = f(e_T x_i); e_T x_i = (-1)^{#{t in T: t > i}} e_{T+i}.
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= n; ++j) {
      int d = c - j;  // source degree holds functionals on Λ_j
      for (size_t a = 0; a < b.by_size[j - 1].size(); ++a) {
        unsigned t = b.by_size[j - 1][a];
        if (t & (1u << i)) continue;
        int src = b.pos[t | (1u << i)];
        m.act[i][d - m.d_min](int(a), src) = (above(t, i) & 1) ? p - 1 : 1;
      }
    }
  return m;
}

PlainModule sum(const std::vector<PlainModule>& parts, int r, u32 p, std::vector<std::map<int, int>>* offsets) {
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& m : parts) {
    if (m.dims.empty()) continue;
    lo = any ? std::min(lo, m.d_min) : m.d_min;
    hi = any ? std::max(hi, m.d_max()) : m.d_max();
    any = true;
  }
  std::vector<int> dims;
  offsets->assign(parts.size(), {});
  for (int d = lo; d <= hi; ++d) {
    int t = 0;
    for (size_t k = 0; k < parts.size(); ++k) {
      (*offsets)[k][d] = t;
      t += parts[k].dim(d);
    }
    dims.push_back(t);
  }
  PlainModule s = empty_like(r, p, lo, any ? dims : std::vector<int>{});
  for (int i = 0; i <= r; ++i)
    for (int d = lo; d < hi; ++d)
      for (size_t k = 0; k < parts.size(); ++k)
        s.act[i][d - lo].set_block((*offsets)[k][d + 1], (*offsets)[k][d], parts[k].x(i, d));
  return s;
}

// Submodule spanned degreewise by the columns of u (assumed closed and independent).
PlainModule restrict_to(const PlainModule& m, const Blocks& u) {
  std::vector<int> dims;
  for (int d = m.d_min; d <= m.d_max(); ++d) dims.push_back(u.at(d).cols());
  PlainModule s = empty_like(m.r, m.p, m.d_min, dims);
  for (int i = 0; i <= m.r; ++i)
    for (int d = m.d_min; d < m.d_max(); ++d) {
      const Matrix& a = u.at(d);
      const Matrix& b = u.at(d + 1);
      if (a.cols() == 0 || b.cols() == 0) continue;
      auto sol = solve(b, m.x(i, d) * a);
      if (!sol) throw std::logic_error("oracle: subspace not closed");
      s.act[i][d - m.d_min] = *sol;
    }
  return s;
}

// Quotient by degreewise subspaces u; proj receives the projection blocks.
PlainModule quotient_by(const PlainModule& m, const Blocks& u, Blocks* proj) {
  std::vector<int> dims;
  std::map<int, Matrix> lift;
  for (int d = m.d_min; d <= m.d_max(); ++d) {
    // Projection = rows of the inverse of [u | complement] beyond u.
    const Matrix& ud = u.at(d);
    Matrix ext = hstack(ud, Matrix::identity(m.dim(d), m.p));
    Rref rr = rref(ext);
    std::vector<int> cols;
    for (int c : rr.pivots)
      if (c >= ud.cols()) cols.push_back(c);
    Matrix basis = ext.select_cols(rr.pivots);
    Matrix inv = inverse(basis);
    int q = static_cast<int>(cols.size());
    (*proj)[d] = inv.block(inv.rows() - q, 0, q, m.dim(d));
    lift[d] = ext.select_cols(cols);
    dims.push_back(q);
  }
  PlainModule out = empty_like(m.r, m.p, m.d_min, dims);
  for (int i = 0; i <= m.r; ++i)
    for (int d = m.d_min; d < m.d_max(); ++d) out.act[i][d - m.d_min] = proj->at(d + 1) * m.x(i, d) * lift[d];
  return out;
}

// All degree-0 module maps a -> b, as a basis of block families.
std::vector<Blocks> naive_hom(const PlainModule& a, const PlainModule& b) {
  const u32 p = a.p;
  std::map<int, int> off;
  int total = 0;
  for (int d = a.d_min; d <= a.d_max(); ++d) {
    off[d] = total;
    total += b.dim(d) * a.dim(d);
  }
  // Unknown F_d(row, col) sits at off[d] + row * a_d + col.
  std::vector<std::vector<u32>> eqs;
  for (int i = 0; i <= a.r; ++i)
    for (int d = a.d_min; d <= a.d_max(); ++d) {
      Matrix xa = a.x(i, d), xb = b.x(i, d);
      int ad = a.dim(d), ad1 = a.dim(d + 1), bd = b.dim(d), bd1 = b.dim(d + 1);
      // (F_{d+1} xa - xb F_d)(row, col) = 0 for row < b_{d+1}, col < a_d.
      for (int row = 0; row < bd1; ++row)
        for (int col = 0; col < ad; ++col) {
          std::vector<u32> e(total, 0);
          bool nz = false;
          for (int t = 0; t < ad1; ++t)
            if (xa(t, col)) {
              int v = off[d + 1] + row * ad1 + t;
              e[v] = add_mod(e[v], xa(t, col), p);
              nz = true;
            }
          for (int t = 0; t < bd; ++t)
            if (xb(row, t)) {
              int v = off[d] + t * ad + col;
              e[v] = sub_mod(e[v], xb(row, t), p);
              nz = true;
            }
          if (nz) eqs.push_back(std::move(e));
        }
    }
  Matrix sys(static_cast<int>(eqs.size()), total, p);
  for (size_t k = 0; k < eqs.size(); ++k)
    for (int c = 0; c < total; ++c) sys(int(k), c) = eqs[k][c];
  Matrix ker = kernel_basis(sys);
  std::vector<Blocks> out;
  for (int c = 0; c < ker.cols(); ++c) {
    Blocks f;
    for (int d = a.d_min; d <= a.d_max(); ++d) {
      Matrix blk(b.dim(d), a.dim(d), p);
      for (int row = 0; row < blk.rows(); ++row)
        for (int col = 0; col < blk.cols(); ++col) blk(row, col) = ker(off[d] + row * a.dim(d) + col, c);
      f[d] = blk;
    }
    out.push_back(f);
  }
  return out;
}

// Concatenated entries of a block family over a fixed degree range.
std::vector<u32> flatten(const Blocks& f, int lo, int hi) {
  std::vector<u32> v;
  for (int d = lo; d <= hi; ++d) {
    auto it = f.find(d);
    if (it == f.end()) continue;
    for (int r0 = 0; r0 < it->second.rows(); ++r0)
      for (int c = 0; c < it->second.cols(); ++c) v.push_back(it->second(r0, c));
  }
  return v;
}

int rank_of(const std::vector<std::vector<u32>>& vecs, u32 p) {
  if (vecs.empty() || vecs[0].empty()) return 0;
  Matrix m(static_cast<int>(vecs.size()), static_cast<int>(vecs[0].size()), p);
  for (size_t a = 0; a < vecs.size(); ++a)
    for (size_t c = 0; c < vecs[a].size(); ++c) m(int(a), int(c)) = vecs[a][c];
  return rank(m);
}

Blocks compose_blocks(const Blocks& g, const Blocks& f, const PlainModule& src, const PlainModule& mid,
                      const PlainModule& dst) {
  Blocks h;
  for (int d = src.d_min; d <= src.d_max(); ++d) {
    Matrix fd = f.count(d) ? f.at(d) : Matrix(mid.dim(d), src.dim(d), src.p);
    Matrix gd = g.count(d) ? g.at(d) : Matrix(dst.dim(d), mid.dim(d), src.p);
    h[d] = gd * fd;
  }
  return h;
}

bool is_zero_module(const PlainModule& m) {
  for (int n : m.dims)
    if (n) return false;
  return true;
}

struct Step {
  PlainModule term;
  Blocks map;  // term -> previous term (or the module)
};

// Minimal projective resolution with explicit terms.
std::vector<Step> projective_resolution(const PlainModule& m0, int length) {
  std::vector<Step> out;
  PlainModule cur = m0;
  Blocks incl;  // cur -> previous term
  for (int d = cur.d_min; d <= cur.d_max(); ++d) incl[d] = Matrix::identity(cur.dim(d), cur.p);
  const int n = cur.r + 1;
  Basis basis(n);
  for (int k = 0; k <= length; ++k) {
    std::vector<int> gdeg;
    std::vector<Matrix> gvec;
    if (!is_zero_module(cur))
      for (int d = cur.d_min; d <= cur.d_max(); ++d) {
        Matrix rad(cur.dim(d), 0, cur.p);
        for (int i = 0; i <= cur.r; ++i)
          if (cur.dim(d - 1)) rad = hstack(rad, cur.x(i, d - 1));
        Matrix ext = hstack(rad, Matrix::identity(cur.dim(d), cur.p));
        for (int c : rref(ext).pivots)
          if (c >= rad.cols()) {
            gdeg.push_back(d);
            gvec.push_back(ext.col(c));
          }
      }
    std::vector<PlainModule> parts;
    for (int g : gdeg) parts.push_back(regular(cur.r, cur.p, g));
    std::vector<std::map<int, int>> off;
    PlainModule p = sum(parts, cur.r, cur.p, &off);
    Blocks pi;
    for (int d = p.d_min; d <= p.d_max(); ++d) {
      Matrix b(cur.dim(d), p.dim(d), cur.p);
      for (size_t j = 0; j < gdeg.size(); ++j) {
        int s = d - gdeg[j];
        if (s < 0 || s > n) continue;
        for (size_t a = 0; a < basis.by_size[s].size(); ++a) {
          unsigned mask = basis.by_size[s][a];
          // e_S = x_{s1} ... x_{sk}: apply the largest index first.
          Matrix v = gvec[j];
          int deg = gdeg[j];
          for (int i = n - 1; i >= 0; --i)
            if (mask & (1u << i)) v = cur.x(i, deg++) * v;
          b.set_block(0, off[j][d] + int(a), v);
        }
      }
      pi[d] = b;
    }
    Step st{p, {}};
    for (int d = p.d_min; d <= p.d_max(); ++d) {
      Matrix id = incl.count(d) ? incl.at(d) : Matrix(0, 0, cur.p);
      st.map[d] = incl.count(d) ? id * pi[d] : Matrix(0, p.dim(d), cur.p);
    }
    out.push_back(st);
    if (p.dims.empty()) {
      cur = p;
      incl.clear();
      continue;
    }
    Blocks ker;
    for (int d = p.d_min; d <= p.d_max(); ++d) ker[d] = kernel_basis(pi[d]);
    cur = restrict_to(p, ker);
    incl = ker;
  }
  return out;
}

struct CoStep {
  PlainModule term;
  Blocks map;  // previous term (or the module) -> term
};

// Minimal injective coresolution built from copies of D(Λ).
std::vector<CoStep> injective_coresolution(const PlainModule& m0, int length) {
  std::vector<CoStep> out;
  PlainModule cur = m0;
  Blocks proj;  // previous term -> cur
  const int n = cur.r + 1;
  Basis basis(n);
  for (int k = 0; k <= length; ++k) {
    std::vector<int> cdeg;
    std::vector<Matrix> funcs;
    if (!is_zero_module(cur))
      for (int d = cur.d_min; d <= cur.d_max(); ++d) {
        if (!cur.dim(d)) continue;
        Matrix stack(0, cur.dim(d), cur.p);
        for (int i = 0; i <= cur.r; ++i) stack = vstack(stack, cur.x(i, d));
        Matrix soc = kernel_basis(stack);
        if (!soc.cols()) continue;
        // Functionals dual to the socle basis, extended by zero on a complement.
        Matrix full = hstack(soc, Matrix::identity(cur.dim(d), cur.p));
        Matrix b = full.select_cols(rref(full).pivots);
        Matrix inv = inverse(b);
        for (int t = 0; t < soc.cols(); ++t) {
          cdeg.push_back(d);
          funcs.push_back(inv.block(t, 0, 1, cur.dim(d)));
        }
      }
    std::vector<PlainModule> parts;
    for (int c : cdeg) parts.push_back(coregular(cur.r, cur.p, c));
    std::vector<std::map<int, int>> off;
    PlainModule inj = sum(parts, cur.r, cur.p, &off);
    Blocks emb;
    for (int d = cur.d_min; d <= cur.d_max(); ++d) {
      Matrix b(inj.dim(d), cur.dim(d), cur.p);
      for (size_t j = 0; j < cdeg.size(); ++j) {
        int s = cdeg[j] - d;
        if (s < 0 || s > n) continue;
        for (size_t a = 0; a < basis.by_size[s].size(); ++a) {
          unsigned mask = basis.by_size[s][a];
          // f_v(e_S) = phi(e_S v).
          Matrix t = Matrix::identity(cur.dim(d), cur.p);
          int deg = d;
          for (int i = n - 1; i >= 0; --i)
            if (mask & (1u << i)) t = cur.x(i, deg++) * t;
          b.set_block(off[j][d] + int(a), 0, funcs[j] * t);
        }
      }
      emb[d] = b;
    }
    CoStep st{inj, {}};
    if (k == 0) {
      st.map = emb;
    } else {
      for (const auto& [d, pr] : proj) {
        Matrix e = emb.count(d) ? emb.at(d) : Matrix(inj.dim(d), pr.rows(), cur.p);
        st.map[d] = e * pr;
      }
    }
    out.push_back(st);
    if (inj.dims.empty()) {
      cur = inj;
      proj.clear();
      continue;
    }
    Blocks img;
    for (int d = inj.d_min; d <= inj.d_max(); ++d) {
      Matrix e = emb.count(d) ? emb.at(d) : Matrix(inj.dim(d), 0, cur.p);
      img[d] = image_basis(e);
    }
    Blocks pr;
    cur = quotient_by(inj, img, &pr);
    proj = pr;
  }
  return out;
}

}  // namespace

long long cech_O(int r, int n, int q) {
  if (q < 0 || q > r) throw std::invalid_argument("cech_O: q out of range");
  // Count exponent vectors of length r+1: nonnegative summing to n (q = 0), or all <= -1
  // summing to n (q = r). Other degrees vanish.
  auto count = [](int slots, int total, auto&& self) -> long long {
    if (total < 0) return 0;
    if (slots == 1) return 1;
    long long c = 0;
    for (int a = 0; a <= total; ++a) c += self(slots - 1, total - a, self);
    return c;
  };
  if (q == 0) return n >= 0 ? count(r + 1, n, count) : 0;
  if (q == r) {
    // Substitute a_i = -1 - b_i with b_i >= 0: sum b_i = -n - (r+1).
    int t = -n - (r + 1);
    return t >= 0 ? count(r + 1, t, count) : 0;
  }
  return 0;
}

int hom_dim(const PlainModule& a, const PlainModule& b) { return static_cast<int>(naive_hom(a, b).size()); }

int ext_via_projective(const PlainModule& a, const PlainModule& b, int k) {
  auto res = projective_resolution(a, k + 1);
  auto homs = [&](int j) { return naive_hom(res[j].term, b); };
  std::vector<Blocks> hk = homs(k);
  if (hk.empty()) return 0;
  auto pre_rank = [&](const std::vector<Blocks>& basis, int j) {
    // phi in Hom(P_{j-1}, b) -> phi o d_j in Hom(P_j, b).
    const PlainModule& src = res[j].term;
    const PlainModule& mid = res[j - 1].term;
    std::vector<std::vector<u32>> vecs;
    for (const auto& phi : basis) vecs.push_back(flatten(compose_blocks(phi, res[j].map, src, mid, b), src.d_min, src.d_max()));
    return rank_of(vecs, a.p);
  };
  int out_rank = pre_rank(hk, k + 1);
  int in_rank = k >= 1 ? pre_rank(homs(k - 1), k) : 0;
  return static_cast<int>(hk.size()) - out_rank - in_rank;
}

int ext_via_injective(const PlainModule& a, const PlainModule& b, int k) {
  auto cores = injective_coresolution(b, k + 1);
  auto homs = [&](int j) { return naive_hom(a, cores[j].term); };
  std::vector<Blocks> hk = homs(k);
  if (hk.empty()) return 0;
  auto post_rank = [&](const std::vector<Blocks>& basis, int j) {
    // phi in Hom(a, I_{j-1}) -> e_j o phi in Hom(a, I_j).
    const PlainModule& mid = cores[j - 1].term;
    const PlainModule& dst = cores[j].term;
    std::vector<std::vector<u32>> vecs;
    for (const auto& phi : basis) {
      Blocks h = compose_blocks(cores[j].map, phi, a, mid, dst);
      vecs.push_back(flatten(h, a.d_min, a.d_max()));
    }
    return rank_of(vecs, a.p);
  };
  int out_rank = post_rank(hk, k + 1);
  int in_rank = k >= 1 ? post_rank(homs(k - 1), k) : 0;
  return static_cast<int>(hk.size()) - out_rank - in_rank;
}

std::pair<int, int> ext_two_ways(const PlainModule& a, const PlainModule& b, int k) {
  return {ext_via_projective(a, b, k), ext_via_injective(a, b, k)};
}

std::vector<int> betti_totals(const PlainModule& m, int length) {
  std::vector<int> out;
  for (const auto& st : projective_resolution(m, length)) {
    int g = 0;
    if (!st.term.dims.empty()) {
      // Generators = dim of the top, read from the lowest layer of each free summand:
      // total dim / 2^(r+1).
      int tot = 0;
      for (int d : st.term.dims) tot += d;
      g = tot >> (m.r + 1);
    }
    out.push_back(g);
  }
  return out;
}

std::pair<long long, long long> kronecker_dims(int r, int k) {
  if (k < 0) throw std::invalid_argument("kronecker_dims: negative index");
  long long prev = 0, cur = 1;  // d_0, d_1
  for (int i = 0; i < k; ++i) {
    long long next = (r + 1) * cur - prev;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace extalg::oracle

#include "extalg/gmod.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "extalg/error.hpp"
#include "poly.hpp"

namespace extalg {

GradedModule simple_module(const AlgebraContext& ctx, int degree) { return GradedModule(ctx, degree, {1}); }

GradedModule free_module(const AlgebraContext& ctx, int g) { return FreeModule(ctx, {g}).to_module(); }

GradedModule free_sum(const AlgebraContext& ctx, const std::vector<int>& gens) {
  return FreeModule(ctx, gens).to_module();
}

ValidationReport validate(const GradedModule& m) {
  ValidationReport rep;
  if (!is_prime(m.p())) rep.shape_errors.push_back("modulus is not prime");
  if (m.r() < 0) rep.shape_errors.push_back("negative r");
  if (m.is_zero()) {
    rep.ok = rep.shape_errors.empty();
    return rep;
  }
  for (int d = m.d_min(); d <= m.d_max(); ++d)
    for (int i = 0; i < m.nvars(); ++i) {
      const Matrix& x = m.action_ref(i, d);
      if (x.rows() != m.dim(d + 1) || x.cols() != m.dim(d)) {
        std::ostringstream os;
        os << "X_" << i << "(" << d << ") has shape " << x.rows() << "x" << x.cols();
        rep.shape_errors.push_back(os.str());
      }
    }
  if (!rep.shape_errors.empty()) {
    rep.ok = false;
    return rep;
  }
  for (int d = m.d_min(); d + 1 <= m.d_max(); ++d)
    for (int i = 0; i < m.nvars(); ++i)
      for (int j = i; j < m.nvars(); ++j) {
        Matrix lhs = m.action(i, d + 1) * m.action(j, d);
        if (i != j) lhs = lhs + m.action(j, d + 1) * m.action(i, d);
        if (!lhs.is_zero()) rep.violations.push_back({i, j, d});
      }
  rep.ok = rep.violations.empty();
  return rep;
}

GradedModule shift(const GradedModule& m, int s) {
  if (m.is_zero()) return m;
  GradedModule out(m.ctx(), m.d_min() - s, m.dims());
  for (int d = m.d_min(); d <= m.d_max(); ++d)
    for (int i = 0; i < m.nvars(); ++i) out.set_action(i, d - s, m.action_ref(i, d));
  return out;
}

ModuleMap shift_map(const ModuleMap& f, int s) {
  ModuleMap g{shift(f.source, s), shift(f.target, s), f.shift, {}};
  for (const auto& [d, b] : f.blocks) g.blocks[d - s] = b;
  return g;
}

Subspaces full_subspaces(const GradedModule& m) {
  Subspaces u;
  for (int d = m.d_min(); d <= m.d_max(); ++d) u[d] = Matrix::identity(m.dim(d), m.p());
  return u;
}

static Matrix sub_at(const Subspaces& u, int d, int n, u32 p) {
  auto it = u.find(d);
  return it == u.end() ? Matrix(n, 0, p) : it->second;
}

SubModule submodule(const GradedModule& m, const Subspaces& u0) {
  const u32 p = m.p();
  if (m.is_zero()) return {m, zero_map(m, m)};
  Subspaces u;
  for (int d = m.d_min(); d <= m.d_max(); ++d) u[d] = image_basis(sub_at(u0, d, m.dim(d), p));
  std::vector<int> dims;
  for (int d = m.d_min(); d <= m.d_max(); ++d) dims.push_back(u[d].cols());
  GradedModule s(m.ctx(), m.d_min(), dims);
  for (int d = m.d_min(); d < m.d_max(); ++d) {
    if (u[d].cols() == 0 || u[d + 1].cols() == 0) continue;
    Matrix rhs(m.dim(d + 1), 0, p);
    for (int i = 0; i < m.nvars(); ++i) rhs = hstack(rhs, m.action_ref(i, d) * u[d]);
    Matrix c = coords_in(u[d + 1], rhs);
    for (int i = 0; i < m.nvars(); ++i) s.set_action(i, d, c.block(0, i * u[d].cols(), u[d + 1].cols(), u[d].cols()));
  }
  s.trim();
  ModuleMap inc{s, m, 0, {}};
  for (int d = m.d_min(); d <= m.d_max(); ++d)
    if (u[d].cols()) inc.blocks[d] = u[d];
  return {s, inc};
}

QuotientModule quotient(const GradedModule& m, const Subspaces& u0) {
  const u32 p = m.p();
  if (m.is_zero()) return {m, zero_map(m, m)};
  std::map<int, std::vector<int>> comp;
  std::map<int, Matrix> proj;
  std::vector<int> dims;
  for (int d = m.d_min(); d <= m.d_max(); ++d) {
    Matrix u = image_basis(sub_at(u0, d, m.dim(d), p));
    std::vector<int> c = complement_indices(u);
    Matrix t = hstack(u, Matrix::identity(m.dim(d), p).select_cols(c));
    Matrix tinv = inverse(t);
    proj[d] = tinv.block(u.cols(), 0, static_cast<int>(c.size()), m.dim(d));
    comp[d] = c;
    dims.push_back(static_cast<int>(c.size()));
  }
  GradedModule q(m.ctx(), m.d_min(), dims);
  for (int d = m.d_min(); d < m.d_max(); ++d)
    for (int i = 0; i < m.nvars(); ++i) {
      if (comp[d].empty() || comp[d + 1].empty()) continue;
      q.set_action(i, d, proj[d + 1] * m.action_ref(i, d).select_cols(comp[d]));
    }
  q.trim();
  ModuleMap pr{m, q, 0, {}};
  for (int d = m.d_min(); d <= m.d_max(); ++d) pr.blocks[d] = proj[d];
  return {q, pr};
}

Subspaces image_subspaces(const ModuleMap& f) {
  Subspaces u;
  for (int d = f.source.d_min(); d <= f.source.d_max(); ++d) {
    int td = d + f.shift;
    if (f.target.dim(td) == 0) continue;
    u[td] = image_basis(f.block(d));
  }
  return u;
}

Subspaces kernel_subspaces(const ModuleMap& f) {
  Subspaces u;
  for (int d = f.source.d_min(); d <= f.source.d_max(); ++d) u[d] = kernel_basis(f.block(d));
  return u;
}

bool same_subspaces(const Subspaces& a, const Subspaces& b, const GradedModule& m) {
  for (int d = m.d_min(); d <= m.d_max(); ++d) {
    Matrix x = sub_at(a, d, m.dim(d), m.p());
    Matrix y = sub_at(b, d, m.dim(d), m.p());
    int rx = rank(x), ry = rank(y);
    if (rx != ry || rank(hstack(x, y)) != rx) return false;
  }
  return true;
}

GradedModule truncate(const GradedModule& m, int k) { return truncate_sub(m, k).module; }

SubModule truncate_sub(const GradedModule& m, int k) {
  Subspaces u;
  for (int d = m.d_min(); d <= m.d_max(); ++d)
    u[d] = d >= k ? Matrix::identity(m.dim(d), m.p()) : Matrix(m.dim(d), 0, m.p());
  return submodule(m, u);
}

Subspaces radical_subspaces(const GradedModule& m, int j) {
  Subspaces u = full_subspaces(m);
  for (int step = 0; step < j; ++step) {
    Subspaces next;
    for (int d = m.d_min(); d <= m.d_max(); ++d) {
      Matrix prev = sub_at(u, d - 1, m.dim(d - 1), m.p());
      Matrix span(m.dim(d), 0, m.p());
      for (int i = 0; i < m.nvars(); ++i) span = hstack(span, m.action(i, d - 1) * prev);
      next[d] = image_basis(span);
    }
    u = std::move(next);
  }
  return u;
}

SubModule radical_power(const GradedModule& m, int j) { return submodule(m, radical_subspaces(m, j)); }

Subspaces socle_subspaces(const GradedModule& m, int k) {
  Subspaces u;
  for (int d = m.d_min(); d <= m.d_max(); ++d) u[d] = Matrix(m.dim(d), 0, m.p());
  for (int step = 0; step < k; ++step) {
    Subspaces next;
    for (int d = m.d_min(); d <= m.d_max(); ++d) {
      Matrix ann = annihilator(sub_at(u, d + 1, m.dim(d + 1), m.p()));
      Matrix cond(0, m.dim(d), m.p());
      for (int i = 0; i < m.nvars(); ++i) cond = vstack(cond, ann * m.action(i, d));
      next[d] = kernel_basis(cond);
    }
    u = std::move(next);
  }
  return u;
}

SubModule socle(const GradedModule& m) { return submodule(m, socle_subspaces(m, 1)); }

SubModule socle_power(const GradedModule& m, int k) { return submodule(m, socle_subspaces(m, k)); }

QuotientModule top(const GradedModule& m) { return quotient(m, radical_subspaces(m, 1)); }

int loewy_length(const GradedModule& m) {
  if (m.is_zero()) return 0;
  Subspaces u = full_subspaces(m);
  for (int len = 0;; ++len) {
    bool zero = true;
    for (const auto& [d, b] : u)
      if (b.cols()) zero = false;
    if (zero) return len;
    Subspaces next;
    for (int d = m.d_min(); d <= m.d_max(); ++d) {
      Matrix prev = sub_at(u, d - 1, m.dim(d - 1), m.p());
      Matrix span(m.dim(d), 0, m.p());
      for (int i = 0; i < m.nvars(); ++i) span = hstack(span, m.action(i, d - 1) * prev);
      next[d] = image_basis(span);
    }
    u = std::move(next);
  }
}

GradedModule loewy2(const GradedModule& m) { return quotient(m, radical_subspaces(m, 2)).module; }

std::vector<int> top_degrees(const GradedModule& m) {
  std::vector<int> out;
  Subspaces j = radical_subspaces(m, 1);
  for (int d = m.d_min(); d <= m.d_max(); ++d)
    for (int k = j[d].cols(); k < m.dim(d); ++k) out.push_back(d);
  return out;
}

std::vector<int> socle_degrees(const GradedModule& m) {
  std::vector<int> out;
  Subspaces s = socle_subspaces(m, 1);
  for (int d = m.d_min(); d <= m.d_max(); ++d)
    for (int k = 0; k < s[d].cols(); ++k) out.push_back(d);
  return out;
}

bool generated_in_one_degree(const GradedModule& m, int* g) {
  std::vector<int> t = top_degrees(m);
  if (t.empty()) return false;
  for (int d : t)
    if (d != t.front()) return false;
  if (g) *g = t.front();
  return true;
}

bool is_semisimple(const GradedModule& m) {
  for (int d = m.d_min(); d <= m.d_max(); ++d)
    for (int i = 0; i < m.nvars(); ++i)
      if (!m.action_ref(i, d).is_zero()) return false;
  return true;
}

GradedModule dual(const GradedModule& m) {
  if (m.is_zero()) return m;
  std::vector<int> dims(m.dims().rbegin(), m.dims().rend());
  GradedModule out(m.ctx(), -m.d_max(), dims);
  for (int d = out.d_min(); d < out.d_max(); ++d)
    for (int i = 0; i < m.nvars(); ++i) out.set_action(i, d, m.action(i, -d - 1).transpose());
  return out;
}

ModuleMap dual_map(const ModuleMap& f) {
  ModuleMap g{dual(f.target), dual(f.source), f.shift, {}};
  for (int e = g.source.d_min(); e <= g.source.d_max(); ++e) g.blocks[e] = f.block(-e - f.shift).transpose();
  return g;
}

DirectSum direct_sum(const std::vector<GradedModule>& parts) {
  check_internal(!parts.empty(), "direct sum of nothing");
  const AlgebraContext ctx = parts.front().ctx();
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& m : parts) {
    check_internal(m.ctx() == ctx, "direct sum across different algebras");
    if (m.is_zero()) continue;
    lo = any ? std::min(lo, m.d_min()) : m.d_min();
    hi = any ? std::max(hi, m.d_max()) : m.d_max();
    any = true;
  }
  DirectSum out;
  if (!any) {
    out.module = GradedModule(ctx);
    for (const auto& m : parts) {
      out.injections.push_back(zero_map(m, out.module));
      out.projections.push_back(zero_map(out.module, m));
    }
    return out;
  }
  std::vector<int> dims;
  std::map<int, std::vector<int>> off;
  for (int d = lo; d <= hi; ++d) {
    std::vector<int> o{0};
    for (const auto& m : parts) o.push_back(o.back() + m.dim(d));
    dims.push_back(o.back());
    off[d] = o;
  }
  GradedModule s(ctx, lo, dims);
  for (int d = lo; d < hi; ++d)
    for (int i = 0; i < ctx.nvars(); ++i) {
      Matrix x(s.dim(d + 1), s.dim(d), ctx.p);
      for (size_t k = 0; k < parts.size(); ++k) x.set_block(off[d + 1][k], off[d][k], parts[k].action(i, d));
      s.set_action(i, d, x);
    }
  out.module = s;
  for (size_t k = 0; k < parts.size(); ++k) {
    const auto& m = parts[k];
    ModuleMap inj{m, s, 0, {}}, pr{s, m, 0, {}};
    for (int d = lo; d <= hi; ++d) {
      Matrix in(s.dim(d), m.dim(d), ctx.p);
      in.set_block(off[d][k], 0, Matrix::identity(m.dim(d), ctx.p));
      if (m.dim(d)) inj.blocks[d] = in;
      pr.blocks[d] = in.transpose();
    }
    out.injections.push_back(inj);
    out.projections.push_back(pr);
  }
  return out;
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) { return direct_sum({a, b}).module; }

bool has_projective_summand(const GradedModule& m) {
  ActionCache c(m);
  Mask full = m.ctx().full_mask();
  for (int d = m.d_min(); d <= m.d_max(); ++d)
    if (!c.mono(full, d).is_zero()) return true;
  return false;
}

GradedModule strip_projective(const GradedModule& m) {
  ActionCache c(m);
  const int n = m.nvars();
  Mask full = m.ctx().full_mask();
  Subspaces u;
  for (int d = m.d_min(); d <= m.d_max(); ++d) u[d] = Matrix(m.dim(d), 0, m.p());
  for (int d = m.d_min(); d <= m.d_max(); ++d) {
    const Matrix& t = c.mono(full, d);
    if (t.is_zero()) continue;
    Matrix y = Matrix::identity(m.dim(d), m.p()).select_cols(rref(t).pivots);
    for (int k = 0; k <= n; ++k)
      for (Mask s : subsets_of_size(n, k)) {
        int e = d + k;
        u[e] = hstack(u[e], c.mono(s, d) * y);
      }
  }
  if (u.empty()) return m;
  return quotient(m, u).module;
}

GradedModule basis_change(const GradedModule& m, std::mt19937_64& rng) {
  if (m.is_zero()) return m;
  std::map<int, Matrix> t, tinv;
  for (int d = m.d_min(); d <= m.d_max() + 1; ++d) {
    t[d] = random_invertible(m.dim(d), m.p(), rng);
    tinv[d] = inverse(t[d]);
  }
  GradedModule out(m.ctx(), m.d_min(), m.dims());
  for (int d = m.d_min(); d <= m.d_max(); ++d)
    for (int i = 0; i < m.nvars(); ++i) out.set_action(i, d, t[d + 1] * m.action_ref(i, d) * tinv[d]);
  return out;
}

const Matrix& ActionCache::mono(Mask s, int d) const {
  auto key = std::make_pair(s, d);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Matrix v;
  if (s == 0) {
    v = Matrix::identity(m_.dim(d), m_.p());
  } else {
    int low = std::countr_zero(s);
    Mask rest = s & (s - 1);
    int k = popcount(s);
    v = m_.action(low, d + k - 1) * mono(rest, d);
  }
  return cache_.emplace(key, std::move(v)).first->second;
}

Matrix ModuleAmbient::mul(Mask s, int d, const Matrix& v) const { return cache_.mono(s, d) * v; }

Subspaces radical_of(const Ambient& a, const Subspaces& u) {
  Subspaces out;
  const u32 p = a.ctx().p;
  for (const auto& [d, b] : u) {
    Matrix span(a.dim(d + 1), 0, p);
    if (b.cols())
      for (int i = 0; i < a.ctx().nvars(); ++i) span = hstack(span, a.act(i, d, b));
    out[d + 1] = image_basis(span);
  }
  return out;
}

Generators minimal_generators(const Ambient& a, const Subspaces& u) {
  Generators g;
  Subspaces ju = radical_of(a, u);
  const u32 p = a.ctx().p;
  for (const auto& [d, b] : u) {
    if (b.cols() == 0) continue;
    Matrix j = ju.count(d) ? ju[d] : Matrix(a.dim(d), 0, p);
    Rref rr = rref(hstack(j, b));
    for (int c : rr.pivots)
      if (c >= j.cols()) {
        g.degrees.push_back(d);
        g.vectors.push_back(b.col(c - j.cols()));
      }
  }
  return g;
}

CoverData cover_of(const Ambient& a, const Subspaces& u, const Generators& gens) {
  CoverData cd;
  cd.gens = gens;
  cd.cover = FreeModule(a.ctx(), gens.degrees);
  const u32 p = a.ctx().p;
  const int n = a.ctx().nvars();
  if (cd.cover.is_zero()) return cd;
  // Generators grouped by degree, so each monomial acts once per degree.
  std::map<int, std::vector<int>> by_deg;
  for (size_t j = 0; j < gens.degrees.size(); ++j) by_deg[gens.degrees[j]].push_back(int(j));
  std::map<int, Matrix> gmat;
  for (const auto& [g, idx] : by_deg) {
    std::vector<Matrix> cols;
    for (int j : idx) cols.push_back(gens.vectors[j]);
    gmat[g] = hstack(cols, a.dim(g), p);
  }
  for (int d = cd.cover.d_min(); d <= cd.cover.d_max(); ++d) {
    Matrix pi(a.dim(d), cd.cover.dim(d), p);
    for (const auto& [g, idx] : by_deg) {
      int k = d - g;
      if (k < 0 || k > n) continue;
      const auto& subs = subsets_of_size(n, k);
      for (size_t si = 0; si < subs.size(); ++si) {
        Matrix img = a.mul(subs[si], g, gmat[g]);
        for (size_t t = 0; t < idx.size(); ++t) {
          int col = cd.cover.offset(d, idx[t]) + static_cast<int>(si);
          for (int row = 0; row < img.rows(); ++row) pi(row, col) = img(row, int(t));
        }
      }
    }
    cd.kernel[d] = kernel_basis(pi);
    cd.pi[d] = std::move(pi);
  }
  (void)u;
  return cd;
}

CoverData cover_of(const Ambient& a, const Subspaces& u) { return cover_of(a, u, minimal_generators(a, u)); }

Presentation present(const GradedModule& m) {
  Presentation pr;
  pr.module = m;
  ModuleAmbient amb(m);
  pr.data = cover_of(amb, full_subspaces(m));
  for (int d = m.d_min(); d <= m.d_max(); ++d) {
    if (m.dim(d) == 0) continue;
    pr.section[d] = right_inverse(pr.data.pi.at(d));
  }
  if (!pr.data.cover.is_zero()) pr.relations = minimal_generators(FreeAmbient(pr.data.cover), pr.data.kernel);
  return pr;
}

HomSpace::HomSpace(const GradedModule& a, const GradedModule& b, int s)
    : HomSpace(std::make_shared<const Presentation>(present(a)), b, s) {}

HomSpace::HomSpace(std::shared_ptr<const Presentation> pa, const GradedModule& b, int s)
    : pa_(std::move(pa)), cb_(b), s_(s) {
  build();
}

namespace {
constexpr int kDualThreshold = 256;
}

void HomSpace::build() {
  const auto& gd = pa_->data.gens.degrees;
  const GradedModule& b = cb_.module();
  offsets_.assign(gd.size() + 1, 0);
  for (size_t j = 0; j < gd.size(); ++j) offsets_[j + 1] = offsets_[j] + b.dim(gd[j] + s_);
  const int total = offsets_.back();
  const GradedModule& a = pa_->module;
  // Modules with a large top and a small socle are far cheaper from the dual
  // side: Hom(a, b)_s = Hom(Db, Da)_s, with unknowns indexed by cogenerators of b.
  if (total > kDualThreshold && !b.is_zero()) {
    GradedModule da = dual(a);
    auto pd = std::make_shared<const Presentation>(present(dual(b)));
    int dual_total = 0;
    for (int g : pd->data.gens.degrees) dual_total += da.dim(g + s_);
    if (2 * dual_total < total) {
      HomSpace hd(pd, da, s_);
      std::vector<Matrix> cols;
      for (int k = 0; k < hd.dim(); ++k) cols.push_back(images_of(dual_map(hd.basis_map(k))));
      basis_ = hstack(cols, total, b.p());
      return;
    }
  }
  std::vector<Matrix> rows;
  int nrows = 0;
  for (size_t k = 0; k < pa_->relations.degrees.size(); ++k) {
    rows.push_back(evaluation_matrix(pa_->relations.degrees[k], pa_->relations.vectors[k]));
    nrows += rows.back().rows();
  }
  Matrix cons(nrows, total, b.p());
  int o = 0;
  for (const auto& e : rows) {
    if (e.rows()) cons.set_block(o, 0, e);
    o += e.rows();
  }
  basis_ = kernel_basis(cons);
}

Matrix HomSpace::evaluation_matrix(int deg, const Matrix& v) const {
  const auto& gd = pa_->data.gens.degrees;
  const FreeModule& P = pa_->data.cover;
  const GradedModule& b = cb_.module();
  const int n = b.nvars();
  Matrix e(b.dim(deg + s_), offsets_.back(), b.p());
  if (e.rows() == 0) return e;
  for (size_t j = 0; j < gd.size(); ++j) {
    int k = deg - gd[j];
    if (k < 0 || k > n || b.dim(gd[j] + s_) == 0) continue;
    const auto& subs = subsets_of_size(n, k);
    for (size_t si = 0; si < subs.size(); ++si) {
      u32 c = v(P.offset(deg, int(j)) + int(si), 0);
      if (!c) continue;
      Matrix blk = scale(cb_.mono(subs[si], gd[j] + s_), c);
      for (int row = 0; row < blk.rows(); ++row)
        for (int col = 0; col < blk.cols(); ++col)
          e(row, offsets_[j] + col) = add_mod(e(row, offsets_[j] + col), blk(row, col), b.p());
    }
  }
  return e;
}

Matrix HomSpace::evaluate(const Matrix& images, int deg, const Matrix& v) const {
  return evaluation_matrix(deg, v) * images;
}

ModuleMap HomSpace::map_from_images(const Matrix& images) const {
  const GradedModule& a = pa_->module;
  const GradedModule& b = cb_.module();
  const auto& gd = pa_->data.gens.degrees;
  const FreeModule& P = pa_->data.cover;
  const int n = b.nvars();
  ModuleMap f{a, b, s_, {}};
  for (int d = a.d_min(); d <= a.d_max(); ++d) {
    if (a.dim(d) == 0) continue;
    Matrix psi(b.dim(d + s_), P.dim(d), b.p());
    if (psi.rows()) {
      for (size_t j = 0; j < gd.size(); ++j) {
        int k = d - gd[j];
        if (k < 0 || k > n) continue;
        int len = offsets_[j + 1] - offsets_[j];
        if (len == 0) continue;
        Matrix bj = images.block(offsets_[j], 0, len, 1);
        const auto& subs = subsets_of_size(n, k);
        for (size_t si = 0; si < subs.size(); ++si) {
          Matrix col = cb_.mono(subs[si], gd[j] + s_) * bj;
          int c = P.offset(d, int(j)) + int(si);
          for (int row = 0; row < psi.rows(); ++row) psi(row, c) = col(row, 0);
        }
      }
    }
    f.blocks[d] = psi * pa_->section.at(d);
  }
  return f;
}

Matrix HomSpace::images_of(const ModuleMap& f) const {
  const auto& gd = pa_->data.gens.degrees;
  Matrix out(offsets_.back(), 1, cb_.module().p());
  for (size_t j = 0; j < gd.size(); ++j) {
    Matrix img = f.block(gd[j]) * pa_->data.gens.vectors[j];
    out.set_block(offsets_[j], 0, img);
  }
  return out;
}

std::vector<ModuleMap> hom_space(const GradedModule& a, const GradedModule& b, int s) {
  HomSpace h(a, b, s);
  std::vector<ModuleMap> out;
  for (int k = 0; k < h.dim(); ++k) out.push_back(h.basis_map(k));
  return out;
}

int hom_dim(const GradedModule& a, const GradedModule& b, int s) { return HomSpace(a, b, s).dim(); }

GradedModule star(const GradedModule& m) {
  const AlgebraContext& ctx = m.ctx();
  const int n = ctx.nvars();
  const u32 p = ctx.p;
  if (m.is_zero()) return m;
  auto pres = std::make_shared<const Presentation>(present(m));
  GradedModule lam = free_module(ctx, 0);
  const int lo = -m.d_max(), hi = n - m.d_min();
  std::map<int, HomSpace> hs;
  std::vector<int> dims;
  for (int s = lo; s <= hi; ++s) {
    hs.emplace(s, HomSpace(pres, lam, s));
    dims.push_back(hs.at(s).dim());
  }
  GradedModule out(ctx, lo, dims);
  const auto& gd = pres->data.gens.degrees;
  FreeModule lamf(ctx, {0});
  for (int s = lo; s < hi; ++s) {
    const HomSpace& h0 = hs.at(s);
    const HomSpace& h1 = hs.at(s + 1);
    if (h0.dim() == 0 || h1.dim() == 0) continue;
    for (int i = 0; i < n; ++i) {
      // Right multiplication by x_i on every generator image.
      Matrix imgs(h1.image_length(), h0.dim(), p);
      int o0 = 0, o1 = 0;
      for (size_t j = 0; j < gd.size(); ++j) {
        int e = gd[j] + s;
        int l0 = lamf.dim(e), l1 = lamf.dim(e + 1);
        for (int a = 0; a < l0; ++a) {
          Mask t = subsets_of_size(n, e)[a];
          if (t & (Mask(1) << i)) continue;
          int sign = ext_mul_sign(t, Mask(1) << i);
          int dst = subset_rank(n, t | (Mask(1) << i));
          for (int c = 0; c < h0.dim(); ++c) {
            u32 v = h0.basis()(o0 + a, c);
            if (v) imgs(o1 + dst, c) = sign > 0 ? v : neg_mod(v, p);
          }
        }
        o0 += l0;
        o1 += l1;
      }
      out.set_action(i, s, coords_in(h1.basis(), imgs));
    }
  }
  out.trim();
  return out;
}

ModuleMap star_map(const ModuleMap& f) {
  require(f.shift == 0, "star_map needs a degree-0 map");
  GradedModule sa = star(f.source), sb = star(f.target);
  ModuleMap out{sb, sa, 0, {}};
  if (sa.is_zero() || sb.is_zero()) return out;
  const GradedModule lam = free_module(f.source.ctx(), 0);
  auto pa = std::make_shared<const Presentation>(present(f.source));
  auto pb = std::make_shared<const Presentation>(present(f.target));
  for (int s = sb.d_min(); s <= sb.d_max(); ++s) {
    if (sb.dim(s) == 0 || sa.dim(s) == 0) continue;
    HomSpace hb(pb, lam, s), ha(pa, lam, s);
    Matrix blk(ha.dim(), hb.dim(), f.source.p());
    for (int k = 0; k < hb.dim(); ++k) blk.set_block(0, k, ha.coords_of(compose(hb.basis_map(k), f)));
    out.blocks[s] = blk;
  }
  return out;
}

EndAlgebra end_algebra(const GradedModule& m) {
  HomSpace h(m, m, 0);
  EndAlgebra e;
  for (int k = 0; k < h.dim(); ++k) e.basis.push_back(h.basis_map(k));
  e.structure.assign(h.dim(), std::vector<std::vector<u32>>(h.dim()));
  for (int a = 0; a < h.dim(); ++a)
    for (int b = 0; b < h.dim(); ++b) {
      Matrix c = h.coords_of(compose(e.basis[a], e.basis[b]));
      for (int k = 0; k < c.rows(); ++k) e.structure[a][b].push_back(c(k, 0));
    }
  return e;
}

Matrix total_matrix(const ModuleMap& f) {
  const GradedModule& m = f.source;
  int n = m.total_dim();
  Matrix t(n, n, m.p());
  int off = 0;
  for (int d = m.d_min(); d <= m.d_max(); ++d) {
    t.set_block(off, off, f.block(d));
    off += m.dim(d);
  }
  return t;
}

namespace {

Matrix random_coords(int n, u32 p, std::mt19937_64& rng) { return random_matrix(n, 1, p, rng); }

bool invertible_everywhere(const ModuleMap& f) {
  for (int d = f.source.d_min(); d <= f.source.d_max(); ++d) {
    Matrix b = f.block(d);
    if (b.rows() != b.cols() || rank(b) != b.rows()) return false;
  }
  return true;
}

// tr(A B) over the total space, computed blockwise.
u32 trace_product(const ModuleMap& a, const ModuleMap& b) {
  const u32 p = a.source.p();
  u32 t = 0;
  for (int d = a.source.d_min(); d <= a.source.d_max(); ++d) {
    Matrix x = a.block(d), y = b.block(d);
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j) t = add_mod(t, mul_mod(x(i, j), y(j, i), p), p);
  }
  return t;
}

ModuleMap from_total(const Matrix& t, const GradedModule& m) {
  ModuleMap f{m, m, 0, {}};
  int off = 0;
  for (int d = m.d_min(); d <= m.d_max(); ++d) {
    f.blocks[d] = t.block(off, off, m.dim(d), m.dim(d));
    off += m.dim(d);
  }
  return f;
}

}  // namespace

Verdict is_isomorphic(const GradedModule& a0, const GradedModule& b0, std::uint64_t seed, int trials) {
  GradedModule a = a0, b = b0;
  a.trim();
  b.trim();
  if (a.is_zero() || b.is_zero()) return {a.is_zero() && b.is_zero(), true, "zero module"};
  if (a.d_min() != b.d_min() || a.dims() != b.dims()) return {false, true, "dimension vectors differ"};
  HomSpace h(a, b, 0);
  if (h.dim() == 0) return {false, true, "no degree-0 maps"};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    ModuleMap f = h.map_from_coords(random_coords(h.dim(), a.p(), rng));
    if (invertible_everywhere(f)) return {true, true, ""};
  }
  // Invertible maps form a Zariski-open set, so each trial misses it with probability <= dim/p.
  std::ostringstream os;
  os << "no invertible map in " << trials << " random trials";
  return {false, true, os.str()};
}

std::optional<ModuleMap> find_idempotent(const GradedModule& m, std::mt19937_64& rng, int trials,
                                         bool* certain_local) {
  if (certain_local) *certain_local = false;
  if (m.is_zero()) return std::nullopt;
  const u32 p = m.p();
  HomSpace h(m, m, 0);
  std::vector<ModuleMap> basis;
  for (int k = 0; k < h.dim(); ++k) basis.push_back(h.basis_map(k));
  // The trace form kills rad End and is nondegenerate on End/rad because p exceeds every
  // multiplicity, so its rank is dim End/rad.
  if (static_cast<u32>(m.total_dim()) < p) {
    Matrix g(h.dim(), h.dim(), p);
    for (int i = 0; i < h.dim(); ++i)
      for (int j = i; j < h.dim(); ++j) g(i, j) = g(j, i) = trace_product(basis[i], basis[j]);
    if (rank(g) == 1) {
      if (certain_local) *certain_local = true;
      return std::nullopt;
    }
  }
  for (int t = 0; t < trials; ++t) {
    Matrix a = total_matrix(h.map_from_coords(random_coords(h.dim(), p, rng)));
    poly::Poly f = poly::charpoly(a);
    poly::Poly fa = poly::coprime_split(f, p, rng);
    if (fa.empty()) continue;
    poly::Poly ga, u, v;
    poly::divmod(f, fa, p, &ga, nullptr);
    poly::ext_gcd(fa, ga, p, &u, &v);
    Matrix e = poly::evaluate(poly::mul(u, fa, p), a);
    check_internal(e * e == e, "idempotent construction failed");
    return from_total(e, m);
  }
  return std::nullopt;
}

Verdict is_indecomposable(const GradedModule& m, std::uint64_t seed, int trials) {
  if (m.is_zero()) return {false, true, "zero module"};
  std::mt19937_64 rng(seed);
  bool local = false;
  if (find_idempotent(m, rng, trials, &local)) return {false, true, "nontrivial idempotent found"};
  if (local) return {true, true, "End/rad is one-dimensional"};
  std::ostringstream os;
  os << "no idempotent in " << trials << " random trials";
  return {true, false, os.str()};
}

namespace {

void decompose_into(const GradedModule& m, const ModuleMap& inc, const ModuleMap& proj, std::mt19937_64& rng,
                    int trials, Decomposition& out) {
  bool local = false;
  auto e = find_idempotent(m, rng, trials, &local);
  if (!e) {
    out.summands.push_back(m);
    out.inclusions.push_back(inc);
    out.projections.push_back(proj);
    if (!local) out.confident = false;
    return;
  }
  ModuleMap comp = add_maps(identity_map(m), scale_map(*e, m.p() - 1));
  for (const ModuleMap* idem : {&*e, &comp}) {
    Subspaces u = image_subspaces(*idem);
    SubModule s = submodule(m, u);
    ModuleMap pr{m, s.module, 0, {}};
    for (int d = m.d_min(); d <= m.d_max(); ++d) {
      Matrix ud = s.inclusion.block(d);
      pr.blocks[d] = ud.cols() ? coords_in(ud, idem->block(d)) : Matrix(0, m.dim(d), m.p());
    }
    decompose_into(s.module, compose(inc, s.inclusion), compose(pr, proj), rng, trials, out);
  }
}

}  // namespace

Decomposition decompose(const GradedModule& m, std::uint64_t seed, int trials) {
  Decomposition out;
  if (m.is_zero()) return out;
  std::mt19937_64 rng(seed);
  decompose_into(m, identity_map(m), identity_map(m), rng, trials, out);
  return out;
}

}  // namespace extalg

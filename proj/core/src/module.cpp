#include "extalg/module.hpp"

#include <bit>

#include "extalg/error.hpp"

namespace extalg {

namespace {

constexpr int kMaxVars = 16;

struct SubsetTables {
  // by_size[n][k]: subsets of {0..n-1} of size k; rank[n][mask]: position within its size.
  std::vector<std::vector<std::vector<Mask>>> by_size;
  std::vector<std::vector<int>> rank;

  SubsetTables() : by_size(kMaxVars + 1), rank(kMaxVars + 1) {
    for (int n = 0; n <= kMaxVars; ++n) {
      by_size[n].resize(n + 1);
      rank[n].resize(size_t(1) << n);
      for (Mask m = 0; m < (Mask(1) << n); ++m) {
        auto& bucket = by_size[n][std::popcount(m)];
        rank[n][m] = static_cast<int>(bucket.size());
        bucket.push_back(m);
      }
    }
  }
};

const SubsetTables& tables() {
  static const SubsetTables t;
  return t;
}

}  // namespace

int popcount(Mask m) { return std::popcount(m); }

int ext_mul_sign(Mask s, Mask t) {
  int inv = 0;
  for (Mask rest = t; rest; rest &= rest - 1) {
    int b = std::countr_zero(rest);
    inv += std::popcount(s >> (b + 1));
  }
  return (inv & 1) ? -1 : 1;
}

const std::vector<Mask>& subsets_of_size(int n, int k) {
  check_internal(n >= 0 && n <= kMaxVars && k >= 0 && k <= n, "subset table out of range");
  return tables().by_size[n][k];
}

int subset_rank(int n, Mask s) { return tables().rank[n][s]; }

long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long v = 1;
  for (long long i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

GradedModule::GradedModule(const AlgebraContext& ctx) : ctx_(ctx), act_(ctx.nvars()) {}

GradedModule::GradedModule(const AlgebraContext& ctx, int d_min, std::vector<int> dims)
    : ctx_(ctx), d_min_(d_min), dims_(std::move(dims)), act_(ctx.nvars()) {
  for (int n : dims_) check_internal(n >= 0, "negative dimension");
  for (int i = 0; i < nvars(); ++i)
    for (size_t k = 0; k < dims_.size(); ++k) {
      int next = k + 1 < dims_.size() ? dims_[k + 1] : 0;
      act_[i].emplace_back(next, dims_[k], ctx.p);
    }
}

int GradedModule::dim(int d) const { return in_window(d) ? dims_[d - d_min_] : 0; }

int GradedModule::total_dim() const {
  int t = 0;
  for (int n : dims_) t += n;
  return t;
}

Matrix GradedModule::action(int i, int d) const {
  if (in_window(d)) return act_[i][d - d_min_];
  return Matrix(dim(d + 1), dim(d), ctx_.p);
}

const Matrix& GradedModule::action_ref(int i, int d) const {
  check_internal(in_window(d), "action outside window");
  return act_[i][d - d_min_];
}

void GradedModule::set_action(int i, int d, const Matrix& m) {
  check_internal(i >= 0 && i < nvars(), "variable index out of range");
  if (m.is_zero() && !in_window(d)) return;
  check_internal(in_window(d), "action outside window");
  check_internal(m.rows() == dim(d + 1) && m.cols() == dim(d), "action shape mismatch");
  act_[i][d - d_min_] = m;
}

void GradedModule::trim() {
  size_t lo = 0, hi = dims_.size();
  while (lo < hi && dims_[lo] == 0) ++lo;
  while (hi > lo && dims_[hi - 1] == 0) --hi;
  if (lo == 0 && hi == dims_.size()) return;
  std::vector<int> nd(dims_.begin() + lo, dims_.begin() + hi);
  std::vector<std::vector<Matrix>> na(nvars());
  for (int i = 0; i < nvars(); ++i)
    for (size_t k = lo; k < hi; ++k) {
      Matrix m = act_[i][k];
      if (k + 1 == hi) m = Matrix(0, dims_[k], ctx_.p);
      na[i].push_back(m);
    }
  d_min_ = nd.empty() ? 0 : d_min_ + static_cast<int>(lo);
  dims_ = std::move(nd);
  act_ = std::move(na);
}

bool GradedModule::operator==(const GradedModule& o) const {
  if (ctx_ != o.ctx_ || dims_ != o.dims_) return false;
  if (!is_zero() && d_min_ != o.d_min_) return false;
  return act_ == o.act_;
}

Matrix ModuleMap::block(int d) const {
  auto it = blocks.find(d);
  if (it != blocks.end()) return it->second;
  return Matrix(target.dim(d + shift), source.dim(d), source.p());
}

ModuleMap zero_map(const GradedModule& a, const GradedModule& b, int shift) {
  ModuleMap f{a, b, shift, {}};
  for (int d = a.d_min(); d <= a.d_max(); ++d) f.blocks[d] = Matrix(b.dim(d + shift), a.dim(d), a.p());
  return f;
}

ModuleMap identity_map(const GradedModule& m) {
  ModuleMap f{m, m, 0, {}};
  for (int d = m.d_min(); d <= m.d_max(); ++d) f.blocks[d] = Matrix::identity(m.dim(d), m.p());
  return f;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap h{f.source, g.target, f.shift + g.shift, {}};
  for (int d = f.source.d_min(); d <= f.source.d_max(); ++d) h.blocks[d] = g.block(d + f.shift) * f.block(d);
  return h;
}

ModuleMap add_maps(const ModuleMap& a, const ModuleMap& b) {
  check_internal(a.shift == b.shift, "adding maps of different shift");
  ModuleMap h{a.source, a.target, a.shift, {}};
  for (int d = a.source.d_min(); d <= a.source.d_max(); ++d) h.blocks[d] = a.block(d) + b.block(d);
  return h;
}

ModuleMap scale_map(const ModuleMap& a, u32 c) {
  ModuleMap h{a.source, a.target, a.shift, {}};
  for (int d = a.source.d_min(); d <= a.source.d_max(); ++d) h.blocks[d] = scale(a.block(d), c);
  return h;
}

bool is_linear(const ModuleMap& f) {
  const auto& s = f.source;
  const auto& t = f.target;
  for (int d = s.d_min(); d <= s.d_max(); ++d)
    for (int i = 0; i < s.nvars(); ++i)
      if (f.block(d + 1) * s.action(i, d) != t.action(i, d + f.shift) * f.block(d)) return false;
  return true;
}

bool is_injective(const ModuleMap& f) {
  for (int d = f.source.d_min(); d <= f.source.d_max(); ++d)
    if (rank(f.block(d)) != f.source.dim(d)) return false;
  return true;
}

bool is_surjective(const ModuleMap& f) {
  for (int d = f.target.d_min(); d <= f.target.d_max(); ++d)
    if (rank(f.block(d - f.shift)) != f.target.dim(d)) return false;
  return true;
}

bool is_zero_map(const ModuleMap& f) {
  for (const auto& [d, b] : f.blocks)
    if (!b.is_zero()) return false;
  return true;
}

FreeModule::FreeModule(const AlgebraContext& ctx, std::vector<int> gens) : ctx_(ctx), gens_(std::move(gens)) {
  if (gens_.empty()) return;
  d_min_ = *std::min_element(gens_.begin(), gens_.end());
  d_max_ = *std::max_element(gens_.begin(), gens_.end()) + ctx_.nvars();
  const int n = ctx_.nvars();
  for (int d = d_min_; d <= d_max_; ++d) {
    std::vector<int> off(gens_.size() + 1, 0);
    for (size_t j = 0; j < gens_.size(); ++j) off[j + 1] = off[j] + static_cast<int>(binomial(n, d - gens_[j]));
    offsets_[d] = std::move(off);
  }
}

int FreeModule::dim(int d) const {
  auto it = offsets_.find(d);
  return it == offsets_.end() ? 0 : it->second.back();
}

int FreeModule::offset(int d, int j) const { return offsets_.at(d)[j]; }

int FreeModule::index(int d, int j, Mask s) const { return offset(d, j) + subset_rank(ctx_.nvars(), s); }

Matrix FreeModule::mul(Mask s, int d, const Matrix& v) const {
  const int k = popcount(s);
  const int n = ctx_.nvars();
  const u32 p = ctx_.p;
  Matrix out(dim(d + k), v.cols(), p);
  if (dim(d) == 0 || out.rows() == 0) return out;
  for (size_t j = 0; j < gens_.size(); ++j) {
    int deg = d - gens_[j];
    if (deg < 0 || deg + k > n) continue;
    const auto& subs = subsets_of_size(n, deg);
    int src0 = offset(d, int(j));
    int dst0 = offset(d + k, int(j));
    for (size_t a = 0; a < subs.size(); ++a) {
      Mask t = subs[a];
      if (t & s) continue;
      int sign = ext_mul_sign(s, t);
      int dst = dst0 + subset_rank(n, s | t);
      const u32* src = v.row(src0 + int(a));
      u32* o = out.row(dst);
      for (int c = 0; c < v.cols(); ++c)
        if (src[c]) o[c] = sign > 0 ? add_mod(o[c], src[c], p) : sub_mod(o[c], src[c], p);
    }
  }
  return out;
}

std::vector<int> FreeModule::radical_indices(int d, int k) const {
  std::vector<int> out;
  if (dim(d) == 0) return out;
  for (size_t j = 0; j < gens_.size(); ++j) {
    int deg = d - gens_[j];
    if (deg < k) continue;
    int c = static_cast<int>(binomial(ctx_.nvars(), deg));
    for (int a = 0; a < c; ++a) out.push_back(offset(d, int(j)) + a);
  }
  return out;
}

GradedModule FreeModule::to_module() const {
  if (is_zero()) return GradedModule(ctx_);
  std::vector<int> dims;
  for (int d = d_min_; d <= d_max_; ++d) dims.push_back(dim(d));
  GradedModule m(ctx_, d_min_, dims);
  for (int d = d_min_; d <= d_max_; ++d)
    for (int i = 0; i < ctx_.nvars(); ++i)
      m.set_action(i, d, act(i, d, Matrix::identity(dim(d), ctx_.p)));
  m.trim();
  return m;
}

}  // namespace extalg

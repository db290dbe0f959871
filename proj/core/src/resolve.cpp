#include "extalg/resolve.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "extalg/error.hpp"

namespace extalg {

int BettiTable::at(int k, int d) const {
  auto it = entries.find({k, d});
  return it == entries.end() ? 0 : it->second;
}

int BettiTable::total(int k) const {
  int t = 0;
  for (const auto& [kd, v] : entries)
    if (kd.first == k) t += v;
  return t;
}

std::string BettiTable::grid() const {
  std::set<int> rows;
  for (const auto& [kd, v] : entries) rows.insert(kd.second - kd.first);
  std::vector<std::string> labels{"total:"};
  for (int row : rows) labels.push_back(std::to_string(row) + ":");
  size_t lw = 0;
  for (const auto& l : labels) lw = std::max(lw, l.size());
  std::vector<size_t> cw(length + 1, 1);
  for (int k = 0; k <= length; ++k) {
    cw[k] = std::max(cw[k], std::to_string(k).size());
    cw[k] = std::max(cw[k], std::to_string(total(k)).size());
  }
  std::ostringstream os;
  os << std::setw(int(lw)) << "";
  for (int k = 0; k <= length; ++k) os << " " << std::setw(int(cw[k])) << k;
  os << "\n" << std::setw(int(lw)) << "total:";
  for (int k = 0; k <= length; ++k) os << " " << std::setw(int(cw[k])) << total(k);
  os << "\n";
  for (int row : rows) {
    os << std::setw(int(lw)) << (std::to_string(row) + ":");
    for (int k = 0; k <= length; ++k) {
      int v = at(k, k + row);
      os << " " << std::setw(int(cw[k])) << (v ? std::to_string(v) : ".");
    }
    os << "\n";
  }
  return os.str();
}

Resolution::Resolution(GradedModule m) : m_(std::move(m)) {}

void Resolution::ensure(int k) {
  while (computed() < k) {
    if (steps_.empty()) {
      steps_.push_back(cover_of(ModuleAmbient(m_), full_subspaces(m_)));
      continue;
    }
    const CoverData& prev = steps_.back();
    if (prev.cover.is_zero()) {
      CoverData empty;
      empty.cover = FreeModule(m_.ctx(), {});
      steps_.push_back(empty);
      continue;
    }
    FreeAmbient amb(prev.cover);
    steps_.push_back(cover_of(amb, prev.kernel));
  }
}

const FreeModule& Resolution::term(int k) {
  ensure(k);
  return steps_[k].cover;
}

const Generators& Resolution::generators(int k) {
  ensure(k);
  return steps_[k].gens;
}

const std::map<int, Matrix>& Resolution::differential(int k) {
  ensure(k);
  return steps_[k].pi;
}

const Subspaces& Resolution::kernel(int k) {
  ensure(k);
  return steps_[k].kernel;
}

GradedModule Resolution::syzygy(int k) {
  if (k == 0) return m_;
  ensure(k - 1);
  if (steps_[k - 1].cover.is_zero()) return GradedModule(m_.ctx());
  return submodule(steps_[k - 1].cover.to_module(), steps_[k - 1].kernel).module;
}

ModuleMap Resolution::differential_map(int k) {
  ensure(k);
  GradedModule target = k == 0 ? m_ : steps_[k - 1].cover.to_module();
  ModuleMap f{steps_[k].cover.to_module(), target, 0, {}};
  for (const auto& [d, b] : steps_[k].pi) f.blocks[d] = b;
  return f;
}

BettiTable Resolution::betti(int length) {
  ensure(length);
  BettiTable t;
  t.length = length;
  for (int k = 0; k <= length; ++k)
    for (int g : steps_[k].gens.degrees) ++t.entries[{k, g}];
  return t;
}

ResolutionStep projective_cover(const GradedModule& m) {
  Resolution r(m);
  return {r.syzygy(1), r.term(0).to_module(), r.differential_map(0)};
}

GradedModule syzygy(const GradedModule& m, int k) {
  require(k >= 0, "syzygy index must be non-negative");
  Resolution r(m);
  return r.syzygy(k);
}

BettiTable min_resolution(const GradedModule& m, int length) {
  require(length >= 0, "resolution length must be non-negative");
  Resolution r(m);
  return r.betti(length);
}

Envelope injective_envelope_data(const GradedModule& m) {
  const AlgebraContext& ctx = m.ctx();
  const int n = ctx.nvars();
  const u32 p = ctx.p;
  Subspaces soc = socle_subspaces(m, 1);
  std::vector<int> gens, cdeg;
  std::vector<Matrix> funcs;  // one row each, on m_c
  for (const auto& [c, s] : soc) {
    if (s.cols() == 0) continue;
    Matrix left = right_inverse(s.transpose()).transpose();
    for (int k = 0; k < left.rows(); ++k) {
      funcs.push_back(left.block(k, 0, 1, left.cols()));
      cdeg.push_back(c);
      gens.push_back(c - n);
    }
  }
  Envelope env;
  env.free = FreeModule(ctx, gens);
  env.socle_degrees = cdeg;
  GradedModule target = env.free.to_module();
  env.embedding = ModuleMap{m, target, 0, {}};
  ActionCache cache(m);
  const Mask full = ctx.full_mask();
  // f_phi(v) = sum_U sign(U, U^c) phi(e_U v) e_{U^c}.
  for (int d = m.d_min(); d <= m.d_max(); ++d) {
    Matrix b(env.free.dim(d), m.dim(d), p);
    for (size_t j = 0; j < funcs.size(); ++j) {
      int k = cdeg[j] - d;
      if (k < 0 || k > n) continue;
      for (Mask u : subsets_of_size(n, k)) {
        Matrix row = funcs[j] * cache.mono(u, d);
        Mask uc = full & ~u;
        int idx = env.free.index(d, int(j), uc);
        bool negate = ext_mul_sign(u, uc) < 0;
        for (int c = 0; c < row.cols(); ++c) b(idx, c) = negate ? neg_mod(row(0, c), p) : row(0, c);
      }
    }
    env.embedding.blocks[d] = b;
  }
  return env;
}

ResolutionStep injective_envelope(const GradedModule& m) {
  Envelope env = injective_envelope_data(m);
  QuotientModule q = quotient(env.embedding.target, image_subspaces(env.embedding));
  return {q.module, env.embedding.target, env.embedding};
}

Coresolution::Coresolution(GradedModule m) { mods_.push_back(std::move(m)); }

void Coresolution::ensure(int k) {
  while (static_cast<int>(envs_.size()) <= k) {
    const GradedModule& cur = mods_.back();
    Envelope env = injective_envelope_data(cur);
    QuotientModule q = quotient(env.embedding.target, image_subspaces(env.embedding));
    envs_.push_back(std::move(env));
    mods_.push_back(q.module);
    quots_.push_back(std::move(q));
  }
}

const GradedModule& Coresolution::cosyzygy(int k) {
  if (k > 0) ensure(k - 1);
  return mods_[k];
}

const Envelope& Coresolution::envelope(int k) {
  ensure(k);
  return envs_[k];
}

const QuotientModule& Coresolution::cokernel(int k) {
  ensure(k);
  return quots_[k];
}

ModuleMap Coresolution::differential_map(int k) {
  ensure(k + 1);
  return compose(envs_[k + 1].embedding, quots_[k].projection);
}

BettiTable Coresolution::betti(int length) {
  ensure(length);
  BettiTable t;
  t.length = length;
  for (int k = 0; k <= length; ++k)
    for (int c : envs_[k].socle_degrees) ++t.entries[{k, c}];
  return t;
}

GradedModule cosyzygy(const GradedModule& m, int k) {
  require(k >= 0, "cosyzygy index must be non-negative");
  Coresolution c(m);
  return c.cosyzygy(k);
}

BettiTable min_coresolution(const GradedModule& m, int length) {
  require(length >= 0, "coresolution length must be non-negative");
  Coresolution c(m);
  return c.betti(length);
}

CompleteResolution::CompleteResolution(const GradedModule& m)
    : m_(strip_projective(m)), res_(m_), cores_(m_) {}

std::vector<int> CompleteResolution::generator_degrees(int e) {
  if (e >= 0) return res_.term(e).gens();
  const int t = -1 - e;
  std::vector<int> out;
  for (int c : cores_.envelope(t).socle_degrees) out.push_back(c - m_.nvars());
  return out;
}

GradedModule CompleteResolution::term(int e) {
  if (e >= 0) return res_.term(e).to_module();
  return cores_.envelope(-1 - e).free.to_module();
}

ModuleMap CompleteResolution::differential(int e) {
  if (e >= 1) return res_.differential_map(e);
  if (e == 0) return compose(cores_.envelope(0).embedding, res_.differential_map(0));
  return cores_.differential_map(-1 - e);
}

bool CompleteResolution::exact_at(int e) {
  GradedModule t = term(e);
  ModuleMap out = differential(e);
  ModuleMap in = differential(e + 1);
  if (!is_zero_map(compose(out, in))) return false;
  for (int d = t.d_min(); d <= t.d_max(); ++d)
    if (rank(in.block(d)) + rank(out.block(d)) != t.dim(d)) return false;
  return true;
}

Presentation free_presentation(const FreeModule& f) {
  Presentation pr;
  pr.module = f.to_module();
  pr.data.cover = f;
  const u32 p = f.ctx().p;
  for (size_t j = 0; j < f.gens().size(); ++j) {
    int g = f.gens()[j];
    Matrix v(f.dim(g), 1, p);
    v(f.index(g, int(j), 0), 0) = 1;
    pr.data.gens.degrees.push_back(g);
    pr.data.gens.vectors.push_back(v);
  }
  if (!f.is_zero())
    for (int d = f.d_min(); d <= f.d_max(); ++d) {
      pr.data.pi[d] = Matrix::identity(f.dim(d), p);
      pr.data.kernel[d] = Matrix(f.dim(d), 0, p);
      pr.section[d] = Matrix::identity(f.dim(d), p);
    }
  return pr;
}

namespace {

// Matrix of Hom(P_{k-1}, b)_s -> Hom(P_k, b)_s, phi -> phi o d_k, in generator-image coordinates.
Matrix cochain_map(const HomSpace& prev, const Generators& gens, int rows) {
  Matrix m(0, prev.image_length(), prev.target().p());
  for (size_t j = 0; j < gens.degrees.size(); ++j) m = vstack(m, prev.evaluation_matrix(gens.degrees[j], gens.vectors[j]));
  check_internal(m.rows() == rows, "cochain map size mismatch");
  return m;
}

int hom_free_dim(const FreeModule& f, const GradedModule& b, int s) {
  int t = 0;
  for (int g : f.gens()) t += b.dim(g + s);
  return t;
}

}  // namespace

int ext_dim(Resolution& ra, const GradedModule& b, int k, int s) {
  require(k >= 0, "Ext index must be non-negative");
  ra.ensure(k + 1);
  const FreeModule& pk = ra.term(k);
  int dim_k = hom_free_dim(pk, b, s);
  if (dim_k == 0) return 0;
  HomSpace hk(std::make_shared<const Presentation>(free_presentation(pk)), b, s);
  int out_rank = 0;
  {
    const FreeModule& pk1 = ra.term(k + 1);
    out_rank = rank(cochain_map(hk, ra.generators(k + 1), hom_free_dim(pk1, b, s)));
  }
  int in_rank = 0;
  if (k >= 1) {
    const FreeModule& pkm = ra.term(k - 1);
    HomSpace hm(std::make_shared<const Presentation>(free_presentation(pkm)), b, s);
    in_rank = rank(cochain_map(hm, ra.generators(k), dim_k));
  }
  return dim_k - out_rank - in_rank;
}

int ext_dim(const GradedModule& a, const GradedModule& b, int k, int s) {
  Resolution r(a);
  return ext_dim(r, b, k, s);
}

}  // namespace extalg

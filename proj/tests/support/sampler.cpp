#include "support/sampler.hpp"

#include "extalg/ar.hpp"
#include "extalg/resolve.hpp"
#include "extalg/sheaf.hpp"

namespace extalg::testing {

Subspaces generated_submodule(const GradedModule& m, const Subspaces& gens) {
  const u32 p = m.p();
  Subspaces u;
  if (m.is_zero()) return u;
  for (int d = m.d_min(); d <= m.d_max(); ++d) {
    Matrix span(m.dim(d), 0, p);
    auto g = gens.find(d);
    if (g != gens.end()) span = hstack(span, g->second);
    auto prev = u.find(d - 1);
    if (prev != u.end() && prev->second.cols() > 0)
      for (int i = 0; i < m.nvars(); ++i) span = hstack(span, m.action(i, d - 1) * prev->second);
    u[d] = span.cols() ? image_basis(span) : span;
  }
  return u;
}

GradedModule random_module(Rng& rng, int r, int max_gens) {
  AlgebraContext ctx{r, kDefaultPrime};
  std::uniform_int_distribution<int> ngen(1, max_gens), coin(0, 1);
  std::vector<int> gens{0};
  for (int j = 1; j < ngen(rng); ++j) gens.push_back(coin(rng));
  GradedModule f = free_sum(ctx, gens);
  const int lo = gens.back() + 1;
  std::uniform_int_distribution<int> nrel(1, 3), deg(lo, f.d_max());
  Subspaces rel;
  for (int k = nrel(rng); k > 0; --k) {
    int d = deg(rng);
    Matrix v = random_matrix(f.dim(d), 1, ctx.p, rng);
    rel[d] = rel.count(d) ? hstack(rel[d], v) : v;
  }
  GradedModule q = quotient(f, generated_submodule(f, rel)).module;
  q.trim();
  return basis_change(q, rng);
}

namespace {

std::vector<Sample> koszul_pool(int r) {
  AlgebraContext ctx{r, kDefaultPrime};
  GradedModule k = simple_module(ctx, 0);
  std::vector<Sample> pool{{k, "K"}, {direct_sum(k, k), "K^2"}};
  for (int s = 1; s <= 3; ++s)
    pool.push_back({normalize(syzygy(k, s)), "Omega^" + std::to_string(s) + "K[" + std::to_string(s) + "]"});
  for (int j = 1; j <= r; ++j)
    pool.push_back({normalize(radical_power(free_module(ctx, 0), j).module), "J^" + std::to_string(j) + "[" + std::to_string(j) + "]"});
  // Λ/(x_0..x_{s-1}): sheaves on linear subspaces, not locally free.
  GradedModule lam = free_module(ctx, 0);
  for (int s = 1; s <= r; ++s) {
    Matrix rel(lam.dim(1), s, ctx.p);
    for (int i = 0; i < s; ++i) rel(i, i) = 1;
    GradedModule q = quotient(lam, generated_submodule(lam, {{1, rel}})).module;
    const std::string name = "L/(x0..x" + std::to_string(s - 1) + ")";
    pool.push_back({q, name});
    pool.push_back({normalize(syzygy(q, 1)), "Omega^1" + name + "[1]"});
  }
  return pool;
}

}  // namespace

Sample random_koszul(Rng& rng, int r) {
  static std::map<int, std::vector<Sample>> pools;
  auto& pool = pools[r];
  if (pool.empty()) pool = koszul_pool(r);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> how(0, 3);
  Sample s = pool[pick(rng)];
  switch (how(rng)) {
    case 0:
      break;
    case 1: {
      const Sample& t = pool[pick(rng)];
      if (s.module.total_dim() + t.module.total_dim() <= 40) {
        s.module = direct_sum(s.module, t.module);
        s.name += "+" + t.name;
      }
      break;
    }
    default: {
      const Sample& t = pool[pick(rng)];
      if (s.module.total_dim() + t.module.total_dim() <= 40) {
        Extension e = random_extension(s.module, t.module, rng);
        s.module = e.y;
        s.name = "ext(" + s.name + "," + t.name + ")";
      }
      break;
    }
  }
  s.module = basis_change(s.module, rng);
  return s;
}

Extension random_extension(const GradedModule& z, const GradedModule& x, Rng& rng) {
  const u32 p = z.p();
  ResolutionStep cov = projective_cover(z);
  SubModule om = submodule(cov.cover, kernel_subspaces(cov.map));
  ModuleMap phi = zero_map(om.module, x);
  std::uniform_int_distribution<u32> coef(0, p - 1);
  for (const auto& h : hom_space(om.module, x, 0)) phi = add_maps(phi, scale_map(h, coef(rng)));

  DirectSum s = direct_sum(std::vector<GradedModule>{cov.cover, x});
  ModuleMap psi = add_maps(compose(s.injections[0], om.inclusion), scale_map(compose(s.injections[1], phi), p - 1));
  QuotientModule q = quotient(s.module, image_subspaces(psi));

  Extension e;
  e.x = x;
  e.z = z;
  e.y = q.module;
  e.f = compose(q.projection, s.injections[1]);
  ModuleMap down = compose(cov.map, s.projections[0]);
  e.g = zero_map(e.y, z);
  for (int d = e.y.d_min(); d <= e.y.d_max(); ++d)
    if (e.y.dim(d) && z.dim(d)) e.g.set_block(d, down.block(d) * right_inverse(q.projection.block(d)));
  e.split = is_split(e.g);
  return e;
}

oracle::PlainModule to_plain(const GradedModule& m) {
  oracle::PlainModule pm;
  pm.r = m.r();
  pm.p = m.p();
  pm.d_min = m.is_zero() ? 0 : m.d_min();
  pm.dims = m.dims();
  pm.act.assign(m.nvars(), {});
  for (int i = 0; i < m.nvars(); ++i)
    for (int d = pm.d_min; d <= m.d_max(); ++d) pm.act[i].push_back(m.action(i, d));
  return pm;
}

}  // namespace extalg::testing

#include "extalg/ar.hpp"

#include <map>
#include <memory>
#include <sstream>

#include "extalg/error.hpp"
#include "extalg/oracle.hpp"

namespace extalg {

GradedModule tau(const GradedModule& m) {
  require(!strip_projective(m).is_zero(), "tau of a projective module");
  return syzygy(dual(star(strip_projective(m))), 2);
}

GradedModule tau_inverse(const GradedModule& m) {
  require(!strip_projective(m).is_zero(), "inverse tau of a projective module");
  return strip_projective(star(dual(cosyzygy(strip_projective(m), 2))));
}

SigmaData sigma_data(const GradedModule& m) {
  SigmaData s;
  s.tau = tau(m);
  SubModule tr = truncate_sub(s.tau, 0);
  s.sigma = tr.module;
  const int r = m.r();
  s.equals_radical = same_subspaces(image_subspaces(tr.inclusion), radical_subspaces(s.tau, r - 1), s.tau);
  return s;
}

GradedModule sigma(const GradedModule& m) { return truncate(tau(m), 0); }

namespace {

// The degree-0 map out of a free module with the given generator images.
ModuleMap free_map(const FreeModule& F, const GradedModule& target, const std::vector<Matrix>& images) {
  auto pf = std::make_shared<const Presentation>(free_presentation(F));
  HomSpace h(pf, target, 0);
  Matrix stack(h.image_length(), 1, target.p());
  int o = 0;
  for (const auto& v : images) {
    if (v.rows()) stack.set_block(o, 0, v);
    o += v.rows();
  }
  return h.map_from_images(stack);
}

bool same_window_dims_add(const GradedModule& a, const GradedModule& b, const GradedModule& c) {
  int lo = std::min({a.is_zero() ? 0 : a.d_min(), b.is_zero() ? 0 : b.d_min(), c.is_zero() ? 0 : c.d_min()});
  int hi = std::max({a.is_zero() ? 0 : a.d_max(), b.is_zero() ? 0 : b.d_max(), c.is_zero() ? 0 : c.d_max()});
  for (int d = lo; d <= hi; ++d)
    if (b.dim(d) != a.dim(d) + c.dim(d)) return false;
  return true;
}

bool short_exact(const ModuleMap& f, const ModuleMap& g) {
  return is_linear(f) && is_linear(g) && is_injective(f) && is_surjective(g) && is_zero_map(compose(g, f)) &&
         same_window_dims_add(f.source, f.target, g.target);
}

// Whether h : X -> M factors as g∘u for some u : X -> source(g).
bool factors_through(const ModuleMap& h, const ModuleMap& g) {
  HomSpace hx(h.source, g.source, 0);
  HomSpace hm(h.source, h.target, 0);
  std::vector<Matrix> cols;
  for (int k = 0; k < hx.dim(); ++k) cols.push_back(hm.images_of(compose(g, hx.basis_map(k))));
  return solve(hstack(cols, hm.image_length(), h.target.p()), hm.images_of(h)).has_value();
}

ModuleMap induced(const ModuleMap& f, const QuotientModule& qa, const QuotientModule& qb) {
  ModuleMap out{qa.module, qb.module, 0, {}};
  if (qa.module.is_zero()) return out;
  for (int d = qa.module.d_min(); d <= qa.module.d_max(); ++d)
    out.blocks[d] = qb.projection.block(d) * f.block(d) * right_inverse(qa.projection.block(d));
  return out;
}

// f restricted to submodules: coordinates of f(incl_a) in incl_b.
ModuleMap restricted(const ModuleMap& f, const SubModule& a, const SubModule& b) {
  ModuleMap out{a.module, b.module, 0, {}};
  if (a.module.is_zero()) return out;
  for (int d = a.module.d_min(); d <= a.module.d_max(); ++d)
    out.blocks[d] = coords_in(b.inclusion.block(d), f.block(d) * a.inclusion.block(d));
  return out;
}

QuotientModule mod_radical_square(const GradedModule& m) { return quotient(m, radical_subspaces(m, 2)); }

struct Ses {
  ModuleMap f, g;
};

// One horseshoe step: 0 -> ΩA -> K -> ΩC -> 0 from the covers of A and C.
Ses horseshoe(const Ses& s) {
  const GradedModule& a = s.f.source;
  const GradedModule& b = s.f.target;
  const GradedModule& c = s.g.target;
  Resolution ra(a), rc(c);
  const FreeModule& fa = ra.term(0);
  const FreeModule& fc = rc.term(0);
  const Generators& ga = ra.generators(0);
  const Generators& gc = rc.generators(0);
  std::vector<int> gens = fa.gens();
  gens.insert(gens.end(), fc.gens().begin(), fc.gens().end());
  FreeModule fb(a.ctx(), gens);
  std::vector<Matrix> imgs;
  for (size_t j = 0; j < ga.degrees.size(); ++j) imgs.push_back(s.f.block(ga.degrees[j]) * ga.vectors[j]);
  for (size_t j = 0; j < gc.degrees.size(); ++j) {
    auto y = solve(s.g.block(gc.degrees[j]), gc.vectors[j]);
    check_internal(y.has_value(), "horseshoe: generator does not lift");
    imgs.push_back(*y);
  }
  ModuleMap pib = free_map(fb, b, imgs);
  SubModule kb = submodule(fb.to_module(), kernel_subspaces(pib));
  SubModule oa = submodule(fa.to_module(), ra.kernel(0));
  SubModule oc = submodule(fc.to_module(), rc.kernel(0));
  Ses out;
  out.f = ModuleMap{oa.module, kb.module, 0, {}};
  out.g = ModuleMap{kb.module, oc.module, 0, {}};
  if (!oa.module.is_zero())
    for (int d = oa.module.d_min(); d <= oa.module.d_max(); ++d) {
      Matrix v = oa.inclusion.block(d);
      Matrix up(fb.dim(d), v.cols(), a.p());
      if (v.rows()) up.set_block(0, 0, v);
      out.f.blocks[d] = coords_in(kb.inclusion.block(d), up);
    }
  if (!kb.module.is_zero())
    for (int d = kb.module.d_min(); d <= kb.module.d_max(); ++d) {
      Matrix w = kb.inclusion.block(d);
      out.g.blocks[d] = coords_in(oc.inclusion.block(d), w.block(fa.dim(d), 0, fc.dim(d), w.cols()));
    }
  return out;
}

ModuleMap nakayama(const ModuleMap& f) { return dual_map(star_map(f)); }

ModuleMap truncated(const ModuleMap& f, const SubModule& a, const SubModule& b) { return restricted(f, a, b); }

long long trace(const Matrix& a) {
  long long t = 0;
  for (int i = 0; i < a.rows(); ++i) t = (t + a(i, i)) % a.prime();
  return t;
}

}  // namespace

bool is_split(const ModuleMap& g) { return factors_through(identity_map(g.target), g); }

// ---------------------------------------------------------------- the sequence

ARSequence ar_sequence(const GradedModule& m, std::uint64_t seed, bool certify) {
  int g0 = 0;
  require(!m.is_zero() && generated_in_one_degree(m, &g0) && g0 == 0, "right term must be generated in degree 0");
  require(!has_projective_summand(m), "right term must be non-projective");
  Verdict ind = is_indecomposable(m, seed);
  require(ind.value, "right term must be indecomposable");
  const u32 p = m.p();

  ARSequence s;
  s.right = m;
  SigmaData sd = sigma_data(m);
  s.left = sd.sigma;
  s.sigma_radical = sd.equals_radical;
  s.certify = certify;
  int gl = 0;
  s.left_koszul = !s.left.is_zero() && generated_in_one_degree(s.left, &gl) && gl == 0 &&
                  (!certify || is_koszul(s.left).holds);
  s.left_loewy = loewy_length(s.left);

  // 0 -> Ωm -> P -> m -> 0.
  Resolution res(m);
  const FreeModule& F = res.term(0);
  GradedModule P = F.to_module();
  ModuleMap pi = res.differential_map(0);
  SubModule om = submodule(P, res.kernel(0));
  s.omega = om.module;

  // Ext^1(m, left)_0 = Hom(Ωm, left)_0 / restrictions of Hom(P, left)_0.
  // P is free, so restriction is evaluation of generator images at the generators of Ωm.
  HomSpace z(om.module, s.left, 0);
  HomSpace h0(std::make_shared<const Presentation>(free_presentation(F)), s.left, 0);
  const Generators& og = z.presentation().data.gens;
  Matrix restrict(0, h0.image_length(), p);
  for (size_t k = 0; k < og.degrees.size(); ++k) {
    Matrix w = om.inclusion.block(og.degrees[k]) * og.vectors[k];
    restrict = vstack(restrict, h0.evaluation_matrix(og.degrees[k], w));
  }
  Matrix b = z.dim() ? image_basis(coords_in(z.basis(), image_basis(restrict))) : Matrix(0, 0, p);
  std::vector<int> comp = complement_indices(b);
  s.ext_dim = static_cast<int>(comp.size());
  check_internal(s.ext_dim > 0, "Ext^1(M, sigma M)_0 vanishes");
  Matrix w = hstack(b, Matrix::identity(z.dim(), p).select_cols(comp));
  auto ext_coords = [&](const Matrix& zc) { return coords_in(w, zc).block(b.cols(), 0, s.ext_dim, 1); };

  // rad End(m)_0: the trace-zero part, End(m)_0 being local.
  HomSpace hm(m, m, 0);
  const long long dimm = m.total_dim();
  require(dimm % p != 0, "module dimension divisible by the characteristic");
  const u32 inv_dim = inv_mod(static_cast<u32>(dimm % p), p);
  Matrix id_c = hm.coords_of(identity_map(m));
  std::vector<Matrix> cols;
  for (int k = 0; k < hm.dim(); ++k) {
    Matrix ck(hm.dim(), 1, p);
    ck(k, 0) = 1;
    u32 t = mul_mod(static_cast<u32>(trace(total_matrix(hm.basis_map(k)))), inv_dim, p);
    cols.push_back(ck - scale(id_c, t));
  }
  Matrix rad = image_basis(hstack(cols, hm.dim(), p));

  // Lifts of rad elements to Ωm, and their action on Ext classes.
  HomSpace hp(std::make_shared<const Presentation>(free_presentation(F)), P, 0);
  const Generators& gens = res.generators(0);
  std::vector<ModuleMap> omega_rho;
  std::vector<ModuleMap> rad_maps;
  for (int c = 0; c < rad.cols(); ++c) {
    ModuleMap rho = hm.map_from_coords(rad.col(c));
    rad_maps.push_back(rho);
    std::vector<Matrix> imgs;
    for (size_t j = 0; j < gens.degrees.size(); ++j) {
      int d = gens.degrees[j];
      auto u = solve(pi.block(d), rho.block(d) * gens.vectors[j]);
      check_internal(u.has_value(), "endomorphism does not lift to the cover");
      imgs.push_back(*u);
    }
    ModuleMap lift = free_map(F, P, imgs);
    omega_rho.push_back(restricted(lift, om, om));
  }
  Matrix action(0, s.ext_dim, p);
  for (const auto& orho : omega_rho) {
    Matrix a(s.ext_dim, s.ext_dim, p);
    for (int c = 0; c < s.ext_dim; ++c) {
      Matrix e(z.dim(), 1, p);
      e(comp[c], 0) = 1;
      ModuleMap phi = z.map_from_coords(e);
      a.set_block(0, c, ext_coords(z.coords_of(compose(phi, orho))));
    }
    action = vstack(action, a);
  }
  Matrix killed = action.rows() ? kernel_basis(action) : Matrix::identity(s.ext_dim, p);
  s.annihilated_dim = killed.cols();
  check_internal(s.annihilated_dim > 0, "no Ext class is annihilated by the radical");
  Matrix cls(z.dim(), 1, p);
  for (int c = 0; c < s.ext_dim; ++c) cls(comp[c], 0) = killed(c, 0);
  s.ext_class = z.map_from_coords(cls);

  s.rad_annihilates = true;
  for (const auto& orho : omega_rho) {
    Matrix v = z.coords_of(compose(s.ext_class, orho));
    if (b.cols() ? !in_span(b, v) : !v.is_zero()) s.rad_annihilates = false;
  }

  // Pushout E = (left ⊕ P) / {(φw, -w)}.
  DirectSum ds = direct_sum(std::vector<GradedModule>{s.left, P});
  Subspaces u;
  if (!om.module.is_zero())
    for (int d = om.module.d_min(); d <= om.module.d_max(); ++d) {
      Matrix a = ds.injections[0].block(d) * s.ext_class.block(d);
      Matrix c = ds.injections[1].block(d) * om.inclusion.block(d);
      u[d] = image_basis(a - c);
    }
  QuotientModule q = quotient(ds.module, u);
  s.middle = q.module;
  s.f = compose(q.projection, ds.injections[0]);
  ModuleMap down = compose(pi, ds.projections[1]);
  s.g = ModuleMap{s.middle, m, 0, {}};
  if (!s.middle.is_zero())
    for (int d = s.middle.d_min(); d <= s.middle.d_max(); ++d)
      s.g.blocks[d] = down.block(d) * right_inverse(q.projection.block(d));

  s.exact = short_exact(s.f, s.g);
  s.nonsplit = !is_split(s.g);
  if (!certify) return s;

  // Lifting probes: radical endomorphisms and maps from Ω^tΛ₀[t].
  for (const auto& rho : rad_maps) {
    if (is_zero_map(rho)) continue;
    ++s.probes;
    s.probes_lifted += factors_through(rho, s.g);
  }
  std::mt19937_64 rng(seed);
  const GradedModule k0 = simple_module(m.ctx());
  for (int t = 0; t <= 2; ++t) {
    GradedModule x = twist(k0, t);
    if (is_isomorphic(x, m, seed).value) continue;
    HomSpace hx(x, m, 0);
    if (hx.dim() == 0) continue;
    ModuleMap h = hx.map_from_coords(random_matrix(hx.dim(), 1, p, rng));
    ++s.probes;
    s.probes_lifted += factors_through(h, s.g);
  }
  return s;
}

// ---------------------------------------------------------------- middle terms

MiddleDecomposition middle_summands(const ARSequence& s, std::uint64_t seed) {
  MiddleDecomposition out;
  Decomposition dec = decompose(s.middle, seed);
  out.confident = dec.confident;
  out.count = static_cast<int>(dec.summands.size());
  std::vector<int> group(dec.summands.size(), -1);
  for (size_t i = 0; i < dec.summands.size(); ++i) {
    ModuleMap fi = compose(dec.projections[i], s.f);
    ModuleMap gi = compose(s.g, dec.inclusions[i]);
    bool fm = is_injective(fi), fe = is_surjective(fi), gm = is_injective(gi), ge = is_surjective(gi);
    bool nz = !is_zero_map(compose(gi, fi));
    out.mono_or_epi = out.mono_or_epi && (fm || fe) && (gm || ge);
    int found = -1;
    for (size_t k = 0; k < out.summands.size() && found < 0; ++k)
      if (is_isomorphic(out.summands[k].module, dec.summands[i], seed).value) found = static_cast<int>(k);
    if (found >= 0) {
      auto& ms = out.summands[found];
      ++ms.multiplicity;
      ms.composition_nonzero = ms.composition_nonzero && nz;
      continue;
    }
    MiddleSummand ms;
    ms.module = dec.summands[i];
    ms.f = fi;
    ms.g = gi;
    ms.f_mono = fm;
    ms.f_epi = fe;
    ms.g_mono = gm;
    ms.g_epi = ge;
    ms.composition_nonzero = nz;
    out.summands.push_back(ms);
  }
  return out;
}

Loewy2Comparison loewy2_compare(const ARSequence& s, std::uint64_t seed) {
  Loewy2Comparison c;
  QuotientModule ql = mod_radical_square(s.left);
  QuotientModule qe = mod_radical_square(s.middle);
  QuotientModule qm = mod_radical_square(s.right);
  ModuleMap fb = induced(s.f, ql, qe);
  ModuleMap gb = induced(s.g, qe, qm);
  c.exact = short_exact(fb, gb);
  c.nonsplit = c.exact && !is_split(gb);

  Decomposition de = decompose(s.middle, seed);
  Decomposition dr = decompose(qe.module, seed);
  c.summands_middle = static_cast<int>(de.summands.size());
  c.summands_reduced = static_cast<int>(dr.summands.size());
  c.flags_preserved = true;
  for (size_t i = 0; i < de.summands.size(); ++i) {
    ModuleMap fi = compose(de.projections[i], s.f);
    ModuleMap gi = compose(s.g, de.inclusions[i]);
    QuotientModule qi = mod_radical_square(de.summands[i]);
    ModuleMap fbi = induced(fi, ql, qi);
    ModuleMap gbi = induced(gi, qi, qm);
    c.flags_preserved = c.flags_preserved && is_injective(fi) == is_injective(fbi) &&
                        is_surjective(fi) == is_surjective(fbi) && is_injective(gi) == is_injective(gbi) &&
                        is_surjective(gi) == is_surjective(gbi);
  }
  return c;
}

// ---------------------------------------------------------------- σ on sequences

SigmaExactness sigma_exact_check(const ModuleMap& f, const ModuleMap& g) {
  require(short_exact(f, g), "input is not a short exact sequence");
  require(!is_split(g), "input sequence splits");
  Ses s{nakayama(f), nakayama(g)};
  s = horseshoe(horseshoe(s));
  SubModule a = truncate_sub(s.f.source, 0), b = truncate_sub(s.f.target, 0), c = truncate_sub(s.g.target, 0);
  ModuleMap ft = truncated(s.f, a, b), gt = truncated(s.g, b, c);
  SigmaExactness out;
  out.exact = short_exact(ft, gt);
  out.left_matches = is_isomorphic(a.module, sigma(f.source)).value;
  out.middle_matches = is_isomorphic(b.module, sigma(f.target)).value;
  out.right_matches = is_isomorphic(c.module, sigma(g.target)).value;
  return out;
}

SigmaExactness sigma_exact_check(const ARSequence& s) { return sigma_exact_check(s.f, s.g); }

// ---------------------------------------------------------------- components

const char* to_string(ComponentShape s) {
  switch (s) {
    case ComponentShape::preinjective_of_loewy2:
      return "preinjective_of_loewy2";
    case ComponentShape::ZA_infinity_cone:
      return "ZA_infinity_cone";
    case ComponentShape::projective_component:
      return "projective_component";
  }
  return "ZA_infinity_cone";
}

bool ComponentReport::mesh_additive() const {
  for (const auto& m : meshes)
    if (!m.additive()) return false;
  return true;
}

std::string ComponentReport::dot() const {
  std::ostringstream os;
  os << "digraph component {\n";
  os << "  label=\"" << to_string(shape) << "\";\n";
  os << "  rankdir=RL;\n";
  for (size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    os << "  n" << i << " [label=\"" << n.label << "\\ndims ";
    for (size_t k = 0; k < n.module.dims().size(); ++k) os << (k ? "," : "") << n.module.dims()[k];
    os << " @" << n.module.d_min() << "\\nrank " << n.rank << "\"];\n";
  }
  for (const auto& a : arrows) {
    os << "  n" << a.from << " -> n" << a.to;
    if (a.multiplicity > 1) os << " [label=\"" << a.multiplicity << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

int kronecker_index(const GradedModule& m, int limit) {
  if (m.is_zero() || loewy_length(m) > 2 || m.d_min() != 0 || m.d_max() > 1) return -1;
  const long long lo = m.dim(0), hi = m.dim(1);
  for (int k = 0; k <= limit; ++k) {
    auto [a, b] = oracle::kronecker_dims(m.r(), k);
    if (a == lo && b == hi) return k;
    if (b > hi) break;
  }
  return -1;
}

}  // namespace

ComponentReport sigma_orbit(const GradedModule& m, int steps, std::uint64_t seed, int max_dim) {
  ComponentReport rep;
  auto add_node = [&](const GradedModule& x, const std::string& label) -> int {
    for (size_t i = 0; i < rep.nodes.size(); ++i)
      if (rep.nodes[i].module.dims() == x.dims() && rep.nodes[i].module.d_min() == x.d_min() &&
          is_isomorphic(rep.nodes[i].module, x, seed).value)
        return static_cast<int>(i);
    ComponentNode n;
    n.module = x;
    n.label = label;
    n.loewy = loewy_length(x);
    n.projective = has_projective_summand(x);
    n.rank = n.projective ? 0 : bgg_rank(x);
    if (!n.projective && x.total_dim() <= kHilbertCheckDim) {
      ++rep.hilbert_checked;
      rep.hilbert_agree = rep.hilbert_agree && sheaf_rank(x) == n.rank;
    }
    n.kronecker_index = kronecker_index(x, 4 * steps + 8);
    if (n.kronecker_index >= 0) n.label = "X" + std::to_string(n.kronecker_index);
    rep.nodes.push_back(n);
    return static_cast<int>(rep.nodes.size()) - 1;
  };

  if (has_projective_summand(m)) {
    rep.shape = ComponentShape::projective_component;
    add_node(m, "P");
    return rep;
  }
  int root = add_node(m, "M");
  const ComponentNode& rn = rep.nodes[root];
  if (rn.loewy <= 2 && rn.kronecker_index >= 0) {
    rep.shape = ComponentShape::preinjective_of_loewy2;
  } else {
    rep.shape = ComponentShape::ZA_infinity_cone;
    if (rn.loewy <= 2) rep.note = "Loewy length 2 but not preinjective; labelled regular";
  }

  std::vector<int> frontier{root};
  std::vector<char> done;
  for (int level = 0; level < steps && !frontier.empty(); ++level) {
    std::vector<int> next;
    for (int x : frontier) {
      done.resize(rep.nodes.size(), 0);
      if (done[x] || rep.nodes[x].projective) continue;
      done[x] = 1;
      if (rep.nodes[x].module.total_dim() > max_dim) {
        ++rep.leaves_capped;
        continue;
      }
      ARSequence s = ar_sequence(rep.nodes[x].module, seed, false);
      MiddleDecomposition md = middle_summands(s, seed);
      rep.confident = rep.confident && md.confident;
      const std::string base = rep.nodes[x].label;
      int left = add_node(s.left, "s(" + base + ")");
      MeshCheck mc;
      mc.right = x;
      mc.rank_left = rep.nodes[left].rank;
      mc.rank_right = rep.nodes[x].rank;
      mc.rank_middle = bgg_rank(s.middle);
      rep.meshes.push_back(mc);
      // Neighbouring meshes share arrows.
      auto add_arrow = [&rep](int from, int to, int mult) {
        for (const auto& a : rep.arrows)
          if (a.from == from && a.to == to) return;
        rep.arrows.push_back({from, to, mult});
      };
      int k = 0;
      for (const auto& ms : md.summands) {
        int mid = add_node(ms.module, "E" + std::to_string(k++) + "(" + base + ")");
        add_arrow(left, mid, ms.multiplicity);
        add_arrow(mid, x, ms.multiplicity);
        next.push_back(mid);
      }
      next.push_back(left);
    }
    frontier = next;
  }
  if (rep.leaves_capped) {
    if (!rep.note.empty()) rep.note += "; ";
    rep.note += std::to_string(rep.leaves_capped) + " node(s) above dimension " + std::to_string(max_dim) + " not expanded";
  }
  return rep;
}

// ---------------------------------------------------------------- ranks

RankTable rank_recursion(const GradedModule& m, int depth, std::uint64_t seed, int max_dim) {
  require(depth >= 1, "depth must be positive");
  const GradedModule s1 = simple_module(m.ctx(), 1);
  require(hom_dim(s1, m, 0) == 0, "module has socle in degree 1");
  RankTable t;
  t.depth = depth;
  auto rank_of = [&t](const GradedModule& x) {
    long long k = bgg_rank(x);
    if (x.total_dim() <= kHilbertCheckDim) {
      ++t.hilbert_checked;
      t.hilbert_agree = t.hilbert_agree && sheaf_rank(x) == k;
    }
    return k;
  };

  std::vector<GradedModule> orbit{m};
  for (int k = 1; k <= depth; ++k) orbit.push_back(sigma(orbit.back()));
  for (const auto& x : orbit) t.sigma_ranks.push_back(rank_of(x));

  // M_{i+1}: middle of the sequence ending at M_i, minus the summand σM_{i-1}.
  std::vector<GradedModule> ms{m};
  std::vector<GradedModule> lefts;
  for (int i = 0; i < depth; ++i) {
    if (ms[i].total_dim() > max_dim)
      fail(ErrorKind::inconclusive, "M_" + std::to_string(i) + " has dimension " + std::to_string(ms[i].total_dim()) +
                                        ", above the budget " + std::to_string(max_dim));
    ARSequence s = ar_sequence(ms[i], seed, false);
    lefts.push_back(s.left);
    MeshCheck mc;
    mc.right = i;
    mc.rank_left = rank_of(s.left);
    mc.rank_right = rank_of(s.right);
    mc.rank_middle = rank_of(s.middle);
    t.meshes.push_back(mc);
    Decomposition dec = decompose(s.middle, seed);
    t.middle_summands.push_back(static_cast<int>(dec.summands.size()));
    if (i == 0) {
      ms.push_back(s.middle);
      continue;
    }
    std::vector<GradedModule> rest;
    bool removed = false;
    for (const auto& x : dec.summands) {
      if (!removed && is_isomorphic(x, lefts[i - 1], seed).value) {
        removed = true;
        continue;
      }
      rest.push_back(x);
    }
    check_internal(removed && !rest.empty(), "middle term does not contain the expected summand");
    ms.push_back(rest.size() == 1 ? rest.front() : direct_sum(rest).module);
  }

  // Entries with i + j <= depth.
  t.direct.resize(depth + 1);
  t.recursion.resize(depth + 1);
  for (int i = 0; i <= depth; ++i) {
    GradedModule x = ms[i];
    for (int j = 0; i + j <= depth; ++j) {
      if (j > 0) x = i == 0 ? orbit[j] : sigma(x);
      t.direct[i].push_back(rank_of(x));
    }
  }
  t.recursion[0] = t.sigma_ranks;
  for (int i = 0; i < depth; ++i)
    for (int j = 0; i + 1 + j <= depth; ++j) t.recursion[i + 1].push_back(t.recursion[i][j] + t.sigma_ranks[i + j + 1]);

  t.agree = t.direct == t.recursion;
  t.strictly_increasing = true;
  t.base_case = true;
  for (int i = 0; i < depth; ++i)
    for (int j = 0; i + 1 + j <= depth; ++j) t.strictly_increasing = t.strictly_increasing && t.direct[i][j] < t.direct[i + 1][j];
  for (int j = 0; j + 1 <= depth; ++j) t.base_case = t.base_case && t.direct[1][j] == t.sigma_ranks[j + 1] + t.sigma_ranks[j];
  return t;
}

}  // namespace extalg

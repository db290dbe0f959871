#include "extalg_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>

#include "extalg/ar.hpp"
#include "extalg/error.hpp"
#include "extalg/oracle.hpp"
#include "extalg/sheaf.hpp"
#include "extalg_cli/module_file.hpp"

namespace extalg::cli {
namespace {

using json = nlohmann::ordered_json;

struct Globals {
  std::string format = "human";
  std::uint64_t seed = 0;
  bool structured() const { return format == "structured"; }
};

// Each command fills `result` and writes human text to `text`.
struct Output {
  json result = json::object();
  std::ostringstream text;
};

json summary(const GradedModule& m) {
  json j;
  j["p"] = m.p();
  j["r"] = m.r();
  j["d_min"] = m.is_zero() ? 0 : m.d_min();
  j["dims"] = m.dims();
  j["total_dim"] = m.total_dim();
  return j;
}

std::string dims_text(const GradedModule& m) {
  if (m.is_zero()) return "0";
  std::ostringstream os;
  os << "[";
  for (int d = m.d_min(); d <= m.d_max(); ++d) os << (d > m.d_min() ? " " : "") << d << ":" << m.dim(d);
  os << "]";
  return os.str();
}

std::pair<int, int> parse_window(const std::string& s) {
  auto pos = s.find("..");
  if (pos == std::string::npos) throw CLI::ValidationError("window", "expected a..b, got '" + s + "'");
  try {
    size_t used_a = 0, used_b = 0;
    std::string a = s.substr(0, pos), b = s.substr(pos + 2);
    int lo = std::stoi(a, &used_a), hi = std::stoi(b, &used_b);
    if (used_a != a.size() || used_b != b.size() || lo > hi) throw std::invalid_argument("window");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("window", "expected integers a..b with a <= b, got '" + s + "'");
  }
}

json verdict_json(const KoszulVerdict& v) {
  json j;
  j["holds"] = v.holds;
  j["checked_up_to"] = v.checked_up_to;
  j["witness"] = v.witness ? json::array({v.witness->first, v.witness->second}) : json(nullptr);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_input:
      return "invalid_input";
    case ErrorKind::precondition:
      return "precondition";
    case ErrorKind::inconclusive:
      return "inconclusive";
    case ErrorKind::internal:
      return "internal";
  }
  return "internal";
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_input:
      return kExitInvalidModule;
    case ErrorKind::precondition:
      return kExitPrecondition;
    case ErrorKind::inconclusive:
      return kExitInconclusive;
    case ErrorKind::internal:
      return kExitInternal;
  }
  return kExitInternal;
}

// Raised by commands whose answer is "bound exhausted" rather than an error.
struct Inconclusive {};

oracle::PlainModule plain(const GradedModule& m) {
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

// ----- commands -----

struct MakeOpts {
  std::string kind;
  int r = 1;
  int k = 0;
  int shift = 0;
  u32 p = kDefaultPrime;
  std::string from, out;
};

void cmd_make(const MakeOpts& o, Output& res) {
  GradedModule m;
  if (o.kind == "twist") {
    if (o.from.empty()) fail(ErrorKind::invalid_input, "make twist needs --from FILE");
    m = shift(twist(read_module_file(o.from), o.k), o.shift);
  } else {
    if (o.r < 0 || o.r > 12) fail(ErrorKind::invalid_input, "r must lie in 0..12");
    if (o.k < 0) fail(ErrorKind::invalid_input, "-k must be nonnegative");
    AlgebraContext ctx{o.r, o.p};
    if (!is_prime(o.p)) fail(ErrorKind::invalid_input, "p must be prime");
    if (o.kind == "simple")
      m = simple_module(ctx, 0);
    else if (o.kind == "free")
      m = free_module(ctx, 0);
    else if (o.kind == "syzygy-of-simple")
      m = syzygy(simple_module(ctx, 0), o.k);
    else
      m = radical_power(free_module(ctx, 0), o.k).module;
    m = shift(m, o.shift);
  }
  const std::string text = serialize_module(m);
  res.result["kind"] = o.kind;
  res.result["module"] = summary(m);
  if (!o.out.empty()) {
    write_module_file(o.out, m);
    res.result["file"] = o.out;
    res.text << "wrote " << o.out << " dims " << dims_text(m) << "\n";
  } else {
    res.result["text"] = text;
    res.text << text;
  }
}

void cmd_validate(const std::string& file, Output& res) {
  GradedModule m = read_module_file(file);
  res.result["valid"] = true;
  res.result["module"] = summary(m);
  res.text << file << ": valid, p=" << m.p() << " r=" << m.r() << " dims " << dims_text(m) << "\n";
}

void cmd_resolve(const std::string& file, int length, bool betti, Output& res) {
  if (length < 0) fail(ErrorKind::invalid_input, "--length must be nonnegative");
  GradedModule m = read_module_file(file);
  BettiTable t = min_resolution(m, length);
  json totals = json::array();
  for (int k = 0; k <= length; ++k) totals.push_back(t.total(k));
  res.result["length"] = length;
  res.result["totals"] = totals;
  json entries = json::array();
  for (const auto& [kd, v] : t.entries)
    if (v) entries.push_back(json::array({kd.first, kd.second, v}));
  res.result["betti"] = entries;
  if (betti) {
    res.text << t.grid();
  } else {
    res.text << "ranks:";
    for (int k = 0; k <= length; ++k) res.text << " " << t.total(k);
    res.text << "\n";
  }
}

void cmd_koszul(const std::string& file, int bound, const std::string& variant, Output& res) {
  if (bound < 0) fail(ErrorKind::invalid_input, "--bound must be nonnegative");
  GradedModule m = read_module_file(file);
  KoszulVerdict v;
  std::string name;
  if (variant == "plain") {
    v = is_koszul(m, bound);
    name = "Koszul";
  } else if (variant == "quasi") {
    v = is_quasi_koszul(m, bound);
    name = "quasi-Koszul";
  } else if (variant == "weakly") {
    v = is_weakly_koszul(m, bound);
    name = "weakly Koszul";
  } else {
    v = is_co_koszul(m, bound);
    name = "co-Koszul";
  }
  res.result["variant"] = variant;
  res.result["verdict"] = verdict_json(v);
  if (v.holds) {
    res.text << name << " up to " << v.checked_up_to << "\n";
  } else {
    res.text << "not " << name;
    if (v.witness) res.text << ", witness k=" << v.witness->first << " (d=" << v.witness->second << ")";
    res.text << "\n";
  }
}

void cmd_locally_free(const std::string& file, int bound, bool no_summandwise, bool cross, Output& res) {
  if (bound < 0) fail(ErrorKind::invalid_input, "--bound must be nonnegative");
  GradedModule m = read_module_file(file);
  LocallyFreeVerdict v = is_locally_free(m, bound, !no_summandwise, cross);
  res.result["status"] = to_string(v.status);
  res.result["t_max"] = bound;
  res.result["witness_t"] = v.witness_t;
  res.result["residue"] = v.residue;
  res.result["summands"] = v.summands;
  if (cross) {
    json c;
    c["co_koszul_t"] = v.co_koszul_t ? json(*v.co_koszul_t) : json(nullptr);
    c["ext_probe_s"] = v.ext_probe_s;
    c["ext_probe"] = v.ext_probe;
    c["agree"] = v.cross_checks_agree;
    res.result["cross_check"] = c;
  }
  if (!v.note.empty()) res.result["note"] = v.note;
  switch (v.status) {
    case LocalFreeness::locally_free:
      res.text << "locally free (t=" << v.witness_t << ")\n";
      break;
    case LocalFreeness::not_locally_free:
      res.text << "not locally free";
      if (!v.residue.empty()) {
        res.text << " (socle in degrees";
        for (int d : v.residue) res.text << " " << d;
        res.text << " at t=" << v.witness_t << ")";
      }
      res.text << "\n";
      break;
    case LocalFreeness::inconclusive:
      res.text << "inconclusive up to t=" << bound << "\n";
      break;
  }
  if (cross) res.text << "cross-checks " << (v.cross_checks_agree ? "agree" : "DISAGREE") << "\n";
  if (!v.note.empty()) res.text << "note: " << v.note << "\n";
  if (v.status == LocalFreeness::inconclusive) throw Inconclusive{};
}

void cmd_cohomology(const std::string& file, const std::string& window, Output& res) {
  auto [lo, hi] = parse_window(window);
  GradedModule m = read_module_file(file);
  CohomologyTable t = cohomology_table(m, lo, hi);
  res.result["twists"] = json::array({lo, hi});
  json rows = json::array();
  for (int q = 0; q <= t.r; ++q) rows.push_back(t.h[q]);
  res.result["h"] = rows;
  json prov = json::array();
  for (int q = 0; q <= t.r; ++q) {
    json row = json::array();
    for (auto pv : t.provenance[q]) row.push_back(pv == Provenance::stable_ext ? "stable_ext" : "euler");
    prov.push_back(row);
  }
  res.result["provenance"] = prov;
  res.result["hilbert"] = t.hilbert;
  res.result["euler_identity"] = t.euler_identity_holds();
  res.text << t.grid();
  res.text << "euler identity " << (t.euler_identity_holds() ? "holds" : "FAILS") << "\n";
}

void cmd_rank(const std::string& file, Output& res) {
  GradedModule m = read_module_file(file);
  long long rk = sheaf_rank(m);
  res.result["rank"] = rk;
  res.text << "rank " << rk << "\n";
}

void cmd_hilbert(const std::string& file, Output& res) {
  GradedModule m = read_module_file(file);
  HilbertPoly h = hilbert_poly(m);
  res.result["polynomial"] = h.to_string();
  res.result["start"] = h.start;
  res.result["newton"] = h.newton;
  res.result["rank"] = h.rank();
  res.text << "P(n) = " << h.to_string() << "  (valid for n >= " << h.start << ")\n";
  res.text << "rank " << h.rank() << "\n";
}

void cmd_ar_seq(const std::string& file, const std::string& prefix, std::uint64_t seed, Output& res) {
  GradedModule m = normalize(read_module_file(file));
  ARSequence s = ar_sequence(m, seed);
  MiddleDecomposition md = middle_summands(s, seed);
  json terms;
  terms["left"] = summary(s.left);
  terms["middle"] = summary(s.middle);
  terms["right"] = summary(s.right);
  res.result["terms"] = terms;
  json ranks;
  ranks["left"] = sheaf_rank(s.left);
  ranks["middle"] = sheaf_rank(s.middle);
  ranks["right"] = sheaf_rank(s.right);
  res.result["ranks"] = ranks;
  res.result["ext_dim"] = s.ext_dim;
  json checks;
  checks["exact"] = s.exact;
  checks["nonsplit"] = s.nonsplit;
  checks["rad_annihilates"] = s.rad_annihilates;
  checks["sigma_radical"] = s.sigma_radical;
  checks["left_koszul"] = s.left_koszul;
  checks["left_loewy"] = s.left_loewy;
  checks["probes"] = s.probes;
  checks["probes_lifted"] = s.probes_lifted;
  res.result["checks"] = checks;
  res.result["certified"] = s.certified();
  json sums = json::array();
  for (const auto& x : md.summands) {
    json e;
    e["dims"] = summary(x.module);
    e["multiplicity"] = x.multiplicity;
    sums.push_back(e);
  }
  res.result["middle_summands"] = sums;
  res.result["middle_count"] = md.count;
  res.result["decomposition_confident"] = md.confident;

  res.text << "0 -> " << dims_text(s.left) << " -> " << dims_text(s.middle) << " -> " << dims_text(s.right)
           << " -> 0\n";
  res.text << "ranks " << ranks["left"].get<long long>() << " -> " << ranks["middle"].get<long long>() << " -> "
           << ranks["right"].get<long long>() << "\n";
  res.text << "middle term: " << md.count << " indecomposable summand" << (md.count == 1 ? "" : "s")
           << (md.confident ? "" : " (not certified)") << "\n";
  res.text << "almost split: " << (s.certified() ? "certified" : "NOT certified") << "\n";
  if (!prefix.empty()) {
    write_module_file(prefix + ".left.mod", s.left);
    write_module_file(prefix + ".middle.mod", s.middle);
    write_module_file(prefix + ".right.mod", s.right);
    res.result["files"] = json::array({prefix + ".left.mod", prefix + ".middle.mod", prefix + ".right.mod"});
    res.text << "wrote " << prefix << ".{left,middle,right}.mod\n";
  }
}

void cmd_ar_orbit(const std::string& file, int steps, bool dot, std::uint64_t seed, Output& res) {
  if (steps < 0) fail(ErrorKind::invalid_input, "--steps must be nonnegative");
  GradedModule m = normalize(read_module_file(file));
  ComponentReport c = sigma_orbit(m, steps, seed);
  res.result["shape"] = to_string(c.shape);
  json nodes = json::array();
  for (const auto& n : c.nodes) {
    json e;
    e["label"] = n.label;
    e["dims"] = summary(n.module);
    e["rank"] = n.rank;
    e["loewy"] = n.loewy;
    e["kronecker_index"] = n.kronecker_index;
    e["projective"] = n.projective;
    nodes.push_back(e);
  }
  res.result["nodes"] = nodes;
  json arrows = json::array();
  for (const auto& a : c.arrows) arrows.push_back(json::array({a.from, a.to, a.multiplicity}));
  res.result["arrows"] = arrows;
  json meshes = json::array();
  for (const auto& mc : c.meshes) {
    json e;
    e["right"] = mc.right;
    e["ranks"] = json::array({mc.rank_left, mc.rank_middle, mc.rank_right});
    e["additive"] = mc.additive();
    meshes.push_back(e);
  }
  res.result["meshes"] = meshes;
  res.result["mesh_additive"] = c.mesh_additive();
  res.result["confident"] = c.confident;
  res.result["leaves_capped"] = c.leaves_capped;
  res.result["hilbert_checked"] = c.hilbert_checked;
  res.result["hilbert_agree"] = c.hilbert_agree;
  if (!c.note.empty()) res.result["note"] = c.note;
  res.result["dot"] = c.dot();

  if (dot) {
    res.text << c.dot();
    return;
  }
  res.text << "component: " << to_string(c.shape) << (c.confident ? "" : " (not certified)") << "\n";
  for (const auto& n : c.nodes)
    res.text << "  " << n.label << " dims " << dims_text(n.module) << " rank " << n.rank
             << (n.projective ? " projective" : "") << "\n";
  for (const auto& a : c.arrows)
    res.text << "  " << c.nodes[a.from].label << " -> " << c.nodes[a.to].label
             << (a.multiplicity > 1 ? " x" + std::to_string(a.multiplicity) : "") << "\n";
  res.text << "meshes " << (c.mesh_additive() ? "additive" : "NOT additive") << " (" << c.meshes.size()
           << " checked)\n";
  if (!c.note.empty()) res.text << "note: " << c.note << "\n";
}

void cmd_rank_table(const std::string& file, int depth, std::uint64_t seed, Output& res) {
  if (depth < 0) fail(ErrorKind::invalid_input, "--depth must be nonnegative");
  GradedModule m = normalize(read_module_file(file));
  RankTable t = rank_recursion(m, depth, seed);
  res.result["depth"] = t.depth;
  res.result["sigma_ranks"] = t.sigma_ranks;
  res.result["direct"] = t.direct;
  res.result["recursion"] = t.recursion;
  res.result["middle_summands"] = t.middle_summands;
  res.result["agree"] = t.agree;
  res.result["strictly_increasing"] = t.strictly_increasing;
  res.result["base_case"] = t.base_case;
  res.result["hilbert_checked"] = t.hilbert_checked;
  res.result["hilbert_agree"] = t.hilbert_agree;
  res.text << "rk sigma^k M:";
  for (long long v : t.sigma_ranks) res.text << " " << v;
  res.text << "\n";
  for (size_t i = 0; i < t.direct.size(); ++i) {
    res.text << "  M_" << i << ":";
    for (long long v : t.direct[i]) res.text << " " << v;
    res.text << "\n";
  }
  res.text << "recursion " << (t.agree ? "agrees" : "DISAGREES") << ", base case "
           << (t.base_case ? "holds" : "FAILS") << ", ranks " << (t.strictly_increasing ? "" : "not ")
           << "strictly increasing\n";
}

void cmd_serre(const std::string& file, const std::string& window, Output& res) {
  auto [lo, hi] = parse_window(window);
  GradedModule m = read_module_file(file);
  json checks = json::array();
  int bad = 0;
  for (int q = 0; q <= m.r(); ++q)
    for (int n = lo; n <= hi; ++n) {
      SerreCheck c = serre_duality_check(m, q, n);
      if (!c.holds()) {
        ++bad;
        res.text << "h^" << q << "(" << n << ") = " << c.lhs << " but dual side gives " << c.rhs << "\n";
      }
      checks.push_back(json::array({q, n, c.lhs, c.rhs}));
    }
  res.result["twists"] = json::array({lo, hi});
  res.result["checks"] = checks;
  res.result["holds"] = bad == 0;
  res.text << "Serre duality " << (bad == 0 ? "holds" : "FAILS") << " on " << checks.size() << " entries\n";
}

void cmd_oracle(const std::string& what, int r, int n, int q, int k, const std::vector<std::string>& files,
                Output& res) {
  if (what == "cech") {
    long long v = oracle::cech_O(r, n, q);
    res.result["value"] = v;
    res.text << "h^" << q << "(O(" << n << ")) on P^" << r << " = " << v << "\n";
  } else if (what == "kronecker") {
    auto [a, b] = oracle::kronecker_dims(r, k);
    res.result["dims"] = json::array({a, b});
    res.text << "(" << a << ", " << b << ")\n";
  } else {
    if (files.size() != 2) fail(ErrorKind::invalid_input, "oracle ext needs two module files");
    GradedModule a = read_module_file(files[0]), b = read_module_file(files[1]);
    if (a.ctx() != b.ctx()) fail(ErrorKind::invalid_input, "modules live over different algebras");
    auto [x, y] = oracle::ext_two_ways(plain(a), plain(b), k);
    res.result["projective"] = x;
    res.result["injective"] = y;
    res.text << "Ext^" << k << " = " << x << " (projective), " << y << " (injective)\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations over the exterior algebra", "extalg"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"human", "structured"}));
  app.add_option("--seed", g.seed, "Seed for randomized steps");

  std::string file, out_path, window, variant = "plain";
  int length = 8, bound = 8, steps = 4, depth = 4;
  bool betti = false, no_summandwise = false, cross = false, dot = false;
  MakeOpts mk;
  std::string oracle_what;
  int orr = 1, on = 0, oq = 0, ok = 1;
  std::vector<std::string> ofiles;

  std::function<void(Output&)> action;
  std::string command;

  auto file_arg = [&](CLI::App* s) { s->add_option("file", file, "Module file")->required(); };

  auto* s_validate = app.add_subcommand("validate", "Check a module file");
  file_arg(s_validate);
  s_validate->callback([&] { action = [&](Output& o) { cmd_validate(file, o); }; });

  auto* s_make = app.add_subcommand("make", "Write a standard module");
  s_make->add_option("kind", mk.kind, "simple|free|syzygy-of-simple|radical|twist")
      ->required()
      ->check(CLI::IsMember({"simple", "free", "syzygy-of-simple", "radical", "twist"}));
  s_make->add_option("-r", mk.r, "Number of variables minus one");
  s_make->add_option("-k", mk.k, "Syzygy index, radical power or twist");
  s_make->add_option("--shift", mk.shift, "Apply M[s] at the end");
  s_make->add_option("-p", mk.p, "Prime field");
  s_make->add_option("--from", mk.from, "Input module for twist");
  s_make->add_option("--out", mk.out, "Write to this file instead of standard output");
  s_make->callback([&] { action = [&](Output& o) { cmd_make(mk, o); }; });

  auto* s_resolve = app.add_subcommand("resolve", "Minimal projective resolution");
  file_arg(s_resolve);
  s_resolve->add_option("--length", length, "Number of steps");
  s_resolve->add_flag("--betti", betti, "Print the graded Betti table");
  s_resolve->callback([&] { action = [&](Output& o) { cmd_resolve(file, length, betti, o); }; });

  auto* s_koszul = app.add_subcommand("koszul", "Koszul verdict up to a bound");
  file_arg(s_koszul);
  s_koszul->add_option("--bound", bound, "Resolution steps checked");
  s_koszul->add_option("--variant", variant, "plain|quasi|weakly|co")
      ->check(CLI::IsMember({"plain", "quasi", "weakly", "co"}));
  s_koszul->callback([&] { action = [&](Output& o) { cmd_koszul(file, bound, variant, o); }; });

  auto* s_lf = app.add_subcommand("locally-free", "Decide whether the sheaf is a vector bundle");
  file_arg(s_lf);
  s_lf->add_option("--bound", bound, "Largest t tried")->default_val(kDefaultTMax);
  s_lf->add_flag("--no-summandwise", no_summandwise, "Reject decomposable input instead of splitting it");
  s_lf->add_flag("--cross-check", cross, "Also run the co-Koszul and Ext probes");
  s_lf->callback([&] { action = [&](Output& o) { cmd_locally_free(file, bound, no_summandwise, cross, o); }; });

  auto* s_coh = app.add_subcommand("cohomology", "Table of h^q(n)");
  file_arg(s_coh);
  s_coh->add_option("--twists", window, "Window a..b")->default_val("-6..6");
  s_coh->callback([&] { action = [&](Output& o) { cmd_cohomology(file, window, o); }; });

  auto* s_rank = app.add_subcommand("rank", "Rank of the sheaf");
  file_arg(s_rank);
  s_rank->callback([&] { action = [&](Output& o) { cmd_rank(file, o); }; });

  auto* s_hilb = app.add_subcommand("hilbert", "Hilbert polynomial of the sheaf");
  file_arg(s_hilb);
  s_hilb->callback([&] { action = [&](Output& o) { cmd_hilbert(file, o); }; });

  auto* s_ar = app.add_subcommand("ar-seq", "Almost split sequence ending at the module");
  file_arg(s_ar);
  s_ar->add_option("--out", out_path, "Write PREFIX.left.mod, PREFIX.middle.mod, PREFIX.right.mod");
  s_ar->callback([&] { action = [&](Output& o) { cmd_ar_seq(file, out_path, g.seed, o); }; });

  auto* s_orbit = app.add_subcommand("ar-orbit", "Component of the module under almost split sequences");
  file_arg(s_orbit);
  s_orbit->add_option("--steps", steps, "Levels explored");
  s_orbit->add_flag("--dot", dot, "Print the component as a Graphviz digraph");
  s_orbit->callback([&] { action = [&](Output& o) { cmd_ar_orbit(file, steps, dot, g.seed, o); }; });

  auto* s_rt = app.add_subcommand("rank-table", "Ranks of sigma^j M_i, direct and by recursion");
  file_arg(s_rt);
  s_rt->add_option("--depth", depth, "Table covers i + j <= depth");
  s_rt->callback([&] { action = [&](Output& o) { cmd_rank_table(file, depth, g.seed, o); }; });

  auto* s_serre = app.add_subcommand("serre-check", "Compare h^q(n) with h^{r-q}(-n-r-1) of the dual");
  file_arg(s_serre);
  s_serre->add_option("--twists", window, "Window a..b")->default_val("-5..5");
  s_serre->callback([&] { action = [&](Output& o) { cmd_serre(file, window, o); }; });

  auto* s_oracle = app.add_subcommand("oracle", "Reference computations");
  s_oracle->group("");
  s_oracle->add_option("what", oracle_what, "cech|kronecker|ext")
      ->required()
      ->check(CLI::IsMember({"cech", "kronecker", "ext"}));
  s_oracle->add_option("files", ofiles, "Module files for ext");
  s_oracle->add_option("-r", orr);
  s_oracle->add_option("-n", on);
  s_oracle->add_option("-q", oq);
  s_oracle->add_option("-k", ok);
  s_oracle->callback([&] { action = [&](Output& o) { cmd_oracle(oracle_what, orr, on, oq, ok, ofiles, o); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  command = app.get_subcommands().front()->get_name();

  Output res;
  int code = kExitOk;
  json doc;
  doc["command"] = command;
  try {
    action(res);
  } catch (const Inconclusive&) {
    code = kExitInconclusive;
  } catch (const Error& e) {
    code = exit_code(e.kind());
    if (g.structured()) {
      doc["error"] = {{"kind", kind_name(e.kind())}, {"message", e.what()}};
      out << doc.dump(2) << "\n";
    }
    err << "extalg " << command << ": " << e.what() << "\n";
    return code;
  } catch (const CLI::ValidationError& e) {
    err << "extalg " << command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::bad_alloc&) {
    err << "extalg " << command << ": out of memory\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    err << "extalg " << command << ": internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  if (g.structured()) {
    doc["result"] = res.result;
    out << doc.dump(2) << "\n";
  } else {
    out << res.text.str();
  }
  return code;
}

}  // namespace extalg::cli

#include "extalg_cli/module_file.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "extalg/error.hpp"
#include "extalg/gmod.hpp"

namespace extalg::cli {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> words;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line l{n, {}};
    for (std::string w; ls >> w;) l.words.push_back(w);
    if (!l.words.empty()) out.push_back(std::move(l));
  }
  return out;
}

[[noreturn]] void bad(const std::string& source, int line, const std::string& what) {
  fail(ErrorKind::invalid_input, source + ":" + std::to_string(line) + ": " + what);
}

long long to_int(const std::string& source, int line, const std::string& w) {
  try {
    size_t pos = 0;
    long long v = std::stoll(w, &pos);
    if (pos != w.size()) bad(source, line, "not an integer: '" + w + "'");
    return v;
  } catch (const std::logic_error&) {
    bad(source, line, "not an integer: '" + w + "'");
  }
}

}  // namespace

GradedModule parse_module(const std::string& text, const std::string& source) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty() || lines[0].words != std::vector<std::string>{"module"})
    bad(source, lines.empty() ? 1 : lines[0].number, "expected 'module' header");
  long long p = -1, r = -1;
  std::map<int, int> dims;
  struct Record {
    int line, i, d;
    std::vector<std::vector<long long>> rows;
  };
  std::vector<Record> actions;

  int p_line = lines[0].number, r_line = lines[0].number;
  size_t k = 1;
  while (k < lines.size()) {
    const Line& l = lines[k];
    const std::string& key = l.words[0];
    if (key == "p" || key == "r") {
      if (l.words.size() != 2) bad(source, l.number, "expected '" + key + " <value>'");
      long long v = to_int(source, l.number, l.words[1]);
      long long& slot = key == "p" ? p : r;
      if (slot != -1) bad(source, l.number, "duplicate '" + key + "'");
      slot = v;
      (key == "p" ? p_line : r_line) = l.number;
      ++k;
    } else if (key == "degree") {
      if (l.words.size() != 3) bad(source, l.number, "expected 'degree <d> <dim>'");
      int d = static_cast<int>(to_int(source, l.number, l.words[1]));
      long long n = to_int(source, l.number, l.words[2]);
      if (n < 0) bad(source, l.number, "negative dimension");
      if (dims.count(d)) bad(source, l.number, "duplicate degree " + std::to_string(d));
      dims[d] = static_cast<int>(n);
      ++k;
    } else if (key == "action") {
      if (l.words.size() != 3) bad(source, l.number, "expected 'action <i> <d>'");
      Record rec{l.number, static_cast<int>(to_int(source, l.number, l.words[1])),
                 static_cast<int>(to_int(source, l.number, l.words[2])), {}};
      int rows = dims.count(rec.d + 1) ? dims[rec.d + 1] : 0;
      int cols = dims.count(rec.d) ? dims[rec.d] : 0;
      if (rows == 0 || cols == 0)
        bad(source, l.number, "action out of degree " + std::to_string(rec.d) + " needs nonzero degrees declared first");
      ++k;
      for (int row = 0; row < rows; ++row, ++k) {
        if (k >= lines.size()) bad(source, l.number, "action matrix is missing rows");
        const Line& rl = lines[k];
        if (static_cast<int>(rl.words.size()) != cols)
          bad(source, rl.number, "expected " + std::to_string(cols) + " entries, found " + std::to_string(rl.words.size()));
        std::vector<long long> vals;
        for (const auto& w : rl.words) vals.push_back(to_int(source, rl.number, w));
        rec.rows.push_back(std::move(vals));
      }
      actions.push_back(std::move(rec));
    } else {
      bad(source, l.number, "unknown record '" + key + "'");
    }
  }
  if (p == -1) bad(source, lines[0].number, "missing 'p'");
  if (r == -1) bad(source, lines[0].number, "missing 'r'");
  if (p < 2 || p > 2147483647 || !is_prime(static_cast<u32>(p))) bad(source, p_line, "p must be a prime");
  if (r < 0 || r > 12) bad(source, r_line, "r must lie in 0..12");

  AlgebraContext ctx{static_cast<int>(r), static_cast<u32>(p)};
  if (dims.empty()) return GradedModule(ctx);
  const int lo = dims.begin()->first, hi = dims.rbegin()->first;
  std::vector<int> dv;
  for (int d = lo; d <= hi; ++d) dv.push_back(dims.count(d) ? dims[d] : 0);
  GradedModule m(ctx, lo, dv);
  std::map<std::pair<int, int>, int> seen;
  for (const auto& rec : actions) {
    if (rec.i < 0 || rec.i > r) bad(source, rec.line, "variable index out of range");
    if (seen.count({rec.i, rec.d})) bad(source, rec.line, "duplicate action record");
    seen[{rec.i, rec.d}] = rec.line;
    m.set_action(rec.i, rec.d, Matrix::from_rows(rec.rows, ctx.p));
  }
  ValidationReport rep = validate(m);
  if (!rep.ok) {
    std::ostringstream os;
    if (!rep.shape_errors.empty()) {
      os << rep.shape_errors.front();
    } else {
      const Violation& v = rep.violations.front();
      if (v.i == v.j)
        os << "x_" << v.i << "^2 is nonzero on degree " << v.d;
      else
        os << "x_" << v.i << " x_" << v.j << " + x_" << v.j << " x_" << v.i << " is nonzero on degree " << v.d;
    }
    fail(ErrorKind::invalid_input, source + ": not an exterior-algebra module: " + os.str());
  }
  return m;
}

GradedModule read_module_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::invalid_input, path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_module(ss.str(), path);
}

std::string serialize_module(const GradedModule& m) {
  std::ostringstream os;
  os << "module\np " << m.p() << "\nr " << m.r() << "\n";
  if (m.is_zero()) return os.str();
  for (int d = m.d_min(); d <= m.d_max(); ++d) os << "degree " << d << " " << m.dim(d) << "\n";
  for (int d = m.d_min(); d < m.d_max(); ++d) {
    if (m.dim(d) == 0 || m.dim(d + 1) == 0) continue;
    for (int i = 0; i < m.nvars(); ++i) {
      const Matrix& a = m.action_ref(i, d);
      if (a.is_zero()) continue;
      os << "action " << i << " " << d << "\n";
      for (int row = 0; row < a.rows(); ++row) {
        for (int col = 0; col < a.cols(); ++col) os << (col ? " " : "") << a(row, col);
        os << "\n";
      }
    }
  }
  return os.str();
}

void write_module_file(const std::string& path, const GradedModule& m) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::invalid_input, path + ": cannot write");
  out << serialize_module(m);
}

}  // namespace extalg::cli

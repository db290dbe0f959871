#include "extalg/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "extalg/error.hpp"

namespace extalg {

bool is_prime(u32 p) {
  if (p < 2) return false;
  for (u64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

u32 inv_mod(u32 a, u32 p) {
  check_internal(a % p != 0, "inverse of zero");
  long long t = 0, nt = 1, r = p, nr = a % p;
  while (nr) {
    long long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (t < 0) t += p;
  return static_cast<u32>(t);
}

u32 reduce(long long v, u32 p) {
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += p;
  return static_cast<u32>(m);
}

long long lift(u32 a, u32 p) { return a > p / 2 ? static_cast<long long>(a) - p : a; }

Matrix::Matrix(int rows, int cols, u32 p) : rows_(rows), cols_(cols), p_(p), a_(size_t(rows) * cols, 0) {
  check_internal(rows >= 0 && cols >= 0, "negative matrix shape");
}

Matrix Matrix::identity(int n, u32 p) {
  Matrix m(n, n, p);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows, u32 p) {
  int nr = static_cast<int>(rows.size());
  int nc = nr ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(nr, nc, p);
  for (int i = 0; i < nr; ++i) {
    check_internal(static_cast<int>(rows[i].size()) == nc, "ragged matrix rows");
    for (int j = 0; j < nc; ++j) m(i, j) = reduce(rows[i][j], p);
  }
  return m;
}

bool Matrix::is_zero() const {
  for (u32 v : a_)
    if (v) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::col(int j) const { return select_cols({j}); }

Matrix Matrix::select_cols(const std::vector<int>& idx) const {
  Matrix m(rows_, static_cast<int>(idx.size()), p_);
  for (int i = 0; i < rows_; ++i)
    for (size_t k = 0; k < idx.size(); ++k) m(i, int(k)) = (*this)(i, idx[k]);
  return m;
}

Matrix Matrix::select_rows(const std::vector<int>& idx) const {
  Matrix m(static_cast<int>(idx.size()), cols_, p_);
  for (size_t k = 0; k < idx.size(); ++k)
    for (int j = 0; j < cols_; ++j) m(int(k), j) = (*this)(idx[k], j);
  return m;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
  Matrix m(nr, nc, p_);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void Matrix::set_block(int r0, int c0, const Matrix& b) {
  for (int i = 0; i < b.rows(); ++i) std::copy(b.row(i), b.row(i) + b.cols(), row(r0 + i) + c0);
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

static void same_field(const Matrix& a, const Matrix& b) {
  check_internal(a.prime() == b.prime(), "matrices over different fields");
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  same_field(a, b);
  check_internal(a.cols() == b.rows(), "shape mismatch in product");
  const u32 p = a.prime();
  Matrix c(a.rows(), b.cols(), p);
  if (a.empty() || b.empty()) return c;
  // Accumulate without reduction while the sum provably fits in 64 bits.
  const u64 sq = u64(p - 1) * (p - 1);
  const u64 budget = sq ? ~u64(0) / sq - 1 : ~u64(0);
  std::vector<u64> acc(b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    u64 used = 0;
    const u32* ar = a.row(i);
    for (int k = 0; k < a.cols(); ++k) {
      u64 f = ar[k];
      if (!f) continue;
      const u32* br = b.row(k);
      for (int j = 0; j < b.cols(); ++j) acc[j] += f * br[j];
      if (++used >= budget) {
        for (auto& v : acc) v %= p;
        used = 1;
      }
    }
    u32* cr = c.row(i);
    for (int j = 0; j < b.cols(); ++j) cr[j] = static_cast<u32>(acc[j] % p);
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  same_field(a, b);
  check_internal(a.rows() == b.rows() && a.cols() == b.cols(), "shape mismatch in sum");
  Matrix c(a.rows(), a.cols(), a.prime());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = add_mod(a(i, j), b(i, j), a.prime());
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  same_field(a, b);
  check_internal(a.rows() == b.rows() && a.cols() == b.cols(), "shape mismatch in difference");
  Matrix c(a.rows(), a.cols(), a.prime());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = sub_mod(a(i, j), b(i, j), a.prime());
  return c;
}

Matrix scale(const Matrix& a, u32 c) {
  Matrix m(a.rows(), a.cols(), a.prime());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = mul_mod(a(i, j), c, a.prime());
  return m;
}

Matrix compose(const Matrix& g, const Matrix& f) { return g * f; }

Matrix hstack(const Matrix& a, const Matrix& b) {
  same_field(a, b);
  check_internal(a.rows() == b.rows(), "row mismatch in hstack");
  Matrix m(a.rows(), a.cols() + b.cols(), a.prime());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix hstack(const std::vector<Matrix>& parts, int rows, u32 p) {
  int cols = 0;
  for (const auto& b : parts) {
    check_internal(b.rows() == rows, "row mismatch in hstack");
    cols += b.cols();
  }
  Matrix m(rows, cols, p);
  int c = 0;
  for (const auto& b : parts) {
    m.set_block(0, c, b);
    c += b.cols();
  }
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  same_field(a, b);
  check_internal(a.cols() == b.cols(), "column mismatch in vstack");
  Matrix m(a.rows() + b.rows(), a.cols(), a.prime());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Matrix direct_sum_matrix(const Matrix& a, const Matrix& b) {
  same_field(a, b);
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols(), a.prime());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

Rref rref(const Matrix& m) {
  Rref out{m, {}};
  Matrix& a = out.form;
  const u32 p = a.prime();
  const int nr = a.rows(), nc = a.cols();
  int row = 0;
  std::vector<int> nz;  // nonzero columns of the pivot row
  for (int c = 0; c < nc && row < nr; ++c) {
    int piv = -1;
    for (int i = row; i < nr; ++i)
      if (a(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = c; j < nc; ++j) std::swap(a(piv, j), a(row, j));
    u32* pr = a.row(row);
    u32 inv = inv_mod(pr[c], p);
    nz.clear();
    for (int j = c; j < nc; ++j)
      if (pr[j]) {
        pr[j] = mul_mod(pr[j], inv, p);
        nz.push_back(j);
      }
    for (int i = 0; i < nr; ++i) {
      if (i == row) continue;
      u32* ri = a.row(i);
      u32 f = ri[c];
      if (!f) continue;
      u64 nf = p - f;
      for (int j : nz) ri[j] = static_cast<u32>((ri[j] + nf * pr[j]) % p);
    }
    out.pivots.push_back(c);
    ++row;
  }
  return out;
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

Matrix kernel_basis(const Matrix& m) {
  Rref r = rref(m);
  const u32 p = m.prime();
  std::vector<char> is_piv(m.cols(), 0);
  for (int c : r.pivots) is_piv[c] = 1;
  std::vector<int> free;
  for (int c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free.push_back(c);
  Matrix k(m.cols(), static_cast<int>(free.size()), p);
  for (size_t f = 0; f < free.size(); ++f) {
    k(free[f], int(f)) = 1;
    for (size_t i = 0; i < r.pivots.size(); ++i) k(r.pivots[i], int(f)) = neg_mod(r.form(int(i), free[f]), p);
  }
  return k;
}

Matrix image_basis(const Matrix& m) { return m.select_cols(rref(m).pivots); }

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  same_field(m, b);
  check_internal(m.rows() == b.rows(), "row mismatch in solve");
  Rref r = rref(hstack(m, b));
  Matrix x(m.cols(), b.cols(), m.prime());
  for (size_t i = 0; i < r.pivots.size(); ++i) {
    int c = r.pivots[i];
    if (c >= m.cols()) return std::nullopt;
    for (int j = 0; j < b.cols(); ++j) x(c, j) = r.form(int(i), m.cols() + j);
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  check_internal(m.rows() == m.cols(), "inverse of non-square matrix");
  auto x = solve(m, Matrix::identity(m.rows(), m.prime()));
  check_internal(x.has_value() && rank(m) == m.rows(), "inverse of singular matrix");
  return *x;
}

Matrix right_inverse(const Matrix& m) {
  auto x = solve(m, Matrix::identity(m.rows(), m.prime()));
  check_internal(x.has_value(), "right inverse of non-surjective matrix");
  return *x;
}

Matrix coords_in(const Matrix& basis, const Matrix& v) {
  auto x = solve(basis, v);
  check_internal(x.has_value(), "vector outside the given span");
  return *x;
}

Matrix intersect(const Matrix& a, const Matrix& b) {
  same_field(a, b);
  if (a.cols() == 0 || b.cols() == 0) return Matrix(a.rows(), 0, a.prime());
  Matrix k = kernel_basis(hstack(a, b));
  return image_basis(a * k.block(0, 0, a.cols(), k.cols()));
}

std::vector<int> complement_indices(const Matrix& sub) {
  Matrix aug = hstack(sub, Matrix::identity(sub.rows(), sub.prime()));
  std::vector<int> out;
  for (int c : rref(aug).pivots)
    if (c >= sub.cols()) out.push_back(c - sub.cols());
  return out;
}

Matrix annihilator(const Matrix& sub) { return kernel_basis(sub.transpose()).transpose(); }

bool in_span(const Matrix& basis, const Matrix& v) { return solve(basis, v).has_value(); }

Matrix random_matrix(int rows, int cols, u32 p, std::mt19937_64& rng) {
  std::uniform_int_distribution<u32> dist(0, p - 1);
  Matrix m(rows, cols, p);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

Matrix random_invertible(int n, u32 p, std::mt19937_64& rng) {
  for (;;) {
    Matrix m = random_matrix(n, n, p, rng);
    if (rank(m) == n) return m;
  }
}

}  // namespace extalg

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace extalg {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline constexpr u32 kDefaultPrime = 32003;

bool is_prime(u32 p);

inline u32 add_mod(u32 a, u32 b, u32 p) {
  u32 s = a + b;
  return s >= p ? s - p : s;
}
inline u32 sub_mod(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }
inline u32 neg_mod(u32 a, u32 p) { return a ? p - a : 0; }
inline u32 mul_mod(u32 a, u32 b, u32 p) { return static_cast<u32>(u64(a) * b % p); }
u32 inv_mod(u32 a, u32 p);
u32 reduce(long long v, u32 p);
// Symmetric representative in (-p/2, p/2].
long long lift(u32 a, u32 p);

// Dense row-major matrix over F_p. Columns are the usual vector convention:
// a map K^n -> K^m is an m x n matrix acting on column vectors.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, u32 p);

  static Matrix identity(int n, u32 p);
  static Matrix from_rows(const std::vector<std::vector<long long>>& rows, u32 p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  u32 prime() const { return p_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  u32& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  u32 operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
  u32* row(int i) { return a_.data() + size_t(i) * cols_; }
  const u32* row(int i) const { return a_.data() + size_t(i) * cols_; }

  bool is_zero() const;
  Matrix transpose() const;
  Matrix col(int j) const;
  Matrix select_cols(const std::vector<int>& idx) const;
  Matrix select_rows(const std::vector<int>& idx) const;
  Matrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Matrix& b);
  std::string str() const;

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  u32 p_ = kDefaultPrime;
  std::vector<u32> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, u32 c);
Matrix compose(const Matrix& g, const Matrix& f);  // g after f
Matrix hstack(const Matrix& a, const Matrix& b);
// Columns of all parts side by side; parts must have `rows` rows.
Matrix hstack(const std::vector<Matrix>& parts, int rows, u32 p);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix direct_sum_matrix(const Matrix& a, const Matrix& b);

struct Rref {
  Matrix form;
  std::vector<int> pivots;
};

Rref rref(const Matrix& m);
int rank(const Matrix& m);
// Columns form a basis of ker m, one per free column in increasing order.
Matrix kernel_basis(const Matrix& m);
// Pivot columns of m: a basis of im m drawn from the columns themselves.
Matrix image_basis(const Matrix& m);
// One solution X of m X = b, or nullopt when b is not in the image.
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);
Matrix inverse(const Matrix& m);
// R with m R = 1; m must have full row rank.
Matrix right_inverse(const Matrix& m);
// C with basis C = v; basis must have independent columns and v must lie in its span.
Matrix coords_in(const Matrix& basis, const Matrix& v);
// Basis of span(a) ∩ span(b), both given by independent columns.
Matrix intersect(const Matrix& a, const Matrix& b);
// Standard basis vector indices completing span(sub) to the whole space.
std::vector<int> complement_indices(const Matrix& sub);
// A matrix whose kernel is exactly span(sub).
Matrix annihilator(const Matrix& sub);
bool in_span(const Matrix& basis, const Matrix& v);

Matrix random_matrix(int rows, int cols, u32 p, std::mt19937_64& rng);
Matrix random_invertible(int n, u32 p, std::mt19937_64& rng);

}  // namespace extalg

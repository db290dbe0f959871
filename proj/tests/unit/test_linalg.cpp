#include <doctest.h>

#include "extalg/error.hpp"
#include "extalg/linalg.hpp"

using namespace extalg;

TEST_CASE("rref of small matrices") {
  Rref a = rref(Matrix::identity(2, 5));
  CHECK(a.form == Matrix::identity(2, 5));
  CHECK(a.pivots == std::vector<int>{0, 1});

  Rref b = rref(Matrix::from_rows({{1, 2}, {2, 4}}, 5));
  CHECK(b.form == Matrix::from_rows({{1, 2}, {0, 0}}, 5));
  CHECK(b.pivots == std::vector<int>{0});

  Rref c = rref(Matrix(0, 3, 7));
  CHECK(c.form.rows() == 0);
  CHECK(c.form.cols() == 3);
  CHECK(c.pivots.empty());
}

TEST_CASE("kernel and image") {
  CHECK(kernel_basis(Matrix::identity(3, 7)).cols() == 0);
  CHECK(kernel_basis(Matrix(2, 3, 7)).cols() == 3);

  Matrix k = kernel_basis(Matrix::from_rows({{1, 1}}, 3));
  REQUIRE(k.cols() == 1);
  CHECK((Matrix::from_rows({{1, 1}}, 3) * k).is_zero());
  CHECK(k(1, 0) != 0);

  CHECK(image_basis(Matrix::identity(4, 11)).cols() == 4);
}

TEST_CASE("solve") {
  auto x = solve(Matrix(2, 3, 7), Matrix(2, 1, 7));
  REQUIRE(x);
  CHECK(x->rows() == 3);

  auto y = solve(Matrix::from_rows({{1, 0}}, 7), Matrix::from_rows({{1}}, 7));
  REQUIRE(y);
  CHECK((Matrix::from_rows({{1, 0}}, 7) * *y) == Matrix::from_rows({{1}}, 7));

  CHECK_FALSE(solve(Matrix(1, 1, 7), Matrix::from_rows({{1}}, 7)).has_value());
}

TEST_CASE("inverse, right inverse and coordinates") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_invertible(5, kDefaultPrime, rng);
    CHECK(a * inverse(a) == Matrix::identity(5, kDefaultPrime));
    Matrix w = random_matrix(3, 6, kDefaultPrime, rng);
    if (rank(w) == 3) CHECK(w * right_inverse(w) == Matrix::identity(3, kDefaultPrime));
    Matrix basis = image_basis(random_matrix(6, 3, kDefaultPrime, rng));
    Matrix c = random_matrix(basis.cols(), 2, kDefaultPrime, rng);
    CHECK(coords_in(basis, basis * c) == c);
  }
}

TEST_CASE("intersection and annihilator") {
  const u32 p = 13;
  Matrix a = Matrix::from_rows({{1, 0}, {0, 1}, {0, 0}}, p);
  Matrix b = Matrix::from_rows({{0, 0}, {1, 0}, {0, 1}}, p);
  Matrix i = intersect(a, b);
  REQUIRE(i.cols() == 1);
  CHECK(i(0, 0) == 0);
  CHECK(i(2, 0) == 0);
  Matrix z = annihilator(a);
  CHECK((z * a).is_zero());
  CHECK(rank(z) == 1);
}

TEST_CASE("arithmetic mod p") {
  CHECK(is_prime(32003));
  CHECK_FALSE(is_prime(32001));
  CHECK(mul_mod(inv_mod(17, 32003), 17, 32003) == 1);
  CHECK(reduce(-1, 7) == 6);
  CHECK(lift(6, 7) == -1);
}

TEST_CASE("hstack of many parts matches pairwise hstack") {
  std::mt19937_64 rng(5);
  std::vector<Matrix> parts;
  Matrix acc(4, 0, kDefaultPrime);
  for (int k = 0; k < 5; ++k) {
    parts.push_back(random_matrix(4, k, kDefaultPrime, rng));
    acc = hstack(acc, parts.back());
  }
  CHECK(hstack(parts, 4, kDefaultPrime) == acc);
}

#pragma once

// Dense univariate polynomials over F_p, lowest coefficient first.

#include <random>
#include <vector>

#include "extalg/linalg.hpp"

namespace extalg::poly {

using Poly = std::vector<u32>;

void trim(Poly& a);
int deg(const Poly& a);
Poly mul(const Poly& a, const Poly& b, u32 p);
Poly sub(const Poly& a, const Poly& b, u32 p);
void divmod(const Poly& a, const Poly& b, u32 p, Poly* q, Poly* r);
Poly mod(const Poly& a, const Poly& b, u32 p);
Poly monic(const Poly& a, u32 p);
Poly gcd(Poly a, Poly b, u32 p);
// u, v with u a + v b = gcd(a, b) (monic).
Poly ext_gcd(const Poly& a, const Poly& b, u32 p, Poly* u, Poly* v);
Poly derivative(const Poly& a, u32 p);
Poly powmod(const Poly& base, unsigned long long e, const Poly& m, u32 p);
// base^(p^k) mod m.
Poly frobenius(const Poly& base, int k, const Poly& m, u32 p);

// Characteristic polynomial of a square matrix.
Poly charpoly(const Matrix& a);
Matrix evaluate(const Poly& f, const Matrix& a);

// A nontrivial monic factor g of f with gcd(g, f/g) = 1, when f has two
// coprime nonconstant factors. Empty otherwise.
Poly coprime_split(const Poly& f, u32 p, std::mt19937_64& rng);

}  // namespace extalg::poly

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace circuitkit {

using Rational = mpq_class;
using Integer = mpz_class;
using Index = std::size_t;
using Vec = std::vector<Rational>;
using IntVec = std::vector<Integer>;
// Index sets are kept sorted ascending.
using IndexSet = std::vector<Index>;

Rational frac(long p, long q = 1);

// Accepts "p", "p/q" with optional sign. Rejects decimals and exponents.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

bool is_integer(const Rational& q);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Rational pow(const Rational& q, unsigned long e);
int sign(const Rational& q);

Vec to_rational(const IntVec& v);
Vec zeros(Index n);
Rational dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Rational& s);
// a + s*b
Vec axpy(const Vec& a, const Rational& s, const Vec& b);
Rational norm1(const Vec& v);
Rational norm_inf(const Vec& v);
Rational norm2_sq(const Vec& v);
bool is_zero(const Vec& v);
IndexSet support(const Vec& v);
Vec negative_part(const Vec& v);  // v^- = max(-v, 0)
Vec positive_part(const Vec& v);
Vec restrict_to(const Vec& v, const IndexSet& idx);
// 1/k-integral: k*v integral.
bool is_fractional_multiple(const Vec& v, const Integer& k);
Integer denominator_lcm(const Vec& v);

IndexSet complement(const IndexSet& s, Index n);
bool is_subset(const IndexSet& a, const IndexSet& b);

}  // namespace circuitkit

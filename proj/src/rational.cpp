#include "circuitkit/rational.hpp"

#include <algorithm>
#include <cctype>

#include "circuitkit/errors.hpp"

namespace circuitkit {

namespace {

bool valid_integer_literal(const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational frac(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& raw) {
    std::string s = raw;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }),
            s.end());
    auto slash = s.find('/');
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_integer_literal(num, true) || !valid_integer_literal(den, false))
        throw ParseError("not an exact fraction: '" + raw + "'");
    if (num[0] == '+') num.erase(0, 1);
    Integer n(num), d(den);
    if (d == 0) throw ParseError("zero denominator: '" + raw + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Rational pow(const Rational& q, unsigned long e) {
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), e);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

int sign(const Rational& q) { return sgn(q); }

Vec to_rational(const IntVec& v) {
    Vec out;
    out.reserve(v.size());
    for (const auto& z : v) out.emplace_back(z);
    return out;
}

Vec zeros(Index n) { return Vec(n, Rational(0)); }

Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot product of unequal lengths");
    Rational s = 0;
    for (Index i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector add");
    Vec r(a.size());
    for (Index i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sub");
    Vec r(a.size());
    for (Index i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scale(const Vec& a, const Rational& s) {
    Vec r(a.size());
    for (Index i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

Vec axpy(const Vec& a, const Rational& s, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("axpy");
    Vec r(a);
    for (Index i = 0; i < a.size(); ++i)
        if (b[i] != 0) r[i] += s * b[i];
    return r;
}

Rational norm1(const Vec& v) {
    Rational s = 0;
    for (const auto& x : v) s += abs(x);
    return s;
}

Rational norm_inf(const Vec& v) {
    Rational m = 0;
    for (const auto& x : v) {
        Rational a = abs(x);
        if (a > m) m = a;
    }
    return m;
}

Rational norm2_sq(const Vec& v) {
    Rational s = 0;
    for (const auto& x : v) s += x * x;
    return s;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

IndexSet support(const Vec& v) {
    IndexSet s;
    for (Index i = 0; i < v.size(); ++i)
        if (v[i] != 0) s.push_back(i);
    return s;
}

Vec negative_part(const Vec& v) {
    Vec r(v.size());
    for (Index i = 0; i < v.size(); ++i) r[i] = v[i] < 0 ? Rational(-v[i]) : Rational(0);
    return r;
}

Vec positive_part(const Vec& v) {
    Vec r(v.size());
    for (Index i = 0; i < v.size(); ++i) r[i] = v[i] > 0 ? v[i] : Rational(0);
    return r;
}

Vec restrict_to(const Vec& v, const IndexSet& idx) {
    Vec r;
    r.reserve(idx.size());
    for (Index i : idx) r.push_back(v.at(i));
    return r;
}

bool is_fractional_multiple(const Vec& v, const Integer& k) {
    for (const auto& x : v) {
        Rational y = x * Rational(k);
        if (!is_integer(y)) return false;
    }
    return true;
}

Integer denominator_lcm(const Vec& v) {
    Integer l = 1;
    for (const auto& x : v) l = lcm(l, x.get_den());
    return l;
}

IndexSet complement(const IndexSet& s, Index n) {
    IndexSet out;
    std::size_t k = 0;
    for (Index i = 0; i < n; ++i) {
        while (k < s.size() && s[k] < i) ++k;
        if (k < s.size() && s[k] == i) continue;
        out.push_back(i);
    }
    return out;
}

bool is_subset(const IndexSet& a, const IndexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace circuitkit

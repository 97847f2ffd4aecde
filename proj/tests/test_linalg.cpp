#include "doctest.h"

#include <numeric>

#include "circuitkit/errors.hpp"
#include "circuitkit/linalg.hpp"
#include "fixtures.hpp"

using namespace circuitkit;

namespace {

// Leibniz expansion; independent of the elimination code.
Rational leibniz_det(const RatMatrix& M) {
    const Index n = M.rows();
    std::vector<Index> p(n);
    std::iota(p.begin(), p.end(), 0);
    Rational total = 0;
    do {
        int inv = 0;
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inv;
        Rational term = inv % 2 ? -1 : 1;
        for (Index i = 0; i < n; ++i) term *= M(i, p[i]);
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

// Largest k with a nonzero k x k minor.
Index minor_rank(const RatMatrix& M) {
    for (Index k = std::min(M.rows(), M.cols()); k > 0; --k) {
        bool found = false;
        for_each_combination(M.rows(), k, [&](const IndexSet& R) {
            for_each_combination(M.cols(), k, [&](const IndexSet& C) {
                if (leibniz_det(M.submatrix(R, C)) != 0) found = true;
                return !found;
            });
            return !found;
        });
        if (found) return k;
    }
    return 0;
}

}  // namespace

TEST_CASE("parse_rational accepts exact forms only") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-6/4") == frac(-3, 2));
    CHECK(parse_rational("+2/3") == frac(2, 3));
    CHECK_THROWS_AS(parse_rational("0.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("1e3"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK(to_string(frac(-3, 2)) == "-3/2");
}

TEST_CASE("vector helpers") {
    Vec v = fx::ivec({3, -2, 0, 5});
    CHECK(norm1(v) == 10);
    CHECK(norm_inf(v) == 5);
    CHECK(support(v) == IndexSet{0, 1, 3});
    CHECK(negative_part(v) == fx::ivec({0, 2, 0, 0}));
    CHECK(complement({1, 3}, 5) == IndexSet{0, 2, 4});
    CHECK(is_fractional_multiple(Vec{frac(1, 6), frac(1, 3)}, 6));
    CHECK_FALSE(is_fractional_multiple(Vec{frac(1, 6), frac(1, 4)}, 6));
    CHECK(denominator_lcm(Vec{frac(1, 6), frac(1, 4)}) == 12);
}

TEST_CASE("bareiss agrees with Leibniz on random integer matrices") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        Index n = 1 + t % 5;
        RatMatrix M = fx::random_int_matrix(n, n, -4, 4, rng);
        CHECK(bareiss_det(M) == leibniz_det(M));
    }
    CHECK_THROWS_AS(bareiss_det(RatMatrix(2, 3)), NotSquare);
}

TEST_CASE("rank and kernel agree with minors") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        Index m = 1 + t % 4, n = 2 + t % 5;
        RatMatrix M = fx::random_int_matrix(m, n, -2, 2, rng);
        KernelResult k = rref_kernel(M);
        CHECK(k.rank == minor_rank(M));
        CHECK(k.kernel_basis.rows() == n - k.rank);
        for (Index r = 0; r < k.kernel_basis.rows(); ++r) CHECK(is_zero(M * k.kernel_basis.row(r)));
        if (k.kernel_basis.rows() > 0) CHECK(rank(k.kernel_basis) == k.kernel_basis.rows());
    }
}

TEST_CASE("basis form of A_app") {
    RatMatrix A = fx::A_app();
    RatMatrix F = basis_form(A, {0, 1});
    CHECK(F(0, 0) == 1);
    CHECK(F(1, 1) == 1);
    // A_B^{-1} = [[1, -3/13], [0, 1/13]]
    CHECK(F(0, 2) == 4 - frac(27, 13));
    CHECK(F(1, 2) == frac(9, 13));
    CHECK_THROWS_AS(basis_form(int_matrix({{1, 2}, {2, 4}}), {0, 1}), SingularBasis);
}

TEST_CASE("subdeterminant stats of A_app") {
    SubdetStats s = subdet_stats(fx::A_app());
    // 2x2 minors over column pairs 01,02,03,12,13,23: 13, 9, 10, -25, -9, 13.
    CHECK(s.delta_max == 25);
    CHECK(abs(leibniz_det(fx::A_app().submatrix(s.witness_max.first, s.witness_max.second))) == 25);
    // lcm of 1, 3, 4, 9, 10, 13, 25
    CHECK(s.delta_lcm == 11700);
}

TEST_CASE("integer_normalize is primitive with a positive leading entry") {
    Normalized nz = integer_normalize(Vec{frac(-2, 3), frac(4, 9), 0});
    CHECK(nz.g == fx::zvec({3, -2, 0}));
    CHECK(nz.scale == frac(-2, 9));
    CHECK(scale(to_rational(nz.g), nz.scale) == Vec{frac(-2, 3), frac(4, 9), 0});
    CHECK_THROWS_AS(integer_normalize(zeros(3)), ZeroVector);
}

TEST_CASE("inverse, solve, projection") {
    RatMatrix M = int_matrix({{2, 1}, {1, 1}});
    auto inv = inverse(M);
    REQUIRE(inv);
    CHECK(M * *inv == RatMatrix::identity(2));
    CHECK_FALSE(inverse(int_matrix({{1, 2}, {2, 4}})));
    auto x = solve_linear(int_matrix({{1, 1, 0}, {0, 1, 1}}), fx::ivec({2, 3}));
    REQUIRE(x);
    CHECK(int_matrix({{1, 1, 0}, {0, 1, 1}}) * *x == fx::ivec({2, 3}));
    CHECK_FALSE(solve_linear(int_matrix({{1, 1}, {1, 1}}), fx::ivec({1, 2})));

    RatMatrix R = int_matrix({{1, 1, 0}});
    Vec p = project_onto_rowspace(R, fx::ivec({1, 0, 5}));
    CHECK(p == Vec{frac(1, 2), frac(1, 2), 0});
}

TEST_CASE("combinations are enumerated in lex order") {
    std::vector<IndexSet> seen;
    for_each_combination(4, 2, [&](const IndexSet& s) {
        seen.push_back(s);
        return true;
    });
    REQUIRE(seen.size() == 6);
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(first_column_basis(int_matrix({{0, 1, 1}, {0, 0, 1}})) == IndexSet{1, 2});
}

TEST_CASE("envelope guard") {
    CHECK_THROWS_AS(check_envelope(max_enumeration_cols() + 1, "test"), EnvelopeExceeded);
    CHECK_NOTHROW(check_envelope(max_enumeration_cols(), "test"));
}

#include "circuitkit/linalg.hpp"

#include <cstdlib>
#include <string>

#include "circuitkit/errors.hpp"

namespace circuitkit {

RrefResult rref(const RatMatrix& M) {
    RrefResult res;
    res.reduced = M;
    RatMatrix& R = res.reduced;
    const Index m = R.rows(), n = R.cols();
    Index r = 0;
    for (Index c = 0; c < n && r < m; ++c) {
        Index p = r;
        while (p < m && R(p, c) == 0) ++p;
        if (p == m) continue;
        if (p != r)
            for (Index j = 0; j < n; ++j) std::swap(R(p, j), R(r, j));
        Rational inv = 1 / R(r, c);
        for (Index j = c; j < n; ++j)
            if (R(r, j) != 0) R(r, j) *= inv;
        for (Index i = 0; i < m; ++i) {
            if (i == r || R(i, c) == 0) continue;
            Rational f = R(i, c);
            for (Index j = c; j < n; ++j)
                if (R(r, j) != 0) R(i, j) -= f * R(r, j);
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

KernelResult rref_kernel(const RatMatrix& M) {
    RrefResult rr = rref(M);
    KernelResult k;
    k.rank = rr.rank;
    k.pivot_cols = rr.pivot_cols;
    IndexSet free_cols = complement(rr.pivot_cols, M.cols());
    k.kernel_basis = RatMatrix(free_cols.size(), M.cols());
    for (Index t = 0; t < free_cols.size(); ++t) {
        Index f = free_cols[t];
        k.kernel_basis(t, f) = 1;
        for (Index r = 0; r < rr.rank; ++r) k.kernel_basis(t, rr.pivot_cols[r]) = -rr.reduced(r, f);
    }
    return k;
}

Index rank(const RatMatrix& M) { return rref(M).rank; }

RatMatrix basis_form(const RatMatrix& A, const IndexSet& B) {
    if (B.size() != A.rows()) throw SingularBasis("basis size differs from row count");
    auto inv = inverse(A.select_cols(B));
    if (!inv) throw SingularBasis("columns do not form a basis");
    return *inv * A;
}

Rational bareiss_det(const RatMatrix& M) {
    if (M.rows() != M.cols()) throw NotSquare("determinant of non-square matrix");
    const Index n = M.rows();
    if (n == 0) return 1;
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    Rational denom = 1;
    for (Index i = 0; i < n; ++i) {
        Integer l = 1;
        for (Index j = 0; j < n; ++j) l = lcm(l, M(i, j).get_den());
        denom *= Rational(l);
        for (Index j = 0; j < n; ++j) {
            Rational x = M(i, j) * Rational(l);
            a[i][j] = x.get_num();
        }
    }
    int sgn_flip = 1;
    Integer prev = 1;
    for (Index k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            Index p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[p], a[k]);
            sgn_flip = -sgn_flip;
        }
        for (Index i = k + 1; i < n; ++i) {
            for (Index j = k + 1; j < n; ++j) {
                Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Rational det(a[n - 1][n - 1]);
    det *= sgn_flip;
    det /= denom;
    return det;
}

SubdetStats subdet_stats(const RatMatrix& A) {
    if (!A.is_integral()) throw NonIntegerMatrix("subdet_stats needs an integer matrix");
    check_envelope(A.cols(), "subdet_stats");
    SubdetStats st;
    st.delta_max = 0;
    st.delta_lcm = 1;
    const Index kmax = std::min(A.rows(), A.cols());
    for (Index k = 1; k <= kmax; ++k) {
        for_each_combination(A.rows(), k, [&](const IndexSet& rs) {
            for_each_combination(A.cols(), k, [&](const IndexSet& cs) {
                Rational d = abs(bareiss_det(A.submatrix(rs, cs)));
                if (d == 0) return true;
                st.delta_lcm = lcm(st.delta_lcm, d.get_num());
                if (d > st.delta_max) {
                    st.delta_max = d;
                    st.witness_max = {rs, cs};
                }
                return true;
            });
            return true;
        });
    }
    return st;
}

Normalized integer_normalize(const Vec& v) {
    if (is_zero(v)) throw ZeroVector("cannot normalize the zero vector");
    Integer l = denominator_lcm(v);
    IntVec w(v.size());
    Integer g = 0;
    for (Index i = 0; i < v.size(); ++i) {
        Rational x = v[i] * Rational(l);
        w[i] = x.get_num();
        g = gcd(g, w[i]);
    }
    Index first = 0;
    while (w[first] == 0) ++first;
    if (w[first] < 0) g = -g;
    Normalized out;
    out.g.resize(v.size());
    for (Index i = 0; i < v.size(); ++i) mpz_divexact(out.g[i].get_mpz_t(), w[i].get_mpz_t(), g.get_mpz_t());
    out.scale = v[first] / Rational(out.g[first]);
    return out;
}

std::optional<RatMatrix> inverse(const RatMatrix& M) {
    if (M.rows() != M.cols()) throw NotSquare("inverse of non-square matrix");
    const Index n = M.rows();
    RatMatrix aug(n, 2 * n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) aug(i, j) = M(i, j);
        aug(i, n + i) = 1;
    }
    RrefResult rr = rref(aug);
    if (rr.rank < n || (n > 0 && rr.pivot_cols[n - 1] != n - 1)) return std::nullopt;
    RatMatrix inv(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) inv(i, j) = rr.reduced(i, n + j);
    return inv;
}

std::optional<Vec> solve_linear(const RatMatrix& M, const Vec& b) {
    if (b.size() != M.rows()) throw DimensionMismatch("solve_linear rhs length");
    const Index m = M.rows(), n = M.cols();
    RatMatrix aug(m, n + 1);
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < n; ++j) aug(i, j) = M(i, j);
        aug(i, n) = b[i];
    }
    RrefResult rr = rref(aug);
    if (!rr.pivot_cols.empty() && rr.pivot_cols.back() == n) return std::nullopt;
    Vec x(n, Rational(0));
    for (Index r = 0; r < rr.rank; ++r) x[rr.pivot_cols[r]] = rr.reduced(r, n);
    return x;
}

RatMatrix row_basis(const RatMatrix& M) {
    RrefResult rr = rref(M);
    IndexSet rows;
    for (Index r = 0; r < rr.rank; ++r) rows.push_back(r);
    return rr.reduced.select_rows(rows);
}

IndexSet independent_rows(const RatMatrix& M) { return rref(M.transpose()).pivot_cols; }

Vec project_onto_rowspace(const RatMatrix& R0, const Vec& x) {
    RatMatrix R = row_basis(R0);
    if (R.rows() == 0) return zeros(x.size());
    RatMatrix gram = R * R.transpose();
    Vec rhs = R * x;
    auto alpha = solve_linear(gram, rhs);
    Vec p = zeros(x.size());
    for (Index i = 0; i < R.rows(); ++i) p = axpy(p, (*alpha)[i], R.row(i));
    return p;
}

IndexSet first_column_basis(const RatMatrix& A) { return rref(A).pivot_cols; }

bool for_each_combination(Index n, Index k, const std::function<bool(const IndexSet&)>& f) {
    if (k > n) return true;
    IndexSet idx(k);
    for (Index i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!f(idx)) return false;
        if (k == 0) return true;
        Index i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (Index j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Index max_enumeration_cols() {
    const char* env = std::getenv("CIRCUITKIT_MAX_COLS");
    if (!env || !*env) return 12;
    try {
        long v = std::stol(env);
        // Support masks are 64-bit.
        if (v > 0) return std::min<Index>(static_cast<Index>(v), 64);
    } catch (const std::exception&) {
    }
    return 12;
}

void check_envelope(Index n, const char* what) {
    Index cap = max_enumeration_cols();
    if (n > cap)
        throw EnvelopeExceeded(std::string(what) + " on " + std::to_string(n) +
                               " columns exceeds CIRCUITKIT_MAX_COLS=" + std::to_string(cap));
}

}  // namespace circuitkit

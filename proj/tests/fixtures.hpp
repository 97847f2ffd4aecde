#pragma once

#include <random>

#include "circuitkit/generate.hpp"
#include "circuitkit/subspace.hpp"

namespace fx {

using namespace circuitkit;

inline RatMatrix A_app() { return int_matrix({{1, 3, 4, 3}, {0, 13, 9, 10}}); }
inline RatMatrix A_int() { return int_matrix({{1, 1, 0}, {0, 1, 1}}); }
inline RatMatrix A_db() { return gen::dumbbell(); }
inline Subspace W_M(long M) { return Subspace::span_of(int_matrix({{0, 1, 1, M}, {1, 0, M, 1}})); }

inline Vec ivec(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline IntVec zvec(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

// Independent brute force: support-minimal kernel vectors found by checking every
// support pattern of size <= n, without the library's rank shortcut.
inline std::vector<IntVec> brute_circuits(const RatMatrix& A) {
    const Index n = A.cols();
    std::vector<IndexSet> dependent_minimal;
    std::vector<IntVec> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        IndexSet S;
        for (Index i = 0; i < n; ++i)
            if (mask >> i & 1) S.push_back(i);
        bool has_smaller = false;
        for (const auto& C : dependent_minimal)
            if (is_subset(C, S)) has_smaller = true;
        if (has_smaller) continue;
        RatMatrix AS = A.select_cols(S);
        if (rank(AS) == S.size()) continue;
        // S dependent and no dependent proper subset among smaller masks found so far
        // (masks are not ordered by size, so re-check every proper subset).
        bool minimal = true;
        for (Index drop = 0; drop < S.size() && minimal; ++drop) {
            IndexSet T = S;
            T.erase(T.begin() + static_cast<std::ptrdiff_t>(drop));
            if (!T.empty() && rank(A.select_cols(T)) < T.size()) minimal = false;
        }
        if (!minimal) continue;
        dependent_minimal.push_back(S);
        Vec k = rref_kernel(AS).kernel_basis.row(0);
        Vec full(n, Rational(0));
        for (Index t = 0; t < S.size(); ++t) full[S[t]] = k[t];
        out.push_back(integer_normalize(full).g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline RatMatrix random_int_matrix(Index m, Index n, long lo, long hi, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dist(lo, hi);
    RatMatrix A(m, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) A(i, j) = dist(rng);
    return A;
}

}  // namespace fx

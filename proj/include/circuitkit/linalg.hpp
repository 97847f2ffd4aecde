#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "circuitkit/matrix.hpp"

namespace circuitkit {

struct RrefResult {
    RatMatrix reduced;
    IndexSet pivot_cols;
    Index rank = 0;
};

struct KernelResult {
    Index rank = 0;
    IndexSet pivot_cols;
    RatMatrix kernel_basis;  // rows span ker(M)
};

struct SubdetStats {
    Rational delta_max;
    Integer delta_lcm;
    std::pair<IndexSet, IndexSet> witness_max;  // (rows, cols)
};

struct Normalized {
    IntVec g;
    Rational scale;  // v = scale * g
};

RrefResult rref(const RatMatrix& M);
KernelResult rref_kernel(const RatMatrix& M);
Index rank(const RatMatrix& M);

RatMatrix basis_form(const RatMatrix& A, const IndexSet& B);
Rational bareiss_det(const RatMatrix& M);
SubdetStats subdet_stats(const RatMatrix& A);
Normalized integer_normalize(const Vec& v);

std::optional<RatMatrix> inverse(const RatMatrix& M);
// Some solution of M x = b, or nullopt when inconsistent.
std::optional<Vec> solve_linear(const RatMatrix& M, const Vec& b);
// Linearly independent rows spanning the row space (the nonzero rows of the RREF).
RatMatrix row_basis(const RatMatrix& M);
// Indices of a maximal independent subset of rows, chosen greedily in order.
IndexSet independent_rows(const RatMatrix& M);
// Orthogonal projection of x onto the row space of R, via normal equations.
Vec project_onto_rowspace(const RatMatrix& R, const Vec& x);
// Lexicographically first column basis of a matrix.
IndexSet first_column_basis(const RatMatrix& A);

// Calls f on each k-subset of {0..n-1} in lexicographic order; stops when f returns false.
bool for_each_combination(Index n, Index k, const std::function<bool(const IndexSet&)>& f);

// Column cap for exponential enumerations; CIRCUITKIT_MAX_COLS overrides the default of 12.
Index max_enumeration_cols();
void check_envelope(Index n, const char* what);

}  // namespace circuitkit

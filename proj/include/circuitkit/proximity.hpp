#pragma once

#include <cstdint>

#include "circuitkit/imbalance.hpp"
#include "circuitkit/lp.hpp"

namespace circuitkit {

struct ProximityWitness {
    Vec point;
    Rational bound;
    Rational distance;  // ||point - d||_inf
    Rational slack;     // bound - distance
};

// supp(d^-) union supp(c^+).
IndexSet lambda_set(const Vec& d, const Vec& c);

// Feasible x in W + d, x >= 0, minimizing ||x - d||_inf and then ||x - d||_1. Bound kappa ||d^-||_1.
ProximityWitness hoffman_feasibility_witness(const Subspace& W, const Vec& d);
// Same over the optimal face of LP(W, d, c), c >= 0. Bound kappa ||d_Lambda||_1.
ProximityWitness hoffman_opt_witness(const Subspace& W, const Vec& d, const Vec& c);

struct TransferResult {
    Rational bound;  // (kappa + 1) ||Pi_{W^perp}(d - x_tilde)||_1
    IndexSet R;      // coordinates with x_tilde_i > bound
    // Filled in verification mode.
    std::optional<Rational> attained;  // min ||x* - x_tilde||_inf over optimal x* of LP(W, d, s)
    std::optional<Vec> x_star;
    std::vector<Rational> max_dual_on_R;  // max s*_i over the dual optimal face, per i in R
};
// (x_tilde, s) must be an optimal pair for LP(W, x_tilde, s): both nonnegative and complementary.
TransferResult transfer_bound(const Subspace& W, const Vec& x_tilde, const Vec& s, const Vec& d, bool verify = false);

struct FixingResult {
    Rational threshold;  // (kappa + 1) ||c1 - c2||_1
    IndexSet R0;
    IndexSet Ru;
    // Verification: max x_i over the c2-optimal face for i in R0, min x_i for i in Ru.
    std::vector<Rational> max_on_R0;
    std::vector<Rational> min_on_Ru;
};
FixingResult fixing_sets_bounds(const RatMatrix& A, const Vec& b, const UpperBounds& u, const Vec& c1,
                                const Vec& c2, const Vec& x1, const Vec& y1, bool verify = false);

struct ApxSolution {
    Vec x_tilde;
    Rational epsilon;
    std::uint64_t seed = 0;
    Rational t;     // x_tilde = x_star + t (x_star - y)
    Vec x_star;     // exact optimal vertex
    Vec y;          // seeded feasible vertex
    Rational opt;
};
ApxSolution apx_oracle(const Subspace& W, const Vec& d, const Vec& c, const Rational& epsilon, std::uint64_t seed);
// Both approximation inequalities, compared on squares.
bool apx_conditions_hold(const ApxSolution& s, const Vec& d, const Vec& c);

struct FeasibilityRun {
    Vec x;
    Index depth = 0;        // deepest recursion level reached
    Index oracle_calls = 0;
};
// Throws BadParameters when epsilon > 1/(kappa_bar + n)^3.
FeasibilityRun feasibility_simplified(const Subspace& W, const Vec& d, const Rational& epsilon, std::uint64_t seed);

}  // namespace circuitkit

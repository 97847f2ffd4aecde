#pragma once

#include <cstdint>

#include "circuitkit/imbalance.hpp"
#include "circuitkit/lp.hpp"

namespace circuitkit {

// Lattice basis of ker(A) ∩ Z^n (rows), by unimodular column reduction.
std::vector<IntVec> integer_kernel_basis(const RatMatrix& A);

// h ⊑ g: h conformal to g and |h_i| <= |g_i|.
bool conformal_below(const IntVec& h, const IntVec& g);

enum class GraverMethod { Auto, Box, Completion };

struct GraverBasis {
    std::vector<IntVec> elements;  // sorted
    Integer g1 = 0;
    Integer ginf = 0;
    GraverMethod method = GraverMethod::Box;
    Integer l1_bound = 0;      // (2 m ||A||_max + 1)^m
    Integer box_points = 0;    // integer points the box scan visits
};

// Number of integer points in the k-dimensional l1 ball of radius r.
Integer l1_ball_points(Index k, const Integer& r);

// Auto uses the box scan when it visits at most max_points points, else the completion procedure.
// Box throws BoxTooLarge above max_points.
GraverBasis graver_basis(const RatMatrix& A, GraverMethod method = GraverMethod::Auto,
                         std::uint64_t max_points = 1000000);

struct IpProximity {
    Vec x_lp;
    IntVec x_ip;          // optimal integer point closest to x_lp in l1
    Rational lp_opt;
    Rational ip_opt;
    Rational distance_l1;
    Rational distance_inf;
    Rational bound;       // n * kappa_bar
    bool within_bound = false;
    bool oracle_used = false;  // full enumeration confirmed the IP optimum
};
IpProximity ip_proximity_check(const RatMatrix& A, const Vec& b, const Vec& c);

struct ConjectureReport {
    enum class Status { Holds, Violated };
    IntVec target;
    Status status = Status::Holds;
    Integer kappa_dot = 1;
    std::vector<ConformalTerm> terms;  // coefficient lambda with lambda * kappa_dot integral
    std::vector<ElementaryVector> candidates;  // conformal circuits of the target
    Index searched = 0;
};
ConjectureReport conjecture_decompose(const Subspace& W, const IntVec& z);
// Re-checks a Holds report: sum, conformity, 1/kappa_dot-integrality, term count.
bool verify_conjecture_report(const Subspace& W, const ConjectureReport& r);

struct HkWitness {
    ElementaryVector circuit;
    Index ell = 0;
    IndexSet basis;
    IntVec d;
    Vec vertex;
    Integer denominator = 1;
};
struct HkReport {
    Integer kappa_dot = 1;
    Index trials = 0;             // feasible random shifts checked
    Index vertices_checked = 0;
    Integer observed_lcm = 1;     // lcm of vertex denominators over random shifts
    bool all_divide = true;       // every vertex denominator divides kappa_dot
    std::vector<HkWitness> witnesses;  // one per (circuit, ell)
    Integer witness_lcm = 1;
    HkWitness extremal;           // a witness with the largest denominator
};
HkReport hk_check(const Subspace& W, Index trials, std::uint64_t seed);

struct EjResult {
    bool applicable = false;  // integer A with column absolute sums <= 2
    Integer kappa_dot = 1;
    bool holds = true;        // kappa_dot in {1, 2}
};
EjResult ej_check(const RatMatrix& A);

struct AppendixRepresentation {
    IntVec v, w;               // rows of the 2x2 multiplier
    RatMatrix product;         // [v; w] * A
    IndexSet witness_cols;     // lex-first column pair with a non-1/kappa_dot-integral inverse
    Rational witness_det;
    std::vector<IndexSet> failing_pairs;
};
struct AppendixReport {
    RatMatrix A;
    Integer kappa_dot = 1;
    std::vector<IntVec> primitive_vectors;
    std::vector<IntVec> non_primitive_vectors;
    std::vector<AppendixRepresentation> representations;  // one per pair of primitive vectors up to sign
    Index all_pairs_checked = 0;   // nonsingular multipliers built from every search vector
    bool all_pairs_fail = true;
};
AppendixReport appendix_counterexample();

}  // namespace circuitkit

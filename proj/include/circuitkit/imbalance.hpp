#pragma once

#include <map>
#include <set>
#include <variant>

#include "circuitkit/subspace.hpp"

namespace circuitkit {

struct MeasureWitness {
    ElementaryVector circuit;
    Index i = 0;  // ratio |g_j / g_i| or entry g_j
    Index j = 0;
};

struct ImbalanceReport {
    Rational kappa = 1;
    Integer kappa_dot = 1;
    Integer kappa_bar = 1;
    std::optional<MeasureWitness> kappa_witness;
    std::optional<MeasureWitness> kappa_bar_witness;
    // One circuit per prime-power factor of kappa_dot, each carrying the entry that attains it.
    std::vector<MeasureWitness> kappa_dot_witnesses;
};

// rho^{1/length}, compared exactly by cross-powering.
struct GeoMeanValue {
    Rational product = 1;
    Index length = 1;
};
int compare(const GeoMeanValue& a, const GeoMeanValue& b);
bool operator<(const GeoMeanValue& a, const GeoMeanValue& b);
bool operator==(const GeoMeanValue& a, const GeoMeanValue& b);
double to_double(const GeoMeanValue& v);

struct CircuitRatioDigraph {
    Index n = 0;
    // kappa(i,j) = max K_ij; zero when no circuit contains both.
    std::vector<std::vector<Rational>> kappa;
    std::vector<std::vector<std::set<Rational>>> ratio_sets;

    const Rational& kappa_ij(Index i, Index j) const { return kappa[i][j]; }
};

// q * t^e where t is the kappa* value.
struct ScaledPower {
    Rational coeff = 1;
    long exponent = 0;
};

struct KappaStarResult {
    GeoMeanValue value;
    std::vector<Index> witness_cycle;
    std::vector<ScaledPower> rescaling;
    // Present when kappa* is rational, so that d is an honest rational vector.
    std::optional<Vec> rational_rescaling;
};

struct KappaEstimate {
    Rational xi = 1;
    std::vector<std::vector<Rational>> hat_kappa;
};

struct RescaledTU {
    IntVec D;
};
struct NotRescalable {
    std::vector<Index> cycle;
    Rational cycle_product;  // exact kappa(H) > 1
};
using KappaStarOneResult = std::variant<RescaledTU, NotRescalable>;

struct TUResult {
    bool tu = true;
    IndexSet rows;
    IndexSet cols;
    Rational det = 0;
};

struct IntRepresentation {
    RatMatrix matrix;
    IndexSet basis;
    bool identity_form = false;
};

ImbalanceReport imbalances(const Subspace& W);
Rational kappa_via_basis_forms(const RatMatrix& A);
CircuitRatioDigraph pairwise(const Subspace& W);
// Exact kappa(H) for a cycle given as a node sequence.
Rational cycle_product(const CircuitRatioDigraph& G, const std::vector<Index>& cycle);
KappaStarResult kappa_star(const Subspace& W);
// Checks kappa_ij d_j / d_i <= t for all pairs with equality somewhere.
bool verify_rescaling(const CircuitRatioDigraph& G, const GeoMeanValue& t, const std::vector<ScaledPower>& d);
// Calls f(cycle, kappa(H)) for every simple cycle of length >= 2 on the complete digraph.
void for_each_simple_cycle(const CircuitRatioDigraph& G,
                           const std::function<void(const std::vector<Index>&, const Rational&)>& f);
KappaEstimate estimate_kappa(const Subspace& W);
KappaStarOneResult check_kappa_star_one(const RatMatrix& A);
TUResult is_TU(const RatMatrix& A);
IntRepresentation int_representation(const Subspace& W);
double chibar(const RatMatrix& A);
double delta(const std::vector<Vec>& V);
struct KnuthResult {
    IndexSet basis;
    Index swaps = 0;
};
KnuthResult knuth_basis(const RatMatrix& A, const Rational& mu);
double diameter_bound(Index n, Index m, const Rational& kappa);

// All column bases of a full row rank matrix.
std::vector<IndexSet> all_bases(const RatMatrix& A);

}  // namespace circuitkit

#pragma once

#include "circuitkit/imbalance.hpp"
#include "circuitkit/lp.hpp"

namespace circuitkit {

enum class Rule { SteepestDescent, Dantzig, DeepestDescent, RatioCircuit, SupportCircuit, GuidedWalk };
// Basic: a SupportCircuit run stops once the iterate is a vertex.
enum class Termination { Optimal, IterationCap, Basic };

const char* to_string(Rule r);
const char* to_string(Termination t);
Rule parse_rule(const std::string& s);

struct TraceStep {
    ElementaryVector circuit;  // oriented direction g
    Rational alpha;
    Vec x;  // iterate after the step
    Rational objective;
    std::optional<Rational> epsilon;
    // Guided walk: step length measured against the chosen decomposition term.
    std::optional<Rational> relative_step;
};

struct AugmentationTrace {
    Rule rule = Rule::SteepestDescent;
    Vec x0;
    Rational objective0;
    std::optional<Rational> epsilon0;
    std::vector<TraceStep> steps;
    Termination terminated = Termination::Optimal;
    // Guided walk only: target basis in extended coordinates.
    IndexSet target_basis;

    const Vec& iterate(Index t) const { return t == 0 ? x0 : steps[t - 1].x; }
    std::optional<Rational> epsilon_at(Index t) const { return t == 0 ? epsilon0 : steps[t - 1].epsilon; }
    Index length() const { return steps.size(); }
};

// N(x) as a subset of [2n]: i when x_i < u_i, n + j when x_j > 0.
IndexSet residual_set(const Vec& x, const UpperBounds& u);
bool is_feasible_direction(const Vec& x, const Vec& g, const UpperBounds& u);

struct Direction {
    ElementaryVector circuit;
    Rational value;  // steepness, -<c,g>, or -alpha<c,g> depending on the rule
    Rational alpha;  // maximal step (deepest only)
};

Direction steepest_direction(const Subspace& W, const Vec& c, const Vec& x, const UpperBounds& u);
Direction dantzig_direction(const Subspace& W, const Vec& c, const Vec& x, const UpperBounds& u);
Direction deepest_direction(const Subspace& W, const Vec& c, const Vec& x, const UpperBounds& u);

// Weights: nullopt is +infinity (the variable is excluded).
using Weights = std::vector<std::optional<Rational>>;
ElementaryVector ratio_circuit(const Subspace& W, const Vec& c, const Weights& w_minus,
                               const Weights& w_plus = {});
ElementaryVector support_circuit(const Subspace& W, const Vec& c, const Vec& x, const UpperBounds& u);
Rational maximal_step(const Vec& x, const Vec& g, const UpperBounds& u);

// Optimum value of (8.4) restricted to N(x); nullopt when infeasible.
std::optional<Rational> steepest_lp_value(const RatMatrix& A, const Vec& c, const Vec& x, const UpperBounds& u);
Rational epsilon_of(const RatMatrix& A, const Vec& c, const Vec& x, const UpperBounds& u);

Index default_iteration_cap(Index n, Index m, const Rational& kappa);

struct RunOptions {
    std::optional<Index> cap;
    std::optional<Vec> start;
    bool record_epsilon = false;
};
AugmentationTrace run(const LPInstance& lp, Rule rule, const RunOptions& opts = {});

struct FreezeEvent {
    Index variable = 0;  // in [2n]
    Index from_step = 0;
};
struct AuditReport {
    Index steps = 0;
    Index windows_checked = 0;
    Rational decay_factor;
    std::vector<FreezeEvent> freezes;
};
AuditReport audit_trace(const AugmentationTrace& trace, const RatMatrix& A, const Vec& c, const UpperBounds& u);

std::set<Rational> steepness_spectrum(const Subspace& W, const Vec& c);
Rational prop81_bound(const Subspace& W, const Vec& c);

// Runs on the slack-extended form when some upper bound is finite; objectives are ||x_N||_1.
AugmentationTrace guided_walk(const LPInstance& lp, const Vec& x_start, const Vec& x_target);

struct FlowNetwork {
    Index nodes = 0;
    std::vector<std::pair<Index, Index>> arcs;
    std::vector<std::optional<Rational>> capacities;
    Vec costs;
    Vec demands;  // inflow minus outflow per node
};
LPInstance flow_to_lp(const FlowNetwork& g);
// Adds the (t,s) arc with cost -1 and infinite capacity; all other costs 0, demands 0.
FlowNetwork max_flow_encoding(Index nodes, const std::vector<std::pair<Index, Index>>& arcs,
                              const std::vector<std::optional<Rational>>& capacities, Index s, Index t);

}  // namespace circuitkit

#pragma once

#include "circuitkit/subspace.hpp"

namespace circuitkit {

// Per-coordinate upper bounds; nullopt means +infinity.
using UpperBounds = std::vector<std::optional<Rational>>;

UpperBounds no_upper_bounds(Index n);

struct LPInstance {
    enum class Form { Standard, Bounded, SubspaceForm };
    Form form = Form::Standard;
    // Standard/Bounded data; for SubspaceForm A = kernel_rep(W) and b = A d.
    RatMatrix A;
    Vec b;
    Vec c;
    UpperBounds u;
    std::optional<Subspace> W;
    Vec d;

    static LPInstance standard(RatMatrix A, Vec b, Vec c);
    static LPInstance bounded(RatMatrix A, Vec b, Vec c, UpperBounds u);
    static LPInstance subspace_form(const Subspace& W, Vec d, Vec c);

    Index num_vars() const { return A.cols(); }
    bool has_finite_bounds() const;
    void validate() const;
    bool is_feasible_point(const Vec& x) const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };
const char* to_string(LPStatus s);

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Vec primal;
    IndexSet basis;         // basic columns of the slack-extended standard form
    Vec dual;               // y for the rows of A
    Vec dual_upper;         // t >= 0 for the upper bounds (bounded form), c = A^T y - t + s
    Rational objective = 0;
    // Infeasible: y over the rows of the slack-extended system with y^T A_ext <= 0, y^T b_ext > 0.
    // Unbounded: ray r in x-space with A r = 0, r >= 0, r_i = 0 on bounded coordinates, c^T r < 0.
    Vec certificate;
};

LPResult solve(const LPInstance& lp);

// Slack-extended standard form: [A 0; I_F I] (x, s) = (b, u_F), variables nonnegative.
struct StandardForm {
    RatMatrix A;
    Vec b;
    Vec c;
    IndexSet bounded;  // coordinates with a finite upper bound, in slack order
    Index n_orig = 0;
};
StandardForm to_standard_form(const LPInstance& lp);

struct Vertex {
    Vec x;          // original coordinates
    IndexSet basis; // one basis of the extended standard form realizing it
};
std::vector<Vertex> vertices(const LPInstance& lp);
bool vertices_adjacent(const LPInstance& lp, const Vec& x, const Vec& y);
Index edge_graph_diameter(const LPInstance& lp);
Integer fractionality(const LPInstance& lp);

// Small modelling layer over the simplex: variables with bounds, linear rows, one objective.
class LpBuilder {
public:
    enum class Sense { LE, EQ, GE };
    using Terms = std::vector<std::pair<Index, Rational>>;

    Index add_var(bool nonneg = true);
    Index add_vars(Index k, bool nonneg = true);  // returns the first index
    void add_row(const Terms& terms, Sense sense, const Rational& rhs);
    void minimize(const Terms& terms) { objective_ = terms; sign_ = 1; }
    void maximize(const Terms& terms) { objective_ = terms; sign_ = -1; }

    struct Result {
        LPStatus status = LPStatus::Infeasible;
        Vec values;
        Rational objective = 0;
    };
    Result solve() const;
    Index num_vars() const { return nonneg_.size(); }

private:
    std::vector<bool> nonneg_;
    std::vector<std::tuple<Terms, Sense, Rational>> rows_;
    Terms objective_;
    int sign_ = 1;
};

}  // namespace circuitkit

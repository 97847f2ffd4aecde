#include "circuitkit/proximity.hpp"

#include <random>

#include "circuitkit/errors.hpp"

namespace circuitkit {

IndexSet lambda_set(const Vec& d, const Vec& c) {
    if (d.size() != c.size()) throw DimensionMismatch("d and c differ in length");
    IndexSet out;
    for (Index i = 0; i < d.size(); ++i)
        if (d[i] < 0 || c[i] > 0) out.push_back(i);
    return out;
}

namespace {

// x in {A x = rhs, x >= 0}, optionally on the face <c, x> = opt, with box upper bounds u.
void add_region(LpBuilder& lp, const RatMatrix& A, const Vec& rhs, const UpperBounds* u, const Vec* c,
                const Rational* opt) {
    const Index n = A.cols();
    lp.add_vars(n);
    for (Index r = 0; r < A.rows(); ++r) {
        LpBuilder::Terms row;
        for (Index j = 0; j < n; ++j)
            if (A(r, j) != 0) row.push_back({j, A(r, j)});
        lp.add_row(row, LpBuilder::Sense::EQ, rhs[r]);
    }
    if (u)
        for (Index j = 0; j < n; ++j)
            if ((*u)[j]) lp.add_row({{j, 1}}, LpBuilder::Sense::LE, *(*u)[j]);
    if (c) {
        LpBuilder::Terms row;
        for (Index j = 0; j < n; ++j)
            if ((*c)[j] != 0) row.push_back({j, (*c)[j]});
        lp.add_row(row, LpBuilder::Sense::EQ, *opt);
    }
}

struct Closest {
    Vec x;
    Rational dist_inf;
};

// Minimize ||x - center||_inf over the region, then ||x - center||_1 at that distance.
std::optional<Closest> closest_point(const RatMatrix& A, const Vec& rhs, const Vec* c, const Rational* opt,
                                     const Vec& center) {
    const Index n = A.cols();
    Rational tstar;
    {
        LpBuilder lp;
        add_region(lp, A, rhs, nullptr, c, opt);
        Index t = lp.add_var();
        for (Index i = 0; i < n; ++i) {
            lp.add_row({{i, 1}, {t, -1}}, LpBuilder::Sense::LE, center[i]);
            lp.add_row({{i, -1}, {t, -1}}, LpBuilder::Sense::LE, -center[i]);
        }
        lp.minimize({{t, 1}});
        auto res = lp.solve();
        if (res.status != LPStatus::Optimal) return std::nullopt;
        tstar = res.objective;
    }
    LpBuilder lp;
    add_region(lp, A, rhs, nullptr, c, opt);
    Index e = lp.add_vars(n);
    LpBuilder::Terms obj;
    for (Index i = 0; i < n; ++i) {
        lp.add_row({{i, 1}, {e + i, -1}}, LpBuilder::Sense::LE, center[i]);
        lp.add_row({{i, -1}, {e + i, -1}}, LpBuilder::Sense::LE, -center[i]);
        lp.add_row({{e + i, 1}}, LpBuilder::Sense::LE, tstar);
        obj.push_back({e + i, 1});
    }
    lp.minimize(obj);
    auto res = lp.solve();
    if (res.status != LPStatus::Optimal) throw std::logic_error("second proximity stage failed");
    Vec x(res.values.begin(), res.values.begin() + static_cast<std::ptrdiff_t>(n));
    return Closest{x, norm_inf(sub(x, center))};
}

std::string farkas_text(const Subspace& W, const Vec& d) {
    auto res = solve(LPInstance::subspace_form(W, d, zeros(W.ambient_dim())));
    std::string s = "Farkas y = (";
    for (Index i = 0; i < res.certificate.size(); ++i) s += (i ? ", " : "") + to_string(res.certificate[i]);
    return s + ")";
}

ProximityWitness make_witness(Vec x, const Vec& d, Rational bound) {
    Rational dist = norm_inf(sub(x, d));
    return ProximityWitness{std::move(x), bound, dist, bound - dist};
}

}  // namespace

ProximityWitness hoffman_feasibility_witness(const Subspace& W, const Vec& d) {
    if (d.size() != W.ambient_dim()) throw DimensionMismatch("d length differs from ambient dimension");
    const RatMatrix& A = W.kernel_rep();
    auto cp = closest_point(A, A * d, nullptr, nullptr, d);
    if (!cp) throw Infeasible("x in W + d, x >= 0 is empty; " + farkas_text(W, d));
    Rational bound = imbalances(W).kappa * norm1(negative_part(d));
    return make_witness(cp->x, d, bound);
}

ProximityWitness hoffman_opt_witness(const Subspace& W, const Vec& d, const Vec& c) {
    if (d.size() != W.ambient_dim() || c.size() != d.size()) throw DimensionMismatch("d, c and W disagree");
    for (const auto& ci : c)
        if (ci < 0) throw NegativeCost("cost must be nonnegative");
    auto res = solve(LPInstance::subspace_form(W, d, c));
    if (res.status == LPStatus::Infeasible) throw Infeasible("LP(W, d, c) is infeasible; " + farkas_text(W, d));
    if (res.status == LPStatus::Unbounded) throw Unbounded("LP(W, d, c) is unbounded");
    const RatMatrix& A = W.kernel_rep();
    auto cp = closest_point(A, A * d, &c, &res.objective, d);
    if (!cp) throw std::logic_error("optimal face unexpectedly empty");
    Rational bound = imbalances(W).kappa * norm1(restrict_to(d, lambda_set(d, c)));
    return make_witness(cp->x, d, bound);
}

TransferResult transfer_bound(const Subspace& W, const Vec& x_tilde, const Vec& s, const Vec& d, bool verify) {
    const Index n = W.ambient_dim();
    if (x_tilde.size() != n || s.size() != n || d.size() != n) throw DimensionMismatch("vector lengths differ");
    for (Index i = 0; i < n; ++i)
        if (x_tilde[i] < 0 || s[i] < 0 || x_tilde[i] * s[i] != 0)
            throw NotOptimalPair("x_tilde and s must be nonnegative and complementary");
    TransferResult out;
    Rational kappa = imbalances(W).kappa;
    Vec p = project(dual(W), sub(d, x_tilde));
    out.bound = (kappa + 1) * norm1(p);
    for (Index i = 0; i < n; ++i)
        if (x_tilde[i] > out.bound) out.R.push_back(i);
    if (!verify) return out;

    auto res = solve(LPInstance::subspace_form(W, d, s));
    if (res.status == LPStatus::Infeasible) throw Infeasible("LP(W, d, s) is infeasible");
    const RatMatrix& A = W.kernel_rep();
    auto cp = closest_point(A, A * d, &s, &res.objective, x_tilde);
    if (!cp) throw std::logic_error("optimal face unexpectedly empty");
    out.attained = cp->dist_inf;
    out.x_star = cp->x;

    // Dual optimal face: s' = s + A^T y >= 0 with <s - s', d> = OPT.
    const Index m = A.rows();
    const Vec Ad = A * d;
    for (Index i : out.R) {
        LpBuilder lp;
        Index y0 = lp.add_vars(m, false);
        for (Index j = 0; j < n; ++j) {
            LpBuilder::Terms row;
            for (Index r = 0; r < m; ++r)
                if (A(r, j) != 0) row.push_back({y0 + r, A(r, j)});
            lp.add_row(row, LpBuilder::Sense::GE, -s[j]);
        }
        LpBuilder::Terms val;
        for (Index r = 0; r < m; ++r)
            if (Ad[r] != 0) val.push_back({y0 + r, Ad[r]});
        lp.add_row(val, LpBuilder::Sense::EQ, -res.objective);
        LpBuilder::Terms obj;
        for (Index r = 0; r < m; ++r)
            if (A(r, i) != 0) obj.push_back({y0 + r, A(r, i)});
        lp.maximize(obj);
        auto dr = lp.solve();
        if (dr.status == LPStatus::Unbounded) throw AuditFailure("dual-vanishing", i, "s_i unbounded on the dual face");
        if (dr.status != LPStatus::Optimal) throw std::logic_error("dual optimal face is empty");
        out.max_dual_on_R.push_back(s[i] + dr.objective);
    }
    return out;
}

FixingResult fixing_sets_bounds(const RatMatrix& A, const Vec& b, const UpperBounds& u, const Vec& c1,
                                const Vec& c2, const Vec& x1, const Vec& y1, bool verify) {
    const Index n = A.cols(), m = A.rows();
    if (b.size() != m || y1.size() != m || u.size() != n || c1.size() != n || c2.size() != n || x1.size() != n)
        throw DimensionMismatch("fixing inputs have inconsistent lengths");
    if (A * x1 != b) throw NotOptimalPair("x1 violates A x = b");
    Vec ay(n, Rational(0));
    for (Index i = 0; i < n; ++i) {
        if (x1[i] < 0 || (u[i] && x1[i] > *u[i])) throw NotOptimalPair("x1 violates its bounds");
        for (Index r = 0; r < m; ++r) ay[i] += A(r, i) * y1[r];
        if ((!u[i] || x1[i] < *u[i]) && ay[i] > c1[i]) throw NotOptimalPair("slackness fails below the upper bound");
        if (x1[i] > 0 && ay[i] < c1[i]) throw NotOptimalPair("slackness fails above zero");
    }
    FixingResult out;
    out.threshold = (imbalances(Subspace::kernel_of(A)).kappa + 1) * norm1(sub(c1, c2));
    for (Index i = 0; i < n; ++i) {
        if (ay[i] < c1[i] - out.threshold) out.R0.push_back(i);
        if (ay[i] > c1[i] + out.threshold) out.Ru.push_back(i);
    }
    if (!verify) return out;
    auto res = solve(LPInstance::bounded(A, b, c2, u));
    if (res.status != LPStatus::Optimal) throw Infeasible("LP for c2 has no optimum");
    auto extreme = [&](Index i, bool maximize) {
        LpBuilder lp;
        add_region(lp, A, b, &u, &c2, &res.objective);
        if (maximize) lp.maximize({{i, 1}});
        else lp.minimize({{i, 1}});
        auto r = lp.solve();
        if (r.status != LPStatus::Optimal) throw std::logic_error("optimal face scan failed");
        return r.values[i];
    };
    for (Index i : out.R0) out.max_on_R0.push_back(extreme(i, true));
    for (Index i : out.Ru) out.min_on_Ru.push_back(extreme(i, false));
    return out;
}

namespace {

Vec random_cost(Index n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dist(-4, 4);
    Vec c(n);
    for (auto& ci : c) ci = dist(rng);
    return c;
}

ApxSolution apx_impl(const Subspace& W, const Vec& d, const Vec& c, const Rational& epsilon, std::uint64_t seed,
                     const Rational& kappa) {
    const Index n = W.ambient_dim();
    if (d.size() != n || c.size() != n) throw DimensionMismatch("d, c and W disagree");
    if (epsilon < 0) throw BadParameters("epsilon must be nonnegative");
    auto res = solve(LPInstance::subspace_form(W, d, c));
    if (res.status == LPStatus::Infeasible) throw Infeasible("LP(W, d, c) is infeasible");
    if (res.status == LPStatus::Unbounded) throw Unbounded("LP(W, d, c) is unbounded");
    ApxSolution out;
    out.epsilon = epsilon;
    out.seed = seed;
    out.x_star = res.primal;
    out.opt = res.objective;
    out.y = out.x_star;
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 32; ++attempt) {
        auto r = solve(LPInstance::subspace_form(W, d, random_cost(n, rng)));
        if (r.status == LPStatus::Optimal && r.primal != out.x_star) {
            out.y = r.primal;
            break;
        }
    }
    out.t = 0;
    out.x_tilde = out.x_star;
    if (epsilon == 0 || out.y == out.x_star) return out;

    const Vec dir = sub(out.x_star, out.y);
    const Rational budget_sq = epsilon * epsilon * norm2_sq(d) / 4;
    std::optional<Rational> min_pos;
    Rational y_zero = 0;
    for (Index i = 0; i < n; ++i) {
        if (out.x_star[i] > 0) {
            if (!min_pos || out.x_star[i] < *min_pos) min_pos = out.x_star[i];
        } else {
            y_zero += abs(out.y[i]);
        }
    }
    const Rational spread = norm_inf(dir) + kappa * y_zero;
    Rational t = 1;
    for (int k = 0; k <= 400; ++k, t /= 2) {
        Vec xt = axpy(out.x_star, t, dir);
        if (norm2_sq(negative_part(xt)) > budget_sq) continue;
        if (min_pos && t * spread > *min_pos / 2) continue;
        out.t = t;
        out.x_tilde = std::move(xt);
        break;
    }
    return out;
}

}  // namespace

ApxSolution apx_oracle(const Subspace& W, const Vec& d, const Vec& c, const Rational& epsilon, std::uint64_t seed) {
    return apx_impl(W, d, c, epsilon, seed, imbalances(W).kappa);
}

bool apx_conditions_hold(const ApxSolution& s, const Vec& d, const Vec& c) {
    const Rational eps_sq = s.epsilon * s.epsilon;
    if (norm2_sq(negative_part(s.x_tilde)) > eps_sq * norm2_sq(d)) return false;
    Rational excess = dot(c, s.x_tilde) - s.opt;
    return excess <= 0 || excess * excess <= eps_sq * norm2_sq(c) * norm2_sq(d);
}

namespace {

Vec feasibility_rec(const Subspace& W, Vec d, const Rational& epsilon, std::uint64_t seed, Index depth,
                    Index max_depth, FeasibilityRun& run) {
    const Index n = W.ambient_dim();
    if (depth > max_depth) throw AuditFailure("recursion-depth", depth, "exceeds dim of the orthogonal complement");
    run.depth = std::max(run.depth, depth);
    d = sub(d, project(W, d));  // Adjust: keep only the W-perp component
    if (is_zero(d)) return zeros(n);

    Rational kappa = imbalances(W).kappa;
    ApxSolution apx;
    try {
        apx = apx_impl(W, d, zeros(n), epsilon, seed + depth, kappa);
    } catch (const Infeasible& e) {
        throw OracleInfeasible(e.what());
    }
    ++run.oracle_calls;
    const Vec& xt = apx.x_tilde;
    Vec neg = negative_part(xt);
    if (is_zero(neg)) return xt;

    const Rational thr = kappa * norm1(neg);
    IndexSet I, J;
    for (Index i = 0; i < n; ++i) (xt[i] >= thr ? I : J).push_back(i);
    if (I.empty()) throw AuditFailure("progress", depth, "no large coordinate in the oracle output");

    Vec z = feasibility_rec(minor(W, J, MinorMode::Project), restrict_to(d, J), epsilon, seed, depth + 1, max_depth, run);
    Vec w = lift_min_norm(W, J, sub(z, restrict_to(xt, J)));
    Vec x = add(xt, w);
    if (restrict_to(x, J) != z) throw std::logic_error("lift does not reproduce the recursive solution");
    for (Index i : I)
        if (x[i] < 0) throw AuditFailure("lifting", depth, "lifted coordinate " + std::to_string(i) + " is negative");
    return x;
}

}  // namespace

FeasibilityRun feasibility_simplified(const Subspace& W, const Vec& d, const Rational& epsilon, std::uint64_t seed) {
    const Index n = W.ambient_dim();
    if (d.size() != n) throw DimensionMismatch("d length differs from ambient dimension");
    if (epsilon < 0) throw BadParameters("epsilon must be nonnegative");
    Rational base = Rational(imbalances(W).kappa_bar) + Rational(long(n));
    if (epsilon * base * base * base > 1) throw BadParameters("epsilon exceeds 1/(kappa_bar + n)^3");
    FeasibilityRun run;
    run.x = feasibility_rec(W, d, epsilon, seed, 0, n - W.dim(), run);
    if (!W.contains(sub(run.x, d))) throw std::logic_error("output left the affine space W + d");
    for (const auto& xi : run.x)
        if (xi < 0) throw std::logic_error("output is not nonnegative");
    return run;
}

}  // namespace circuitkit

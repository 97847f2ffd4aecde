#include "circuitkit/augment.hpp"

#include <cmath>
#include <functional>

#include "circuitkit/errors.hpp"

namespace circuitkit {

const char* to_string(Rule r) {
    switch (r) {
        case Rule::SteepestDescent: return "steepest";
        case Rule::Dantzig: return "dantzig";
        case Rule::DeepestDescent: return "deepest";
        case Rule::RatioCircuit: return "ratio";
        case Rule::SupportCircuit: return "support";
        case Rule::GuidedWalk: return "guided";
    }
    return "?";
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::Optimal: return "optimal";
        case Termination::IterationCap: return "iteration_cap";
        case Termination::Basic: return "basic";
    }
    return "?";
}

Rule parse_rule(const std::string& s) {
    for (Rule r : {Rule::SteepestDescent, Rule::Dantzig, Rule::DeepestDescent, Rule::RatioCircuit,
                   Rule::SupportCircuit, Rule::GuidedWalk})
        if (s == to_string(r)) return r;
    throw InvalidArgument("unknown rule '" + s + "'");
}

IndexSet residual_set(const Vec& x, const UpperBounds& u) {
    const Index n = x.size();
    IndexSet N;
    for (Index i = 0; i < n; ++i)
        if (!u[i] || x[i] < *u[i]) N.push_back(i);
    for (Index j = 0; j < n; ++j)
        if (x[j] > 0) N.push_back(n + j);
    return N;
}

bool is_feasible_direction(const Vec& x, const Vec& g, const UpperBounds& u) {
    for (Index i = 0; i < x.size(); ++i) {
        if (g[i] > 0 && u[i] && x[i] >= *u[i]) return false;
        if (g[i] < 0 && x[i] <= 0) return false;
    }
    return true;
}

namespace {

// Coordinates strictly between their bounds.
IndexSet free_set(const Vec& x, const UpperBounds& u) {
    IndexSet F;
    for (Index i = 0; i < x.size(); ++i)
        if (x[i] > 0 && (!u[i] || x[i] < *u[i])) F.push_back(i);
    return F;
}

ElementaryVector negated(const ElementaryVector& g) {
    ElementaryVector h = g;
    for (auto& e : h.vector) e = -e;
    return h;
}

// Best cost-decreasing feasible circuit under score; strict improvement keeps the lex-first support.
std::optional<Direction> scan(const Subspace& W, const Vec& c, const Vec& x, const UpperBounds& u,
                              const std::function<Rational(const Vec&, const Rational&, Rational&)>& score) {
    std::optional<Direction> best;
    for (const auto& circ : W.circuits()) {
        for (int s : {1, -1}) {
            ElementaryVector h = s > 0 ? circ : negated(circ);
            Vec hv = h.as_rational();
            Rational ch = dot(c, hv);
            if (ch >= 0 || !is_feasible_direction(x, hv, u)) continue;
            Rational alpha = 0;
            Rational v = score(hv, ch, alpha);
            if (!best || v > best->value) best = Direction{h, v, alpha};
        }
    }
    return best;
}

void check_dims(const Subspace& W, const Vec& c, const Vec& x, const UpperBounds& u) {
    const Index n = W.ambient_dim();
    if (c.size() != n || x.size() != n || u.size() != n)
        throw DimensionMismatch("c, x and u must match the ambient dimension");
}

}  // namespace

Direction steepest_direction(const Subspace& W, const Vec& c, const Vec& x, const UpperBounds& u) {
    check_dims(W, c, x, u);
    auto best = scan(W, c, x, u, [](const Vec& h, const Rational& ch, Rational&) { return Rational(-ch / norm1(h)); });
    auto lp = steepest_lp_value(W.kernel_rep(), c, x, u);
    if (!best) {
        if (lp && *lp < 0) throw std::logic_error("steepest: LP finds a descent circuit the scan missed");
        throw AlreadyOptimal("no augmenting circuit at x");
    }
    if (!lp || *lp != -best->value)
        throw std::logic_error("steepest: circuit scan and LP optimum disagree");
    return *best;
}

Direction dantzig_direction(const Subspace& W, const Vec& c, const Vec& x, const UpperBounds& u) {
    check_dims(W, c, x, u);
    auto best = scan(W, c, x, u, [](const Vec&, const Rational& ch, Rational&) { return Rational(-ch); });
    if (!best) throw AlreadyOptimal("no augmenting circuit at x");
    return *best;
}

Direction deepest_direction(const Subspace& W, const Vec& c, const Vec& x, const UpperBounds& u) {
    check_dims(W, c, x, u);
    auto best = scan(W, c, x, u, [&](const Vec& h, const Rational& ch, Rational& alpha) {
        alpha = maximal_step(x, h, u);
        return Rational(-alpha * ch);
    });
    if (!best) throw AlreadyOptimal("no augmenting circuit at x");
    return *best;
}

Rational maximal_step(const Vec& x, const Vec& g, const UpperBounds& u) {
    if (x.size() != g.size() || u.size() != g.size()) throw DimensionMismatch("x, g and u differ in length");
    std::optional<Rational> alpha;
    auto take = [&](const Rational& a) {
        if (!alpha || a < *alpha) alpha = a;
    };
    for (Index i = 0; i < g.size(); ++i) {
        if (g[i] < 0) take(x[i] / -g[i]);
        else if (g[i] > 0 && u[i]) take((*u[i] - x[i]) / g[i]);
    }
    if (!alpha) throw UnboundedDirection("no constraint limits the step");
    if (*alpha <= 0) throw InvalidArgument("direction is not augmenting at x");
    return *alpha;
}

ElementaryVector ratio_circuit(const Subspace& W, const Vec& c, const Weights& w_minus, const Weights& w_plus) {
    const Index n = W.ambient_dim();
    if (c.size() != n || w_minus.size() != n || (!w_plus.empty() && w_plus.size() != n))
        throw DimensionMismatch("weights and cost must match the ambient dimension");
    const RatMatrix& A = W.kernel_rep();
    LpBuilder lp;
    std::vector<std::optional<Index>> zp(n), zm(n);
    for (Index i = 0; i < n; ++i) {
        if (w_plus.empty() || w_plus[i]) zp[i] = lp.add_var();
        if (w_minus[i]) zm[i] = lp.add_var();
    }
    for (Index r = 0; r < A.rows(); ++r) {
        LpBuilder::Terms row;
        for (Index i = 0; i < n; ++i) {
            if (A(r, i) == 0) continue;
            if (zp[i]) row.push_back({*zp[i], A(r, i)});
            if (zm[i]) row.push_back({*zm[i], -A(r, i)});
        }
        lp.add_row(row, LpBuilder::Sense::EQ, 0);
    }
    LpBuilder::Terms weight, cost;
    for (Index i = 0; i < n; ++i) {
        if (zp[i]) {
            if (!w_plus.empty() && *w_plus[i] != 0) weight.push_back({*zp[i], *w_plus[i]});
            if (c[i] != 0) cost.push_back({*zp[i], c[i]});
        }
        if (zm[i]) {
            if (*w_minus[i] != 0) weight.push_back({*zm[i], *w_minus[i]});
            if (c[i] != 0) cost.push_back({*zm[i], -c[i]});
        }
    }
    lp.add_row(weight, LpBuilder::Sense::LE, 1);
    lp.minimize(cost);
    auto res = lp.solve();
    if (res.status == LPStatus::Unbounded) throw UnboundedDirection("a zero-weight circuit decreases the cost");
    if (res.status != LPStatus::Optimal || res.objective >= 0) throw NoAugmentingCircuit("ratio problem has optimum 0");
    Vec z = zeros(n);
    for (Index i = 0; i < n; ++i) {
        if (zp[i]) z[i] += res.values[*zp[i]];
        if (zm[i]) z[i] -= res.values[*zm[i]];
    }
    // A basic optimum is already elementary; decomposing keeps this robust to degenerate output.
    auto dec = conformal_decompose(W, z);
    const ConformalTerm* best = nullptr;
    Rational best_cost;
    for (const auto& t : dec.terms) {
        Rational v = t.coefficient * dot(c, t.circuit.as_rational());
        if (!best || v < best_cost) {
            best = &t;
            best_cost = v;
        }
    }
    if (!best || best_cost >= 0) throw std::logic_error("ratio circuit: no cost-decreasing term");
    return best->circuit;
}

ElementaryVector support_circuit(const Subspace& W, const Vec& c, const Vec& x, const UpperBounds& u) {
    check_dims(W, c, x, u);
    const IndexSet F = free_set(x, u);
    for (const auto& g : W.circuits()) {
        if (!is_subset(g.support, F)) continue;
        ElementaryVector h = g;
        Rational cg = dot(c, g.as_rational());
        if (cg > 0) h = negated(g);
        if (cg == 0) {
            // Pick the orientation whose maximal step is finite.
            bool limited = false;
            for (Index i : g.support)
                if (g.vector[i] < 0 || u[i]) limited = true;
            if (!limited) h = negated(g);
        }
        return h;
    }
    throw AlreadyBasic("free coordinates of x are linearly independent");
}

std::optional<Rational> steepest_lp_value(const RatMatrix& A, const Vec& c, const Vec& x, const UpperBounds& u) {
    const Index n = A.cols();
    if (c.size() != n || x.size() != n || u.size() != n) throw DimensionMismatch("c, x, u must have A's column count");
    IndexSet N = residual_set(x, u);
    if (N.empty()) return std::nullopt;
    LpBuilder lp;
    Index first = lp.add_vars(N.size());
    for (Index r = 0; r < A.rows(); ++r) {
        LpBuilder::Terms row;
        for (Index k = 0; k < N.size(); ++k) {
            Index i = N[k] < n ? N[k] : N[k] - n;
            if (A(r, i) == 0) continue;
            row.push_back({first + k, N[k] < n ? A(r, i) : Rational(-A(r, i))});
        }
        lp.add_row(row, LpBuilder::Sense::EQ, 0);
    }
    LpBuilder::Terms ones, cost;
    for (Index k = 0; k < N.size(); ++k) {
        ones.push_back({first + k, 1});
        Index i = N[k] < n ? N[k] : N[k] - n;
        if (c[i] != 0) cost.push_back({first + k, N[k] < n ? c[i] : Rational(-c[i])});
    }
    lp.add_row(ones, LpBuilder::Sense::EQ, 1);
    lp.minimize(cost);
    auto res = lp.solve();
    if (res.status != LPStatus::Optimal) return std::nullopt;
    return res.objective;
}

Rational epsilon_of(const RatMatrix& A, const Vec& c, const Vec& x, const UpperBounds& u) {
    auto v = steepest_lp_value(A, c, x, u);
    if (!v || *v >= 0) return 0;
    return -*v;
}

Index default_iteration_cap(Index n, Index m, const Rational& kappa) {
    double k = kappa.get_d();
    double cap = 10.0 * double(n) * double(n) * double(std::max<Index>(m, 1)) * k * (std::log2(k + double(n)) + 1.0);
    if (!(cap < 1e9)) return Index(1000000000);
    return std::max<Index>(Index(std::ceil(cap)), 1);
}

namespace {

Vec phase_one_point(const LPInstance& lp) {
    LPInstance feas = lp;
    feas.c = zeros(lp.num_vars());
    auto res = solve(feas);
    if (res.status == LPStatus::Infeasible) throw Infeasible("LP has no feasible point");
    return res.primal;
}

}  // namespace

AugmentationTrace run(const LPInstance& lp, Rule rule, const RunOptions& opts) {
    lp.validate();
    const Index n = lp.num_vars();
    Vec x = opts.start ? *opts.start : phase_one_point(lp);
    if (x.size() != n) throw DimensionMismatch("start point length differs from variable count");
    if (!lp.is_feasible_point(x)) throw InvalidArgument("start point is infeasible");

    if (rule == Rule::GuidedWalk) {
        auto res = solve(lp);
        if (res.status == LPStatus::Unbounded) throw Unbounded("LP is unbounded");
        return guided_walk(lp, x, res.primal);
    }

    Subspace W = lp.W ? *lp.W : Subspace::kernel_of(lp.A);
    const RatMatrix& A = W.kernel_rep();
    const bool record = opts.record_epsilon || rule == Rule::SteepestDescent;
    Index cap = opts.cap ? *opts.cap : default_iteration_cap(n, A.rows(), imbalances(W).kappa);

    AugmentationTrace trace;
    trace.rule = rule;
    trace.x0 = x;
    trace.objective0 = dot(lp.c, x);
    if (record) trace.epsilon0 = epsilon_of(A, lp.c, x, lp.u);

    bool stopped = false;
    while (trace.steps.size() < cap) {
        ElementaryVector g;
        try {
            switch (rule) {
                case Rule::SteepestDescent: g = steepest_direction(W, lp.c, x, lp.u).circuit; break;
                case Rule::Dantzig: g = dantzig_direction(W, lp.c, x, lp.u).circuit; break;
                case Rule::DeepestDescent: g = deepest_direction(W, lp.c, x, lp.u).circuit; break;
                case Rule::RatioCircuit: {
                    Weights wm(n), wp(n);
                    for (Index i = 0; i < n; ++i) {
                        if (x[i] > 0) wm[i] = Rational(1 / x[i]);
                        if (!lp.u[i]) wp[i] = Rational(0);
                        else if (x[i] < *lp.u[i]) wp[i] = Rational(1 / (*lp.u[i] - x[i]));
                    }
                    g = ratio_circuit(W, lp.c, wm, wp);
                    break;
                }
                case Rule::SupportCircuit: g = support_circuit(W, lp.c, x, lp.u); break;
                case Rule::GuidedWalk: break;
            }
        } catch (const AlreadyOptimal&) {
            trace.terminated = Termination::Optimal;
            stopped = true;
        } catch (const NoAugmentingCircuit&) {
            trace.terminated = Termination::Optimal;
            stopped = true;
        } catch (const AlreadyBasic&) {
            trace.terminated = Termination::Basic;
            stopped = true;
        }
        if (stopped) break;

        Vec gv = g.as_rational();
        Rational alpha;
        try {
            alpha = maximal_step(x, gv, lp.u);
        } catch (const UnboundedDirection&) {
            throw Unbounded("augmenting circuit with unlimited step");
        }
        Vec next = axpy(x, alpha, gv);
        if (!lp.is_feasible_point(next)) throw std::logic_error("augmentation left the feasible region");
        Rational obj = dot(lp.c, next);
        Rational prev = trace.steps.empty() ? trace.objective0 : trace.steps.back().objective;
        if (rule == Rule::SupportCircuit) {
            if (obj > prev || free_set(next, lp.u).size() >= free_set(x, lp.u).size())
                throw std::logic_error("support step did not shrink the free set");
        } else if (obj >= prev) {
            throw std::logic_error("augmentation did not decrease the objective");
        }
        x = std::move(next);
        TraceStep st{g, alpha, x, obj, std::nullopt, std::nullopt};
        if (record) st.epsilon = epsilon_of(A, lp.c, x, lp.u);
        trace.steps.push_back(std::move(st));
    }
    if (!stopped) {
        trace.terminated = Termination::IterationCap;
        return trace;
    }
    if (trace.terminated == Termination::Optimal) {
        auto res = solve(lp);
        Rational final_obj = trace.steps.empty() ? trace.objective0 : trace.steps.back().objective;
        if (res.status != LPStatus::Optimal || res.objective != final_obj)
            throw std::logic_error("augmentation optimum disagrees with the simplex");
    }
    return trace;
}

AuditReport audit_trace(const AugmentationTrace& trace, const RatMatrix& A, const Vec& c, const UpperBounds& u) {
    const Index n = A.cols();
    const Index T = trace.length();
    AuditReport rep;
    rep.steps = T;
    const Index m = A.rows();
    Rational kappa = imbalances(Subspace::kernel_of(A)).kappa;
    rep.decay_factor = m == 0 ? Rational(0) : Rational(1 - 1 / (1 + (m - 1) * kappa));

    const Vec b = A * trace.x0;
    std::vector<Rational> eps(T + 1);
    std::vector<IndexSet> N(T + 1);
    for (Index t = 0; t <= T; ++t) {
        const Vec& x = trace.iterate(t);
        if (x.size() != n) throw AuditFailure("feasibility", t, "iterate has wrong length");
        if (A * x != b) throw AuditFailure("feasibility", t, "iterate violates the equality constraints");
        for (Index i = 0; i < n; ++i)
            if (x[i] < 0 || (u[i] && x[i] > *u[i])) throw AuditFailure("feasibility", t, "iterate violates a bound");
        if (t > 0 && dot(c, x) >= dot(c, trace.iterate(t - 1)))
            throw AuditFailure("objective", t, "objective did not decrease");
        eps[t] = epsilon_of(A, c, x, u);
        N[t] = residual_set(x, u);
        auto stored = trace.epsilon_at(t);
        if (stored && *stored != eps[t])
            throw AuditFailure("epsilon-record", t, "stored " + to_string(*stored) + ", recomputed " + to_string(eps[t]));
    }
    for (Index t = 1; t <= T; ++t)
        if (eps[t] > eps[t - 1])
            throw AuditFailure("epsilon-monotone", t, to_string(eps[t]) + " > " + to_string(eps[t - 1]));
    for (Index t = 0; t + n <= T; ++t) {
        ++rep.windows_checked;
        if (eps[t + n] > rep.decay_factor * eps[t])
            throw AuditFailure("window-decay", t + n,
                               to_string(eps[t + n]) + " > " + to_string(rep.decay_factor) + " * " + to_string(eps[t]));
    }
    for (Index j = 0; j < 2 * n; ++j) {
        // j is frozen from step t if it is absent from every later residual set.
        Index from = T + 1;
        for (Index t = T + 1; t-- > 0;) {
            if (std::binary_search(N[t].begin(), N[t].end(), j)) break;
            from = t;
        }
        if (from >= 1 && from <= T) rep.freezes.push_back({j, from});
    }
    return rep;
}

std::set<Rational> steepness_spectrum(const Subspace& W, const Vec& c) {
    if (c.size() != W.ambient_dim()) throw DimensionMismatch("cost length differs from ambient dimension");
    std::set<Rational> out;
    for (const auto& g : W.circuits()) {
        Vec gv = g.as_rational();
        Rational v = dot(c, gv) / norm1(gv);
        out.insert(v);
        out.insert(-v);
    }
    if (out.empty()) out.insert(0);
    return out;
}

Rational prop81_bound(const Subspace& W, const Vec& c) {
    const Index n = W.ambient_dim();
    const Index m = n - W.dim();
    Rational k = Rational(imbalances(W).kappa_bar) * Rational(long(n - m + 1));
    return norm_inf(c) * k * (k + 1) / 2;
}

AugmentationTrace guided_walk(const LPInstance& lp, const Vec& x_start, const Vec& x_target) {
    lp.validate();
    if (!lp.is_feasible_point(x_start) || !lp.is_feasible_point(x_target))
        throw InvalidArgument("start and target must be feasible");
    StandardForm sf = to_standard_form(lp);
    auto extend = [&](const Vec& x) {
        Vec e = x;
        for (Index k : sf.bounded) e.push_back(*lp.u[k] - x[k]);
        return e;
    };
    Vec X = extend(x_start), T = extend(x_target);
    const Index N_ext = sf.A.cols();

    IndexSet B = support(T);
    if (rank(sf.A.select_cols(B)) != B.size()) throw TargetNotBasic("target support columns are dependent");
    const Index r = rank(sf.A);
    for (Index j = 0; j < N_ext && B.size() < r; ++j) {
        if (std::binary_search(B.begin(), B.end(), j)) continue;
        IndexSet B2 = B;
        B2.insert(std::upper_bound(B2.begin(), B2.end(), j), j);
        if (rank(sf.A.select_cols(B2)) == B2.size()) B = std::move(B2);
    }
    const IndexSet N = complement(B, N_ext);
    Subspace W = Subspace::kernel_of(sf.A);
    const UpperBounds free_u = no_upper_bounds(N_ext);

    AugmentationTrace trace;
    trace.rule = Rule::GuidedWalk;
    trace.x0 = X;
    trace.objective0 = norm1(restrict_to(X, N));
    trace.target_basis = B;
    while (X != T) {
        auto dec = conformal_decompose(W, sub(T, X));
        const ConformalTerm* pick = nullptr;
        Rational best;
        for (const auto& t : dec.terms) {
            Rational v = t.coefficient * norm1(restrict_to(t.circuit.as_rational(), N));
            if (!pick || v > best) {
                pick = &t;
                best = v;
            }
        }
        Vec g = pick->circuit.as_rational();
        Rational alpha = maximal_step(X, g, free_u);
        X = axpy(X, alpha, g);
        Rational obj = norm1(restrict_to(X, N));
        trace.steps.push_back(TraceStep{pick->circuit, alpha, X, obj, std::nullopt, Rational(alpha / pick->coefficient)});
        if (trace.steps.size() > 100000) throw std::logic_error("guided walk failed to converge");
    }
    return trace;
}

LPInstance flow_to_lp(const FlowNetwork& g) {
    const Index E = g.arcs.size();
    if (g.capacities.size() != E || g.costs.size() != E || g.demands.size() != g.nodes)
        throw DimensionMismatch("flow network arrays have inconsistent lengths");
    Rational total = 0;
    for (const auto& d : g.demands) total += d;
    if (total != 0) throw UnbalancedDemands("demands sum to " + to_string(total));
    RatMatrix A(g.nodes, E);
    for (Index e = 0; e < E; ++e) {
        auto [tail, head] = g.arcs[e];
        if (tail >= g.nodes || head >= g.nodes || tail == head) throw InvalidArgument("bad arc endpoints");
        A(tail, e) -= 1;
        A(head, e) += 1;
    }
    return LPInstance::bounded(A, g.demands, g.costs, g.capacities);
}

FlowNetwork max_flow_encoding(Index nodes, const std::vector<std::pair<Index, Index>>& arcs,
                              const std::vector<std::optional<Rational>>& capacities, Index s, Index t) {
    if (capacities.size() != arcs.size()) throw DimensionMismatch("one capacity per arc");
    if (s == t || s >= nodes || t >= nodes) throw InvalidArgument("bad source or sink");
    FlowNetwork g;
    g.nodes = nodes;
    g.arcs = arcs;
    g.capacities = capacities;
    g.costs = zeros(arcs.size());
    g.arcs.push_back({t, s});
    g.capacities.push_back(std::nullopt);
    g.costs.push_back(-1);
    g.demands = zeros(nodes);
    return g;
}

}  // namespace circuitkit

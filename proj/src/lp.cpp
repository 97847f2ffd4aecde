#include "circuitkit/lp.hpp"

#include <deque>
#include <map>
#include <set>

#include "circuitkit/errors.hpp"

namespace circuitkit {

namespace {

struct SimplexOut {
    LPStatus status = LPStatus::Infeasible;
    Vec x;
    IndexSet basis;
    Vec y;
    Vec farkas;
    Vec ray;
    Rational objective = 0;
};

class Tableau {
public:
    Tableau(Index m, Index ncols) : m_(m), n_(ncols), t_(m, Vec(ncols + 1, Rational(0))), basis_(m) {}

    Rational& at(Index i, Index j) { return t_[i][j]; }
    Rational& rhs(Index i) { return t_[i][n_]; }
    Index rows() const { return m_; }
    Index& basic(Index i) { return basis_[i]; }
    const std::vector<Index>& basis() const { return basis_; }

    void pivot(Index r, Index j, Vec& cost_row) {
        Rational inv = 1 / t_[r][j];
        for (auto& x : t_[r])
            if (x != 0) x *= inv;
        for (Index i = 0; i < m_; ++i) {
            if (i == r || t_[i][j] == 0) continue;
            Rational f = t_[i][j];
            for (Index k = 0; k <= n_; ++k)
                if (t_[r][k] != 0) t_[i][k] -= f * t_[r][k];
        }
        if (cost_row[j] != 0) {
            Rational f = cost_row[j];
            for (Index k = 0; k <= n_; ++k)
                if (t_[r][k] != 0) cost_row[k] -= f * t_[r][k];
        }
        basis_[r] = j;
    }

    void erase_row(Index r) {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
    }

    // Reduced costs c_j - c_B^T T_j over the first ncols columns, last entry -objective.
    Vec cost_row(const Vec& c) const {
        Vec z(n_ + 1, Rational(0));
        for (Index j = 0; j < n_; ++j) z[j] = c[j];
        for (Index i = 0; i < m_; ++i) {
            const Rational& cb = c[basis_[i]];
            if (cb == 0) continue;
            for (Index k = 0; k <= n_; ++k)
                if (t_[i][k] != 0) z[k] -= cb * t_[i][k];
        }
        return z;
    }

    enum class Outcome { Optimal, Unbounded };

    // Bland's rule over columns [0, allowed).
    Outcome run(Vec& z, Index allowed, Index& unbounded_col) {
#ifndef NDEBUG
        std::set<std::vector<Index>> visited;
#endif
        while (true) {
#ifndef NDEBUG
            std::vector<Index> key(basis_.begin(), basis_.end());
            std::sort(key.begin(), key.end());
            if (!visited.insert(key).second) throw std::logic_error("simplex revisited a basis");
#endif
            Index enter = allowed;
            for (Index j = 0; j < allowed; ++j)
                if (z[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == allowed) return Outcome::Optimal;
            Index leave = m_;
            Rational best;
            for (Index i = 0; i < m_; ++i) {
                if (t_[i][enter] <= 0) continue;
                Rational ratio = t_[i][n_] / t_[i][enter];
                if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) {
                unbounded_col = enter;
                return Outcome::Unbounded;
            }
            pivot(leave, enter, z);
        }
    }

private:
    Index m_, n_;
    std::vector<Vec> t_;
    std::vector<Index> basis_;
};

SimplexOut simplex(const RatMatrix& A, const Vec& b, const Vec& c) {
    const Index m = A.rows(), n = A.cols();
    SimplexOut out;
    std::vector<int> flip(m, 1);
    Tableau T(m, n + m);
    for (Index i = 0; i < m; ++i) {
        if (b[i] < 0) flip[i] = -1;
        for (Index j = 0; j < n; ++j) T.at(i, j) = A(i, j) * flip[i];
        T.at(i, n + i) = 1;
        T.rhs(i) = b[i] * flip[i];
        T.basic(i) = n + i;
    }
    Vec c1(n + m, Rational(0));
    for (Index i = 0; i < m; ++i) c1[n + i] = 1;
    Vec z = T.cost_row(c1);
    Index ub = 0;
    T.run(z, n + m, ub);
    Rational phase1 = -z[n + m];
    if (phase1 > 0) {
        out.status = LPStatus::Infeasible;
        out.farkas.assign(m, Rational(0));
        for (Index k = 0; k < m; ++k) {
            Rational s = 0;
            for (Index i = 0; i < m; ++i) s += c1[T.basic(i)] * T.at(i, n + k);
            out.farkas[k] = s * flip[k];
        }
        return out;
    }
    for (Index i = 0; i < T.rows();) {
        if (T.basic(i) < n) {
            ++i;
            continue;
        }
        Index j = 0;
        while (j < n && T.at(i, j) == 0) ++j;
        if (j < n) {
            T.pivot(i, j, z);
            ++i;
        } else {
            T.erase_row(i);
        }
    }
    Vec c2(n + m, Rational(0));
    for (Index j = 0; j < n; ++j) c2[j] = c[j];
    z = T.cost_row(c2);
    auto oc = T.run(z, n, ub);
    if (oc == Tableau::Outcome::Unbounded) {
        out.status = LPStatus::Unbounded;
        out.ray.assign(n, Rational(0));
        out.ray[ub] = 1;
        for (Index i = 0; i < T.rows(); ++i) out.ray[T.basic(i)] = -T.at(i, ub);
        return out;
    }
    out.status = LPStatus::Optimal;
    out.x.assign(n, Rational(0));
    for (Index i = 0; i < T.rows(); ++i) {
        out.x[T.basic(i)] = T.rhs(i);
        out.basis.push_back(T.basic(i));
    }
    std::sort(out.basis.begin(), out.basis.end());
    out.objective = dot(c, out.x);
    out.y.assign(m, Rational(0));
    if (!out.basis.empty()) {
        RatMatrix AB = A.select_cols(out.basis);
        IndexSet R = independent_rows(AB);
        RatMatrix ABR = AB.select_rows(R);
        Vec cB = restrict_to(c, out.basis);
        auto y = solve_linear(ABR.transpose(), cB);
        for (Index t = 0; t < R.size(); ++t) out.y[R[t]] = (*y)[t];
    }
    return out;
}

}  // namespace

UpperBounds no_upper_bounds(Index n) { return UpperBounds(n); }

LPInstance LPInstance::standard(RatMatrix A, Vec b, Vec c) {
    LPInstance lp;
    lp.form = Form::Standard;
    lp.u = no_upper_bounds(A.cols());
    lp.A = std::move(A);
    lp.b = std::move(b);
    lp.c = std::move(c);
    lp.validate();
    return lp;
}

LPInstance LPInstance::bounded(RatMatrix A, Vec b, Vec c, UpperBounds u) {
    LPInstance lp;
    lp.form = Form::Bounded;
    lp.A = std::move(A);
    lp.b = std::move(b);
    lp.c = std::move(c);
    lp.u = std::move(u);
    lp.validate();
    return lp;
}

LPInstance LPInstance::subspace_form(const Subspace& W, Vec d, Vec c) {
    LPInstance lp;
    lp.form = Form::SubspaceForm;
    lp.W = W;
    lp.A = W.kernel_rep();
    if (d.size() != W.ambient_dim()) throw DimensionMismatch("d length differs from ambient dimension");
    lp.b = lp.A * d;
    lp.d = std::move(d);
    lp.c = std::move(c);
    lp.u = no_upper_bounds(W.ambient_dim());
    lp.validate();
    return lp;
}

bool LPInstance::has_finite_bounds() const {
    for (const auto& x : u)
        if (x) return true;
    return false;
}

void LPInstance::validate() const {
    if (b.size() != A.rows()) throw DimensionMismatch("b length differs from row count");
    if (c.size() != A.cols()) throw DimensionMismatch("c length differs from column count");
    if (u.size() != A.cols()) throw DimensionMismatch("u length differs from column count");
    for (const auto& x : u)
        if (x && *x < 0) throw InvalidArgument("upper bounds must be nonnegative");
}

bool LPInstance::is_feasible_point(const Vec& x) const {
    if (x.size() != num_vars()) return false;
    if (A * x != b) return false;
    for (Index i = 0; i < x.size(); ++i) {
        if (x[i] < 0) return false;
        if (u[i] && x[i] > *u[i]) return false;
    }
    return true;
}

const char* to_string(LPStatus s) {
    switch (s) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
    }
    return "?";
}

StandardForm to_standard_form(const LPInstance& lp) {
    lp.validate();
    StandardForm sf;
    const Index m = lp.A.rows(), n = lp.A.cols();
    sf.n_orig = n;
    for (Index i = 0; i < n; ++i)
        if (lp.u[i]) sf.bounded.push_back(i);
    const Index k = sf.bounded.size();
    sf.A = RatMatrix(m + k, n + k);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) sf.A(i, j) = lp.A(i, j);
    sf.b = lp.b;
    for (Index t = 0; t < k; ++t) {
        sf.A(m + t, sf.bounded[t]) = 1;
        sf.A(m + t, n + t) = 1;
        sf.b.push_back(*lp.u[sf.bounded[t]]);
    }
    sf.c = lp.c;
    sf.c.resize(n + k, Rational(0));
    return sf;
}

LPResult solve(const LPInstance& lp) {
    StandardForm sf = to_standard_form(lp);
    SimplexOut out = simplex(sf.A, sf.b, sf.c);
    const Index m = lp.A.rows(), n = lp.A.cols(), k = sf.bounded.size();
    LPResult res;
    res.status = out.status;
    if (out.status == LPStatus::Infeasible) {
        res.certificate = out.farkas;
        return res;
    }
    if (out.status == LPStatus::Unbounded) {
        res.certificate.assign(out.ray.begin(), out.ray.begin() + static_cast<std::ptrdiff_t>(n));
        return res;
    }
    res.primal.assign(out.x.begin(), out.x.begin() + static_cast<std::ptrdiff_t>(n));
    res.basis = out.basis;
    res.objective = out.objective;
    res.dual.assign(out.y.begin(), out.y.begin() + static_cast<std::ptrdiff_t>(m));
    res.dual_upper.assign(n, Rational(0));
    for (Index t = 0; t < k; ++t) res.dual_upper[sf.bounded[t]] = -out.y[m + t];
    return res;
}

namespace {

Vec extend(const LPInstance& lp, const StandardForm& sf, const Vec& x) {
    Vec e = x;
    for (Index i : sf.bounded) e.push_back(*lp.u[i] - x[i]);
    return e;
}

}  // namespace

std::vector<Vertex> vertices(const LPInstance& lp) {
    check_envelope(lp.num_vars(), "vertex enumeration");
    StandardForm sf = to_standard_form(lp);
    if (!solve_linear(sf.A, sf.b)) return {};
    IndexSet R = independent_rows(sf.A);
    RatMatrix A = sf.A.select_rows(R);
    Vec b = restrict_to(sf.b, R);
    const Index r = A.rows(), N = A.cols();
    std::map<Vec, IndexSet> found;
    for_each_combination(N, r, [&](const IndexSet& B) {
        RatMatrix AB = A.select_cols(B);
        if (bareiss_det(AB) == 0) return true;
        auto xb = solve_linear(AB, b);
        for (const auto& v : *xb)
            if (v < 0) return true;
        Vec x(sf.n_orig, Rational(0));
        for (Index t = 0; t < r; ++t)
            if (B[t] < sf.n_orig) x[B[t]] = (*xb)[t];
        found.emplace(x, B);
        return true;
    });
    std::vector<Vertex> out;
    for (auto& [x, B] : found) out.push_back({x, B});
    return out;
}

bool vertices_adjacent(const LPInstance& lp, const Vec& x, const Vec& y) {
    StandardForm sf = to_standard_form(lp);
    Vec ex = extend(lp, sf, x), ey = extend(lp, sf, y);
    IndexSet S;
    for (Index i = 0; i < ex.size(); ++i)
        if (ex[i] != 0 || ey[i] != 0) S.push_back(i);
    if (S.empty()) return false;
    return rank(sf.A.select_cols(S)) + 1 == S.size();
}

Index edge_graph_diameter(const LPInstance& lp) {
    LPInstance probe = lp;
    for (auto& ci : probe.c) ci = -1;
    LPResult r = solve(probe);
    if (r.status == LPStatus::Unbounded) throw UnboundedRegion("edge_graph_diameter needs a bounded region");
    if (r.status == LPStatus::Infeasible) throw Infeasible("empty feasible region");
    auto vs = vertices(lp);
    const Index V = vs.size();
    std::vector<std::vector<Index>> adj(V);
    for (Index i = 0; i < V; ++i)
        for (Index j = i + 1; j < V; ++j)
            if (vertices_adjacent(lp, vs[i].x, vs[j].x)) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    Index diam = 0;
    for (Index s = 0; s < V; ++s) {
        std::vector<long> dist(V, -1);
        std::deque<Index> q{s};
        dist[s] = 0;
        while (!q.empty()) {
            Index v = q.front();
            q.pop_front();
            for (Index w : adj[v])
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
        }
        for (long d : dist) {
            if (d < 0) throw std::logic_error("vertex-edge graph is disconnected");
            diam = std::max(diam, static_cast<Index>(d));
        }
    }
    return diam;
}

Integer fractionality(const LPInstance& lp) {
    Integer k = 1;
    for (const auto& v : vertices(lp)) k = lcm(k, denominator_lcm(v.x));
    return k;
}

Index LpBuilder::add_var(bool nonneg) {
    nonneg_.push_back(nonneg);
    return nonneg_.size() - 1;
}

Index LpBuilder::add_vars(Index k, bool nonneg) {
    Index first = nonneg_.size();
    for (Index i = 0; i < k; ++i) nonneg_.push_back(nonneg);
    return first;
}

void LpBuilder::add_row(const Terms& terms, Sense sense, const Rational& rhs) {
    for (const auto& [i, a] : terms)
        if (i >= nonneg_.size()) throw InvalidArgument("LpBuilder row references an unknown variable");
    rows_.emplace_back(terms, sense, rhs);
}

LpBuilder::Result LpBuilder::solve() const {
    std::vector<Index> col_pos(nonneg_.size()), col_neg(nonneg_.size(), 0);
    Index ncols = 0;
    for (Index i = 0; i < nonneg_.size(); ++i) {
        col_pos[i] = ncols++;
        if (!nonneg_[i]) col_neg[i] = ncols++;
    }
    Index nslack = 0;
    for (const auto& row : rows_)
        if (std::get<1>(row) != Sense::EQ) ++nslack;
    RatMatrix A(rows_.size(), ncols + nslack);
    Vec b(rows_.size());
    Index s = ncols;
    for (Index r = 0; r < rows_.size(); ++r) {
        const auto& [terms, sense, rhs] = rows_[r];
        for (const auto& [i, a] : terms) {
            A(r, col_pos[i]) += a;
            if (!nonneg_[i]) A(r, col_neg[i]) -= a;
        }
        if (sense == Sense::LE) A(r, s++) = 1;
        if (sense == Sense::GE) A(r, s++) = -1;
        b[r] = rhs;
    }
    Vec c(ncols + nslack, Rational(0));
    for (const auto& [i, a] : objective_) {
        c[col_pos[i]] += a * sign_;
        if (!nonneg_[i]) c[col_neg[i]] -= a * sign_;
    }
    SimplexOut out = simplex(A, b, c);
    Result res;
    res.status = out.status;
    if (out.status != LPStatus::Optimal) return res;
    res.values.assign(nonneg_.size(), Rational(0));
    for (Index i = 0; i < nonneg_.size(); ++i) {
        res.values[i] = out.x[col_pos[i]];
        if (!nonneg_[i]) res.values[i] -= out.x[col_neg[i]];
    }
    for (const auto& [i, a] : objective_) res.objective += a * res.values[i];
    return res;
}

}  // namespace circuitkit

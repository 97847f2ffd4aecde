#include "circuitkit/imbalance.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "circuitkit/errors.hpp"

namespace circuitkit {

namespace {

void require_non_separable(const Subspace& W, const char* what) {
    if (W.ambient_dim() == 0 || !is_non_separable(W))
        throw SeparableInput(std::string(what) + " needs a non-separable subspace; split it with components()");
}

// Sign of q * t^e - 1 with t = rho^{1/l}.
int compare_monomial_to_one(const Rational& q, long e, const GeoMeanValue& t) {
    Rational lhs = pow(q, t.length);
    Rational rhs = 1;
    if (e >= 0)
        lhs *= pow(t.product, static_cast<unsigned long>(e));
    else
        rhs = pow(t.product, static_cast<unsigned long>(-e));
    return cmp(lhs, rhs) < 0 ? -1 : (lhs == rhs ? 0 : 1);
}

int compare_scaled(const ScaledPower& a, const ScaledPower& b, const GeoMeanValue& t) {
    return compare_monomial_to_one(a.coeff / b.coeff, a.exponent - b.exponent, t);
}

std::optional<Rational> exact_root(const Rational& q, Index l) {
    Integer rn, rd;
    if (!mpz_root(rn.get_mpz_t(), q.get_num_mpz_t(), l)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), q.get_den_mpz_t(), l)) return std::nullopt;
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

// Depth-limited search for a simple cycle with exact product > 1, shortest first.
std::optional<std::vector<Index>> find_heavy_cycle(const CircuitRatioDigraph& G) {
    const Index n = G.n;
    for (Index len = 2; len <= n; ++len) {
        std::vector<Index> path;
        std::vector<bool> used(n, false);
        std::optional<std::vector<Index>> found;
        std::function<void(Rational)> dfs = [&](Rational prod) {
            if (found) return;
            Index v = path.back();
            if (path.size() == len) {
                if (G.kappa[v][path[0]] > 0 && prod * G.kappa[v][path[0]] > 1) found = path;
                return;
            }
            for (Index w = path[0] + 1; w < n && !found; ++w) {
                if (used[w] || G.kappa[v][w] == 0) continue;
                used[w] = true;
                path.push_back(w);
                dfs(prod * G.kappa[v][w]);
                path.pop_back();
                used[w] = false;
            }
        };
        for (Index s = 0; s < n && !found; ++s) {
            path = {s};
            used.assign(n, false);
            used[s] = true;
            dfs(Rational(1));
        }
        if (found) return found;
    }
    return std::nullopt;
}

double spectral_norm_sq(const std::vector<std::vector<double>>& M) {
    const std::size_t m = M.size();
    if (m == 0) return 0.0;
    const std::size_t n = M[0].size();
    std::vector<std::vector<double>> S(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < n; ++k) S[i][j] += M[i][k] * M[j][k];
    auto apply = [&](const std::vector<double>& v) {
        std::vector<double> w(m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) w[i] += S[i][j] * v[j];
        return w;
    };
    auto normalize = [](std::vector<double>& v) {
        double s = 0;
        for (double x : v) s += x * x;
        s = std::sqrt(s);
        if (s == 0) return false;
        for (double& x : v) x /= s;
        return true;
    };
    std::vector<std::vector<double>> starts(3, std::vector<double>(m, 1.0));
    for (std::size_t i = 0; i < m; ++i) starts[1][i] = (i % 2 ? -1.0 : 1.0) / static_cast<double>(i + 1);
    std::size_t big = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (S[i][i] > S[big][big]) big = i;
    std::fill(starts[2].begin(), starts[2].end(), 0.0);
    starts[2][big] = 1.0;
    double best = 0.0;
    for (auto v : starts) {
        if (!normalize(v)) continue;
        double lambda = 0.0;
        for (int it = 0; it < 200000; ++it) {
            std::vector<double> w = apply(v);
            double rq = 0;
            for (std::size_t i = 0; i < m; ++i) rq += v[i] * w[i];
            if (!normalize(w)) break;
            v = std::move(w);
            if (it > 0 && std::abs(rq - lambda) <= 1e-13 * std::max(1.0, std::abs(rq))) {
                lambda = rq;
                break;
            }
            lambda = rq;
        }
        best = std::max(best, lambda);
    }
    return best;
}

}  // namespace

int compare(const GeoMeanValue& a, const GeoMeanValue& b) {
    Rational lhs = pow(a.product, b.length);
    Rational rhs = pow(b.product, a.length);
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}
bool operator<(const GeoMeanValue& a, const GeoMeanValue& b) { return compare(a, b) < 0; }
bool operator==(const GeoMeanValue& a, const GeoMeanValue& b) { return compare(a, b) == 0; }
double to_double(const GeoMeanValue& v) {
    return std::pow(v.product.get_d(), 1.0 / static_cast<double>(v.length));
}

ImbalanceReport imbalances(const Subspace& W) {
    ImbalanceReport rep;
    Integer running = 1;
    for (const auto& c : W.circuits()) {
        Index imin = c.support[0], imax = c.support[0];
        for (Index i : c.support) {
            Integer a = abs(c.vector[i]);
            if (a < abs(c.vector[imin])) imin = i;
            if (a > abs(c.vector[imax])) imax = i;
        }
        Rational ratio = Rational(abs(c.vector[imax])) / Rational(abs(c.vector[imin]));
        if (!rep.kappa_witness || ratio > rep.kappa) {
            rep.kappa = ratio;
            rep.kappa_witness = MeasureWitness{c, imin, imax};
        }
        Integer top = abs(c.vector[imax]);
        if (!rep.kappa_bar_witness || top > rep.kappa_bar) {
            rep.kappa_bar = top;
            rep.kappa_bar_witness = MeasureWitness{c, imax, imax};
        }
        for (Index i : c.support) {
            Integer l = lcm(running, c.vector[i]);
            if (l != running) {
                running = l;
                rep.kappa_dot_witnesses.push_back(MeasureWitness{c, i, i});
            }
        }
    }
    rep.kappa_dot = running;
    return rep;
}

std::vector<IndexSet> all_bases(const RatMatrix& A) {
    check_envelope(A.cols(), "basis enumeration");
    std::vector<IndexSet> out;
    for_each_combination(A.cols(), A.rows(), [&](const IndexSet& B) {
        if (bareiss_det(A.select_cols(B)) != 0) out.push_back(B);
        return true;
    });
    return out;
}

Rational kappa_via_basis_forms(const RatMatrix& A) {
    if (rank(A) != A.rows()) throw RankDeficient("kappa_via_basis_forms needs full row rank");
    Rational best = 1;
    for (const auto& B : all_bases(A)) {
        Rational m = basis_form(A, B).max_abs();
        if (m > best) best = m;
    }
    return best;
}

CircuitRatioDigraph pairwise(const Subspace& W) {
    require_non_separable(W, "pairwise");
    const Index n = W.ambient_dim();
    CircuitRatioDigraph G;
    G.n = n;
    G.kappa.assign(n, std::vector<Rational>(n, Rational(0)));
    G.ratio_sets.assign(n, std::vector<std::set<Rational>>(n));
    for (Index i = 0; i < n; ++i) {
        G.kappa[i][i] = 1;
        G.ratio_sets[i][i].insert(Rational(1));
    }
    for (const auto& c : W.circuits())
        for (Index i : c.support)
            for (Index j : c.support) {
                if (i == j) continue;
                Rational r = abs(Rational(c.vector[j]) / Rational(c.vector[i]));
                G.ratio_sets[i][j].insert(r);
                if (r > G.kappa[i][j]) G.kappa[i][j] = r;
            }
    return G;
}

Rational cycle_product(const CircuitRatioDigraph& G, const std::vector<Index>& cycle) {
    Rational p = 1;
    for (Index t = 0; t < cycle.size(); ++t) p *= G.kappa[cycle[t]][cycle[(t + 1) % cycle.size()]];
    return p;
}

void for_each_simple_cycle(const CircuitRatioDigraph& G,
                           const std::function<void(const std::vector<Index>&, const Rational&)>& f) {
    const Index n = G.n;
    std::vector<Index> path;
    std::vector<bool> used(n, false);
    std::function<void(const Rational&)> dfs = [&](const Rational& prod) {
        Index v = path.back();
        if (path.size() >= 2 && G.kappa[v][path[0]] > 0) f(path, prod * G.kappa[v][path[0]]);
        for (Index w = path[0] + 1; w < n; ++w) {
            if (used[w] || G.kappa[v][w] == 0) continue;
            used[w] = true;
            path.push_back(w);
            dfs(prod * G.kappa[v][w]);
            path.pop_back();
            used[w] = false;
        }
    };
    for (Index s = 0; s < n; ++s) {
        path = {s};
        used.assign(n, false);
        used[s] = true;
        dfs(Rational(1));
    }
}

bool verify_rescaling(const CircuitRatioDigraph& G, const GeoMeanValue& t, const std::vector<ScaledPower>& d) {
    bool tight = false;
    for (Index i = 0; i < G.n; ++i)
        for (Index j = 0; j < G.n; ++j) {
            if (i == j || G.kappa[i][j] == 0) continue;
            Rational q = G.kappa[i][j] * d[j].coeff / d[i].coeff;
            int s = compare_monomial_to_one(q, d[j].exponent - d[i].exponent - 1, t);
            if (s > 0) return false;
            if (s == 0) tight = true;
        }
    if (G.n == 1) return true;
    return tight;
}

KappaStarResult kappa_star(const Subspace& W) {
    require_non_separable(W, "kappa_star");
    check_envelope(W.ambient_dim(), "kappa_star cycle enumeration");
    CircuitRatioDigraph G = pairwise(W);
    const Index n = G.n;
    KappaStarResult res;
    res.value = GeoMeanValue{1, 1};
    res.witness_cycle = {0};
    for_each_simple_cycle(G, [&](const std::vector<Index>& cyc, const Rational& prod) {
        GeoMeanValue v{prod, cyc.size()};
        if (res.value < v) {
            res.value = v;
            res.witness_cycle = cyc;
        }
    });
    // d_i = max over walks i -> ... of prod (kappa_e / t).
    std::vector<ScaledPower> d(n);
    bool changed = true;
    for (Index round = 0; changed; ++round) {
        if (round > n) throw std::logic_error("kappa_star rescaling did not converge");
        changed = false;
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) {
                if (i == j || G.kappa[i][j] == 0) continue;
                ScaledPower cand{G.kappa[i][j] * d[j].coeff, d[j].exponent - 1};
                if (compare_scaled(cand, d[i], res.value) > 0) {
                    d[i] = cand;
                    changed = true;
                }
            }
    }
    res.rescaling = d;
    if (auto t = exact_root(res.value.product, res.value.length)) {
        Vec dr(n);
        for (Index i = 0; i < n; ++i) {
            Rational tp = pow(*t, static_cast<unsigned long>(std::labs(d[i].exponent)));
            dr[i] = d[i].exponent >= 0 ? Rational(d[i].coeff * tp) : Rational(d[i].coeff / tp);
        }
        res.rational_rescaling = dr;
    }
    return res;
}

KappaEstimate estimate_kappa(const Subspace& W) {
    require_non_separable(W, "estimate_kappa");
    const Index n = W.ambient_dim();
    KappaEstimate est;
    est.hat_kappa.assign(n, std::vector<Rational>(n, Rational(0)));
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    for (Index i = 0; i < n; ++i) {
        est.hat_kappa[i][i] = 1;
        seen[i][i] = true;
    }
    for (const auto& c : W.circuits())
        for (Index i : c.support)
            for (Index j : c.support) {
                if (seen[i][j]) continue;
                seen[i][j] = true;
                est.hat_kappa[i][j] = abs(Rational(c.vector[j]) / Rational(c.vector[i]));
                if (est.hat_kappa[i][j] > est.xi) est.xi = est.hat_kappa[i][j];
            }
    return est;
}

TUResult is_TU(const RatMatrix& A) {
    TUResult res;
    for (Index i = 0; i < A.rows(); ++i)
        for (Index j = 0; j < A.cols(); ++j) {
            const Rational& x = A(i, j);
            if (x != 0 && x != 1 && x != -1) {
                res.tu = false;
                res.rows = {i};
                res.cols = {j};
                res.det = x;
                return res;
            }
        }
    check_envelope(A.cols(), "TU test");
    const Index kmax = std::min(A.rows(), A.cols());
    for (Index k = 2; k <= kmax && res.tu; ++k)
        for_each_combination(A.rows(), k, [&](const IndexSet& rs) {
            return for_each_combination(A.cols(), k, [&](const IndexSet& cs) {
                Rational d = bareiss_det(A.submatrix(rs, cs));
                if (d != 0 && d != 1 && d != -1) {
                    res.tu = false;
                    res.rows = rs;
                    res.cols = cs;
                    res.det = d;
                    return false;
                }
                return true;
            });
        });
    return res;
}

KappaStarOneResult check_kappa_star_one(const RatMatrix& A) {
    Subspace W = Subspace::kernel_of(A);
    const Index n = W.ambient_dim();
    const auto& cs = W.circuits();
    std::vector<Rational> D(n, Rational(0));
    std::vector<std::vector<Rational>> hat(n, std::vector<Rational>(n, Rational(0)));
    for (const auto& c : cs)
        for (Index i : c.support)
            for (Index j : c.support)
                if (i != j && hat[i][j] == 0) hat[i][j] = abs(Rational(c.vector[j]) / Rational(c.vector[i]));

    auto heavy_cycle = [&]() -> NotRescalable {
        std::vector<IndexSet> blocks = components(W);
        for (const auto& blk : blocks) {
            if (blk.size() < 2) continue;
            Subspace Wb = minor(W, blk, MinorMode::Restrict);
            CircuitRatioDigraph G = pairwise(Wb);
            if (auto cyc = find_heavy_cycle(G)) {
                NotRescalable nr;
                for (Index v : *cyc) nr.cycle.push_back(blk[v]);
                nr.cycle_product = cycle_product(G, *cyc);
                return nr;
            }
        }
        throw std::logic_error("no cycle with kappa(H) > 1 although kappa* > 1");
    };

    bool consistent = true;
    for (const auto& blk : components(W)) {
        D[blk[0]] = 1;
        std::deque<Index> q{blk[0]};
        while (!q.empty()) {
            Index i = q.front();
            q.pop_front();
            for (Index j : blk)
                if (D[j] == 0 && hat[i][j] != 0) {
                    D[j] = hat[i][j] * D[i];
                    q.push_back(j);
                }
        }
        for (Index i : blk)
            for (Index j : blk)
                if (i != j && hat[i][j] != D[j] / D[i]) consistent = false;
        Integer l = 1, g = 0;
        for (Index i : blk) l = lcm(l, D[i].get_den());
        for (Index i : blk) {
            D[i] *= Rational(l);
            g = gcd(g, D[i].get_num());
        }
        for (Index i : blk) D[i] /= Rational(g);
    }
    if (!consistent) return heavy_cycle();

    RatMatrix AD = W.kernel_rep();
    for (Index i = 0; i < AD.rows(); ++i)
        for (Index j = 0; j < n; ++j) AD(i, j) *= D[j];
    bool tu = true;
    if (AD.rows() > 0) tu = is_TU(basis_form(AD, first_column_basis(AD))).tu;
    if (tu) {
        RescaledTU r;
        for (Index j = 0; j < n; ++j) r.D.push_back(D[j].get_num());
        return r;
    }
    Subspace WD = Subspace::kernel_of(AD);
    for (const auto& c : WD.circuits()) {
        Index a = c.support[0];
        for (Index b : c.support)
            if (abs(c.vector[b]) != abs(c.vector[a])) {
                Index lo = std::min(a, b), hi = std::max(a, b);
                for (const auto& blk : components(W)) {
                    if (!std::binary_search(blk.begin(), blk.end(), lo)) continue;
                    Subspace Wb = minor(W, blk, MinorMode::Restrict);
                    CircuitRatioDigraph G = pairwise(Wb);
                    Index li = static_cast<Index>(std::lower_bound(blk.begin(), blk.end(), lo) - blk.begin());
                    Index hj = static_cast<Index>(std::lower_bound(blk.begin(), blk.end(), hi) - blk.begin());
                    Rational p = G.kappa[li][hj] * G.kappa[hj][li];
                    if (p > 1) return NotRescalable{{lo, hi}, p};
                }
                return heavy_cycle();
            }
    }
    return heavy_cycle();
}

IntRepresentation int_representation(const Subspace& W) {
    IntRepresentation rep;
    const RatMatrix& A = W.kernel_rep();
    const Index m = A.rows(), n = W.ambient_dim();
    if (m == 0) {
        rep.matrix = RatMatrix(0, n);
        rep.identity_form = true;
        return rep;
    }
    rep.basis = first_column_basis(A);
    RatMatrix F = basis_form(A, rep.basis);
    for (Index i = 0; i < m; ++i) {
        IntVec g = integer_normalize(F.row(i)).g;
        if (g[rep.basis[i]] < 0)
            for (auto& x : g) x = -x;
        F.set_row(i, to_rational(g));
    }
    if (is_anchored(dual(W)).anchored) {
        for (Index i = 0; i < m; ++i) {
            if (F(i, rep.basis[i]) == 1) continue;
            Index k = n;
            for (Index j = 0; j < n && k == n; ++j)
                if (std::find(rep.basis.begin(), rep.basis.end(), j) == rep.basis.end() && abs(F(i, j)) == 1) k = j;
            if (k == n) throw std::logic_error("anchored dual row without a unit entry");
            if (F(i, k) < 0)
                for (Index j = 0; j < n; ++j) F(i, j) = -F(i, j);
            for (Index r = 0; r < m; ++r) {
                if (r == i || F(r, k) == 0) continue;
                Rational f = F(r, k);
                for (Index j = 0; j < n; ++j) F(r, j) -= f * F(i, j);
                // elimination can leave a common factor; rows must stay gcd-1 circuits
                F.set_row(r, to_rational(integer_normalize(F.row(r)).g));
                if (F(r, rep.basis[r]) < 0)
                    for (Index j = 0; j < n; ++j) F(r, j) = -F(r, j);
            }
            rep.basis[i] = k;
        }
        rep.identity_form = true;
    }
    rep.matrix = F;
    return rep;
}

double chibar(const RatMatrix& A) {
    if (rank(A) != A.rows()) throw RankDeficient("chibar needs full row rank");
    double best = 0.0;
    for (const auto& B : all_bases(A)) {
        RatMatrix F = basis_form(A, B);
        std::vector<std::vector<double>> M(F.rows(), std::vector<double>(F.cols()));
        for (Index i = 0; i < F.rows(); ++i)
            for (Index j = 0; j < F.cols(); ++j) M[i][j] = F(i, j).get_d();
        best = std::max(best, spectral_norm_sq(M));
    }
    return std::sqrt(best);
}

double delta(const std::vector<Vec>& V0) {
    std::vector<Vec> V;
    for (const auto& v : V0)
        if (!is_zero(v)) V.push_back(v);
    const Index k = V.size();
    check_envelope(k, "delta subset enumeration");
    double best = 1.0;
    for (Index j = 0; j < k; ++j) {
        IndexSet others;
        for (Index i = 0; i < k; ++i)
            if (i != j) others.push_back(i);
        const Index r = others.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask) {
            std::vector<Vec> rows;
            for (Index t = 0; t < r; ++t)
                if (mask >> t & 1) rows.push_back(V[others[t]]);
            RatMatrix R = RatMatrix::from_rows(rows);
            if (rank(R) != rows.size()) continue;
            Vec resid = sub(V[j], project_onto_rowspace(R, V[j]));
            if (is_zero(resid)) continue;
            Rational s2 = norm2_sq(resid) / norm2_sq(V[j]);
            best = std::min(best, std::sqrt(s2.get_d()));
        }
    }
    return best;
}

KnuthResult knuth_basis(const RatMatrix& A, const Rational& mu) {
    if (mu <= 1) throw InvalidArgument("knuth_basis needs mu > 1");
    if (rank(A) != A.rows()) throw RankDeficient("knuth_basis needs full row rank");
    KnuthResult res;
    IndexSet B = first_column_basis(A);
    while (true) {
        RatMatrix F = basis_form(A, B);
        bool swapped = false;
        for (Index i = 0; i < F.rows() && !swapped; ++i)
            for (Index j = 0; j < F.cols() && !swapped; ++j)
                if (abs(F(i, j)) > mu) {
                    B[i] = j;
                    ++res.swaps;
                    swapped = true;
                }
        if (!swapped) break;
    }
    std::sort(B.begin(), B.end());
    res.basis = B;
    return res;
}

double diameter_bound(Index n, Index m, const Rational& kappa) {
    if (!(n > m && m >= 1)) throw InvalidArgument("diameter_bound needs n > m >= 1");
    double nm = static_cast<double>(n - m);
    double k = kappa.get_d();
    return nm * nm * nm * static_cast<double>(m) * k * std::log2(k + static_cast<double>(n));
}

}  // namespace circuitkit

#include "circuitkit/graver.hpp"

#include <deque>
#include <random>

#include "circuitkit/errors.hpp"

namespace circuitkit {

namespace {

RatMatrix integer_rows(const RatMatrix& A) {
    RatMatrix M = A;
    for (Index r = 0; r < M.rows(); ++r) {
        Integer l = denominator_lcm(M.row(r));
        for (Index j = 0; j < M.cols(); ++j) M(r, j) *= l;
    }
    return M;
}

Integer l1(const IntVec& v) {
    Integer s = 0;
    for (const auto& x : v) s += abs(x);
    return s;
}

Integer linf(const IntVec& v) {
    Integer s = 0;
    for (const auto& x : v)
        if (abs(x) > s) s = abs(x);
    return s;
}

bool is_zero(const IntVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

IntVec to_int(const Vec& v) {
    IntVec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.get_num());
    return out;
}

// Minimal elements under ⊑, scanning by increasing l1 norm.
std::vector<IntVec> minimal_elements(std::vector<IntVec> cands) {
    std::sort(cands.begin(), cands.end(), [](const IntVec& a, const IntVec& b) {
        Integer la = l1(a), lb = l1(b);
        return la != lb ? la < lb : a < b;
    });
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::vector<IntVec> kept;
    for (const auto& g : cands) {
        bool reducible = false;
        for (const auto& h : kept)
            if (conformal_below(h, g)) {
                reducible = true;
                break;
            }
        if (!reducible) kept.push_back(g);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::vector<IntVec> completion(const RatMatrix& A) {
    std::vector<IntVec> G;
    for (const auto& b : integer_kernel_basis(A)) {
        G.push_back(b);
        IntVec nb = b;
        for (auto& x : nb) x = -x;
        G.push_back(nb);
    }
    auto normal_form = [&](IntVec s) {
        bool changed = true;
        while (changed && !is_zero(s)) {
            changed = false;
            for (const auto& g : G)
                if (conformal_below(g, s)) {
                    for (Index i = 0; i < s.size(); ++i) s[i] -= g[i];
                    changed = true;
                    break;
                }
        }
        return s;
    };
    auto plus = [](const IntVec& a, const IntVec& b) {
        IntVec s = a;
        for (Index i = 0; i < s.size(); ++i) s[i] += b[i];
        return s;
    };
    std::deque<IntVec> C;
    for (Index i = 0; i < G.size(); ++i)
        for (Index j = i + 1; j < G.size(); ++j) C.push_back(plus(G[i], G[j]));
    while (!C.empty()) {
        IntVec s = std::move(C.front());
        C.pop_front();
        if (is_zero(s)) continue;
        IntVec f = normal_form(std::move(s));
        if (is_zero(f)) continue;
        for (const auto& g : G) C.push_back(plus(f, g));
        G.push_back(std::move(f));
    }
    return minimal_elements(std::move(G));
}

}  // namespace

std::vector<IntVec> integer_kernel_basis(const RatMatrix& A0) {
    RatMatrix A = integer_rows(A0);
    const Index m = A.rows(), n = A.cols();
    std::vector<std::vector<Integer>> M(m, std::vector<Integer>(n)), U(n, std::vector<Integer>(n, 0));
    for (Index r = 0; r < m; ++r)
        for (Index j = 0; j < n; ++j) M[r][j] = A(r, j).get_num();
    for (Index i = 0; i < n; ++i) U[i][i] = 1;
    auto col_axpy = [&](Index dst, const Integer& q, Index src) {
        for (Index r = 0; r < m; ++r) M[r][dst] -= q * M[r][src];
        for (Index r = 0; r < n; ++r) U[r][dst] -= q * U[r][src];
    };
    auto col_swap = [&](Index a, Index b) {
        for (Index r = 0; r < m; ++r) std::swap(M[r][a], M[r][b]);
        for (Index r = 0; r < n; ++r) std::swap(U[r][a], U[r][b]);
    };
    Index col = 0;
    for (Index r = 0; r < m && col < n; ++r) {
        for (Index j = col + 1; j < n; ++j) {
            while (M[r][j] != 0) {
                Integer q = M[r][col] / M[r][j];
                col_axpy(col, q, j);
                col_swap(col, j);
            }
        }
        if (M[r][col] != 0) ++col;
    }
    std::vector<IntVec> basis;
    for (Index j = col; j < n; ++j) {
        IntVec v(n);
        for (Index r = 0; r < n; ++r) v[r] = U[r][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool conformal_below(const IntVec& h, const IntVec& g) {
    bool nonzero = false;
    for (Index i = 0; i < h.size(); ++i) {
        if (h[i] == 0) continue;
        nonzero = true;
        if (sgn(h[i]) != sgn(g[i]) || abs(h[i]) > abs(g[i])) return false;
    }
    return nonzero;
}

Integer l1_ball_points(Index k, const Integer& r) {
    Integer total = 0;
    for (Index i = 0; i <= k && Integer(i) <= r; ++i) {
        Integer ck, cr, p2;
        mpz_bin_uiui(ck.get_mpz_t(), k, i);
        mpz_bin_ui(cr.get_mpz_t(), r.get_mpz_t(), i);
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, i);
        total += p2 * ck * cr;
    }
    return total;
}

GraverBasis graver_basis(const RatMatrix& A0, GraverMethod method, std::uint64_t max_points) {
    if (!A0.is_integral()) throw NonIntegerMatrix("Graver bases need an integer matrix");
    check_envelope(A0.cols(), "Graver basis");
    const Index n = A0.cols();
    RatMatrix A = A0.select_rows(independent_rows(A0));
    const Index m = A.rows();
    GraverBasis out;
    Integer base = 2 * Integer(long(m)) * A.max_abs().get_num() + 1;
    mpz_pow_ui(out.l1_bound.get_mpz_t(), base.get_mpz_t(), m);

    IndexSet B = m ? first_column_basis(A) : IndexSet{};
    IndexSet N = complement(B, n);
    out.box_points = l1_ball_points(N.size(), out.l1_bound);
    bool use_box = out.box_points <= Integer(static_cast<unsigned long>(max_points));
    if (method == GraverMethod::Box && !use_box)
        throw BoxTooLarge("box scan visits " + out.box_points.get_str() + " points (l1 bound " +
                          out.l1_bound.get_str() + ")");
    if (method == GraverMethod::Completion) use_box = false;

    if (!use_box) {
        out.method = GraverMethod::Completion;
        out.elements = completion(A);
    } else {
        out.method = GraverMethod::Box;
        RatMatrix M = m ? *inverse(A.select_cols(B)) * A.select_cols(N) : RatMatrix(0, N.size());
        const long bound = out.l1_bound.get_si();
        std::vector<IntVec> cands;
        std::vector<long> gN(N.size(), 0);
        std::function<void(Index, long)> rec = [&](Index k, long rem) {
            if (k == N.size()) {
                bool nz = false;
                for (long v : gN) nz |= v != 0;
                if (!nz) return;
                IntVec g(n, Integer(0));
                Integer total = 0;
                for (Index t = 0; t < N.size(); ++t) {
                    g[N[t]] = gN[t];
                    total += std::abs(gN[t]);
                }
                for (Index r = 0; r < B.size(); ++r) {
                    Rational v = 0;
                    for (Index t = 0; t < N.size(); ++t)
                        if (gN[t] != 0) v -= M(r, t) * gN[t];
                    if (!is_integer(v)) return;
                    g[B[r]] = v.get_num();
                    total += abs(g[B[r]]);
                }
                if (total <= bound) cands.push_back(std::move(g));
                return;
            }
            for (long v = -rem; v <= rem; ++v) {
                gN[k] = v;
                rec(k + 1, rem - std::abs(v));
            }
            gN[k] = 0;
        };
        rec(0, bound);
        out.elements = minimal_elements(std::move(cands));
    }
    for (const auto& g : out.elements) {
        out.g1 = std::max(out.g1, l1(g));
        out.ginf = std::max(out.ginf, linf(g));
    }
    return out;
}

IpProximity ip_proximity_check(const RatMatrix& A0, const Vec& b0, const Vec& c) {
    const Index n = A0.cols();
    check_envelope(n, "IP proximity");
    auto res = solve(LPInstance::standard(A0, b0, c));
    if (res.status == LPStatus::Infeasible) throw Infeasible("LP relaxation is infeasible");
    if (res.status == LPStatus::Unbounded) throw Unbounded("LP relaxation is unbounded");
    IpProximity out;
    out.x_lp = res.primal;
    out.lp_opt = res.objective;
    out.bound = Rational(long(n)) * Rational(imbalances(Subspace::kernel_of(A0)).kappa_bar);

    IndexSet R = independent_rows(A0);
    RatMatrix A = A0.select_rows(R);
    Vec b = restrict_to(b0, R);
    IndexSet B = A.rows() ? first_column_basis(A) : IndexSet{};
    IndexSet N = complement(B, n);
    RatMatrix ABinv = B.empty() ? RatMatrix(0, 0) : *inverse(A.select_cols(B));
    RatMatrix M = B.empty() ? RatMatrix(0, N.size()) : ABinv * A.select_cols(N);
    Vec h = B.empty() ? Vec{} : ABinv * b;

    struct Best {
        bool found = false;
        Rational cost, dist;
        IntVec x;
    };
    // Completes x_N to x and offers it to best when integral and nonnegative.
    auto offer = [&](const std::vector<long>& xN, Best& best, const std::optional<Rational>& radius) {
        Vec x(n);
        for (Index t = 0; t < N.size(); ++t) x[N[t]] = xN[t];
        for (Index r = 0; r < B.size(); ++r) {
            Rational v = h[r];
            for (Index t = 0; t < N.size(); ++t)
                if (xN[t] != 0) v -= M(r, t) * xN[t];
            if (v < 0 || !is_integer(v)) return;
            x[B[r]] = v;
        }
        Rational dist = norm1(sub(x, out.x_lp));
        if (radius && dist > *radius) return;
        Rational cost = dot(c, x);
        if (!best.found || cost < best.cost || (cost == best.cost && dist < best.dist)) {
            best.found = true;
            best.cost = cost;
            best.dist = dist;
            best.x = to_int(x);
        }
    };

    Best local;
    {
        std::vector<long> xN(N.size(), 0);
        std::function<void(Index, Rational)> rec = [&](Index k, Rational rem) {
            if (k == N.size()) {
                offer(xN, local, out.bound);
                return;
            }
            const Rational& center = out.x_lp[N[k]];
            Rational lo_q = center - rem, hi_q = center + rem;
            mpz_class lo, hi;
            mpz_cdiv_q(lo.get_mpz_t(), lo_q.get_num_mpz_t(), lo_q.get_den_mpz_t());
            mpz_fdiv_q(hi.get_mpz_t(), hi_q.get_num_mpz_t(), hi_q.get_den_mpz_t());
            if (lo < 0) lo = 0;
            for (long v = lo.get_si(); v <= hi.get_si(); ++v) {
                xN[k] = v;
                rec(k + 1, rem - abs(Rational(v) - center));
            }
            xN[k] = 0;
        };
        rec(0, out.bound);
    }

    // Full enumeration over the bounding box of the polyhedron, when bounded and small.
    std::vector<long> ub;
    bool bounded = true;
    Integer volume = 1;
    for (Index i : N) {
        Vec e = zeros(n);
        e[i] = -1;
        auto r = solve(LPInstance::standard(A0, b0, e));
        if (r.status != LPStatus::Optimal) {
            bounded = false;
            break;
        }
        Rational mx = -r.objective;
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
        ub.push_back(f.get_si());
        volume *= f + 1;
    }
    if (bounded && volume <= 5000000) {
        Best full;
        std::vector<long> xN(N.size(), 0);
        std::function<void(Index)> rec = [&](Index k) {
            if (k == N.size()) {
                offer(xN, full, std::nullopt);
                return;
            }
            for (long v = 0; v <= ub[k]; ++v) {
                xN[k] = v;
                rec(k + 1);
            }
            xN[k] = 0;
        };
        rec(0);
        if (!full.found) throw Infeasible("integer program is infeasible");
        out.oracle_used = true;
        out.ip_opt = full.cost;
        out.x_ip = full.x;
        out.distance_l1 = full.dist;
        if (local.found && local.cost < full.cost) throw std::logic_error("local IP search beat full enumeration");
    } else {
        if (!local.found) throw Infeasible("no integer point within the proximity radius");
        out.ip_opt = local.cost;
        out.x_ip = local.x;
        out.distance_l1 = local.dist;
    }
    out.distance_inf = norm_inf(sub(to_rational(out.x_ip), out.x_lp));
    out.within_bound = out.distance_l1 <= out.bound;
    return out;
}

ConjectureReport conjecture_decompose(const Subspace& W, const IntVec& z) {
    const Index n = W.ambient_dim();
    if (z.size() != n) throw DimensionMismatch("target length differs from ambient dimension");
    const Vec zr = to_rational(z);
    if (!W.contains(zr)) throw NotIntegerKernelVector("target is not in the subspace");
    ConjectureReport rep;
    rep.target = z;
    rep.kappa_dot = imbalances(W).kappa_dot;
    if (is_zero(zr)) return rep;

    for (const auto& g : W.circuits()) {
        for (int s : {1, -1}) {
            ElementaryVector h = g;
            if (s < 0)
                for (auto& x : h.vector) x = -x;
            if (conforms(h.as_rational(), zr)) rep.candidates.push_back(h);
        }
    }
    const Rational k = Rational(rep.kappa_dot);
    const Vec kz = scale(zr, k);
    std::vector<Integer> mu_cap;
    for (const auto& g : rep.candidates) {
        Rational cap;
        bool first = true;
        for (Index i : g.support) {
            Rational v = k * abs(zr[i]) / abs(Rational(g.vector[i]));
            if (first || v < cap) cap = v;
            first = false;
        }
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), cap.get_num_mpz_t(), cap.get_den_mpz_t());
        mu_cap.push_back(f);
    }

    const Index C = rep.candidates.size();
    for (Index size = 1; size <= std::min(n, C); ++size) {
        bool done = false;
        for_each_combination(C, size, [&](const IndexSet& S) {
            ++rep.searched;
            std::vector<Vec> cols;
            for (Index i : S) cols.push_back(rep.candidates[i].as_rational());
            RatMatrix G = RatMatrix::from_rows(cols, n).transpose();  // n x size
            std::vector<Integer> mu(size);
            if (rank(G) == size) {
                auto lam = solve_linear(G, zr);
                if (!lam) return true;
                for (Index t = 0; t < size; ++t) {
                    Rational m = (*lam)[t] * k;
                    if (m <= 0 || !is_integer(m)) return true;
                    mu[t] = m.get_num();
                }
            } else {
                // Dependent terms: enumerate multipliers, the last one forced by the residual.
                bool ok = false;
                std::function<void(Index, Vec)> rec = [&](Index t, Vec rest) {
                    if (ok) return;
                    const Vec& g = cols[t];
                    if (t + 1 == size) {
                        Index i0 = rep.candidates[S[t]].support.front();
                        Rational m = rest[i0] / g[i0];
                        if (m <= 0 || !is_integer(m)) return;
                        if (axpy(rest, -m, g) != zeros(n)) return;
                        mu[t] = m.get_num();
                        ok = true;
                        return;
                    }
                    for (Integer m = 1; m <= mu_cap[S[t]] && !ok; ++m) {
                        mu[t] = m;
                        rec(t + 1, axpy(rest, -Rational(m), g));
                    }
                };
                rec(0, kz);
                if (!ok) return true;
            }
            for (Index t = 0; t < size; ++t)
                rep.terms.push_back(ConformalTerm{Rational(mu[t]) / k, rep.candidates[S[t]]});
            done = true;
            return false;
        });
        if (done) return rep;
    }
    rep.status = ConjectureReport::Status::Violated;
    return rep;
}

bool verify_conjecture_report(const Subspace& W, const ConjectureReport& r) {
    const Index n = W.ambient_dim();
    if (r.status != ConjectureReport::Status::Holds || r.terms.size() > n) return false;
    const Vec z = to_rational(r.target);
    Vec sum = zeros(n);
    const auto& circ = W.circuits();
    for (const auto& t : r.terms) {
        if (t.coefficient <= 0 || !is_integer(t.coefficient * Rational(r.kappa_dot))) return false;
        Vec g = t.circuit.as_rational();
        ElementaryVector pos = t.circuit;
        if (std::find(circ.begin(), circ.end(), pos) == circ.end()) {
            for (auto& x : pos.vector) x = -x;
            if (std::find(circ.begin(), circ.end(), pos) == circ.end()) return false;
        }
        if (!conforms(g, z)) return false;
        sum = axpy(sum, t.coefficient, g);
    }
    return sum == z;
}

HkReport hk_check(const Subspace& W, Index trials, std::uint64_t seed) {
    const Index n = W.ambient_dim();
    check_envelope(n, "Hoffman-Kruskal check");
    HkReport rep;
    rep.kappa_dot = imbalances(W).kappa_dot;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-2, 3);
    for (Index attempt = 0; rep.trials < trials && attempt < 20 * trials + 20; ++attempt) {
        Vec d(n);
        for (auto& x : d) x = dist(rng);
        LPInstance lp = LPInstance::subspace_form(W, d, zeros(n));
        auto verts = vertices(lp);
        if (verts.empty()) continue;
        ++rep.trials;
        for (const auto& v : verts) {
            ++rep.vertices_checked;
            Integer den = denominator_lcm(v.x);
            rep.observed_lcm = lcm(rep.observed_lcm, den);
            if (rep.kappa_dot % den != 0) rep.all_divide = false;
        }
    }

    const RatMatrix& A = W.kernel_rep();
    const Index m = A.rows();
    for (const auto& C : W.circuits()) {
        for (Index ell : C.support) {
            IndexSet B;
            for (Index j : C.support)
                if (j != ell) B.push_back(j);
            for (Index j = 0; j < n && B.size() < m; ++j) {
                if (j == ell || std::binary_search(B.begin(), B.end(), j)) continue;
                IndexSet B2 = B;
                B2.insert(std::upper_bound(B2.begin(), B2.end(), j), j);
                if (rank(A.select_cols(B2)) == B2.size()) B = std::move(B2);
            }
            if (B.size() != m) throw std::logic_error("circuit complement does not extend to a basis");
            RatMatrix F = *inverse(A.select_cols(B)) * A;
            Vec g = zeros(n);
            g[ell] = 1;
            for (Index r = 0; r < m; ++r) g[B[r]] = -F(r, ell);
            Rational gi = norm_inf(g);
            mpz_class t;
            mpz_cdiv_q(t.get_mpz_t(), gi.get_num_mpz_t(), gi.get_den_mpz_t());
            HkWitness w;
            w.circuit = C;
            w.ell = ell;
            w.basis = B;
            w.d.assign(n, Integer(0));
            for (Index j : B) w.d[j] = t;
            w.d[ell] = -1;
            w.vertex = add(to_rational(w.d), g);
            for (Index j = 0; j < n; ++j)
                if (w.vertex[j] < 0 || (w.vertex[j] != 0 && !std::binary_search(B.begin(), B.end(), j)))
                    throw std::logic_error("witness point is not the basic solution of B");
            w.denominator = denominator_lcm(w.vertex);
            rep.witness_lcm = lcm(rep.witness_lcm, w.denominator);
            if (rep.witnesses.empty() || w.denominator > rep.extremal.denominator) rep.extremal = w;
            rep.witnesses.push_back(std::move(w));
        }
    }
    return rep;
}

EjResult ej_check(const RatMatrix& A) {
    EjResult r;
    if (!A.is_integral()) return r;
    for (Index j = 0; j < A.cols(); ++j) {
        Rational s = 0;
        for (Index i = 0; i < A.rows(); ++i) s += abs(A(i, j));
        if (s > 2) return r;
    }
    r.applicable = true;
    r.kappa_dot = imbalances(Subspace::kernel_of(A)).kappa_dot;
    r.holds = r.kappa_dot == 1 || r.kappa_dot == 2;
    return r;
}

namespace {

// Column pairs whose 2x2 submatrix is nonsingular with an inverse that is not 1/k-integral.
std::vector<IndexSet> failing_pairs(const RatMatrix& M, const Integer& k, Rational* first_det) {
    std::vector<IndexSet> out;
    for (Index a = 0; a < M.cols(); ++a)
        for (Index b = a + 1; b < M.cols(); ++b) {
            RatMatrix S = M.select_cols({a, b});
            auto inv = inverse(S);
            if (!inv) continue;
            bool integral = true;
            for (Index i = 0; i < 2; ++i)
                for (Index j = 0; j < 2; ++j) integral &= is_integer((*inv)(i, j) * Rational(k));
            if (!integral) {
                if (out.empty() && first_det) *first_det = bareiss_det(S);
                out.push_back({a, b});
            }
        }
    return out;
}

}  // namespace

AppendixReport appendix_counterexample() {
    AppendixReport rep;
    rep.A = int_matrix({{1, 3, 4, 3}, {0, 13, 9, 10}});
    rep.kappa_dot = imbalances(Subspace::kernel_of(rep.A)).kappa_dot;
    const long K = rep.kappa_dot.get_si();

    // Entry 1 of v^T A is v1, so v1 is 0 or a signed divisor of K. Entry 2 is 3 v1 + 13 v2, whose
    // absolute value is at most K unless it is 0; that confines v2 to a finite window.
    std::vector<long> divisors;
    for (long q = 1; q <= K; ++q)
        if (K % q == 0) divisors.push_back(q);
    auto ok = [&](long e) { return e == 0 || K % std::abs(e) == 0; };
    std::vector<long> v1s = {0};
    for (long q : divisors) {
        v1s.push_back(q);
        v1s.push_back(-q);
    }
    std::vector<IntVec> all;
    for (long v1 : v1s) {
        long lo = (-K - 3 * v1) / 13 - 1, hi = (K - 3 * v1) / 13 + 1;
        for (long v2 = lo; v2 <= hi; ++v2) {
            if (v1 == 0 && v2 == 0) continue;
            long e2 = 3 * v1 + 13 * v2, e3 = 4 * v1 + 9 * v2, e4 = 3 * v1 + 10 * v2;
            if (std::abs(e2) > K) continue;
            if (ok(v1) && ok(e2) && ok(e3) && ok(e4)) all.push_back({Integer(v1), Integer(v2)});
        }
    }
    std::sort(all.begin(), all.end());
    for (const auto& v : all) (gcd(v[0], v[1]) == 1 ? rep.primitive_vectors : rep.non_primitive_vectors).push_back(v);

    auto product = [&](const IntVec& v, const IntVec& w) {
        RatMatrix Bm = int_matrix({{v[0].get_si(), v[1].get_si()}, {w[0].get_si(), w[1].get_si()}});
        return std::make_pair(Bm, Bm * rep.A);
    };
    // One representative per sign class: first nonzero entry positive.
    std::vector<IntVec> reps;
    for (const auto& v : rep.primitive_vectors)
        if (v[0] > 0 || (v[0] == 0 && v[1] > 0)) reps.push_back(v);
    for (Index a = 0; a < reps.size(); ++a)
        for (Index b = a + 1; b < reps.size(); ++b) {
            auto [Bm, P] = product(reps[a], reps[b]);
            if (bareiss_det(Bm) == 0) continue;
            AppendixRepresentation r;
            r.v = reps[a];
            r.w = reps[b];
            r.product = P;
            r.failing_pairs = failing_pairs(P, rep.kappa_dot, &r.witness_det);
            if (!r.failing_pairs.empty()) r.witness_cols = r.failing_pairs.front();
            rep.representations.push_back(std::move(r));
        }
    for (Index a = 0; a < all.size(); ++a)
        for (Index b = 0; b < all.size(); ++b) {
            auto [Bm, P] = product(all[a], all[b]);
            if (bareiss_det(Bm) == 0) continue;
            ++rep.all_pairs_checked;
            if (failing_pairs(P, rep.kappa_dot, nullptr).empty()) rep.all_pairs_fail = false;
        }
    return rep;
}

}  // namespace circuitkit

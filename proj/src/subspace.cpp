#include "circuitkit/subspace.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <numeric>

#include "circuitkit/errors.hpp"

namespace circuitkit {

struct Subspace::Data {
    Index n = 0;
    RatMatrix kernel_rep;
    RatMatrix span_rep;
    std::once_flag circuits_once;
    std::vector<ElementaryVector> circuits;
};

Subspace Subspace::kernel_of(const RatMatrix& A) {
    auto d = std::make_shared<Data>();
    d->n = A.cols();
    IndexSet rows = independent_rows(A);
    d->kernel_rep = rows.size() == A.rows() ? A : A.select_rows(rows);
    if (d->kernel_rep.rows() == 0) d->kernel_rep = RatMatrix(0, A.cols());
    d->span_rep = rref_kernel(A).kernel_basis;
    return Subspace(d);
}

Subspace Subspace::span_of(const RatMatrix& V) {
    auto d = std::make_shared<Data>();
    d->n = V.cols();
    IndexSet rows = independent_rows(V);
    d->span_rep = V.select_rows(rows);
    if (d->span_rep.rows() == 0) d->span_rep = RatMatrix(0, V.cols());
    d->kernel_rep = rref_kernel(V).kernel_basis;
    return Subspace(d);
}

Subspace Subspace::span_of(Index n, const std::vector<Vec>& vectors) {
    if (vectors.empty()) return span_of(RatMatrix(0, n));
    return span_of(RatMatrix::from_rows(vectors, n));
}

Index Subspace::ambient_dim() const { return d_->n; }
Index Subspace::dim() const { return d_->span_rep.rows(); }
const RatMatrix& Subspace::kernel_rep() const { return d_->kernel_rep; }
const RatMatrix& Subspace::span_rep() const { return d_->span_rep; }

bool Subspace::contains(const Vec& x) const {
    if (x.size() != d_->n) throw DimensionMismatch("vector length differs from ambient dimension");
    return is_zero(d_->kernel_rep * x);
}

bool Subspace::operator==(const Subspace& o) const {
    if (ambient_dim() != o.ambient_dim() || dim() != o.dim()) return false;
    for (Index i = 0; i < dim(); ++i)
        if (!o.contains(span_rep().row(i))) return false;
    return true;
}

std::optional<ElementaryVector> circuit_on_support(const RatMatrix& A, const IndexSet& S) {
    KernelResult k = rref_kernel(A.select_cols(S));
    if (k.kernel_basis.rows() != 1) return std::nullopt;
    Vec full(A.cols(), Rational(0));
    for (Index t = 0; t < S.size(); ++t) {
        if (k.kernel_basis(0, t) == 0) return std::nullopt;
        full[S[t]] = k.kernel_basis(0, t);
    }
    ElementaryVector e;
    e.support = S;
    e.vector = integer_normalize(full).g;
    return e;
}

const std::vector<ElementaryVector>& Subspace::circuits() const {
    std::call_once(d_->circuits_once, [this] {
        const Index n = d_->n;
        check_envelope(n, "circuit enumeration");
        const RatMatrix& A = d_->kernel_rep;
        const Index r = A.rows();
        std::vector<std::uint64_t> masks;
        std::vector<ElementaryVector> out;
        for (Index k = 1; k <= std::min(n, r + 1); ++k) {
            for_each_combination(n, k, [&](const IndexSet& S) {
                std::uint64_t m = 0;
                for (Index i : S) m |= std::uint64_t{1} << i;
                for (auto c : masks)
                    if ((c & m) == c) return true;
                if (auto e = circuit_on_support(A, S)) {
                    masks.push_back(m);
                    out.push_back(std::move(*e));
                }
                return true;
            });
        }
        std::sort(out.begin(), out.end(),
                  [](const ElementaryVector& a, const ElementaryVector& b) { return a.support < b.support; });
        d_->circuits = std::move(out);
    });
    return d_->circuits;
}

const std::vector<ElementaryVector>& circuits(const Subspace& W) { return W.circuits(); }

bool conforms(const Vec& y, const Vec& x) {
    for (Index i = 0; i < y.size(); ++i) {
        if (y[i] == 0) continue;
        if (sgn(y[i]) != sgn(x[i])) return false;
    }
    return true;
}

ConformalDecomposition conformal_decompose(const Subspace& W, const Vec& z, DecomposeRule rule) {
    if (!W.contains(z)) throw NotInSubspace("conformal_decompose target is not in W");
    ConformalDecomposition dec;
    dec.target = z;
    Vec r = z;
    const auto& cs = W.circuits();
    while (!is_zero(r)) {
        std::optional<ElementaryVector> pick;
        for (const auto& c : cs) {
            int s = 0;
            bool ok = true;
            for (Index i : c.support) {
                if (r[i] == 0) {
                    ok = false;
                    break;
                }
                int si = sgn(r[i]) * sgn(c.vector[i]);
                if (s == 0) s = si;
                if (si != s) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            ElementaryVector h = c;
            if (s < 0)
                for (auto& x : h.vector) x = -x;
            pick = std::move(h);
            if (rule == DecomposeRule::GreedyMaximal) break;
        }
        if (!pick) throw std::logic_error("no conformal circuit found for a nonzero subspace vector");
        Rational alpha = -1;
        for (Index i : pick->support) {
            Rational a = r[i] / Rational(pick->vector[i]);
            if (alpha < 0 || a < alpha) alpha = a;
        }
        r = axpy(r, -alpha, pick->as_rational());
        dec.terms.push_back({alpha, std::move(*pick)});
    }
    return dec;
}

Subspace minor(const Subspace& W, const IndexSet& J, MinorMode mode) {
    if (J.empty()) throw EmptyIndexSet("minor needs a nonempty index set");
    for (Index j : J)
        if (j >= W.ambient_dim()) throw DimensionMismatch("minor index out of range");
    if (mode == MinorMode::Project) {
        const RatMatrix& V = W.span_rep();
        if (V.rows() == 0) return Subspace::span_of(RatMatrix(0, J.size()));
        return Subspace::span_of(V.select_cols(J));
    }
    const RatMatrix& A = W.kernel_rep();
    if (A.rows() == 0) return Subspace::kernel_of(RatMatrix(0, J.size()));
    return Subspace::kernel_of(A.select_cols(J));
}

Subspace dual(const Subspace& W) { return Subspace::kernel_of(W.span_rep()); }

Vec lift_min_norm(const Subspace& W, const IndexSet& I, const Vec& p) {
    if (p.size() != I.size()) throw DimensionMismatch("lift_min_norm: |p| != |I|");
    const Index n = W.ambient_dim();
    const RatMatrix& V = W.span_rep();
    const Index k = V.rows();
    if (k == 0) {
        if (!is_zero(p)) throw NotInProjection("W is trivial");
        return zeros(n);
    }
    RatMatrix VIt = V.select_cols(I).transpose();  // |I| x k
    auto alpha = solve_linear(VIt, p);
    if (!alpha) throw NotInProjection("p is not in the projection of W onto I");
    Vec z0 = V.transpose() * *alpha;
    RatMatrix betas = rref_kernel(VIt).kernel_basis;
    if (betas.rows() == 0) return z0;
    RatMatrix K = betas * V;
    return sub(z0, project_onto_rowspace(K, z0));
}

Vec project(const Subspace& W, const Vec& x) { return project_onto_rowspace(W.span_rep(), x); }

Subspace rescale(const Subspace& W, const Vec& d) {
    if (d.size() != W.ambient_dim()) throw DimensionMismatch("rescale vector length");
    RatMatrix V = W.span_rep();
    for (Index i = 0; i < V.rows(); ++i)
        for (Index j = 0; j < V.cols(); ++j) V(i, j) *= d[j];
    return Subspace::span_of(V);
}

std::vector<IndexSet> components(const Subspace& W) {
    const Index n = W.ambient_dim();
    std::vector<Index> parent(n);
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& c : W.circuits())
        for (Index t = 1; t < c.support.size(); ++t) {
            Index a = find(c.support[0]), b = find(c.support[t]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<IndexSet> blocks;
    std::vector<long> block_of(n, -1);
    for (Index i = 0; i < n; ++i) {
        Index r = find(i);
        if (block_of[r] < 0) {
            block_of[r] = static_cast<long>(blocks.size());
            blocks.emplace_back();
        }
        blocks[static_cast<Index>(block_of[r])].push_back(i);
    }
    return blocks;
}

bool is_non_separable(const Subspace& W) { return components(W).size() == 1; }

AnchoredResult is_anchored(const Subspace& W) {
    AnchoredResult res;
    for (const auto& c : W.circuits()) {
        bool has_unit = false;
        for (Index i : c.support)
            if (abs(c.vector[i]) == 1) has_unit = true;
        if (!has_unit) {
            res.anchored = false;
            res.violating = c;
            return res;
        }
    }
    return res;
}

}  // namespace circuitkit

#include "doctest.h"

#include "circuitkit/errors.hpp"
#include "circuitkit/subspace.hpp"
#include "fixtures.hpp"

using namespace circuitkit;

namespace {

std::vector<IntVec> library_circuits(const RatMatrix& A) {
    std::vector<IntVec> out;
    Subspace W = Subspace::kernel_of(A);
    for (const auto& e : W.circuits()) out.push_back(e.vector);
    std::sort(out.begin(), out.end());
    return out;
}

Vec random_member(const Subspace& W, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dist(-3, 3);
    Vec x = zeros(W.ambient_dim());
    for (Index r = 0; r < W.dim(); ++r) x = axpy(x, Rational(dist(rng)), W.span_rep().row(r));
    return x;
}

}  // namespace

TEST_CASE("circuits match brute force support search") {
    CHECK(library_circuits(fx::A_app()) == fx::brute_circuits(fx::A_app()));
    CHECK(library_circuits(fx::A_int()) == fx::brute_circuits(fx::A_int()));
    CHECK(library_circuits(fx::A_db()) == fx::brute_circuits(fx::A_db()));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 25; ++t) {
        RatMatrix A = fx::random_int_matrix(1 + t % 3, 4 + t % 3, -3, 3, rng);
        CHECK(library_circuits(A) == fx::brute_circuits(A));
    }
}

TEST_CASE("circuits are sorted by support and kernel members") {
    Subspace W = Subspace::kernel_of(fx::A_app());
    const auto& cs = W.circuits();
    REQUIRE(cs.size() == 4);
    for (Index i = 0; i + 1 < cs.size(); ++i) CHECK(cs[i].support < cs[i + 1].support);
    for (const auto& c : cs) {
        CHECK(W.contains(c.as_rational()));
        CHECK(support(c.as_rational()) == c.support);
    }
    // A_int: x1 = -x0, x2 = -x1
    auto ci = Subspace::kernel_of(fx::A_int()).circuits();
    REQUIRE(ci.size() == 1);
    CHECK(ci[0].vector == fx::zvec({1, -1, 1}));
}

TEST_CASE("kernel_of and span_of agree") {
    Subspace K = Subspace::kernel_of(fx::A_app());
    Subspace S = Subspace::span_of(K.span_rep());
    CHECK(K == S);
    CHECK(S.dim() == 2);
    CHECK(fx::A_app() * K.span_rep().row(0) == zeros(2));
    CHECK(Subspace::kernel_of(K.kernel_rep()) == K);
}

TEST_CASE("dual is the orthogonal complement") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        RatMatrix A = fx::random_int_matrix(2, 5, -3, 3, rng);
        Subspace W = Subspace::kernel_of(A);
        Subspace D = dual(W);
        CHECK(W.dim() + D.dim() == 5);
        for (Index i = 0; i < W.dim(); ++i)
            for (Index j = 0; j < D.dim(); ++j) CHECK(dot(W.span_rep().row(i), D.span_rep().row(j)) == 0);
        CHECK(dual(D) == W);
    }
}

TEST_CASE("conformal decomposition: sum, conformity, term count") {
    std::mt19937_64 rng(9);
    std::vector<RatMatrix> mats = {fx::A_app(), fx::A_db(), fx::A_int()};
    for (int t = 0; t < 15; ++t) mats.push_back(fx::random_int_matrix(2, 5, -2, 2, rng));
    for (const auto& A : mats) {
        Subspace W = Subspace::kernel_of(A);
        for (int k = 0; k < 8; ++k) {
            Vec z = random_member(W, rng);
            for (auto rule : {DecomposeRule::GreedyMaximal, DecomposeRule::Any}) {
                ConformalDecomposition dec = conformal_decompose(W, z, rule);
                Vec sum = zeros(z.size());
                for (const auto& term : dec.terms) {
                    CHECK(term.coefficient > 0);
                    Vec h = scale(term.circuit.as_rational(), term.coefficient);
                    CHECK(conforms(h, z));
                    sum = add(sum, h);
                }
                CHECK(sum == z);
                CHECK(dec.terms.size() <= z.size());
                if (is_zero(z)) CHECK(dec.terms.empty());
            }
        }
    }
    CHECK_THROWS_AS(conformal_decompose(Subspace::kernel_of(fx::A_int()), fx::ivec({1, 0, 0})), NotInSubspace);
}

TEST_CASE("minors and lifting") {
    Subspace W = Subspace::kernel_of(fx::A_app());
    IndexSet J{0, 2, 3};
    Subspace P = minor(W, J, MinorMode::Project);
    Subspace R = minor(W, J, MinorMode::Restrict);
    CHECK(P.ambient_dim() == 3);
    // Restriction is contained in projection.
    for (Index i = 0; i < R.dim(); ++i) CHECK(P.contains(R.span_rep().row(i)));
    std::mt19937_64 rng(2);
    for (int k = 0; k < 10; ++k) {
        Vec x = random_member(W, rng);
        Vec p = restrict_to(x, J);
        CHECK(P.contains(p));
        Vec lifted = lift_min_norm(W, J, p);
        CHECK(W.contains(lifted));
        CHECK(restrict_to(lifted, J) == p);
        // minimal norm among lifts: x itself is a lift
        CHECK(norm2_sq(lifted) <= norm2_sq(x));
    }
    CHECK_THROWS_AS(minor(W, {}, MinorMode::Project), EmptyIndexSet);
    CHECK_THROWS_AS(lift_min_norm(Subspace::kernel_of(fx::A_int()), {0}, fx::ivec({1, 2})), DimensionMismatch);
}

TEST_CASE("projection is idempotent and orthogonal") {
    Subspace W = Subspace::kernel_of(fx::A_app());
    Vec x = fx::ivec({1, -2, 3, 5});
    Vec p = project(W, x);
    CHECK(W.contains(p));
    CHECK(project(W, p) == p);
    Vec r = sub(x, p);
    for (Index i = 0; i < W.dim(); ++i) CHECK(dot(r, W.span_rep().row(i)) == 0);
}

TEST_CASE("rescaling maps circuits entrywise") {
    Subspace W = Subspace::kernel_of(fx::A_app());
    Vec d = fx::ivec({1, 2, 3, 5});
    Subspace Wd = rescale(W, d);
    for (const auto& c : W.circuits()) {
        Vec v = c.as_rational();
        for (Index i = 0; i < v.size(); ++i) v[i] *= d[i];
        CHECK(Wd.contains(v));
    }
    CHECK(Wd.circuits().size() == W.circuits().size());
}

TEST_CASE("components and separability") {
    // Block diagonal: two independent copies of A_int.
    RatMatrix A = int_matrix({{1, 1, 0, 0, 0, 0}, {0, 1, 1, 0, 0, 0}, {0, 0, 0, 1, 1, 0}, {0, 0, 0, 0, 1, 1}});
    Subspace W = Subspace::kernel_of(A);
    auto comps = components(W);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == IndexSet{0, 1, 2});
    CHECK(comps[1] == IndexSet{3, 4, 5});
    CHECK_FALSE(is_non_separable(W));
    CHECK(is_non_separable(Subspace::kernel_of(fx::A_app())));
}

TEST_CASE("anchored subspaces") {
    // Every circuit of A_int has +-1 entries.
    CHECK(is_anchored(Subspace::kernel_of(fx::A_int())).anchored);
    AnchoredResult r = is_anchored(Subspace::kernel_of(fx::A_app()));
    CHECK_FALSE(r.anchored);
    REQUIRE(r.violating);
    for (const auto& g : r.violating->vector) CHECK(abs(g) != 1);
}

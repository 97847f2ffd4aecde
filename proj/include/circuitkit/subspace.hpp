#pragma once

#include <memory>
#include <optional>

#include "circuitkit/linalg.hpp"

namespace circuitkit {

struct ElementaryVector {
    IndexSet support;
    IntVec vector;

    Vec as_rational() const { return to_rational(vector); }
    bool operator==(const ElementaryVector& o) const { return vector == o.vector; }
};

struct ConformalTerm {
    Rational coefficient;
    ElementaryVector circuit;
};

struct ConformalDecomposition {
    std::vector<ConformalTerm> terms;
    Vec target;
};

enum class DecomposeRule { GreedyMaximal, Any };
enum class MinorMode { Project, Restrict };

// Linear subspace W of Q^n. Copies share the cached representations.
class Subspace {
public:
    static Subspace kernel_of(const RatMatrix& A);
    static Subspace span_of(const RatMatrix& V);
    static Subspace span_of(Index n, const std::vector<Vec>& vectors);

    Index ambient_dim() const;
    Index dim() const;
    // Full row rank A with ker(A) = W.
    const RatMatrix& kernel_rep() const;
    // Basis of W as rows.
    const RatMatrix& span_rep() const;

    bool contains(const Vec& x) const;
    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    // Elementary vectors, one per circuit, sorted by support lexicographically. Computed once.
    const std::vector<ElementaryVector>& circuits() const;

private:
    struct Data;
    explicit Subspace(std::shared_ptr<Data> d) : d_(std::move(d)) {}
    std::shared_ptr<Data> d_;
};

const std::vector<ElementaryVector>& circuits(const Subspace& W);

// Support-minimal test for a candidate support; returns the normalized vector when S is a circuit.
std::optional<ElementaryVector> circuit_on_support(const RatMatrix& A, const IndexSet& S);

bool conforms(const Vec& y, const Vec& x);

ConformalDecomposition conformal_decompose(const Subspace& W, const Vec& z,
                                           DecomposeRule rule = DecomposeRule::GreedyMaximal);
Subspace minor(const Subspace& W, const IndexSet& J, MinorMode mode);
Subspace dual(const Subspace& W);
Vec lift_min_norm(const Subspace& W, const IndexSet& I, const Vec& p);
// Orthogonal projection onto W.
Vec project(const Subspace& W, const Vec& x);
// Image of W under x -> diag(d) x.
Subspace rescale(const Subspace& W, const Vec& d);

std::vector<IndexSet> components(const Subspace& W);
bool is_non_separable(const Subspace& W);

struct AnchoredResult {
    bool anchored = true;
    std::optional<ElementaryVector> violating;
};
AnchoredResult is_anchored(const Subspace& W);

}  // namespace circuitkit

#include "circuitkit/generate.hpp"

#include <set>

#include "circuitkit/augment.hpp"
#include "circuitkit/errors.hpp"

namespace circuitkit::gen {

RatMatrix complete_graph_incidence(Index nodes) {
    if (nodes < 2) throw BadParameters("complete graph needs at least 2 nodes");
    RatMatrix A(nodes, nodes * (nodes - 1) / 2);
    Index e = 0;
    for (Index i = 0; i < nodes; ++i)
        for (Index j = i + 1; j < nodes; ++j, ++e) {
            A(i, e) = 1;
            A(j, e) = 1;
        }
    return A;
}

RatMatrix dumbbell() {
    const std::vector<std::pair<Index, Index>> edges = {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 5}};
    RatMatrix A(6, edges.size());
    for (Index e = 0; e < edges.size(); ++e) {
        A(edges[e].first, e) = 1;
        A(edges[e].second, e) = 1;
    }
    return A;
}

RatMatrix incidence(const Digraph& g) {
    RatMatrix A(g.nodes, g.arcs.size());
    for (Index e = 0; e < g.arcs.size(); ++e) {
        A(g.arcs[e].first, e) -= 1;
        A(g.arcs[e].second, e) += 1;
    }
    return A;
}

Digraph random_digraph(Index nodes, Index arcs, std::mt19937_64& rng) {
    if (nodes < 2) throw BadParameters("digraph needs at least 2 nodes");
    if (arcs < nodes - 1) throw BadParameters("too few arcs for a connected digraph");
    if (arcs > nodes * (nodes - 1)) throw BadParameters("too many arcs for a simple digraph");
    Digraph g;
    g.nodes = nodes;
    std::set<std::pair<Index, Index>> used;
    for (Index v = 1; v < nodes; ++v) {
        Index w = std::uniform_int_distribution<Index>(0, v - 1)(rng);
        std::pair<Index, Index> a = rng() % 2 ? std::make_pair(v, w) : std::make_pair(w, v);
        used.insert(a);
        g.arcs.push_back(a);
    }
    std::uniform_int_distribution<Index> pick(0, nodes - 1);
    while (g.arcs.size() < arcs) {
        Index a = pick(rng), b = pick(rng);
        if (a == b || used.count({a, b})) continue;
        used.insert({a, b});
        g.arcs.push_back({a, b});
    }
    return g;
}

RatMatrix tu_network(Index nodes, Index arcs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RatMatrix A = incidence(random_digraph(nodes, arcs, rng));
    IndexSet rows;
    for (Index i = 0; i + 1 < nodes; ++i) rows.push_back(i);
    A = A.select_rows(rows);
    if (!is_TU(A).tu) throw std::logic_error("generated network matrix failed the TU test");
    return A;
}

RatMatrix random_integer(Index m, Index n, long lo, long hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(lo, hi);
    RatMatrix A(m, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) A(i, j) = dist(rng);
    return A;
}

RatMatrix random_rational(Index m, Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    RatMatrix A(m, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) {
            long p = num(rng), q = den(rng);
            A(i, j) = frac(p, q);
        }
    return A;
}

LPInstance random_flow(Index nodes, Index arcs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Digraph g = random_digraph(nodes, arcs, rng);
    FlowNetwork net;
    net.nodes = nodes;
    net.arcs = g.arcs;
    net.demands.assign(nodes, Rational(0));
    std::uniform_int_distribution<long> cap(1, 5), cost(-3, 6);
    for (Index e = 0; e < g.arcs.size(); ++e) {
        long u = cap(rng);
        long f = std::uniform_int_distribution<long>(0, u)(rng);
        net.capacities.emplace_back(Rational(u));
        net.costs.emplace_back(cost(rng));
        net.demands[g.arcs[e].second] += f;
        net.demands[g.arcs[e].first] -= f;
    }
    return flow_to_lp(net);
}

LPInstance random_max_flow(Index nodes, Index arcs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Digraph g = random_digraph(nodes, arcs, rng);
    std::vector<std::optional<Rational>> caps;
    std::uniform_int_distribution<long> cap(1, 5);
    for (Index e = 0; e < g.arcs.size(); ++e) caps.emplace_back(Rational(cap(rng)));
    return flow_to_lp(max_flow_encoding(nodes, g.arcs, caps, 0, nodes - 1));
}

std::variant<RatMatrix, LPInstance> generate(const GeneratorSpec& s) {
    if (s.family == "flow") return random_flow(s.nodes, s.arcs, s.seed);
    if (s.family == "incidence") return complete_graph_incidence(s.nodes);
    if (s.family == "dumbbell") return dumbbell();
    if (s.family == "tu-network") return tu_network(s.nodes, s.arcs, s.seed);
    if (s.family == "random-rational") {
        if (s.rows == 0 || s.cols == 0) throw BadParameters("random-rational needs positive rows and cols");
        return random_rational(s.rows, s.cols, s.seed);
    }
    throw BadParameters("unknown family '" + s.family + "'");
}

}  // namespace circuitkit::gen

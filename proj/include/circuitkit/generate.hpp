#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>

#include "circuitkit/lp.hpp"

namespace circuitkit::gen {

struct Digraph {
    Index nodes = 0;
    std::vector<std::pair<Index, Index>> arcs;  // (tail, head)
};

// Undirected node-edge incidence of K_n, edges in lexicographic order.
RatMatrix complete_graph_incidence(Index nodes);
// Two vertex-disjoint triangles joined by one edge: 6 x 7.
RatMatrix dumbbell();
// Node-arc incidence: +1 at the head, -1 at the tail.
RatMatrix incidence(const Digraph& g);

// Weakly connected random digraph without loops or parallel arcs.
Digraph random_digraph(Index nodes, Index arcs, std::mt19937_64& rng);
// Directed incidence with the last row dropped (full row rank); TU-certified.
RatMatrix tu_network(Index nodes, Index arcs, std::uint64_t seed);
RatMatrix random_integer(Index m, Index n, long lo, long hi, std::uint64_t seed);
RatMatrix random_rational(Index m, Index n, std::uint64_t seed);
// Min-cost flow with random capacities, costs and balanced demands from a random feasible flow.
LPInstance random_flow(Index nodes, Index arcs, std::uint64_t seed);
// Max-flow encoding on a random network with source 0 and sink nodes-1.
LPInstance random_max_flow(Index nodes, Index arcs, std::uint64_t seed);

struct GeneratorSpec {
    std::string family;  // flow | incidence | dumbbell | tu-network | random-rational
    Index nodes = 5;
    Index arcs = 7;
    Index rows = 2;
    Index cols = 4;
    std::uint64_t seed = 1;
};

std::variant<RatMatrix, LPInstance> generate(const GeneratorSpec& spec);

}  // namespace circuitkit::gen

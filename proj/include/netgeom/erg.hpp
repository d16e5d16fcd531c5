#pragma once

#include "netgeom/netcore.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace netgeom {

// number of 3-cliques in the binarized graph
long count_triangles(const Graph& g);

// number of paths on 3 nodes (2 edges): sum_i C(d_i, 2)
long count_three_chains(const Graph& g);

enum class ErgObservable { Triangles, ThreeChains };

long erg_observable_value(ErgObservable obs, const Graph& g);

// Exponential random graph ensemble over all labeled graphs on n nodes,
// H(G) = sum_i lambda_i xi_i(G), P(G) = exp(-H)/Z.  Enumeration is exact
// (n <= 7 keeps the ensemble at most 2^21 graphs), so Z is an oracle value.
struct ErgEnsemble {
    int n = 6;
    std::vector<ErgObservable> observables;
    std::vector<double> lambdas;
};

struct ErgDistribution {
    int n = 0;
    double log_z = 0.0;
    std::vector<double> prob; // indexed by edge bitmask over the C(n,2) pairs
};

ErgDistribution erg_distribution(const ErgEnsemble& ens);

// labeled graph for an edge bitmask (pair order: (0,1),(0,2),...,(n-2,n-1))
Graph graph_from_mask(int n, std::uint64_t mask);

// expectation of an arbitrary graph functional under the distribution
double erg_expectation(const ErgDistribution& dist,
                       const std::function<double(const Graph&)>& fn);

// The 6-node minimal-energy fixtures whose entropies get compared:
// two disjoint triangles, K4 plus two isolated nodes, K5 plus one isolated.
std::vector<std::pair<std::string, Graph>> fixture_graphs();

} // namespace netgeom

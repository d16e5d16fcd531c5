#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace netgeom {

// Simple undirected weighted graph held as a dense symmetric adjacency
// matrix with zero diagonal and non-negative entries.  Dense storage is
// deliberate: everything downstream needs full inverses anyway and n stays
// well below ~500 in all experiments.
struct Graph {
    Eigen::MatrixXd adj; // n x n, adj(i,j) == adj(j,i), adj(i,i) == 0

    Graph() = default;
    explicit Graph(int n) : adj(Eigen::MatrixXd::Zero(n, n)) {}

    int n() const { return static_cast<int>(adj.rows()); }

    bool has_edge(int i, int j) const { return adj(i, j) > 0.0; }

    void set_edge(int i, int j, double w) {
        adj(i, j) = w;
        adj(j, i) = w;
    }

    // number of unordered pairs (i<j) with positive weight
    long edge_count() const;

    // throws InputError if any structural invariant is violated
    void validate() const;

    static Graph empty(int n) { return Graph(n); }
};

struct DegreeSequence {
    std::vector<int> degrees;

    int n() const { return static_cast<int>(degrees.size()); }
    long sum() const;
    bool even_sum() const { return sum() % 2 == 0; }
};

// Erdos-Gallai realizability test for simple graphs (assumes nothing about
// ordering of the input).
bool is_graphical(const DegreeSequence& ds);

// Edge-weight assignment rule.  Jittered draws r + omega with omega zero-mean
// Gaussian of the given variance, redrawing until positive so realized
// weights are never negative or zero.
struct WeightScheme {
    enum class Kind { Constant, Jittered };
    Kind kind = Kind::Constant;
    double r = 1.0;   // mean weight, > 0
    double var = 0.0; // jitter variance, >= 0

    static WeightScheme constant(double r) { return {Kind::Constant, r, 0.0}; }
    static WeightScheme jittered(double r, double var) { return {Kind::Jittered, r, var}; }
    void validate() const;
};

// Uniform random graph G(n,k): exactly k distinct edges chosen uniformly
// among all k-subsets of node pairs, unit weights.  Deterministic per seed.
Graph gen_uniform_random_graph(int n, long k, std::uint64_t seed);

// Configuration model by stub matching with whole-graph restart on
// self-loop/multi-edge collisions.  Unit weights.
Graph gen_configuration_model(const DegreeSequence& ds, std::uint64_t seed,
                              int max_retries = 1000);

// n i.i.d. draws from P(d) proportional to d^-gamma on [d_min, d_max];
// parity of the sum fixed by incrementing one random entry.
DegreeSequence gen_powerlaw_sequence(int n, double gamma, int d_min, int d_max,
                                     std::uint64_t seed);

// Replaces every nonzero weight by a draw from the scheme (symmetrically).
Graph assign_weights(const Graph& g, const WeightScheme& scheme, std::uint64_t seed);

// Uniform random graph with the same n and k as g, unit weights.
Graph randomize_preserving_nk(const Graph& g, std::uint64_t seed);

// Estrada heterogeneity index: sum over edges of (1/sqrt(d_i) - 1/sqrt(d_j))^2
// on the binarized degree structure.  Zero exactly for regular graphs.
double heterogeneity(const Graph& g);

// Gibbs entropy of the random-graph ensemble, ln[ C(C(n,2),k) / n! ],
// evaluated in the log domain via log-gamma.
double gibbs_rg_entropy(int n, long k);

// Binarized degrees (count of nonzero entries per row).
DegreeSequence degree_sequence(const Graph& g);

// Deterministic graph with the given hub degrees and all remaining nodes of
// degree 2, wired so hubs are pairwise non-adjacent and every hub neighbour
// has degree 2.  This is the canonical topology behind the heterogeneity
// table: h reduces to sum_j d_j (1/sqrt(d_j) - 1/sqrt(2))^2.
Graph hub_fixture_graph(int n, const std::vector<int>& hub_degrees);

} // namespace netgeom

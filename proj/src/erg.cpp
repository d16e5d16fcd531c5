#include "netgeom/erg.hpp"

#include "netgeom/errors.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace netgeom {

long count_triangles(const Graph& g) {
    const int n = g.n();
    long t = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!g.has_edge(i, j)) continue;
            for (int k = j + 1; k < n; ++k)
                if (g.has_edge(i, k) && g.has_edge(j, k)) ++t;
        }
    return t;
}

long count_three_chains(const Graph& g) {
    DegreeSequence ds = degree_sequence(g);
    long c = 0;
    for (int d : ds.degrees) c += static_cast<long>(d) * (d - 1) / 2;
    return c;
}

long erg_observable_value(ErgObservable obs, const Graph& g) {
    switch (obs) {
    case ErgObservable::Triangles: return count_triangles(g);
    default: return count_three_chains(g);
    }
}

Graph graph_from_mask(int n, std::uint64_t mask) {
    Graph g(n);
    int bit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
            if (mask & (1ULL << bit)) g.set_edge(i, j, 1.0);
    return g;
}

ErgDistribution erg_distribution(const ErgEnsemble& ens) {
    if (ens.n < 1 || ens.n > 7)
        throw InputError("exhaustive ERG enumeration requires 1 <= n <= 7");
    if (ens.observables.size() != ens.lambdas.size())
        throw InputError("observables and lambdas must have matching lengths");

    const int pairs = ens.n * (ens.n - 1) / 2;
    const std::uint64_t total = 1ULL << pairs;

    std::vector<double> neg_h(total);
    double max_neg_h = -std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Graph g = graph_from_mask(ens.n, mask);
        double h = 0.0;
        for (std::size_t i = 0; i < ens.observables.size(); ++i)
            h += ens.lambdas[i] *
                 static_cast<double>(erg_observable_value(ens.observables[i], g));
        neg_h[mask] = -h;
        max_neg_h = std::max(max_neg_h, -h);
    }

    // partition function by log-sum-exp over the full enumeration
    double acc = 0.0;
    for (std::uint64_t mask = 0; mask < total; ++mask)
        acc += std::exp(neg_h[mask] - max_neg_h);
    double log_z = max_neg_h + std::log(acc);

    ErgDistribution dist;
    dist.n = ens.n;
    dist.log_z = log_z;
    dist.prob.resize(total);
    for (std::uint64_t mask = 0; mask < total; ++mask)
        dist.prob[mask] = std::exp(neg_h[mask] - log_z);
    return dist;
}

double erg_expectation(const ErgDistribution& dist,
                       const std::function<double(const Graph&)>& fn) {
    double acc = 0.0;
    for (std::uint64_t mask = 0; mask < dist.prob.size(); ++mask)
        acc += dist.prob[mask] * fn(graph_from_mask(dist.n, mask));
    return acc;
}

std::vector<std::pair<std::string, Graph>> fixture_graphs() {
    std::vector<std::pair<std::string, Graph>> out;

    Graph two_triangles(6);
    for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}})
        two_triangles.set_edge(i, j, 1.0);
    out.emplace_back("two_triangles", std::move(two_triangles));

    Graph k4(6);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.set_edge(i, j, 1.0);
    out.emplace_back("k4_plus_two_isolated", std::move(k4));

    Graph k5(6);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) k5.set_edge(i, j, 1.0);
    out.emplace_back("k5_plus_one_isolated", std::move(k5));

    return out;
}

} // namespace netgeom

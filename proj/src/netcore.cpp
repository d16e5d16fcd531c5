#include "netgeom/netcore.hpp"

#include "netgeom/errors.hpp"
#include "netgeom/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

namespace netgeom {

long Graph::edge_count() const {
    long k = 0;
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (adj(i, j) > 0.0) ++k;
    return k;
}

void Graph::validate() const {
    const int nn = n();
    if (adj.cols() != nn) throw InputError("adjacency matrix is not square");
    for (int i = 0; i < nn; ++i) {
        if (adj(i, i) != 0.0) throw InputError("nonzero diagonal in adjacency matrix");
        for (int j = i + 1; j < nn; ++j) {
            if (adj(i, j) != adj(j, i)) throw InputError("adjacency matrix is not symmetric");
            if (adj(i, j) < 0.0) throw InputError("negative edge weight");
        }
    }
}

long DegreeSequence::sum() const {
    return std::accumulate(degrees.begin(), degrees.end(), 0L);
}

bool is_graphical(const DegreeSequence& ds) {
    const int n = ds.n();
    for (int d : ds.degrees)
        if (d < 0 || d > n - 1) return false;
    if (ds.sum() % 2 != 0) return false;

    std::vector<long> d(ds.degrees.begin(), ds.degrees.end());
    std::sort(d.begin(), d.end(), std::greater<>());
    std::vector<long> prefix(n + 1, 0);
    for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + d[i];

    for (int k = 1; k <= n; ++k) {
        long lhs = prefix[k];
        long rhs = static_cast<long>(k) * (k - 1);
        for (int i = k; i < n; ++i) rhs += std::min<long>(d[i], k);
        if (lhs > rhs) return false;
    }
    return true;
}

void WeightScheme::validate() const {
    if (!(r > 0.0)) throw InputError("weight scheme requires r > 0");
    if (var < 0.0) throw InputError("weight scheme requires var >= 0");
}

namespace {

// pair index <-> (i,j), i<j, row-major over the strict upper triangle
long pair_offset(int i, long n) { return i * n - (static_cast<long>(i) * (i + 1)) / 2; }

std::pair<int, int> decode_pair(long e, int n) {
    // invert e = pair_offset(i) + (j - i - 1)
    double nn = static_cast<double>(n);
    int i = static_cast<int>(std::floor((2.0 * nn - 1.0 - std::sqrt((2.0 * nn - 1.0) * (2.0 * nn - 1.0) - 8.0 * static_cast<double>(e))) / 2.0));
    if (i < 0) i = 0;
    while (i > 0 && pair_offset(i, n) > e) --i;
    while (i + 1 < n && pair_offset(i + 1, n) <= e) ++i;
    int j = static_cast<int>(e - pair_offset(i, n)) + i + 1;
    return {i, j};
}

} // namespace

Graph gen_uniform_random_graph(int n, long k, std::uint64_t seed) {
    if (n < 0) throw InputError("node count must be non-negative");
    const long m = static_cast<long>(n) * (n - 1) / 2;
    if (k < 0 || k > m) throw InputError("edge count k out of range [0, n(n-1)/2]");

    // Floyd's k-subset sampling over pair indices: uniform over all k-subsets.
    Rng rng(seed);
    std::set<long> chosen;
    for (long j = m - k; j < m; ++j) {
        long t = static_cast<long>(rng.next_below(static_cast<std::uint64_t>(j) + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }

    Graph g(n);
    for (long e : chosen) {
        auto [i, j] = decode_pair(e, n);
        g.set_edge(i, j, 1.0);
    }
    return g;
}

Graph gen_configuration_model(const DegreeSequence& ds, std::uint64_t seed, int max_retries) {
    const int n = ds.n();
    if (!ds.even_sum()) throw InputError("degree sequence has odd sum");
    if (!is_graphical(ds)) throw InputError("degree sequence is not graphical (Erdos-Gallai)");

    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(ds.sum()));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < ds.degrees[i]; ++c) stubs.push_back(i);

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Rng rng(seed, static_cast<std::uint64_t>(attempt), 0x636f6e66ULL);
        std::vector<int> s = stubs;
        for (std::size_t i = s.size(); i > 1; --i)
            std::swap(s[i - 1], s[rng.next_below(i)]);

        Graph g(n);
        bool ok = true;
        for (std::size_t t = 0; t + 1 < s.size(); t += 2) {
            int u = s[t], v = s[t + 1];
            if (u == v || g.has_edge(u, v)) {
                ok = false;
                break;
            }
            g.set_edge(u, v, 1.0);
        }
        if (ok) return g;
    }
    throw GenerationError("configuration model: retry budget exhausted after " +
                          std::to_string(max_retries) + " attempts");
}

DegreeSequence gen_powerlaw_sequence(int n, double gamma, int d_min, int d_max,
                                     std::uint64_t seed) {
    if (n <= 0) throw InputError("node count must be positive");
    if (!(gamma > 1.0)) throw InputError("power-law exponent must satisfy gamma > 1");
    if (d_min < 1 || d_min > d_max || d_max > n - 1)
        throw InputError("degree support must satisfy 1 <= d_min <= d_max <= n-1");

    // cumulative weights relative to d_min so huge gamma cannot underflow
    const int support = d_max - d_min + 1;
    std::vector<double> cum(support);
    double total = 0.0;
    for (int i = 0; i < support; ++i) {
        int d = d_min + i;
        total += std::exp(-gamma * (std::log(static_cast<double>(d)) -
                                    std::log(static_cast<double>(d_min))));
        cum[i] = total;
    }
    if (!(total > 0.0)) throw InputError("power-law support is empty");

    Rng rng(seed);
    DegreeSequence ds;
    ds.degrees.resize(n);
    for (int i = 0; i < n; ++i) {
        double u = rng.next_double() * total;
        auto it = std::lower_bound(cum.begin(), cum.end(), u);
        if (it == cum.end()) --it;
        ds.degrees[i] = d_min + static_cast<int>(it - cum.begin());
    }

    if (ds.sum() % 2 != 0) {
        for (;;) {
            int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            if (ds.degrees[j] <= n - 2) {
                ++ds.degrees[j];
                break;
            }
        }
    }
    return ds;
}

Graph assign_weights(const Graph& g, const WeightScheme& scheme, std::uint64_t seed) {
    scheme.validate();
    Graph out = g;
    const int n = g.n();
    Rng rng(seed);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!(g.adj(i, j) > 0.0)) continue;
            double w = scheme.r;
            if (scheme.kind == WeightScheme::Kind::Jittered && scheme.var > 0.0) {
                const double sd = std::sqrt(scheme.var);
                do {
                    w = scheme.r + sd * rng.next_normal();
                } while (!(w > 0.0)); // negative weights are excluded, redraw
            }
            out.set_edge(i, j, w);
        }
    }
    return out;
}

Graph randomize_preserving_nk(const Graph& g, std::uint64_t seed) {
    return gen_uniform_random_graph(g.n(), g.edge_count(), seed);
}

double heterogeneity(const Graph& g) {
    const int n = g.n();
    DegreeSequence ds = degree_sequence(g);
    double h = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!(g.adj(i, j) > 0.0)) continue;
            double a = 1.0 / std::sqrt(static_cast<double>(ds.degrees[i]));
            double b = 1.0 / std::sqrt(static_cast<double>(ds.degrees[j]));
            h += (a - b) * (a - b);
        }
    }
    return h;
}

double gibbs_rg_entropy(int n, long k) {
    if (n < 1) throw InputError("node count must be positive");
    const long m = static_cast<long>(n) * (n - 1) / 2;
    if (k < 0 || k > m) throw InputError("edge count k out of range [0, C(n,2)]");
    // ln C(m,k) - ln n!; the symmetric grouping keeps gibbs(n,k) == gibbs(n,m-k) exact
    double log_binom = std::lgamma(static_cast<double>(m) + 1.0) -
                       (std::lgamma(static_cast<double>(k) + 1.0) +
                        std::lgamma(static_cast<double>(m - k) + 1.0));
    return log_binom - std::lgamma(static_cast<double>(n) + 1.0);
}

DegreeSequence degree_sequence(const Graph& g) {
    const int n = g.n();
    DegreeSequence ds;
    ds.degrees.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (j != i && g.adj(i, j) > 0.0) ++ds.degrees[i];
    return ds;
}

Graph hub_fixture_graph(int n, const std::vector<int>& hub_degrees) {
    const int h = static_cast<int>(hub_degrees.size());
    for (int d : hub_degrees)
        if (d < 2) throw InputError("hub degrees must be >= 2");

    // odd-degree hubs are paired by a 1-connector path, remaining slots become
    // 2-connector cycles through the hub, leftover nodes form one plain cycle
    std::vector<int> odd;
    for (int i = 0; i < h; ++i)
        if (hub_degrees[i] % 2 != 0) odd.push_back(i);
    if (odd.size() % 2 != 0) throw InputError("hub degrees must contain an even number of odd values");

    Graph g(n);
    int next_node = h; // connectors start after the hubs
    auto take = [&]() {
        if (next_node >= n) throw InputError("hub fixture does not fit in n nodes");
        return next_node++;
    };

    std::vector<int> remaining = hub_degrees;
    for (std::size_t p = 0; p + 1 < odd.size(); p += 2) {
        int a = odd[p], b = odd[p + 1];
        int c = take();
        g.set_edge(a, c, 1.0);
        g.set_edge(c, b, 1.0);
        --remaining[a];
        --remaining[b];
    }
    for (int i = 0; i < h; ++i) {
        while (remaining[i] >= 2) {
            int c1 = take(), c2 = take();
            g.set_edge(i, c1, 1.0);
            g.set_edge(c1, c2, 1.0);
            g.set_edge(c2, i, 1.0);
            remaining[i] -= 2;
        }
    }

    int leftover = n - next_node;
    if (leftover == 0) return g;
    if (leftover < 3) {
        // stretch one hub cycle instead of forming a too-short plain cycle
        if (h == 0) throw InputError("cannot place fewer than 3 leftover degree-2 nodes");
        int hub = 0;
        int c1 = -1;
        for (int j = h; j < n && c1 < 0; ++j)
            if (g.has_edge(hub, j)) c1 = j;
        if (c1 < 0) throw InputError("hub fixture: no cycle to extend");
        int c2 = -1;
        for (int j = h; j < n && c2 < 0; ++j)
            if (j != hub && g.has_edge(c1, j)) c2 = j;
        g.set_edge(c1, c2, 0.0);
        int prev = c1;
        while (leftover > 0) {
            int c = take();
            g.set_edge(prev, c, 1.0);
            prev = c;
            --leftover;
        }
        g.set_edge(prev, c2, 1.0);
        return g;
    }
    int first = take();
    int prev = first;
    for (int i = 1; i < leftover; ++i) {
        int c = take();
        g.set_edge(prev, c, 1.0);
        prev = c;
    }
    g.set_edge(prev, first, 1.0);
    return g;
}

} // namespace netgeom

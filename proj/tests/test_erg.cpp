#include "netgeom/erg.hpp"

#include "netgeom/errors.hpp"
#include "netgeom/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace netgeom;

namespace {

// independent summation oracle: plain accumulation, no log-sum-exp
double brute_force_expectation(const ErgEnsemble& ens,
                               const std::function<double(const Graph&)>& fn) {
    const int pairs = ens.n * (ens.n - 1) / 2;
    long double z = 0.0L, acc = 0.0L;
    for (std::uint64_t mask = 0; mask < (1ULL << pairs); ++mask) {
        Graph g = graph_from_mask(ens.n, mask);
        long double h = 0.0L;
        for (std::size_t i = 0; i < ens.observables.size(); ++i)
            h += ens.lambdas[i] * erg_observable_value(ens.observables[i], g);
        long double w = std::exp(static_cast<long double>(-h));
        z += w;
        acc += w * fn(g);
    }
    return static_cast<double>(acc / z);
}

} // namespace

TEST_CASE("triangle counts") {
    Graph k6 = gen_uniform_random_graph(6, 15, 0);
    CHECK(count_triangles(k6) == 20);

    auto fixtures = fixture_graphs();
    CHECK(count_triangles(fixtures[0].second) == 2); // two disjoint triangles

    Graph c6 = gen_configuration_model({std::vector<int>(6, 2)}, 1);
    // 2-regular on 6 nodes is either C6 (0 triangles) or two C3s (2 triangles)
    long t = count_triangles(c6);
    CHECK((t == 0 || t == 2));

    Graph cycle6(6);
    for (int i = 0; i < 6; ++i) cycle6.set_edge(i, (i + 1) % 6, 1.0);
    CHECK(count_triangles(cycle6) == 0);
}

TEST_CASE("three-chain counts") {
    Graph k3 = gen_uniform_random_graph(3, 3, 0);
    CHECK(count_three_chains(k3) == 3);

    Graph star(4);
    for (int j = 1; j < 4; ++j) star.set_edge(0, j, 1.0);
    CHECK(count_three_chains(star) == 3); // C(3,2) at the hub

    CHECK(count_three_chains(Graph::empty(5)) == 0);
}

TEST_CASE("observable counts are relabeling invariant") {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = gen_uniform_random_graph(7, 12, trial);
        std::vector<int> perm = {6, 2, 0, 4, 1, 5, 3};
        Graph p(7);
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) p.adj(perm[i], perm[j]) = g.adj(i, j);
        CHECK(count_triangles(p) == count_triangles(g));
        CHECK(count_three_chains(p) == count_three_chains(g));
    }
}

TEST_CASE("erg distribution") {
    SUBCASE("lambda = 0 is uniform") {
        ErgEnsemble ens;
        ens.n = 4;
        ErgDistribution dist = erg_distribution(ens);
        REQUIRE(dist.prob.size() == 64);
        for (double p : dist.prob)
            CHECK(p == doctest::Approx(1.0 / 64.0).epsilon(1e-13));
        // <edges> = C(n,2)/2 exactly under the uniform distribution
        double mean_edges = erg_expectation(
            dist, [](const Graph& g) { return static_cast<double>(g.edge_count()); });
        CHECK(mean_edges == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("probabilities sum to one for random couplings") {
        Rng rng(9);
        for (int trial = 0; trial < 5; ++trial) {
            ErgEnsemble ens;
            ens.n = 6;
            ens.observables = {ErgObservable::Triangles, ErgObservable::ThreeChains};
            ens.lambdas = {2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
            ErgDistribution dist = erg_distribution(ens);
            long double total = 0.0L;
            for (double p : dist.prob) total += p;
            CHECK(std::abs(static_cast<double>(total) - 1.0) < 1e-12);
        }
    }
    SUBCASE("triangle suppression at n=3 matches the 8-graph oracle") {
        ErgEnsemble ens;
        ens.n = 3;
        ens.observables = {ErgObservable::Triangles};
        ens.lambdas = {4.0};
        ErgDistribution dist = erg_distribution(ens);
        // the only 3-node graph with a triangle is the full mask
        double z = 7.0 + std::exp(-4.0);
        CHECK(dist.prob[7] == doctest::Approx(std::exp(-4.0) / z).epsilon(1e-12));
        double tri_mass = erg_expectation(dist, [](const Graph& g) {
            return count_triangles(g) > 0 ? 1.0 : 0.0;
        });
        CHECK(tri_mass == doctest::Approx(std::exp(-4.0) / z).epsilon(1e-12));
    }
    SUBCASE("expectations match independent brute-force averaging") {
        ErgEnsemble ens;
        ens.n = 5;
        ens.observables = {ErgObservable::Triangles, ErgObservable::ThreeChains};
        ens.lambdas = {0.35, -0.2};
        ErgDistribution dist = erg_distribution(ens);
        auto tri = [](const Graph& g) { return static_cast<double>(count_triangles(g)); };
        auto chains = [](const Graph& g) {
            return static_cast<double>(count_three_chains(g));
        };
        CHECK(erg_expectation(dist, tri) ==
              doctest::Approx(brute_force_expectation(ens, tri)).epsilon(1e-12));
        CHECK(erg_expectation(dist, chains) ==
              doctest::Approx(brute_force_expectation(ens, chains)).epsilon(1e-12));
    }
    SUBCASE("size guard") {
        ErgEnsemble ens;
        ens.n = 8;
        CHECK_THROWS_AS((void)erg_distribution(ens), InputError);
    }
}

TEST_CASE("fixture graphs") {
    auto fixtures = fixture_graphs();
    REQUIRE(fixtures.size() == 3);

    CHECK(fixtures[0].first == "two_triangles");
    CHECK(fixtures[0].second.n() == 6);
    CHECK(fixtures[0].second.edge_count() == 6);
    CHECK(count_triangles(fixtures[0].second) == 2);

    CHECK(fixtures[1].first == "k4_plus_two_isolated");
    CHECK(fixtures[1].second.n() == 6);
    CHECK(fixtures[1].second.edge_count() == 6);
    CHECK(count_triangles(fixtures[1].second) == 4);

    CHECK(fixtures[2].first == "k5_plus_one_isolated");
    CHECK(fixtures[2].second.n() == 6);
    CHECK(fixtures[2].second.edge_count() == 10);
    CHECK(count_triangles(fixtures[2].second) == 10);

    for (auto& [name, g] : fixtures) g.validate();
}

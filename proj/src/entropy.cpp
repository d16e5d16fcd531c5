#include "netgeom/entropy.hpp"

#include "netgeom/errors.hpp"
#include "netgeom/parallel.hpp"
#include "netgeom/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netgeom {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// log of the mean of exp(values), reduced in index order
double log_mean_exp(std::span<const double> values) {
    double mx = -kInf;
    for (double v : values) mx = std::max(mx, v);
    if (mx == -kInf) return -kInf;
    double acc = 0.0;
    for (double v : values) acc += std::exp(v - mx);
    return mx + std::log(acc) - std::log(static_cast<double>(values.size()));
}
} // namespace

const char* to_string(Protocol p) {
    return p == Protocol::Faithful ? "faithful" : "logdomain";
}

Protocol protocol_from_string(const std::string& s) {
    if (s == "faithful") return Protocol::Faithful;
    if (s == "logdomain") return Protocol::LogDomain;
    throw InputError("unknown protocol '" + s + "' (expected faithful|logdomain)");
}

void McConfig::validate() const {
    if (!(0.0 < box.a && box.a < box.b)) throw InputError("box requires 0 < a < b");
    if (samples < 1) throw InputError("samples must be positive");
    if (batches < 1) throw InputError("batches must be positive");
    if (samples < batches) throw InputError("samples must be >= batches");
    if (realizations < 1) throw InputError("realizations must be positive");
    if (!(overflow_cutoff > 0.0)) throw InputError("overflow cutoff must be positive");
}

double batch_stderr(std::span<const double> log_values, int batches) {
    if (batches < 2) throw InputError("batch stderr needs at least 2 batches");
    const std::int64_t n = static_cast<std::int64_t>(log_values.size());
    if (n < batches) throw InputError("batch stderr needs at least one value per batch");

    std::vector<double> means(batches);
    for (int b = 0; b < batches; ++b) {
        std::int64_t begin = n * b / batches;
        std::int64_t end = n * (b + 1) / batches;
        means[b] = log_mean_exp(log_values.subspan(static_cast<std::size_t>(begin),
                                                   static_cast<std::size_t>(end - begin)));
    }
    // deviations from the first batch mean keep a constant list at exactly zero
    double base = means[0];
    double shift = 0.0;
    for (double v : means) shift += v - base;
    shift /= batches;
    double var = 0.0;
    for (double v : means) {
        double d = (v - base) - shift;
        var += d * d;
    }
    var /= (batches - 1);
    return std::sqrt(var / batches);
}

VolumeEstimate estimate_log_volume(const Graph& g, const McConfig& cfg,
                                   std::int64_t realization_index) {
    cfg.validate();
    const int n = g.n();
    if (n < 1) throw InputError("volume estimate needs at least one node");
    if (cfg.box.n != 0 && cfg.box.n != n)
        throw InputError("box dimension does not match graph size");

    const double a = cfg.box.a, width = cfg.box.b - cfg.box.a;
    const double ln_cutoff = std::log(cfg.overflow_cutoff);
    const bool faithful = cfg.protocol == Protocol::Faithful;

    enum : std::uint8_t { kAccepted = 0, kDegenerate = 1, kOverflow = 2 };
    std::vector<double> vals(static_cast<std::size_t>(cfg.samples));
    std::vector<std::uint8_t> status(static_cast<std::size_t>(cfg.samples));

    exec::parallel_for(cfg.samples, [&](std::int64_t begin, std::int64_t end) {
        Eigen::VectorXd theta(n);
        for (std::int64_t s = begin; s < end; ++s) {
            Rng rng(cfg.seed, static_cast<std::uint64_t>(realization_index),
                    static_cast<std::uint64_t>(s));
            for (int i = 0; i < n; ++i) theta(i) = a + width * rng.next_double();
            MetricEval ev = log_volume_element(theta, g);
            if (ev.degenerate) {
                status[static_cast<std::size_t>(s)] = kDegenerate;
            } else if (faithful && ev.log_vol_elem > ln_cutoff) {
                status[static_cast<std::size_t>(s)] = kOverflow;
            } else {
                status[static_cast<std::size_t>(s)] = kAccepted;
                vals[static_cast<std::size_t>(s)] = ev.log_vol_elem;
            }
        }
    });

    VolumeEstimate est;
    est.protocol = cfg.protocol;
    est.samples_total = cfg.samples;
    std::vector<double> accepted;
    accepted.reserve(vals.size());
    for (std::int64_t s = 0; s < cfg.samples; ++s) {
        switch (status[static_cast<std::size_t>(s)]) {
        case kAccepted: accepted.push_back(vals[static_cast<std::size_t>(s)]); break;
        case kDegenerate: ++est.rejected_degenerate; break;
        default: ++est.rejected_overflow; break;
        }
    }
    if (accepted.empty())
        throw NumericalError("all " + std::to_string(cfg.samples) +
                             " samples rejected (degenerate=" +
                             std::to_string(est.rejected_degenerate) +
                             ", overflow=" + std::to_string(est.rejected_overflow) + ")");

    est.log_volume = log_mean_exp(accepted) + n * std::log(width);
    int b = std::min<std::int64_t>(cfg.batches, static_cast<std::int64_t>(accepted.size()));
    est.std_err_log = b >= 2 ? batch_stderr(accepted, b) : 0.0;
    return est;
}

double geometric_entropy(const Graph& g, const McConfig& cfg) {
    return estimate_log_volume(g, cfg, 0).log_volume;
}

EntropyResult normalized_entropy(const std::function<Graph(int)>& ensemble,
                                 const McConfig& cfg) {
    cfg.validate();
    EntropyResult res;
    int n = -1;
    double null_volume = 0.0;
    for (int r = 0; r < cfg.realizations; ++r) {
        Graph g = ensemble(r);
        if (n < 0) {
            n = g.n();
            if (n < 1) throw InputError("ensemble produced an empty graph");
            null_volume = null_log_volume(Box{cfg.box.a, cfg.box.b, n});
        } else if (g.n() != n) {
            throw InputError("ensemble realizations must share the node count");
        }
        try {
            VolumeEstimate est = estimate_log_volume(g, cfg, r);
            res.per_realization.push_back(est.log_volume - null_volume);
            res.samples_total += est.samples_total;
            res.rejected_degenerate += est.rejected_degenerate;
            res.rejected_overflow += est.rejected_overflow;
        } catch (const NumericalError&) {
            ++res.dropped;
        }
    }
    if (res.dropped * 10 > cfg.realizations)
        throw NumericalError("more than 10% of realizations dropped (" +
                             std::to_string(res.dropped) + "/" +
                             std::to_string(cfg.realizations) + ")");

    res.realizations = static_cast<int>(res.per_realization.size());
    double mean = 0.0;
    for (double d : res.per_realization) mean += d;
    mean /= res.realizations;
    res.s_tilde = mean / n;
    if (res.realizations >= 2) {
        double var = 0.0;
        for (double d : res.per_realization) var += (d - mean) * (d - mean);
        var /= (res.realizations - 1);
        res.std_err = std::sqrt(var / res.realizations) / n;
    }
    return res;
}

double SweepPoint::reject_degenerate_frac() const {
    return result.samples_total == 0
               ? 0.0
               : static_cast<double>(result.rejected_degenerate) /
                     static_cast<double>(result.samples_total);
}

double SweepPoint::reject_overflow_frac() const {
    return result.samples_total == 0
               ? 0.0
               : static_cast<double>(result.rejected_overflow) /
                     static_cast<double>(result.samples_total);
}

std::vector<SweepPoint> sweep_er(int n, const std::vector<long>& ks,
                                 const WeightScheme& scheme, const McConfig& cfg) {
    std::vector<SweepPoint> out;
    out.reserve(ks.size());
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        const long k = ks[ki];
        auto ensemble = [&, k, ki](int r) {
            Graph g = gen_uniform_random_graph(
                n, k, derive_seed(cfg.seed, ki, static_cast<std::uint64_t>(r), 1));
            return assign_weights(g, scheme,
                                  derive_seed(cfg.seed, ki, static_cast<std::uint64_t>(r), 2));
        };
        SweepPoint pt;
        pt.k = k;
        pt.mean_k = static_cast<double>(k);
        pt.result = normalized_entropy(ensemble, cfg);
        out.push_back(std::move(pt));
    }
    return out;
}

namespace {

// uniform edge insertions/removals until the graph has exactly k_target edges
void adjust_edge_count(Graph& g, long k_target, Rng& rng) {
    const int n = g.n();
    long k = g.edge_count();
    while (k < k_target) {
        // rejection-sample a uniform non-edge by pair index
        std::uint64_t m = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        std::uint64_t e = rng.next_below(m);
        long off = 0;
        int i = 0;
        while (off + (n - 1 - i) <= static_cast<long>(e)) {
            off += n - 1 - i;
            ++i;
        }
        int j = static_cast<int>(static_cast<long>(e) - off) + i + 1;
        if (g.has_edge(i, j)) continue;
        g.set_edge(i, j, 1.0);
        ++k;
    }
    if (k > k_target) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (g.has_edge(i, j)) edges.push_back({i, j});
        long excess = k - k_target;
        for (long t = 0; t < excess; ++t) {
            std::size_t pick =
                static_cast<std::size_t>(t) +
                rng.next_below(edges.size() - static_cast<std::size_t>(t));
            std::swap(edges[static_cast<std::size_t>(t)], edges[pick]);
            g.set_edge(edges[static_cast<std::size_t>(t)].first,
                       edges[static_cast<std::size_t>(t)].second, 0.0);
        }
    }
}

} // namespace

std::vector<SweepPoint> sweep_powerlaw(int n, const std::vector<double>& gammas,
                                       const WeightScheme& scheme, double k_over_n_lo,
                                       double k_over_n_hi, const McConfig& cfg, int d_min,
                                       int d_max) {
    if (d_max < 0) d_max = n - 1;
    if (!(k_over_n_lo > 0.0) || k_over_n_lo > k_over_n_hi ||
        k_over_n_hi > (n - 1) / 2.0)
        throw InputError("k/n interval must lie inside (0, (n-1)/2]");

    constexpr int kSequenceAttempts = 2000;
    const long k_lo = static_cast<long>(std::ceil(k_over_n_lo * n));
    const long k_hi = static_cast<long>(std::floor(k_over_n_hi * n));

    std::vector<SweepPoint> out;
    out.reserve(gammas.size());
    for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
        const double gamma = gammas[gi];
        std::vector<Graph> graphs;
        graphs.reserve(static_cast<std::size_t>(cfg.realizations));
        SweepPoint pt;
        pt.gamma = gamma;
        double k_sum = 0.0;
        for (int r = 0; r < cfg.realizations; ++r) {
            const std::uint64_t key = (static_cast<std::uint64_t>(gi) << 32) |
                                      static_cast<std::uint64_t>(r);
            Graph g;
            bool in_band = false;
            for (int attempt = 0; attempt < kSequenceAttempts && !in_band; ++attempt) {
                DegreeSequence ds = gen_powerlaw_sequence(
                    n, gamma, d_min, d_max,
                    derive_seed(cfg.seed, key, static_cast<std::uint64_t>(attempt), 11));
                if (!is_graphical(ds)) continue;
                long k = ds.sum() / 2;
                if (k < k_lo || k > k_hi) continue;
                try {
                    g = gen_configuration_model(ds, derive_seed(cfg.seed, key, 0, 12));
                    in_band = true;
                } catch (const GenerationError&) {
                    // heavy-hub sequences can defeat stub matching; keep looking
                }
            }
            if (!in_band) {
                // band unreachable for this gamma: wire a typical power-law
                // sequence and force the density with uniform edge moves
                bool wired = false;
                for (int attempt = 0; attempt < 200 && !wired; ++attempt) {
                    DegreeSequence ds = gen_powerlaw_sequence(
                        n, gamma, d_min, d_max,
                        derive_seed(cfg.seed, key, static_cast<std::uint64_t>(attempt), 15));
                    if (!is_graphical(ds)) continue;
                    try {
                        g = gen_configuration_model(
                            ds, derive_seed(cfg.seed, key,
                                            static_cast<std::uint64_t>(attempt), 16));
                        wired = true;
                    } catch (const GenerationError&) {
                    }
                }
                if (!wired)
                    throw GenerationError(
                        "power-law sweep: could not wire any graphical sequence");
                Rng rng(derive_seed(cfg.seed, key, 0, 13));
                long k_target = k_lo + static_cast<long>(rng.next_below(
                                           static_cast<std::uint64_t>(k_hi - k_lo + 1)));
                adjust_edge_count(g, k_target, rng);
                ++pt.adjusted_realizations;
            }
            g = assign_weights(g, scheme, derive_seed(cfg.seed, key, 0, 14));
            k_sum += static_cast<double>(g.edge_count());
            graphs.push_back(std::move(g));
        }
        pt.mean_k = k_sum / cfg.realizations;
        auto ensemble = [&graphs](int r) { return graphs[static_cast<std::size_t>(r)]; };
        pt.result = normalized_entropy(ensemble, cfg);
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace netgeom

#pragma once

#include "netgeom/geometry.hpp"
#include "netgeom/netcore.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace netgeom {

// faithful: hypercube restriction plus the 1e308 overflow cutoff, the
// protocol used for all table/figure reproduction.  logdomain: same stream
// with no cutoff, accumulating in log space (the integrand diverges near
// det psi = 0, so the faithful estimate depends on the cutoff; logdomain
// shows how hard the regularization bites).
enum class Protocol { Faithful, LogDomain };

const char* to_string(Protocol p);
Protocol protocol_from_string(const std::string& s);

struct McConfig {
    Box box{0.5, 10.0, 0};  // box.n == 0 means "use the graph's n"
    std::int64_t samples = 100000;
    int realizations = 1000;
    Protocol protocol = Protocol::Faithful;
    double overflow_cutoff = 1e308;
    std::uint64_t seed = 0;
    int batches = 100;

    void validate() const;
};

struct VolumeEstimate {
    double log_volume = 0.0;  // ln of the regularized volume estimate
    double std_err_log = 0.0; // batch-means standard error of log_volume
    std::int64_t samples_total = 0;
    std::int64_t rejected_degenerate = 0;
    std::int64_t rejected_overflow = 0;
    Protocol protocol = Protocol::Faithful;
};

struct EntropyResult {
    double s_tilde = 0.0;  // (1/n) <ln V(A) - ln V(0)>
    double std_err = 0.0;  // sample SE across realizations, / n
    int realizations = 0;  // realizations that produced an estimate
    int dropped = 0;       // realizations dropped after estimate failure
    std::vector<double> per_realization; // ln V_A - ln V_0 per realization
    // aggregate rejection bookkeeping across realizations
    std::int64_t samples_total = 0;
    std::int64_t rejected_degenerate = 0;
    std::int64_t rejected_overflow = 0;
};

// Monte Carlo estimate of ln V(A): i.i.d. uniform theta over the box,
// degenerate points rejected, faithful protocol additionally rejects points
// whose volume element exceeds the cutoff, mean in the log domain via
// log-sum-exp, plus n ln(b-a).  Deterministic per (seed, realization_index)
// and independent of the worker count.  Throws NumericalError when every
// sample is rejected.
VolumeEstimate estimate_log_volume(const Graph& g, const McConfig& cfg,
                                   std::int64_t realization_index = 0);

// S = ln V(A) for one graph.
double geometric_entropy(const Graph& g, const McConfig& cfg);

// Realization-averaged normalized entropy: the ensemble closure yields the
// graph for each realization index (all sharing the same n); failed
// realizations are dropped, more than 10% drops is an error.
EntropyResult normalized_entropy(const std::function<Graph(int)>& ensemble,
                                 const McConfig& cfg);

struct SweepPoint {
    long k = -1;                  // requested edge count (ER sweeps)
    double gamma = std::numeric_limits<double>::quiet_NaN();
    double mean_k = 0.0;          // realized mean edge count
    int adjusted_realizations = 0; // power-law: realizations that needed density adjustment
    EntropyResult result;

    double reject_degenerate_frac() const;
    double reject_overflow_frac() const;
};

// One normalized-entropy run per k over fresh G(n,k) realizations.
std::vector<SweepPoint> sweep_er(int n, const std::vector<long>& ks,
                                 const WeightScheme& scheme, const McConfig& cfg);

// One normalized-entropy run per gamma over power-law configuration graphs
// with k/n forced into [lo, hi]: sequences are rejection-sampled first; when
// the band is unreachable for a gamma (its typical density lies outside),
// the realization falls back to uniform edge addition/removal onto a target
// k drawn inside the band, and is counted in adjusted_realizations.
std::vector<SweepPoint> sweep_powerlaw(int n, const std::vector<double>& gammas,
                                       const WeightScheme& scheme, double k_over_n_lo,
                                       double k_over_n_hi, const McConfig& cfg,
                                       int d_min = 1, int d_max = -1);

// Batch-means standard error of the log-mean of exp(values).
double batch_stderr(std::span<const double> log_values, int batches);

} // namespace netgeom

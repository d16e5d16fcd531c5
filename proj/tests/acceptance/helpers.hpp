#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace accept {

inline double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

inline void report(int criterion, bool pass, const std::string& detail) {
    std::printf("ACCEPTANCE %02d %s %s\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
}

inline void report_skip(int criterion, const std::string& reason) {
    std::printf("ACCEPTANCE %02d SKIP %s\n", criterion, reason.c_str());
    std::fflush(stdout);
}

inline std::vector<double> ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
        i = j + 1;
    }
    return r;
}

inline double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
    auto rx = ranks(x);
    auto ry = ranks(y);
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

// continuous two-segment least-squares fit y ~ a + b min(x-tau,0) + c max(x-tau,0);
// returns the breakpoint tau minimizing the SSE over a dense scan
struct SegmentedFit {
    double tau = 0.0;
    double sse = 0.0;
};

inline SegmentedFit fit_two_segment(const std::vector<double>& x,
                                    const std::vector<double>& y) {
    const std::size_t n = x.size();
    double lo = *std::min_element(x.begin(), x.end());
    double hi = *std::max_element(x.begin(), x.end());
    SegmentedFit best;
    best.sse = std::numeric_limits<double>::infinity();

    const int steps = 800;
    for (int s = 1; s < steps; ++s) {
        double tau = lo + (hi - lo) * s / steps;
        // design matrix columns: 1, min(x-tau,0), max(x-tau,0)
        double ata[3][3] = {};
        double atb[3] = {};
        for (std::size_t i = 0; i < n; ++i) {
            double c0 = 1.0;
            double c1 = std::min(x[i] - tau, 0.0);
            double c2 = std::max(x[i] - tau, 0.0);
            double col[3] = {c0, c1, c2};
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) ata[a][b] += col[a] * col[b];
                atb[a] += col[a] * y[i];
            }
        }
        // 3x3 solve by Cramer
        auto det3 = [](double m[3][3]) {
            return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        };
        double d = det3(ata);
        if (std::abs(d) < 1e-12) continue;
        double coef[3];
        for (int c = 0; c < 3; ++c) {
            double m[3][3];
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) m[a][b] = (b == c) ? atb[a] : ata[a][b];
            coef[c] = det3(m) / d;
        }
        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double pred = coef[0] + coef[1] * std::min(x[i] - tau, 0.0) +
                          coef[2] * std::max(x[i] - tau, 0.0);
            sse += (y[i] - pred) * (y[i] - pred);
        }
        if (sse < best.sse) {
            best.sse = sse;
            best.tau = tau;
        }
    }
    return best;
}

// max |second difference| / dx^2 over a uniform grid
inline double max_curvature(const std::vector<double>& y, double dx) {
    double best = 0.0;
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
        best = std::max(best, std::abs(y[i + 1] - 2.0 * y[i] + y[i - 1]) / (dx * dx));
    return best;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

} // namespace accept

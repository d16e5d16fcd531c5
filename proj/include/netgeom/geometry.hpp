#pragma once

#include "netgeom/netcore.hpp"

#include <Eigen/Dense>
#include <vector>

namespace netgeom {

// Hypercube [a,b]^n restricting the admissible parameter space (variances
// stay strictly positive, so 0 < a < b).
struct Box {
    double a = 0.5;
    double b = 10.0;
    int n = 0;

    void validate() const;
};

// One evaluation of the deformed volume element at a parameter point.
//
// degenerate is set when |det psi| falls below the scale-aware threshold
// (relative 1e-12 against the Hadamard row-norm bound); log_vol_elem is
// finite whenever the point is admissible.
struct MetricEval {
    double log_vol_elem = 0.0; // ln sqrt(|det g~(theta)|)
    bool degenerate = false;
    double det_psi_log_abs = 0.0;
    int det_psi_sign = 0;
};

// psi(theta, A) = diag(theta) + A: the deformed covariance candidate.
Eigen::MatrixXd psi(const Eigen::VectorXd& theta, const Graph& g);

// Deformed metric g~_{uv} = 1/2 (psi^-1_{uv})^2 (entrywise square).
// Throws DegeneracyError when psi is below the non-degeneracy threshold.
Eigen::MatrixXd deformed_metric(const Eigen::VectorXd& theta, const Graph& g);

// ln sqrt(|det g~|) computed through one LU of psi, the explicit inverse,
// the entrywise square and a second LU log-determinant.  Degeneracy is
// reported in the result, never thrown.
MetricEval log_volume_element(const Eigen::VectorXd& theta, const Graph& g);

// Exact log-volume of the bare manifold over the box:
// n * ln( ln(b/a) / sqrt(2) ).
double null_log_volume(const Box& box);

// Upsilon(C) = ln(1 + det(C)^n) * exp(-tr C), det power taken in the log
// domain so large determinants cannot overflow.
double regularizer_upsilon(const Eigen::MatrixXd& c);

// --- extended manifold (all n(n+1)/2 entries of psi as coordinates) ---

// coordinate count and the row-major upper-triangular index map
inline int sym_dim(int n) { return n * (n + 1) / 2; }
int sym_index(int l, int m, int n); // 0-based, l <= m
std::pair<int, int> sym_coords(int index, int n);

Eigen::VectorXd pack_sym(const Eigen::MatrixXd& m);
Eigen::MatrixXd unpack_sym(const Eigen::VectorXd& zeta, int n);

// G_ab = 1/2 Tr(M^-1 E_a M^-1 E_b) with E_a the symmetric basis matrix of
// coordinate a.  Restricted to diagonal coordinates this reproduces the
// deformed metric exactly: 1/2 Tr(M^-1 E_ii M^-1 E_jj) = 1/2 (M^-1_ij)^2.
Eigen::MatrixXd extended_metric(const Eigen::MatrixXd& m);

// Analytic first derivatives d_c G_ab = -1/2 Tr(K E_c K E_a K E_b
// + K E_a K E_c K E_b), K = M^-1.  Returned as one N x N matrix per c.
std::vector<Eigen::MatrixXd> extended_metric_derivatives(const Eigen::MatrixXd& m);

namespace detail {
struct LogDet {
    double log_abs; // -inf when exactly singular
    int sign;       // 0 when exactly singular
};
LogDet log_abs_det(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu);
// scale-aware non-degeneracy test: log|det M| >= log(1e-12) + sum log row norms
bool below_degeneracy_threshold(const Eigen::MatrixXd& m, double log_abs_det);
} // namespace detail

} // namespace netgeom

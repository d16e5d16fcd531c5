#pragma once

#include "netgeom/geometry.hpp"

#include <Eigen/Dense>
#include <vector>

namespace netgeom {

// Position/velocity on the extended n(n+1)/2-dimensional manifold whose
// coordinates are the upper-triangular entries of psi (diagonal variances
// plus adjacency weights), in the row-major index order of sym_index.
struct ExtendedState {
    Eigen::VectorXd zeta;
    Eigen::VectorXd zeta_dot;
    double s = 0.0; // accumulated arc length
    double t = 0.0; // physical time (filled by arc_length_to_time)
};

struct TangentState {
    Eigen::VectorXd phi;
    Eigen::VectorXd phi_dot;
};

// Gamma^i_{jk}, stored as one symmetric N x N matrix per upper index.
using ChristoffelTensor = std::vector<Eigen::MatrixXd>;

// Christoffel symbols of the extended metric at the state's matrix point,
// from the analytic metric derivatives.  Throws DegeneracyError when the
// point or the metric is degenerate.
ChristoffelTensor christoffel(const ExtendedState& state, int n);
ChristoffelTensor christoffel_at(const Eigen::MatrixXd& m);

// G(zeta_dot, zeta_dot) at the state: the squared speed conserved along
// geodesics.
double metric_speed_squared(const ExtendedState& state, int n);

struct Trajectory {
    std::vector<ExtendedState> points;
    bool hit_degeneracy = false; // integration stopped at a boundary
    long rejected_steps = 0;
};

// Adaptive Dormand-Prince 5(4) integration of the geodesic equation in the
// arc-length parameter, local error kept below tol.  The trajectory ends at
// s_max or at a degeneracy boundary (flagged).  max_step <= 0 selects
// s_max/64, which also sets the export density.
Trajectory geodesic_integrate(const ExtendedState& initial, int n, double s_max,
                              double tol, double max_step = 0.0);

// Physical-time reparametrization: cumulative t from dt = ds / sqrt(G(v,v))
// by trapezoidal accumulation.  Throws InputError on a zero-speed segment.
std::vector<std::pair<double, double>> arc_length_to_time(const Trajectory& traj, int n);

struct TangentResult {
    std::vector<TangentState> states; // perturbation along the trajectory
    std::vector<double> log_growth;   // cumulative ln(|delta_k| / |delta_0|)
    double exponent = 0.0;            // Lambda = log_growth.back() / T
};

// Linearized flow around the trajectory: the first-order geodesic field is
// differentiated by central finite differences (step 1e-6 * state scale) and
// the perturbation is integrated with RK4 over the trajectory's own grid,
// with renormalization bookkeeping for the growth exponent.
TangentResult tangent_dynamics(const Trajectory& traj, const TangentState& phi0, int n);

} // namespace netgeom

#include "netgeom/dynamics.hpp"

#include "netgeom/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netgeom {

ChristoffelTensor christoffel_at(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    const int dim = sym_dim(n);

    Eigen::MatrixXd g = extended_metric(m);
    std::vector<Eigen::MatrixXd> dg = extended_metric_derivatives(m);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(g);
    auto det = detail::log_abs_det(lu);
    if (detail::below_degeneracy_threshold(g, det.log_abs))
        throw DegeneracyError("christoffel: extended metric is degenerate", det.log_abs);
    Eigen::MatrixXd ginv = lu.inverse();

    ChristoffelTensor gamma(dim, Eigen::MatrixXd(dim, dim));
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j)
            for (int k = j; k < dim; ++k) {
                double acc = 0.0;
                for (int l = 0; l < dim; ++l)
                    acc += ginv(i, l) * (dg[j](l, k) + dg[k](j, l) - dg[l](j, k));
                gamma[i](j, k) = gamma[i](k, j) = 0.5 * acc;
            }
    }
    return gamma;
}

ChristoffelTensor christoffel(const ExtendedState& state, int n) {
    return christoffel_at(unpack_sym(state.zeta, n));
}

double metric_speed_squared(const ExtendedState& state, int n) {
    Eigen::MatrixXd g = extended_metric(unpack_sym(state.zeta, n));
    return state.zeta_dot.dot(g * state.zeta_dot);
}

namespace {

// geodesic field F(zeta, v) = (v, -Gamma v v)
void geodesic_field(const Eigen::VectorXd& zeta, const Eigen::VectorXd& v, int n,
                    Eigen::VectorXd& out) {
    const int dim = static_cast<int>(zeta.size());
    ChristoffelTensor gamma = christoffel_at(unpack_sym(zeta, n));
    out.resize(2 * dim);
    out.head(dim) = v;
    for (int i = 0; i < dim; ++i) out(dim + i) = -v.dot(gamma[i] * v);
}

// Dormand-Prince 5(4) coefficients
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

} // namespace

Trajectory geodesic_integrate(const ExtendedState& initial, int n, double s_max,
                              double tol, double max_step) {
    if (!(tol > 0.0)) throw InputError("geodesic tolerance must be positive");
    if (!(s_max > 0.0)) throw InputError("s_max must be positive");
    const int dim = sym_dim(n);
    if (initial.zeta.size() != dim || initial.zeta_dot.size() != dim)
        throw InputError("initial state has wrong dimension");
    if (max_step <= 0.0) max_step = s_max / 64.0;

    Eigen::VectorXd y(2 * dim);
    y.head(dim) = initial.zeta;
    y.tail(dim) = initial.zeta_dot;

    auto field = [&](const Eigen::VectorXd& yy, Eigen::VectorXd& out) {
        geodesic_field(yy.head(dim), yy.tail(dim), n, out);
    };

    Trajectory traj;
    auto push = [&](double s, const Eigen::VectorXd& yy) {
        ExtendedState st;
        st.zeta = yy.head(dim);
        st.zeta_dot = yy.tail(dim);
        st.s = s;
        st.t = std::numeric_limits<double>::quiet_NaN();
        traj.points.push_back(std::move(st));
    };

    Eigen::VectorXd k1(2 * dim), k2, k3, k4, k5, k6, k7, ytmp, y5, err;
    field(y, k1); // throws if the start is inadmissible
    push(0.0, y);

    double s = 0.0;
    double h = std::min(max_step, s_max / 100.0);
    const double h_min = s_max * 1e-14;

    while (s < s_max) {
        h = std::min({h, max_step, s_max - s});
        bool admissible = true;
        try {
            ytmp = y + h * a21 * k1;
            field(ytmp, k2);
            ytmp = y + h * (a31 * k1 + a32 * k2);
            field(ytmp, k3);
            ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
            field(ytmp, k4);
            ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            field(ytmp, k5);
            ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            field(ytmp, k6);
            y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            field(y5, k7);
        } catch (const DegeneracyError&) {
            admissible = false;
        }

        if (admissible) {
            err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            double err_norm = 0.0;
            for (int i = 0; i < 2 * dim; ++i) {
                double sc = tol + tol * std::max(std::abs(y(i)), std::abs(y5(i)));
                err_norm = std::max(err_norm, std::abs(err(i)) / sc);
            }
            if (err_norm <= 1.0) {
                s += h;
                y = y5;
                k1 = k7; // FSAL
                push(s, y);
                double grow = err_norm == 0.0 ? 5.0 : 0.9 * std::pow(err_norm, -0.2);
                h *= std::clamp(grow, 0.2, 5.0);
                continue;
            }
            ++traj.rejected_steps;
            h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
        } else {
            ++traj.rejected_steps;
            h *= 0.25;
        }
        if (h < h_min) {
            traj.hit_degeneracy = true;
            break;
        }
    }
    return traj;
}

std::vector<std::pair<double, double>> arc_length_to_time(const Trajectory& traj, int n) {
    if (traj.points.empty()) throw InputError("empty trajectory");
    std::vector<std::pair<double, double>> out;
    out.reserve(traj.points.size());

    double t = 0.0;
    double prev_s = traj.points.front().s;
    double prev_inv_speed = 0.0;
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
        double sp2 = metric_speed_squared(traj.points[i], n);
        if (!(sp2 > 0.0)) throw InputError("zero-speed segment in trajectory");
        double inv = 1.0 / std::sqrt(sp2);
        if (i > 0) t += (traj.points[i].s - prev_s) * 0.5 * (prev_inv_speed + inv);
        out.emplace_back(traj.points[i].s, t);
        prev_s = traj.points[i].s;
        prev_inv_speed = inv;
    }
    return out;
}

namespace {

// central-difference Jacobian of the geodesic field at y = (zeta, v)
Eigen::MatrixXd field_jacobian(const Eigen::VectorXd& y, int n) {
    const int full = static_cast<int>(y.size());
    const int dim = full / 2;
    Eigen::MatrixXd jac(full, full);
    Eigen::VectorXd yp, ym, fp, fm;
    for (int j = 0; j < full; ++j) {
        double h = 1e-6 * std::max(std::abs(y(j)), 1.0);
        yp = y;
        ym = y;
        yp(j) += h;
        ym(j) -= h;
        geodesic_field(yp.head(dim), yp.tail(dim), n, fp);
        geodesic_field(ym.head(dim), ym.tail(dim), n, fm);
        jac.col(j) = (fp - fm) / (2.0 * h);
    }
    return jac;
}

} // namespace

TangentResult tangent_dynamics(const Trajectory& traj, const TangentState& phi0, int n) {
    if (traj.points.size() < 10)
        throw InputError("tangent dynamics needs a trajectory of at least 10 steps");
    const int dim = sym_dim(n);
    if (phi0.phi.size() != dim || phi0.phi_dot.size() != dim)
        throw InputError("perturbation has wrong dimension");

    Eigen::VectorXd delta(2 * dim);
    delta.head(dim) = phi0.phi;
    delta.tail(dim) = phi0.phi_dot;
    const double norm0 = delta.norm();

    TangentResult res;
    res.states.push_back(phi0);
    res.log_growth.push_back(0.0);
    if (norm0 == 0.0) {
        // zero perturbation stays zero; exponent is conventionally 0
        for (std::size_t i = 1; i < traj.points.size(); ++i) {
            res.states.push_back(phi0);
            res.log_growth.push_back(0.0);
        }
        return res;
    }

    auto state_vec = [&](const ExtendedState& p) {
        Eigen::VectorXd y(2 * dim);
        y.head(dim) = p.zeta;
        y.tail(dim) = p.zeta_dot;
        return y;
    };

    double accumulated = 0.0;
    constexpr double kRenorm = 1e100;
    for (std::size_t i = 1; i < traj.points.size(); ++i) {
        const Eigen::VectorXd y0 = state_vec(traj.points[i - 1]);
        const Eigen::VectorXd y1 = state_vec(traj.points[i]);
        const double h = traj.points[i].s - traj.points[i - 1].s;

        // RK4 with the Jacobian frozen at endpoint/midpoint interpolants
        Eigen::MatrixXd j0 = field_jacobian(y0, n);
        Eigen::MatrixXd jm = field_jacobian(0.5 * (y0 + y1), n);
        Eigen::MatrixXd j1 = field_jacobian(y1, n);
        Eigen::VectorXd q1 = j0 * delta;
        Eigen::VectorXd q2 = jm * (delta + 0.5 * h * q1);
        Eigen::VectorXd q3 = jm * (delta + 0.5 * h * q2);
        Eigen::VectorXd q4 = j1 * (delta + h * q3);
        delta += (h / 6.0) * (q1 + 2.0 * q2 + 2.0 * q3 + q4);

        double nrm = delta.norm();
        if (nrm > kRenorm) {
            accumulated += std::log(nrm / norm0);
            delta *= norm0 / nrm;
            nrm = norm0;
        }
        res.log_growth.push_back(accumulated + std::log(nrm / norm0));
        TangentState st;
        st.phi = delta.head(dim);
        st.phi_dot = delta.tail(dim);
        res.states.push_back(std::move(st));
    }

    const double span = traj.points.back().s - traj.points.front().s;
    res.exponent = span > 0.0 ? res.log_growth.back() / span : 0.0;
    return res;
}

} // namespace netgeom

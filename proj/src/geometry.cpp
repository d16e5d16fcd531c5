#include "netgeom/geometry.hpp"

#include "netgeom/errors.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace netgeom {

namespace {
constexpr double kLn2 = 0.6931471805599453094172321214581766;
constexpr double kDegeneracyRel = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

void Box::validate() const {
    if (!(0.0 < a && a < b)) throw InputError("box requires 0 < a < b");
    if (n < 1) throw InputError("box dimension must be positive");
}

namespace detail {

LogDet log_abs_det(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
    const auto& d = lu.matrixLU().diagonal();
    double log_abs = 0.0;
    int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        double v = d(i);
        if (v == 0.0) return {-kInf, 0};
        if (v < 0.0) sign = -sign;
        log_abs += std::log(std::abs(v));
    }
    return {log_abs, sign};
}

bool below_degeneracy_threshold(const Eigen::MatrixXd& m, double log_abs_det) {
    double log_bound = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        double rn = m.row(i).norm();
        if (rn == 0.0) return true;
        log_bound += std::log(rn);
    }
    return log_abs_det < std::log(kDegeneracyRel) + log_bound;
}

} // namespace detail

Eigen::MatrixXd psi(const Eigen::VectorXd& theta, const Graph& g) {
    const int n = g.n();
    if (theta.size() != n) throw InputError("theta length does not match node count");
    for (int i = 0; i < n; ++i)
        if (!(theta(i) > 0.0)) throw InputError("theta components must be positive");
    Eigen::MatrixXd m = g.adj;
    m.diagonal() = theta;
    return m;
}

namespace {

// scratch space reused across the Monte Carlo hot loop
struct Workspace {
    Eigen::MatrixXd inv, had;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu, lu2;
};

thread_local Workspace tls_ws;

} // namespace

MetricEval log_volume_element(const Eigen::VectorXd& theta, const Graph& g) {
    const int n = g.n();
    Eigen::MatrixXd m = psi(theta, g);

    Workspace& ws = tls_ws;
    ws.lu.compute(m);
    auto det = detail::log_abs_det(ws.lu);

    MetricEval ev;
    ev.det_psi_log_abs = det.log_abs;
    ev.det_psi_sign = det.sign;
    if (detail::below_degeneracy_threshold(m, det.log_abs)) {
        ev.degenerate = true;
        ev.log_vol_elem = -kInf;
        return ev;
    }

    ws.inv = ws.lu.inverse();
    ws.inv = 0.5 * (ws.inv + ws.inv.transpose()).eval(); // psi is symmetric, keep K exact
    // factor out the largest |entry| so the Hadamard square cannot overflow
    double scale = ws.inv.cwiseAbs().maxCoeff();
    ws.had = (ws.inv / scale).array().square();
    ws.lu2.compute(ws.had);
    auto det_h = detail::log_abs_det(ws.lu2);
    if (det_h.sign == 0) {
        // the squared-inverse matrix is exactly singular: g~ itself is
        // degenerate at this point, treat it like an inadmissible draw
        ev.degenerate = true;
        ev.log_vol_elem = -kInf;
        return ev;
    }

    double log_det_h = 2.0 * n * std::log(scale) + det_h.log_abs;
    ev.log_vol_elem = 0.5 * (-n * kLn2 + log_det_h);
    return ev;
}

Eigen::MatrixXd deformed_metric(const Eigen::VectorXd& theta, const Graph& g) {
    Eigen::MatrixXd m = psi(theta, g);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    auto det = detail::log_abs_det(lu);
    if (detail::below_degeneracy_threshold(m, det.log_abs))
        throw DegeneracyError("deformed metric: psi(theta) is degenerate", det.log_abs);
    Eigen::MatrixXd inv = lu.inverse();
    inv = 0.5 * (inv + inv.transpose()).eval();
    return 0.5 * inv.array().square().matrix();
}

double null_log_volume(const Box& box) {
    box.validate();
    return box.n * std::log(std::log(box.b / box.a) / std::sqrt(2.0));
}

double regularizer_upsilon(const Eigen::MatrixXd& c) {
    if (c.rows() != c.cols()) throw InputError("regularizer expects a square matrix");
    const int n = static_cast<int>(c.rows());
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(c);
    auto det = detail::log_abs_det(lu);
    double trace = c.trace();

    double log1p_term;
    if (det.sign == 0) {
        log1p_term = 0.0; // ln(1 + 0)
    } else {
        double log_pow = n * det.log_abs; // ln|det^n|
        bool positive = det.sign > 0 || n % 2 == 0;
        if (positive) {
            log1p_term = log_pow > 700.0 ? log_pow : std::log1p(std::exp(log_pow));
        } else {
            // det^n < 0: 1 + det^n may leave the log domain
            if (log_pow >= 0.0)
                return std::numeric_limits<double>::quiet_NaN();
            log1p_term = std::log1p(-std::exp(log_pow));
        }
    }
    return log1p_term * std::exp(-trace);
}

int sym_index(int l, int m, int n) {
    if (l > m) std::swap(l, m);
    return l * n - l * (l - 1) / 2 + (m - l);
}

std::pair<int, int> sym_coords(int index, int n) {
    int l = 0;
    while (sym_index(l, n - 1, n) < index) ++l;
    int m = index - sym_index(l, l, n) + l;
    return {l, m};
}

Eigen::VectorXd pack_sym(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::VectorXd zeta(sym_dim(n));
    for (int l = 0; l < n; ++l)
        for (int c = l; c < n; ++c) zeta(sym_index(l, c, n)) = m(l, c);
    return zeta;
}

Eigen::MatrixXd unpack_sym(const Eigen::VectorXd& zeta, int n) {
    if (zeta.size() != sym_dim(n)) throw InputError("zeta length does not match n(n+1)/2");
    Eigen::MatrixXd m(n, n);
    for (int l = 0; l < n; ++l)
        for (int c = l; c < n; ++c) m(l, c) = m(c, l) = zeta(sym_index(l, c, n));
    return m;
}

namespace {

// symmetric basis matrix of a coordinate, as its (row,col) constituents:
// E_(ii) = e_i e_i^T, E_(ij) = e_i e_j^T + e_j e_i^T
struct BasisPairs {
    std::array<std::pair<int, int>, 2> p;
    int count;
};

BasisPairs basis_pairs(int a, int n) {
    auto [l, m] = sym_coords(a, n);
    if (l == m) return {{{std::pair{l, m}, std::pair{0, 0}}}, 1};
    return {{{std::pair{l, m}, std::pair{m, l}}}, 2};
}

Eigen::MatrixXd inverse_checked(const Eigen::MatrixXd& m, const char* who) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    auto det = detail::log_abs_det(lu);
    if (detail::below_degeneracy_threshold(m, det.log_abs))
        throw DegeneracyError(std::string(who) + ": matrix point is degenerate", det.log_abs);
    Eigen::MatrixXd inv = lu.inverse();
    return 0.5 * (inv + inv.transpose()).eval();
}

} // namespace

Eigen::MatrixXd extended_metric(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    const int dim = sym_dim(n);
    Eigen::MatrixXd k = inverse_checked(m, "extended metric");

    Eigen::MatrixXd g(dim, dim);
    for (int a = 0; a < dim; ++a) {
        BasisPairs pa = basis_pairs(a, n);
        for (int b = a; b < dim; ++b) {
            BasisPairs pb = basis_pairs(b, n);
            double acc = 0.0;
            for (int x = 0; x < pa.count; ++x)
                for (int y = 0; y < pb.count; ++y) {
                    auto [p, q] = pa.p[x];
                    auto [r, s] = pb.p[y];
                    // Tr(K e_p e_q^T K e_r e_s^T) = K_qr K_sp
                    acc += k(q, r) * k(s, p);
                }
            g(a, b) = g(b, a) = 0.5 * acc;
        }
    }
    return g;
}

std::vector<Eigen::MatrixXd> extended_metric_derivatives(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    const int dim = sym_dim(n);
    Eigen::MatrixXd k = inverse_checked(m, "extended metric derivatives");

    std::vector<BasisPairs> bp(dim);
    for (int a = 0; a < dim; ++a) bp[a] = basis_pairs(a, n);

    // Tr(K E_x K E_y K E_z) expanded over the basis pair decompositions
    auto triple_trace = [&](int x, int y, int z) {
        double acc = 0.0;
        for (int i = 0; i < bp[x].count; ++i)
            for (int j = 0; j < bp[y].count; ++j)
                for (int l = 0; l < bp[z].count; ++l) {
                    auto [p, q] = bp[x].p[i];
                    auto [r, s] = bp[y].p[j];
                    auto [t, u] = bp[z].p[l];
                    acc += k(q, r) * k(s, t) * k(u, p);
                }
        return acc;
    };

    std::vector<Eigen::MatrixXd> d(dim, Eigen::MatrixXd(dim, dim));
    for (int c = 0; c < dim; ++c)
        for (int a = 0; a < dim; ++a)
            for (int b = a; b < dim; ++b) {
                double v = -0.5 * (triple_trace(c, a, b) + triple_trace(a, c, b));
                d[c](a, b) = d[c](b, a) = v;
            }
    return d;
}

} // namespace netgeom

#include "alcove/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "alcove/errors.hpp"
#include "alcove/fiber.hpp"

namespace alcove {

namespace {

constexpr double kPi = 3.14159265358979323846;

double commutator_norm(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return (a * b - b * a).cwiseAbs().maxCoeff();
}

// Torus phases of the angle coordinates: p_1 = -theta_1, interior
// differences, p_n = theta_{n-1}; the total is zero by construction.
std::vector<double> torus_phases(const std::vector<double>& theta) {
    const int n = static_cast<int>(theta.size()) + 1;
    std::vector<double> p(n);
    p[0] = -theta[0];
    for (int j = 1; j + 1 < n; ++j) p[j] = theta[j - 1] - theta[j];
    p[n - 1] = theta[n - 2];
    return p;
}

UnitaryMatrix unitary_exp(const UnitaryMatrix& anti_hermitian, double t) {
    const auto n = anti_hermitian.rows();
    UnitaryMatrix herm = Complex(0.0, 1.0) * anti_hermitian;
    herm = (herm + herm.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<UnitaryMatrix> es(herm);
    if (es.info() != Eigen::Success) throw consistency_error("matrix exponential solve failed");
    UnitaryMatrix phases = UnitaryMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        phases(j, j) = std::polar(1.0, -t * es.eigenvalues()[j]);
    return es.eigenvectors() * phases * es.eigenvectors().adjoint();
}

}  // namespace

UnitaryMatrix reflection_g(const Eigen::VectorXd& v) {
    const int n = static_cast<int>(v.size());
    if (n < 2) throw precondition_error("reflection_g: need at least two components");
    if (std::abs(v.norm() - 1.0) > 1e-8)
        throw precondition_error("reflection_g: unit vector required");
    if (v[n - 1] <= -1.0 + 1e-12)
        throw precondition_error("reflection_g: singular parametrization at v_n = -1");
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j + 1 < n; ++j) {
        g(j, n - 1) = v[j];
        g(n - 1, j) = -v[j];
        for (int l = 0; l + 1 < n; ++l)
            g(j, l) = (j == l ? 1.0 : 0.0) - v[j] * v[l] / (1.0 + v[n - 1]);
    }
    g(n - 1, n - 1) = v[n - 1];
    return g.cast<Complex>();
}

int lax_sign(int n, const Rational& x) {
    if (!(x > 0 && x < 1)) throw precondition_error("lax_sign: parameter outside (0,1)");
    const long k = floor_long(Rational(n) * x);
    return (k % 2 == 0) ? 1 : -1;
}

UnitaryMatrix lax_local(const AlcovePoint& xi, const std::vector<double>& theta,
                        const Rational& x) {
    const int n = xi.n();
    if (static_cast<int>(theta.size()) != n - 1)
        throw precondition_error("lax_local: need n-1 angle coordinates");
    const DeltaMatrix delta = delta_of(xi);
    if (!delta.regular())
        throw out_of_domain_error("lax_local: point on the boundary (coinciding eigenvalues)");
    const std::vector<double> zy = z_functions(xi, x);
    const std::vector<double> zc = z_functions(xi, Rational(1) - x);
    for (int j = 0; j < n; ++j)
        if (!(zy[j] > 0.0) || !(zc[j] > 0.0))
            throw out_of_domain_error("lax_local: nonpositive spectral weight at the point");

    const double y = kPi * to_double(x);
    const std::vector<double> p = torus_phases(theta);
    const Complex ep = std::polar(1.0, y);
    const Complex em = std::polar(1.0, -y);
    const double pref = std::sin(n * y) / std::sin(y);
    UnitaryMatrix l(n, n);
    for (int j = 0; j < n; ++j) {
        const double vj = std::sqrt(zy[j]);
        for (int k = 0; k < n; ++k) {
            const Complex rho = std::polar(1.0, p[k]);
            l(j, k) = pref * (ep - em) / (ep * delta.diagonal[j] / delta.diagonal[k] - em) *
                      vj * std::sqrt(zc[k]) * rho;
        }
    }
    return l;
}

CrossSectionPoint cross_section(const AlcovePoint& xi, const std::vector<double>& theta,
                                const Rational& x) {
    const int n = xi.n();
    const UnitaryMatrix l = lax_local(xi, theta, x);
    const std::vector<double> zy = z_functions(xi, x);
    Eigen::VectorXd v(n);
    for (int j = 0; j < n; ++j) v[j] = std::sqrt(zy[j]);
    const UnitaryMatrix g = reflection_g(v);
    const UnitaryMatrix ginv = g.transpose();  // real orthogonal

    CrossSectionPoint pt;
    pt.xi = xi;
    pt.theta = theta;
    pt.a = ginv * l * g;
    pt.b = ginv * delta_of(xi).matrix() * g;

    const double y = kPi * to_double(x);
    const UnitaryMatrix comm =
        pt.a * pt.b * pt.a.adjoint() * pt.b.adjoint() - mu_zero(n, y);
    const double res = comm.cwiseAbs().maxCoeff();
    if (res > 1e-8) {
        std::ostringstream os;
        os << "cross_section: moment-map residual " << res;
        throw consistency_error(os.str());
    }
    return pt;
}

double rs_hamiltonian(const std::vector<double>& q, const std::vector<double>& p, double y) {
    const int n = static_cast<int>(q.size());
    if (n < 2 || p.size() != q.size())
        throw precondition_error("rs_hamiltonian: need matching coordinates of length >= 2");
    double psum = 0.0;
    for (double v : p) psum += v;
    const double wrapped = psum - 2.0 * kPi * std::round(psum / (2.0 * kPi));
    if (std::abs(wrapped) > 1e-8)
        throw precondition_error("rs_hamiltonian: momenta must sum to zero mod 2 pi");
    double h = 0.0;
    for (int l = 0; l < n; ++l) {
        double prod = 1.0;
        for (int j = 0; j < n; ++j) {
            if (j == l) continue;
            const double s = std::sin(q[l] - q[j]);
            const double factor = 1.0 - std::sin(y) * std::sin(y) / (s * s);
            if (factor < -1e-12)
                throw out_of_domain_error("rs_hamiltonian: negative factor under the root");
            prod *= std::max(factor, 0.0);
        }
        h += std::cos(p[l]) * std::sqrt(prod);
    }
    return h;
}

double rs_hamiltonian_of_point(const AlcovePoint& xi, const std::vector<double>& theta,
                               const Rational& x) {
    const int n = xi.n();
    if (static_cast<int>(theta.size()) != n - 1)
        throw precondition_error("rs_hamiltonian_of_point: need n-1 angle coordinates");
    const DeltaMatrix delta = delta_of(xi);
    if (!delta.regular())
        throw out_of_domain_error(
            "rs_hamiltonian_of_point: point on the boundary (coinciding eigenvalues)");
    const double y = kPi * to_double(x);
    std::vector<double> q(n);
    for (int j = 0; j < n; ++j) q[j] = std::arg(delta.diagonal[j]) / 2.0;
    const std::vector<double> p = torus_phases(theta);
    double h = 0.0;
    for (int l = 0; l < n; ++l) {
        double prod = 1.0;
        for (int j = 0; j < n; ++j) {
            if (j == l) continue;
            const double s = std::sin(q[l] - q[j]);
            prod *= 1.0 - std::sin(y) * std::sin(y) / (s * s);
        }
        h += std::cos(p[l]) * std::sqrt(std::max(prod, 0.0));
    }
    return h;
}

UnitaryMatrix gradient_phi(int k, const UnitaryMatrix& g) {
    if (k == 0) throw precondition_error("gradient_phi: index must be nonzero");
    const auto n = g.rows();
    const int m = std::abs(k);
    UnitaryMatrix pw = UnitaryMatrix::Identity(n, n);
    for (int i = 0; i < m; ++i) pw = pw * g;
    const UnitaryMatrix inv = pw.adjoint();
    UnitaryMatrix out;
    if (k > 0) {
        out = inv - pw;
        out += ((pw - inv).trace() / double(n)) * UnitaryMatrix::Identity(n, n);
    } else {
        const Complex i1(0.0, 1.0);
        out = i1 * (pw + inv);
        out -= (i1 * (pw + inv).trace() / double(n)) * UnitaryMatrix::Identity(n, n);
    }
    return out;
}

std::pair<UnitaryMatrix, UnitaryMatrix> flow_b_hamiltonian(const UnitaryMatrix& a,
                                                           const UnitaryMatrix& b,
                                                           const UnitaryMatrix& h_gradient,
                                                           double t, double tol) {
    if (commutator_norm(h_gradient, b) > tol)
        throw precondition_error("flow_b_hamiltonian: gradient does not commute with B");
    return {a * unitary_exp(h_gradient, t), b};
}

CenterGradient build_center_gradient(const AlcovePoint& xi, const UnitaryMatrix& target,
                                     double tol) {
    const int n = xi.n();
    if (target.rows() != n || target.cols() != n)
        throw precondition_error("build_center_gradient: size mismatch");
    if ((target + target.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw precondition_error("build_center_gradient: target must be anti-Hermitian");

    const DeltaMatrix delta = delta_of(xi);
    const UnitaryMatrix dm = delta.matrix();
    if (commutator_norm(target, dm) > 1e-9)
        throw precondition_error("build_center_gradient: target must commute with the torus element");

    // All gradients are diagonal at a diagonal argument, so the solve runs
    // over the imaginary parts of the diagonals.
    Eigen::MatrixXd basis(n, 2 * n);
    for (int k = 1; k <= n; ++k) {
        const UnitaryMatrix gp = gradient_phi(k, dm);
        const UnitaryMatrix gm = gradient_phi(-k, dm);
        for (int j = 0; j < n; ++j) {
            basis(j, 2 * (k - 1)) = gp(j, j).imag();
            basis(j, 2 * (k - 1) + 1) = gm(j, j).imag();
        }
    }
    Eigen::VectorXd rhs(n);
    for (int j = 0; j < n; ++j) rhs[j] = target(j, j).imag();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd c = svd.solve(rhs);

    CenterGradient cg;
    cg.coefficients.assign(c.data(), c.data() + c.size());
    cg.residual = (center_gradient_eval(cg, dm) - target).cwiseAbs().maxCoeff();
    if (cg.residual > tol) {
        std::ostringstream os;
        os << "build_center_gradient: target outside the gradient span (residual "
           << cg.residual << ")";
        throw precondition_error(os.str());
    }
    return cg;
}

UnitaryMatrix center_gradient_eval(const CenterGradient& cg, const UnitaryMatrix& g) {
    const auto n = g.rows();
    UnitaryMatrix out = UnitaryMatrix::Zero(n, n);
    for (std::size_t i = 0; i + 1 < cg.coefficients.size() + 1; i += 2) {
        const int k = static_cast<int>(i / 2) + 1;
        if (cg.coefficients[i] != 0.0) out += cg.coefficients[i] * gradient_phi(k, g);
        if (i + 1 < cg.coefficients.size() && cg.coefficients[i + 1] != 0.0)
            out += cg.coefficients[i + 1] * gradient_phi(-k, g);
    }
    return out;
}

FiberFlowResult fiber_flow_check(const AlcovePoint& xi, const Rational& x, int which,
                                 const Eigen::Matrix2cd& z0,
                                 const std::vector<double>& t_samples, double tol) {
    if (which != 1 && which != 2)
        throw precondition_error("fiber_flow_check: generator index must be 1 or 2");
    if (xi.n() != 4)
        throw precondition_error("fiber_flow_check: defined for order four only");
    const int n = 4;
    const VertexContext ctx = make_vertex_context(xi, x);

    Eigen::Matrix2cd z = z0;
    z /= std::sqrt(z.determinant());
    if ((z.adjoint() * z - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-8)
        throw precondition_error("fiber_flow_check: start matrix must be unitary");

    UnitaryMatrix t0 = UnitaryMatrix::Identity(n, n);
    t0.topLeftCorner<2, 2>() = z;

    UnitaryMatrix target = UnitaryMatrix::Zero(n, n);
    const Complex mi(0.0, -1.0);
    if (which == 1) {
        target.diagonal() << mi, mi, -mi, -mi;
    } else {
        target.diagonal() << 0.0, 0.0, mi, -mi;
    }
    const CenterGradient cg = build_center_gradient(ctx.xi, target);

    const UnitaryMatrix g0 = householder_to_last(ctx.u0.components);
    const UnitaryMatrix dm = ctx.delta.matrix();
    const UnitaryMatrix b = g0.adjoint() * dm * g0;
    const UnitaryMatrix a_emb = g0.adjoint() * ctx.a0 * t0 * g0;
    const UnitaryMatrix grad = center_gradient_eval(cg, b);

    auto z_at = [&](double t) {
        const auto flowed = flow_b_hamiltonian(a_emb, b, grad, t);
        const UnitaryMatrix tt = ctx.a0.adjoint() * g0 * flowed.first * g0.adjoint();
        return gauge_fix(ctx, tt).z;
    };
    auto predicted = [&](double t) {
        Eigen::Matrix2cd left = Eigen::Matrix2cd::Identity();
        Eigen::Matrix2cd right = Eigen::Matrix2cd::Identity();
        left(0, 0) = std::polar(1.0, t);
        if (which == 1)
            right(1, 1) = std::polar(1.0, -t);
        else
            right(0, 0) = std::polar(1.0, -t);
        return (left * z * right).eval();
    };

    FiberFlowResult out;
    for (double t : t_samples) {
        const double dev = (z_at(t) - predicted(t)).cwiseAbs().maxCoeff();
        if (dev > out.max_dev) {
            out.max_dev = dev;
            out.worst_t = t;
        }
    }
    out.periodicity_dev = (z_at(2.0 * kPi) - z).cwiseAbs().maxCoeff();

    // Summed generator: after half a period the combined rotations return the
    // start matrix negated; the deviation from that is informational.
    {
        UnitaryMatrix both = UnitaryMatrix::Zero(n, n);
        both.diagonal() << mi, mi, 0.0, -2.0 * mi;
        const CenterGradient cg2 = build_center_gradient(ctx.xi, both);
        const UnitaryMatrix grad2 = center_gradient_eval(cg2, b);
        const auto flowed = flow_b_hamiltonian(a_emb, b, grad2, kPi);
        const UnitaryMatrix tt = ctx.a0.adjoint() * g0 * flowed.first * g0.adjoint();
        out.summed_half_period_dev = (gauge_fix(ctx, tt).z + z).cwiseAbs().maxCoeff();
    }

    out.pass = out.max_dev <= tol && out.periodicity_dev <= tol;
    if (!out.pass) {
        std::ostringstream os;
        os << "max deviation " << out.max_dev << " at t = " << out.worst_t
           << ", periodicity deviation " << out.periodicity_dev;
        out.detail = os.str();
    }
    return out;
}

}  // namespace alcove

#include "alcove/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "alcove/errors.hpp"

namespace alcove {

namespace {

constexpr double kPi = 3.14159265358979323846;

double commutator_norm(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return (a * b - b * a).cwiseAbs().maxCoeff();
}

std::vector<bool> positive_blocks(const DeltaMatrix& delta, const UVector& u0) {
    std::vector<bool> pos(delta.blocks.size(), false);
    for (std::size_t b = 0; b < delta.blocks.size(); ++b)
        for (int j : delta.blocks[b].index_set)
            if (std::abs(u0.components[j]) > 0.0) pos[b] = true;
    return pos;
}

std::string isotropy_description(const std::vector<EigenBlock>& blocks) {
    std::ostringstream os;
    os << "S(";
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b) os << " x ";
        os << "U(" << blocks[b].multiplicity() << ")";
    }
    os << ")";
    return os.str();
}

// Diagonal generator pattern when every split block has size at most two and
// every full block is a singleton; a factor listing otherwise.
std::string stabilizer_description(const DeltaMatrix& delta, const std::vector<bool>& pos) {
    bool diagonal = true;
    for (std::size_t b = 0; b < delta.blocks.size(); ++b) {
        const int m = delta.blocks[b].multiplicity();
        if (pos[b] ? m > 2 : m > 1) diagonal = false;
    }
    const int n = delta.n();
    std::ostringstream os;
    if (diagonal) {
        std::vector<std::string> slot(n);
        char next = 'a';
        const std::string shared(1, next++);
        std::vector<int> power(26, 0);
        for (std::size_t b = 0; b < delta.blocks.size(); ++b) {
            for (int j : delta.blocks[b].index_set) {
                if (pos[b] && j == delta.blocks[b].index_set.back()) {
                    slot[j] = shared;
                    ++power[0];
                } else {
                    slot[j] = std::string(1, next);
                    ++power[next - 'a'];
                    ++next;
                }
            }
        }
        os << "diag(";
        for (int j = 0; j < n; ++j) os << (j ? "," : "") << slot[j];
        os << "), ";
        for (char c = 'a'; c < next; ++c) {
            if (power[c - 'a'] == 0) continue;
            if (c != 'a') os << "*";
            os << c;
            if (power[c - 'a'] > 1) os << "^" << power[c - 'a'];
        }
        os << " = 1";
    } else {
        for (std::size_t b = 0; b < delta.blocks.size(); ++b) {
            if (b) os << " x ";
            const int m = delta.blocks[b].multiplicity();
            if (pos[b])
                os << "U(" << m - 1 << ")xU(1)*";
            else
                os << "U(" << m << ")";
        }
        os << ", U(1)* phases equal, det = 1";
    }
    return os.str();
}

}  // namespace

IsotropyStructure isotropy_of(const AlcovePoint& xi) {
    const DeltaMatrix delta = delta_of(xi);
    IsotropyStructure iso;
    iso.blocks = delta.blocks;
    iso.group_dim = -1;
    for (const auto& b : iso.blocks) iso.group_dim += b.multiplicity() * b.multiplicity();
    iso.description = isotropy_description(iso.blocks);
    return iso;
}

StabilizerStructure stabilizer_of(const AlcovePoint& xi, const UVector& u0) {
    const DeltaMatrix delta = delta_of(xi);
    const std::vector<bool> pos = positive_blocks(delta, u0);
    StabilizerStructure st;
    // One unitary factor per block, cut to the subgroup with u0 as an
    // eigenvector: positive-mass blocks keep U(m-1) transverse to the mass
    // direction and share a single phase on it; the shared phase and the
    // determinant condition cancel in the dimension count.
    st.group_dim = 0;
    for (std::size_t b = 0; b < delta.blocks.size(); ++b) {
        const int m = delta.blocks[b].multiplicity();
        if (pos[b]) {
            st.per_block.push_back(BlockRole::Split);
            st.group_dim += (m - 1) * (m - 1);
        } else {
            st.per_block.push_back(BlockRole::Full);
            st.group_dim += m * m;
        }
    }
    st.description = stabilizer_description(delta, pos);
    return st;
}

std::string FiberType::str() const {
    switch (kind) {
        case Kind::Torus:
            return torus_dim == 0 ? "Point" : "Torus(" + std::to_string(torus_dim) + ")";
        case Kind::Point:
            return "Point";
        case Kind::Sphere3:
            return "Sphere3";
        case Kind::Conjectural:
            return "Conjectural(" + detail + ")";
        case Kind::Unrecognized:
            return "Unrecognized(" + detail + ")";
    }
    return "Unrecognized";
}

FiberReport fiber_report(const AlcovePoint& xi, const Rational& x) {
    PolytopeModel hrep = build_h_representation(xi.n(), x);
    if (contains(hrep, xi).kind == MembershipRecord::Kind::Outside)
        throw out_of_domain_error("fiber_report: point outside the polytope");

    FiberReport rep;
    rep.xi = xi;
    const DeltaMatrix delta = delta_of(xi);
    const UVector u0 = solve_u(xi, x);
    rep.isotropy = isotropy_of(xi);
    rep.stabilizer = stabilizer_of(xi, u0);
    rep.fiber_dim = rep.isotropy.group_dim - rep.stabilizer.group_dim;

    const std::vector<bool> pos = positive_blocks(delta, u0);
    bool all_singleton = true;
    std::vector<int> pos_sizes;
    int zero_blocks = 0;
    for (std::size_t b = 0; b < delta.blocks.size(); ++b) {
        const int m = delta.blocks[b].multiplicity();
        if (m > 1) all_singleton = false;
        if (pos[b])
            pos_sizes.push_back(m);
        else
            ++zero_blocks;
    }
    std::sort(pos_sizes.rbegin(), pos_sizes.rend());

    const int n = xi.n();
    FiberType type;
    if (all_singleton) {
        const int d = zero_blocks;
        type.kind = (d == n - 1) ? FiberType::Kind::Point : FiberType::Kind::Torus;
        type.torus_dim = n - 1 - d;
    } else if (pos_sizes == std::vector<int>{2, 1} &&
               static_cast<int>(delta.blocks.size()) == n - 1) {
        type.kind = FiberType::Kind::Sphere3;
    } else if (pos_sizes == std::vector<int>{3, 2, 1}) {
        type.kind = FiberType::Kind::Conjectural;
        type.detail = "SU(3)";
    } else {
        type.kind = FiberType::Kind::Unrecognized;
        std::ostringstream os;
        os << "blocks=";
        for (std::size_t b = 0; b < delta.blocks.size(); ++b)
            os << (b ? "," : "") << delta.blocks[b].multiplicity() << (pos[b] ? "+" : "0");
        type.detail = os.str();
    }
    rep.recognized_type = type;
    return rep;
}

namespace {

// Sparse conjugator for the standardized singular vertex pattern: column 0
// is the last basis vector, column 2 the first, columns j+1 pick up e_j for
// the remaining singletons, and columns 1 and s+2 mix e_1 with e_{1+s}
// through the eigenvectors of the restricted 2x2 problem.
UnitaryMatrix structured_a0(int n, int s, const DeltaMatrix& delta, const UnitaryMatrix& mu) {
    const UnitaryMatrix m = mu * delta.matrix();
    UnitaryMatrix a = UnitaryMatrix::Zero(n, n);
    a(n - 1, 0) = 1.0;
    a(0, 2) = 1.0;
    for (int j = 2; j + 1 < n; ++j) {
        if (j == 1 + s) continue;
        a(j, j + 1) = 1.0;
    }
    const int i1 = 1;
    const int i2 = 1 + s;
    Eigen::Matrix2cd sub;
    sub << m(i1, i1), m(i1, i2), m(i2, i1), m(i2, i2);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(sub, true);
    if (es.info() != Eigen::Success)
        throw consistency_error("structured conjugator: 2x2 eigenvalue solve failed");
    const Complex t1 = delta.diagonal[1];
    const Complex t2 = delta.diagonal[s + 2];
    const int o1 =
        (std::abs(es.eigenvalues()[0] - t1) < std::abs(es.eigenvalues()[1] - t1)) ? 0 : 1;
    const int o2 = 1 - o1;
    if (std::abs(es.eigenvalues()[o1] - t1) > 1e-6 || std::abs(es.eigenvalues()[o2] - t2) > 1e-6)
        throw consistency_error("structured conjugator: 2x2 eigenvalue mismatch");
    Eigen::Vector2cd v1 = es.eigenvectors().col(o1).normalized();
    Eigen::Vector2cd v2 = es.eigenvectors().col(o2).normalized();
    a(i1, 1) = v1[0];
    a(i2, 1) = v1[1];
    a(i1, s + 2) = v2[0];
    a(i2, s + 2) = v2[1];
    const Complex det = a.determinant();
    a.col(0) *= std::conj(det) / std::abs(det);
    return a;
}

}  // namespace

VertexContext make_vertex_context(const AlcovePoint& xi, const Rational& x) {
    const int n = xi.n();
    if (n < 4) throw unsupported_pattern_error("make_vertex_context: order must be at least 4");
    const Rational bulk = Rational(1) - Rational(n - 2) * x;

    int rotation = -1;
    int s_index = 0;
    for (int r = 0; r < n && rotation < 0; ++r) {
        const AlcovePoint cand = cyclic_shift(xi, r);
        if (cand.coords[0] != 0) continue;
        for (int s = 1; s <= n - 3; ++s) {
            bool match = true;
            for (int j = 1; j < n; ++j) {
                const Rational& want = (j == 1 + s) ? bulk : x;
                if (cand.coords[j] != want) {
                    match = false;
                    break;
                }
            }
            if (match) {
                rotation = r;
                s_index = s;
                break;
            }
        }
    }
    if (rotation < 0)
        throw unsupported_pattern_error(
            "make_vertex_context: point is not a cyclic image of the one-zero singular "
            "vertex pattern");

    VertexContext ctx;
    ctx.xi = cyclic_shift(xi, rotation);
    ctx.x = x;
    ctx.rotation = rotation;
    ctx.s_index = s_index;
    ctx.delta = delta_of(ctx.xi);
    ctx.u0 = solve_u(ctx.xi, x);
    ctx.mu = mu_hat(kPi * to_double(x), ctx.u0);
    ctx.a0 = structured_a0(n, s_index, ctx.delta, ctx.mu);
    const double res = (ctx.a0 * ctx.delta.matrix() - ctx.mu * ctx.delta.matrix() * ctx.a0)
                           .cwiseAbs()
                           .maxCoeff();
    if (res > 1e-9)
        throw consistency_error("make_vertex_context: conjugator residual " +
                                std::to_string(res));
    return ctx;
}

UnitaryMatrix twisted_action(const VertexContext& ctx, const UnitaryMatrix& X,
                             const UnitaryMatrix& T, double tol) {
    const UnitaryMatrix dm = ctx.delta.matrix();
    if (commutator_norm(X, dm) > tol)
        throw precondition_error("twisted_action: X does not commute with the torus element");
    if (commutator_norm(X, ctx.mu) > tol)
        throw precondition_error("twisted_action: X does not commute with the moment value");
    if (commutator_norm(T, dm) > tol)
        throw precondition_error("twisted_action: T does not commute with the torus element");
    const UnitaryMatrix theta0 = ctx.a0.adjoint() * X * ctx.a0;
    const UnitaryMatrix out = theta0 * T * X.adjoint();
    if (commutator_norm(out, dm) > 1e-6)
        throw consistency_error("twisted_action: output left the isotropy group");
    return out;
}

GaugeFixResult gauge_fix(const VertexContext& ctx, const UnitaryMatrix& T) {
    const int n = ctx.delta.n();
    if (T.rows() != n || T.cols() != n)
        throw precondition_error("gauge_fix: size mismatch with the vertex context");
    if (commutator_norm(T, ctx.delta.matrix()) > 1e-7)
        throw precondition_error("gauge_fix: T does not commute with the torus element");

    // Running products of the singleton entries determine a diagonal gauge
    // with equal phases on the two mass slots; the principal n-th root fixes
    // its determinant.  The gauge-fixed Z is independent of the root choice.
    std::vector<Complex> c(n, Complex(1.0));
    Complex acc = 1.0;
    for (int j = 2; j < n; ++j) {
        acc *= T(j, j);
        c[j] = acc;
    }
    Complex cprod = c[1 + ctx.s_index];
    for (int j = 2; j < n; ++j) cprod *= c[j];
    const Complex gamma0 = std::pow(cprod, -1.0 / n);
    ComplexVector gam(n);
    gam[0] = gamma0;
    gam[1] = gamma0 * c[1 + ctx.s_index];
    for (int j = 2; j < n; ++j) gam[j] = gamma0 * c[j];

    GaugeFixResult out;
    Eigen::Matrix2cd gamma_block = T.topLeftCorner<2, 2>();
    Eigen::Matrix2cd left = Eigen::Matrix2cd::Zero();
    left(0, 0) = gam[n - 1];
    left(1, 1) = gam[1];
    Eigen::Matrix2cd right = Eigen::Matrix2cd::Zero();
    right(0, 0) = 1.0 / gam[0];
    right(1, 1) = 1.0 / gam[1];
    out.z = left * gamma_block * right;
    out.gauge = UnitaryMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) out.gauge(j, j) = gam[j];
    return out;
}

UnitaryMatrix random_isotropy_element(const DeltaMatrix& delta, std::mt19937_64& rng) {
    const int n = delta.n();
    std::normal_distribution<double> gauss(0.0, 1.0);
    UnitaryMatrix t = UnitaryMatrix::Zero(n, n);
    for (const auto& blk : delta.blocks) {
        const int m = blk.multiplicity();
        UnitaryMatrix g(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
        Eigen::HouseholderQR<UnitaryMatrix> qr(g);
        UnitaryMatrix q = qr.householderQ() * UnitaryMatrix::Identity(m, m);
        UnitaryMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int j = 0; j < m; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) t(blk.index_set[i], blk.index_set[j]) = q(i, j);
    }
    const Complex det = t.determinant();
    t.col(delta.blocks[0].index_set[0]) *= std::conj(det) / std::abs(det);
    return t;
}

UnitaryMatrix random_stabilizer_element(const DeltaMatrix& delta, const UVector& u0,
                                        std::mt19937_64& rng) {
    const int n = delta.n();
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::vector<bool> pos = positive_blocks(delta, u0);
    const Complex shared = std::polar(1.0, angle(rng));
    UnitaryMatrix t = UnitaryMatrix::Zero(n, n);
    int free_col = -1;  // column whose phase absorbs the determinant
    for (std::size_t b = 0; b < delta.blocks.size(); ++b) {
        const auto& blk = delta.blocks[b];
        const int m = blk.multiplicity();
        if (pos[b]) {
            const int mass = blk.index_set.back();
            t(mass, mass) = shared;
            std::vector<int> rest;
            for (int j : blk.index_set)
                if (j != mass) rest.push_back(j);
            if (!rest.empty()) {
                const int k = static_cast<int>(rest.size());
                UnitaryMatrix g(k, k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
                Eigen::HouseholderQR<UnitaryMatrix> qr(g);
                UnitaryMatrix q = qr.householderQ() * UnitaryMatrix::Identity(k, k);
                UnitaryMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
                for (int j = 0; j < k; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) t(rest[i], rest[j]) = q(i, j);
                if (free_col < 0) free_col = rest[0];
            }
        } else {
            for (int j : blk.index_set) t(j, j) = std::polar(1.0, angle(rng));
            if (free_col < 0) free_col = blk.index_set[0];
        }
    }
    const Complex det = t.determinant();
    if (free_col >= 0) {
        t.col(free_col) *= std::conj(det) / std::abs(det);
    } else {
        // Center-only stabilizer: snap the shared phase to the nearest n-th
        // root of unity.
        const double k = std::round(std::arg(shared) * n / (2.0 * kPi));
        const Complex z = std::polar(1.0, 2.0 * kPi * k / n);
        t = z * UnitaryMatrix::Identity(n, n);
    }
    return t;
}

SuiteOutcome orbit_invariance_suite(const AlcovePoint& xi, const Rational& x, int samples,
                                    unsigned seed) {
    const VertexContext ctx = make_vertex_context(xi, x);
    const UnitaryMatrix dm = ctx.delta.matrix();
    std::mt19937_64 rng(seed);

    SuiteOutcome out;
    out.samples = samples;
    out.seed = seed;
    out.min_noncentral_move = 1e300;
    std::ostringstream detail;

    // Center triviality once per suite: an n-th root of unity acts as the
    // identity on T.
    const int n = ctx.delta.n();
    const Complex omega = std::polar(1.0, 2.0 * kPi / n);
    double center_dev = 0.0;
    {
        const UnitaryMatrix t = random_isotropy_element(ctx.delta, rng);
        const UnitaryMatrix moved =
            twisted_action(ctx, omega * UnitaryMatrix::Identity(n, n), t, 1e-6);
        center_dev = (moved - t).cwiseAbs().maxCoeff();
    }

    bool ok = center_dev < 1e-10;
    for (int i = 0; i < samples; ++i) {
        const UnitaryMatrix t = random_isotropy_element(ctx.delta, rng);
        UnitaryMatrix sx = random_stabilizer_element(ctx.delta, ctx.u0, rng);
        int guard = 0;
        while ((sx - sx(0, 0) * UnitaryMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-6 &&
               guard++ < 16)
            sx = random_stabilizer_element(ctx.delta, ctx.u0, rng);

        UnitaryMatrix moved;
        try {
            moved = twisted_action(ctx, sx, t, 1e-8);
        } catch (const error& e) {
            out.detail = std::string("sample ") + std::to_string(i) + ": " + e.what();
            out.pass = false;
            return out;
        }
        out.max_commutator = std::max(out.max_commutator, commutator_norm(moved, dm));
        const GaugeFixResult base = gauge_fix(ctx, t);
        const GaugeFixResult after = gauge_fix(ctx, moved);
        out.max_orbit_dev =
            std::max(out.max_orbit_dev, (base.z - after.z).cwiseAbs().maxCoeff());
        out.min_noncentral_move =
            std::min(out.min_noncentral_move, (moved - t).cwiseAbs().maxCoeff());
        if (out.max_commutator > 1e-9 || out.max_orbit_dev > 1e-8 ||
            out.min_noncentral_move < 1e-6) {
            ok = false;
            if (out.detail.empty())
                out.detail = "first failing sample " + std::to_string(i) + " at seed " +
                             std::to_string(seed);
        }
    }
    detail << "center_dev=" << center_dev;
    if (out.detail.empty()) out.detail = detail.str();
    out.pass = ok;
    return out;
}

UnitaryMatrix householder_to_last(const ComplexVector& u) {
    const int n = static_cast<int>(u.size());
    if (n <= 0) throw precondition_error("householder_to_last: empty vector");
    if (std::abs(u.norm() - 1.0) > 1e-8)
        throw precondition_error("householder_to_last: unit vector required");
    const Complex un = u[n - 1];
    const Complex beta = (std::abs(un) > 1e-12) ? Complex(-un / std::abs(un)) : Complex(1.0);
    ComplexVector w = u;
    w[n - 1] -= beta;
    UnitaryMatrix h = UnitaryMatrix::Identity(n, n);
    h -= (2.0 / w.squaredNorm()) * (w * w.adjoint());
    h.col(n - 1) *= beta;
    const Complex det = h.determinant();
    h.col(0) *= std::conj(det) / std::abs(det);
    if ((h.col(n - 1) - u).cwiseAbs().maxCoeff() > 1e-9)
        throw consistency_error("householder_to_last: last column mismatch");
    return h;
}

}  // namespace alcove

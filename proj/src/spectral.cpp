#include "alcove/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "alcove/errors.hpp"

namespace alcove {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex unit_phase(const Rational& turn) {
    return std::polar(1.0, 2.0 * kPi * to_double(turn));
}

// Exact eigenvalue phases of the torus element, as fractions of a full turn.
std::vector<Rational> turn_phases(const AlcovePoint& xi) {
    const int n = xi.n();
    Rational r1 = 0;
    for (int j = 0; j < n; ++j) r1 += Rational(j + 1) * xi.coords[j];
    r1 /= n;
    std::vector<Rational> turns(n);
    turns[0] = frac_part(r1);
    for (int j = 0; j + 1 < n; ++j) turns[j + 1] = frac_part(turns[j] + xi.coords[j]);
    return turns;
}

}  // namespace

double unitarity_defect(const UnitaryMatrix& u) {
    const auto n = u.rows();
    return (u.adjoint() * u - UnitaryMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

double special_defect(const UnitaryMatrix& u) { return std::abs(u.determinant() - 1.0); }

UnitaryMatrix DeltaMatrix::matrix() const {
    UnitaryMatrix m = UnitaryMatrix::Zero(n(), n());
    for (int j = 0; j < n(); ++j) m(j, j) = diagonal[j];
    return m;
}

DeltaMatrix delta_of(const AlcovePoint& xi) {
    const int n = xi.n();
    if (n <= 0) throw precondition_error("delta_of: empty point");
    DeltaMatrix d;
    d.xi = xi;
    d.turns = turn_phases(xi);
    d.diagonal.resize(n);
    for (int j = 0; j < n; ++j) d.diagonal[j] = unit_phase(d.turns[j]);

    // Coinciding eigenvalues arise exactly from vanishing coordinates: a zero
    // xi_j glues positions j and j+1 (cyclically).  A block is therefore a
    // maximal cyclic run and its first index has a nonvanishing predecessor.
    std::vector<bool> in_block(n, false);
    for (int start = 0; start < n; ++start) {
        if (xi.coords[(start + n - 1) % n] == 0) continue;
        if (in_block[start]) continue;
        EigenBlock blk;
        blk.turn = d.turns[start];
        blk.value = d.diagonal[start];
        int j = start;
        while (true) {
            blk.index_set.push_back(j);
            in_block[j] = true;
            if (xi.coords[j] != 0) break;
            j = (j + 1) % n;
            if (j == start) break;
        }
        d.blocks.push_back(std::move(blk));
    }
    std::sort(d.blocks.begin(), d.blocks.end(), [](const EigenBlock& a, const EigenBlock& b) {
        return *std::min_element(a.index_set.begin(), a.index_set.end()) <
               *std::min_element(b.index_set.begin(), b.index_set.end());
    });
    int covered = 0;
    for (const auto& b : d.blocks) covered += b.multiplicity();
    if (covered != n) throw consistency_error("delta_of: block cover mismatch");
    return d;
}

std::vector<double> xi_of(const UnitaryMatrix& g, double tol) {
    const int n = static_cast<int>(g.rows());
    if (n <= 0 || g.cols() != n) throw precondition_error("xi_of: square matrix required");
    if (special_defect(g) > 1e-6) throw precondition_error("xi_of: determinant must be one");

    Eigen::ComplexEigenSolver<UnitaryMatrix> es(g, false);
    if (es.info() != Eigen::Success) throw consistency_error("xi_of: eigenvalue solve failed");
    std::vector<double> phases(n);
    for (int j = 0; j < n; ++j) {
        double p = std::arg(es.eigenvalues()[j]) / (2.0 * kPi);
        p -= std::floor(p);
        phases[j] = p;
    }
    std::sort(phases.begin(), phases.end());

    // Cyclic gaps between consecutive phases; each rotation of the gap list is
    // a candidate coordinate vector.  The reconstructed first phase singles
    // out the correct rotation.
    std::vector<double> gaps(n);
    for (int j = 0; j + 1 < n; ++j) gaps[j] = phases[j + 1] - phases[j];
    gaps[n - 1] = phases[0] + 1.0 - phases[n - 1];

    double best_dist = -1.0;
    int best_off = 0;
    for (int off = 0; off < n; ++off) {
        double r1 = 0.0;
        for (int j = 0; j < n; ++j) r1 += (j + 1) * gaps[(off + j) % n];
        r1 /= n;
        r1 -= std::floor(r1);
        double d = std::abs(r1 - phases[off]);
        d = std::min(d, 1.0 - d);
        if (best_dist < 0.0 || d < best_dist) {
            best_dist = d;
            best_off = off;
        }
    }
    if (best_dist > std::max(1e-3, tol)) {
        std::ostringstream os;
        os << "xi_of: no cyclic offset reconstructs the first eigenvalue phase (best deviation "
           << best_dist << ")";
        throw structural_instability_error(os.str());
    }
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = gaps[(best_off + j) % n];
    return out;
}

UnitaryMatrix mu_zero(int n, double y) {
    if (n < 2) throw precondition_error("mu_zero: order must be at least 2");
    UnitaryMatrix m = UnitaryMatrix::Zero(n, n);
    for (int j = 0; j + 1 < n; ++j) m(j, j) = std::polar(1.0, 2.0 * y);
    m(n - 1, n - 1) = std::polar(1.0, -2.0 * (n - 1) * y);
    return m;
}

UnitaryMatrix mu_hat(double y, const UVector& u) {
    const int n = u.n();
    if (n <= 0) throw precondition_error("mu_hat: empty vector");
    const double norm = u.components.norm();
    if (std::abs(norm - 1.0) > 1e-8)
        throw precondition_error("mu_hat: argument must be a unit vector");
    const Complex lead = std::polar(1.0, 2.0 * y);
    const Complex tail = std::polar(1.0, -2.0 * (n - 1) * y);
    UnitaryMatrix m = lead * UnitaryMatrix::Identity(n, n);
    m += (tail - lead) * (u.components * u.components.adjoint());
    return m;
}

namespace {

void require_alcove_regular(const DeltaMatrix& d, const char* who) {
    for (const auto& c : d.xi.coords)
        if (c < 0) throw precondition_error(std::string(who) + ": negative coordinate");
    if (!d.regular())
        throw precondition_error(std::string(who) +
                                 ": coinciding eigenvalues; use residue_constraints");
}

}  // namespace

std::vector<double> z_functions(const AlcovePoint& xi, const Rational& x) {
    const DeltaMatrix d = delta_of(xi);
    require_alcove_regular(d, "z_functions");
    const int n = xi.n();
    const double y = kPi * to_double(x);
    std::vector<double> out(n);
    const double pref = std::sin(y) / std::sin(n * y);
    for (int l = 0; l < n; ++l) {
        double p = 1.0;
        Rational s = 0;
        for (int j = 1; j < n; ++j) {
            s += xi.coords[(l + j - 1) % n];
            p *= std::sin(kPi * to_double(s - x)) / std::sin(kPi * to_double(s));
        }
        out[l] = pref * p;
    }
    return out;
}

std::vector<double> z_functions_spectral(const AlcovePoint& xi, const Rational& x) {
    const DeltaMatrix d = delta_of(xi);
    require_alcove_regular(d, "z_functions_spectral");
    const int n = xi.n();
    const double y = kPi * to_double(x);
    const Complex ep = std::polar(1.0, y);
    const Complex em = std::polar(1.0, -y);
    std::vector<double> out(n);
    const double pref = std::sin(y) / std::sin(n * y);
    for (int l = 0; l < n; ++l) {
        Complex p = 1.0;
        for (int j = 0; j < n; ++j) {
            if (j == l) continue;
            p *= (ep * d.diagonal[l] - em * d.diagonal[j]) / (d.diagonal[l] - d.diagonal[j]);
        }
        out[l] = pref * p.real();
    }
    return out;
}

ResidueReport residue_constraints(const AlcovePoint& xi, const Rational& x) {
    PolytopeModel hrep = build_h_representation(xi.n(), x);
    const MembershipRecord mem = contains(hrep, xi);
    if (mem.kind == MembershipRecord::Kind::Outside)
        throw out_of_domain_error("residue_constraints: point outside the polytope");

    const DeltaMatrix d = delta_of(xi);
    const int n = xi.n();
    const double y = kPi * to_double(x);
    const Complex rho = std::polar(1.0, 2.0 * (1 - n) * y) - std::polar(1.0, 2.0 * y);
    const Complex e2y = std::polar(1.0, 2.0 * y);

    ResidueReport rep;
    for (const auto& blk : d.blocks) {
        const Rational zeta_turn = frac_part(blk.turn + x);
        const Complex zeta = unit_phase(zeta_turn);
        int hits = 0;
        for (int j = 0; j < n; ++j)
            if (d.turns[j] == zeta_turn) ++hits;
        const int order = blk.multiplicity() - hits;
        rep.pole_orders.push_back(order);
        if (order <= 0) {
            rep.block_mass.push_back(0.0);
            continue;
        }
        if (order > 1)
            throw out_of_domain_error(
                "residue_constraints: higher-order pole, point outside the polytope");
        Complex pt = 1.0;
        Complex qt = 1.0;
        for (int j = 0; j < n; ++j) {
            if (d.turns[j] != zeta_turn) pt *= d.diagonal[j] - zeta;
            if (frac_part(d.turns[j] + x) != zeta_turn) qt *= e2y * d.diagonal[j] - zeta;
        }
        const Complex val = pt / (qt * rho * blk.value);
        if (std::abs(val.imag()) > 1e-9)
            throw consistency_error("residue_constraints: residue mass is not real");
        rep.block_mass.push_back(val.real());
    }
    return rep;
}

double char_identity_residual(const AlcovePoint& xi, const Rational& x, const UVector& u) {
    const DeltaMatrix d = delta_of(xi);
    const int n = xi.n();
    const double y = kPi * to_double(x);
    const Complex e2y = std::polar(1.0, 2.0 * y);
    const Complex rho = std::polar(1.0, 2.0 * (1 - n) * y) - e2y;
    double worst = 0.0;
    for (int t = 0; t < 2 * n; ++t) {
        const Complex zeta = std::polar(1.0, kPi * t / n);
        Complex lhs = 1.0;
        Complex rhs = 1.0;
        for (int j = 0; j < n; ++j) {
            lhs *= d.diagonal[j] - zeta;
            rhs *= e2y * d.diagonal[j] - zeta;
        }
        Complex sum = 0.0;
        for (int k = 0; k < n; ++k) {
            Complex term = std::norm(u.components[k]) * d.diagonal[k];
            for (int j = 0; j < n; ++j)
                if (j != k) term *= e2y * d.diagonal[j] - zeta;
            sum += term;
        }
        rhs += rho * sum;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

UVector solve_u(const AlcovePoint& xi, const Rational& x, double tol) {
    const DeltaMatrix d = delta_of(xi);
    const ResidueReport res = residue_constraints(xi, x);
    const int n = xi.n();
    UVector u;
    u.components = ComplexVector::Zero(n);
    u.zero_pattern.assign(n, true);
    for (std::size_t b = 0; b < d.blocks.size(); ++b) {
        const double mass = std::max(res.block_mass[b], 0.0);
        if (mass == 0.0) continue;
        const int last = d.blocks[b].index_set.back();
        u.components[last] = std::sqrt(mass);
        u.zero_pattern[last] = false;
    }
    const double id_res = char_identity_residual(xi, x, u);
    if (id_res > tol) {
        std::ostringstream os;
        os << "solve_u: characteristic identity residual " << id_res << " exceeds " << tol;
        throw consistency_error(os.str());
    }
    return u;
}

UnitaryMatrix solve_A0(const AlcovePoint& xi, const Rational& x, const UVector& u0, double tol) {
    const DeltaMatrix d = delta_of(xi);
    const int n = xi.n();
    const double y = kPi * to_double(x);
    const UnitaryMatrix dm = d.matrix();
    const UnitaryMatrix m = mu_hat(y, u0) * dm;

    // The conjugation equation A0 delta = mu_hat delta A0 asks for columns of
    // A0 that are eigenvectors of mu_hat*delta with the eigenvalues of delta
    // in diagonal order.  The product is normal, so a Schur decomposition
    // delivers orthonormal eigenvectors.
    Eigen::ComplexSchur<UnitaryMatrix> schur(m, true);
    if (schur.info() != Eigen::Success) throw consistency_error("solve_A0: Schur solve failed");

    double sep = 4.0;
    for (const auto& a : d.blocks)
        for (const auto& b : d.blocks)
            if (&a != &b) sep = std::min(sep, std::abs(a.value - b.value));
    const double match_tol = (d.blocks.size() > 1) ? sep / 3.0 : 1e-6;

    std::vector<int> assigned(n, -1);  // A0 column j <- Schur column assigned[j]
    std::vector<bool> used(n, false);
    for (const auto& blk : d.blocks) {
        std::vector<int> cols;
        for (int c = 0; c < n; ++c) {
            if (used[c]) continue;
            if (std::abs(schur.matrixT()(c, c) - blk.value) < match_tol) cols.push_back(c);
        }
        if (static_cast<int>(cols.size()) != blk.multiplicity()) {
            std::ostringstream os;
            os << "solve_A0: eigenvalue multiset mismatch at block starting " << blk.index_set[0]
               << " (found " << cols.size() << ", expected " << blk.multiplicity()
               << "); the point is outside the polytope or the tolerance broke down";
            throw out_of_domain_error(os.str());
        }
        std::vector<int> idx = blk.index_set;
        std::sort(idx.begin(), idx.end());
        for (std::size_t t = 0; t < idx.size(); ++t) {
            assigned[idx[t]] = cols[t];
            used[cols[t]] = true;
        }
    }

    UnitaryMatrix a0(n, n);
    for (int j = 0; j < n; ++j) a0.col(j) = schur.matrixU().col(assigned[j]);

    // Deterministic phases: rotate each column so its largest entry is
    // real-positive, then apply a global n-th root of unity fixing the
    // determinant with the first nonzero entry of the first column as close
    // to real-positive as the root lattice allows.
    for (int j = 0; j < n; ++j) {
        double mx = a0.col(j).cwiseAbs().maxCoeff();
        for (int i = 0; i < n; ++i) {
            if (std::abs(a0(i, j)) >= mx * (1.0 - 1e-9)) {
                a0.col(j) *= std::conj(a0(i, j)) / std::abs(a0(i, j));
                break;
            }
        }
    }
    const Complex det = a0.determinant();
    const Complex base = std::polar(1.0, -std::arg(det) / n);
    int pivot = 0;
    while (pivot < n && std::abs(a0(pivot, 0)) < 1e-12) ++pivot;
    if (pivot == n) throw consistency_error("solve_A0: zero first column");
    Complex best = base;
    double best_re = -2.0;
    for (int t = 0; t < n; ++t) {
        const Complex cand = base * std::polar(1.0, 2.0 * kPi * t / n);
        const double re = (cand * a0(pivot, 0)).real();
        if (re > best_re + 1e-15) {
            best_re = re;
            best = cand;
        }
    }
    a0 *= best;

    const double res = (a0 * dm - m * a0).cwiseAbs().maxCoeff();
    if (res > tol) {
        std::ostringstream os;
        os << "solve_A0: conjugation residual " << res << " exceeds " << tol;
        throw consistency_error(os.str());
    }
    return a0;
}

double f_s(int n, int s, double y) {
    if (s < 1 || s > n - 3) throw precondition_error("f_s: index must satisfy 1 <= s <= n-3");
    if (!(y > kPi / (n - 1) && y < kPi / (n - 2)))
        throw precondition_error("f_s: parameter outside (pi/(n-1), pi/(n-2))");
    return std::sin((s + 1) * y) * std::sin((n - 1) * y) / (std::sin(s * y) * std::sin(n * y));
}

}  // namespace alcove

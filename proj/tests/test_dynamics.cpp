#include <doctest.h>

#include <cmath>
#include <complex>

#include "alcove/dynamics.hpp"
#include "alcove/fiber.hpp"
#include "alcove/polytope.hpp"

using namespace alcove;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> random_angles(int count, std::mt19937_64& rng) {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = 2.0 * kPi * (static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0));
    return out;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("reflection matrix") {
    Eigen::VectorXd v(4);
    v << 0.2, -0.4, 0.5, std::sqrt(1.0 - 0.2 * 0.2 - 0.4 * 0.4 - 0.5 * 0.5);
    const UnitaryMatrix g = reflection_g(v);
    CHECK(g.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK((g * g.transpose() - UnitaryMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    for (int j = 0; j < 4; ++j) CHECK(g(j, 3).real() == doctest::Approx(v[j]).epsilon(1e-12));

    Eigen::VectorXd south(3);
    south << 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(reflection_g(south), precondition_error);
    Eigen::VectorXd notunit(3);
    notunit << 1.0, 1.0, 0.0;
    CHECK_THROWS_AS(reflection_g(notunit), precondition_error);
}

TEST_CASE("sign of the trace normalisation") {
    CHECK(lax_sign(3, make_rational(1, 4)) == 1);
    CHECK(lax_sign(4, make_rational(5, 12)) == -1);
    CHECK(lax_sign(5, make_rational(7, 24)) == -1);
    CHECK(lax_sign(6, make_rational(9, 40)) == -1);
    CHECK(lax_sign(6, make_rational(3, 7)) == 1);  // floor(18/7) = 2
    CHECK_THROWS_AS(lax_sign(4, make_rational(3, 2)), precondition_error);
}

TEST_CASE("local Lax matrix is special unitary") {
    const std::vector<std::pair<int, Rational>> cases = {
        {3, make_rational(1, 4)}, {4, make_rational(5, 12)}, {5, make_rational(7, 24)}};
    for (const auto& [n, x] : cases) {
        CAPTURE(n);
        const PolytopeModel model = build_h_representation(n, x);
        std::mt19937_64 rng(3u * static_cast<unsigned>(n));
        for (int trial = 0; trial < 10; ++trial) {
            const AlcovePoint p = random_interior_point(model, rng);
            const auto theta = random_angles(n - 1, rng);
            const UnitaryMatrix lax = lax_local(p, theta, x);
            CHECK(unitarity_defect(lax) < 1e-10);
            CHECK(special_defect(lax) < 1e-10);
        }
    }
    // Boundary points are rejected.
    const Rational x = make_rational(5, 12);
    const AlcovePoint vertex(
        std::vector<Rational>{Rational(0), x, Rational(1) - 2 * x, x});
    CHECK_THROWS_AS(lax_local(vertex, {0.0, 0.0, 0.0}, x), out_of_domain_error);
    CHECK_THROWS_AS(lax_local(barycenter(4), {0.0}, x), precondition_error);
}

TEST_CASE("cross-section satisfies the moment constraint") {
    const std::vector<std::pair<int, Rational>> cases = {
        {3, make_rational(1, 4)}, {4, make_rational(5, 12)}, {6, make_rational(9, 40)}};
    for (const auto& [n, x] : cases) {
        CAPTURE(n);
        const PolytopeModel model = build_h_representation(n, x);
        const UnitaryMatrix target = mu_zero(n, kPi * to_double(x));
        std::mt19937_64 rng(17u * static_cast<unsigned>(n));
        for (int trial = 0; trial < 5; ++trial) {
            const AlcovePoint p = random_interior_point(model, rng);
            const auto theta = random_angles(n - 1, rng);
            const CrossSectionPoint cs = cross_section(p, theta, x);
            const UnitaryMatrix lhs =
                cs.a * cs.b * cs.a.adjoint() * cs.b.adjoint();
            CHECK((lhs - target).cwiseAbs().maxCoeff() < 1e-9);
            // B is the torus element in disguise.
            const auto back = xi_of(cs.b);
            for (int j = 0; j < n; ++j)
                CHECK(back[j] == doctest::Approx(to_double(p.coords[j])).epsilon(1e-9));
        }
    }
}

TEST_CASE("direct Hamiltonian in the factorwise regime") {
    // Below 1/n every window is wide and all bracketed factors stay positive.
    const Rational x = make_rational(1, 4);
    const double y = kPi * to_double(x);
    const PolytopeModel model = build_h_representation(3, x);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const AlcovePoint p = random_interior_point(model, rng);
        const auto theta = random_angles(2, rng);
        const DeltaMatrix d = delta_of(p);
        std::vector<double> q(3), mom(3);
        for (int j = 0; j < 3; ++j) q[j] = kPi * to_double(d.turns[j]);
        mom[0] = -theta[0];
        mom[1] = theta[0] - theta[1];
        mom[2] = theta[1];
        const double direct = rs_hamiltonian(q, mom, y);
        const double via_point = rs_hamiltonian_of_point(p, theta, x);
        CHECK(direct == doctest::Approx(via_point).epsilon(1e-11));
    }

    // Vanishing coupling degenerates to the free kinetic term.
    const std::vector<double> q = {0.1, 1.3, 2.9};
    const std::vector<double> mom = {0.4, -0.3, -0.1};
    const double free_h = rs_hamiltonian(q, mom, 0.0);
    CHECK(free_h ==
          doctest::Approx(std::cos(0.4) + std::cos(-0.3) + std::cos(-0.1)).epsilon(1e-14));

    CHECK_THROWS_AS(rs_hamiltonian({0.0, 1.0}, {0.5, 0.0}, 0.3), precondition_error);
    // Close neighbours push a factor below zero.
    CHECK_THROWS_AS(
        rs_hamiltonian({0.0, 0.05, 1.5}, {0.0, 0.0, 0.0}, kPi * 5.0 / 12.0),
        out_of_domain_error);
}

TEST_CASE("trace of the Lax matrix gives the Hamiltonian") {
    const std::vector<std::pair<int, Rational>> cases = {
        {3, make_rational(1, 4)}, {4, make_rational(5, 12)}, {5, make_rational(7, 24)}};
    for (const auto& [n, x] : cases) {
        CAPTURE(n);
        const PolytopeModel model = build_h_representation(n, x);
        const int sign = lax_sign(n, x);
        std::mt19937_64 rng(41u * static_cast<unsigned>(n));
        for (int trial = 0; trial < 10; ++trial) {
            const AlcovePoint p = random_interior_point(model, rng);
            const auto theta = random_angles(n - 1, rng);
            const UnitaryMatrix lax = lax_local(p, theta, x);
            const double lhs = sign * lax.trace().real();
            CHECK(lhs == doctest::Approx(rs_hamiltonian_of_point(p, theta, x))
                             .epsilon(1e-10));
        }
    }
}

TEST_CASE("spectral gradients") {
    const Rational x = make_rational(5, 12);
    const PolytopeModel model = build_h_representation(4, x);
    std::mt19937_64 rng(53);
    const AlcovePoint p = random_interior_point(model, rng);
    const UnitaryMatrix b = delta_of(p).matrix();
    for (int k : {1, -1, 2, -2, 3}) {
        const UnitaryMatrix grad = gradient_phi(k, b);
        CHECK((grad + grad.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(grad.trace()) < 1e-12);
        CHECK((grad * b - b * grad).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(gradient_phi(0, b), precondition_error);
}

TEST_CASE("flows with commuting gradients") {
    const Rational x = make_rational(5, 12);
    const PolytopeModel model = build_h_representation(4, x);
    std::mt19937_64 rng(61);
    const AlcovePoint p = random_interior_point(model, rng);
    const auto theta = random_angles(3, rng);
    const CrossSectionPoint cs = cross_section(p, theta, x);
    const UnitaryMatrix grad = gradient_phi(1, cs.b);

    const auto at = [&](double t) { return flow_b_hamiltonian(cs.a, cs.b, grad, t); };
    CHECK((at(0.0).first - cs.a).cwiseAbs().maxCoeff() < 1e-12);
    const auto half = at(0.7);
    const auto full = at(1.5);
    const auto resumed = flow_b_hamiltonian(half.first, half.second, grad, 0.8);
    CHECK((resumed.first - full.first).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((full.second - cs.b).cwiseAbs().maxCoeff() == 0.0);

    // The moment-map residual is a flow invariant.
    const UnitaryMatrix target = mu_zero(4, kPi * to_double(x));
    for (int s = 0; s <= 20; ++s) {
        const double t = 2.0 * kPi * s / 20.0;
        const auto f = at(t);
        CHECK((f.first * f.second * f.first.adjoint() * f.second.adjoint() - target)
                  .cwiseAbs()
                  .maxCoeff() < 1e-8);
    }

    UnitaryMatrix bad = UnitaryMatrix::Zero(4, 4);
    bad(0, 1) = 1.0;
    bad(1, 0) = -1.0;
    CHECK_THROWS_AS(flow_b_hamiltonian(cs.a, cs.b, bad, 1.0), precondition_error);
}

TEST_CASE("center gradients at the distinguished vertex") {
    const Rational x = make_rational(5, 12);
    const AlcovePoint vertex(
        std::vector<Rational>{Rational(0), x, Rational(1) - 2 * x, x});
    const Complex mi(0.0, -1.0);

    UnitaryMatrix x1 = UnitaryMatrix::Zero(4, 4);
    x1.diagonal() << mi, mi, -mi, -mi;
    UnitaryMatrix x2 = UnitaryMatrix::Zero(4, 4);
    x2.diagonal() << 0.0, 0.0, mi, -mi;

    const UnitaryMatrix dm = delta_of(vertex).matrix();
    for (const UnitaryMatrix& target : {x1, x2}) {
        const CenterGradient cg = build_center_gradient(vertex, target);
        CHECK(cg.residual < 1e-9);
        CHECK(cg.coefficients.size() == 8);
        const UnitaryMatrix back = center_gradient_eval(cg, dm);
        CHECK((back - target).cwiseAbs().maxCoeff() < 1e-9);
    }

    // Targets outside the center of the isotropy algebra are refused: the
    // doubled block must carry equal entries.
    UnitaryMatrix off = UnitaryMatrix::Zero(4, 4);
    off.diagonal() << mi, -mi, 0.0, 0.0;
    CHECK_THROWS_AS(build_center_gradient(vertex, off), precondition_error);
    // So are non anti-Hermitian targets.
    CHECK_THROWS_AS(build_center_gradient(vertex, UnitaryMatrix::Identity(4, 4)),
                    precondition_error);
}

TEST_CASE("fiber rotation flows") {
    const Rational x = make_rational(5, 12);
    const AlcovePoint vertex(
        std::vector<Rational>{Rational(0), x, Rational(1) - 2 * x, x});
    Eigen::Matrix2cd z0;
    z0 << Complex(0.36, 0.48), Complex(0.0, -0.8), Complex(0.0, -0.8), Complex(0.36, -0.48);
    const std::vector<double> t_samples = {0.7, kPi / 3.0, 1.9, kPi};

    for (int which : {1, 2}) {
        CAPTURE(which);
        const FiberFlowResult res = fiber_flow_check(vertex, x, which, z0, t_samples);
        CHECK(res.pass);
        CHECK(res.max_dev <= 1e-7);
        CHECK(res.periodicity_dev <= 1e-7);
    }

    CHECK_THROWS_AS(fiber_flow_check(vertex, x, 3, z0, t_samples), precondition_error);
    Eigen::Matrix2cd notunitary = Eigen::Matrix2cd::Zero();
    notunitary(0, 0) = 2.0;
    notunitary(1, 1) = 0.5;
    CHECK_THROWS_AS(fiber_flow_check(vertex, x, 1, notunitary, t_samples),
                    precondition_error);
}

}  // TEST_SUITE

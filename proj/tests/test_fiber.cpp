#include <doctest.h>

#include <cmath>
#include <complex>

#include "alcove/fiber.hpp"
#include "alcove/polytope.hpp"

using namespace alcove;

namespace {

AlcovePoint vertex_n4(const Rational& x) {
    return AlcovePoint(std::vector<Rational>{Rational(0), x, Rational(1) - 2 * x, x});
}

UnitaryMatrix diag4(Complex a, Complex b, Complex c, Complex d) {
    UnitaryMatrix m = UnitaryMatrix::Zero(4, 4);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(3, 3) = d;
    return m;
}

}  // namespace

TEST_SUITE("fiber") {

TEST_CASE("isotropy dimensions") {
    const IsotropyStructure interior = isotropy_of(barycenter(4));
    CHECK(interior.blocks.size() == 4);
    CHECK(interior.group_dim == 3);  // maximal torus of the order-four group

    const IsotropyStructure at_vertex = isotropy_of(vertex_n4(make_rational(5, 12)));
    CHECK(at_vertex.blocks.size() == 3);
    CHECK(at_vertex.group_dim == 5);  // 4 + 1 + 1 - 1
}

TEST_CASE("stabilizer of the mass vector") {
    const Rational x = make_rational(5, 12);
    const AlcovePoint v = vertex_n4(x);
    const UVector u = solve_u(v, x);
    const StabilizerStructure st = stabilizer_of(v, u);
    REQUIRE(st.per_block.size() == 3);
    // Blocks {0,1} and {2} carry mass and are split; block {3} does not.
    CHECK(st.per_block[0] == BlockRole::Split);
    CHECK(st.per_block[1] == BlockRole::Split);
    CHECK(st.per_block[2] == BlockRole::Full);
    // Elements diag(a, b, b, c) with a b^2 c = 1: two free phases.
    CHECK(st.group_dim == 2);
}

TEST_CASE("recognized fiber types") {
    const Rational x = make_rational(5, 12);
    BuildOptions opt;
    opt.with_faces = false;
    const PolytopeModel model = build_polytope(4, x, opt);

    const FiberReport interior = fiber_report(barycenter(4), x);
    CHECK(interior.recognized_type.kind == FiberType::Kind::Torus);
    CHECK(interior.recognized_type.torus_dim == 3);
    CHECK(interior.fiber_dim == 3);

    int points = 0, spheres = 0;
    for (const auto& v : model.vertices) {
        bool singular = false;
        for (const auto& c : v.coords) singular = singular || c == 0;
        const FiberReport rep = fiber_report(v, x);
        if (singular) {
            CHECK(rep.recognized_type.kind == FiberType::Kind::Sphere3);
            CHECK(rep.fiber_dim == 3);
            ++spheres;
        } else {
            CHECK(rep.recognized_type.kind == FiberType::Kind::Point);
            CHECK(rep.fiber_dim == 0);
            ++points;
        }
    }
    CHECK(points == 4);
    CHECK(spheres == 4);

    const AlcovePoint outside(std::vector<Rational>{make_rational(1, 2), make_rational(1, 2),
                                                    Rational(0), Rational(0)});
    CHECK_THROWS_AS(fiber_report(outside, x), out_of_domain_error);
}

TEST_CASE("vertex context standardization") {
    const Rational x = make_rational(5, 12);
    const AlcovePoint standard = vertex_n4(x);
    const AlcovePoint rotated = cyclic_shift(standard, 3);

    const VertexContext ctx = make_vertex_context(rotated, x);
    CHECK(ctx.xi == standard);
    CHECK(cyclic_shift(rotated, ctx.rotation) == ctx.xi);
    CHECK(ctx.s_index == 1);
    CHECK(unitarity_defect(ctx.a0) < 1e-12);
    CHECK(special_defect(ctx.a0) < 1e-10);
    // The conjugator intertwines the two moment values on the torus element.
    const UnitaryMatrix dm = ctx.delta.matrix();
    CHECK((ctx.a0 * dm - ctx.mu * dm * ctx.a0).cwiseAbs().maxCoeff() < 1e-10);

    CHECK_THROWS_AS(make_vertex_context(barycenter(4), x), unsupported_pattern_error);
    CHECK_THROWS_AS(make_vertex_context(barycenter(3), make_rational(1, 4)),
                    unsupported_pattern_error);
}

TEST_CASE("twist acts by the reversing permutation on the stabilizer") {
    const Rational x = make_rational(5, 12);
    const VertexContext ctx = make_vertex_context(vertex_n4(x), x);

    // diag(a, b, b, c) with a b^2 c = 1 is sent to diag(c, b, a, b).
    const Complex a = std::polar(1.0, 0.9);
    const Complex b = std::polar(1.0, -0.4);
    const Complex c = 1.0 / (a * b * b);
    const UnitaryMatrix X = diag4(a, b, b, c);
    const UnitaryMatrix theta0 = ctx.a0.adjoint() * X * ctx.a0;
    CHECK((theta0 - diag4(c, b, a, b)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("twisted action stays in the isotropy group") {
    const Rational x = make_rational(5, 12);
    const VertexContext ctx = make_vertex_context(vertex_n4(x), x);
    std::mt19937_64 rng(5);
    const UnitaryMatrix dm = ctx.delta.matrix();
    for (int trial = 0; trial < 5; ++trial) {
        const UnitaryMatrix T = random_isotropy_element(ctx.delta, rng);
        const UnitaryMatrix X = random_stabilizer_element(ctx.delta, ctx.u0, rng);
        const UnitaryMatrix moved = twisted_action(ctx, X, T);
        CHECK((moved * dm - dm * moved).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(unitarity_defect(moved) < 1e-10);
    }
    // A generic unitary is rejected as X and as T.
    UnitaryMatrix bad = UnitaryMatrix::Identity(4, 4);
    bad(0, 2) = 0.5;
    CHECK_THROWS_AS(twisted_action(ctx, bad, UnitaryMatrix::Identity(4, 4)),
                    precondition_error);
    CHECK_THROWS_AS(
        twisted_action(ctx, UnitaryMatrix::Identity(4, 4), bad), precondition_error);
}

TEST_CASE("gauge fixing is idempotent on embedded representatives") {
    const Rational x = make_rational(5, 12);
    const VertexContext ctx = make_vertex_context(vertex_n4(x), x);

    Eigen::Matrix2cd z0;
    z0 << Complex(0.6, 0.0), Complex(-0.8, 0.0), Complex(0.8, 0.0), Complex(0.6, 0.0);
    UnitaryMatrix T = UnitaryMatrix::Identity(4, 4);
    T.topLeftCorner<2, 2>() = z0;

    const GaugeFixResult r = gauge_fix(ctx, T);
    CHECK((r.z - z0).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(unitarity_defect(r.gauge) < 1e-12);

    // The representative is invariant along twisted orbits.
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        const UnitaryMatrix X = random_stabilizer_element(ctx.delta, ctx.u0, rng);
        const GaugeFixResult moved = gauge_fix(ctx, twisted_action(ctx, X, T));
        CHECK((moved.z - r.z).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("orbit invariance suites") {
    SuiteOutcome a = orbit_invariance_suite(vertex_n4(make_rational(5, 12)),
                                            make_rational(5, 12), 20, 0);
    CHECK(a.pass);
    CHECK(a.samples == 20);
    CHECK(a.max_commutator < 1e-8);
    CHECK(a.max_orbit_dev < 1e-8);
    CHECK(a.min_noncentral_move > 1e-6);

    const Rational x5 = make_rational(7, 24);
    const AlcovePoint v5(std::vector<Rational>{Rational(0), x5, Rational(1) - 3 * x5, x5, x5});
    SuiteOutcome b = orbit_invariance_suite(v5, x5, 10, 1);
    CHECK(b.pass);
}

TEST_CASE("random group elements respect their constraints") {
    const Rational x = make_rational(5, 12);
    const VertexContext ctx = make_vertex_context(vertex_n4(x), x);
    std::mt19937_64 rng(13);
    const UnitaryMatrix dm = ctx.delta.matrix();
    for (int trial = 0; trial < 10; ++trial) {
        const UnitaryMatrix t = random_isotropy_element(ctx.delta, rng);
        CHECK(unitarity_defect(t) < 1e-12);
        CHECK(special_defect(t) < 1e-11);
        CHECK((t * dm - dm * t).cwiseAbs().maxCoeff() < 1e-12);

        const UnitaryMatrix s = random_stabilizer_element(ctx.delta, ctx.u0, rng);
        const ComplexVector moved = s * ctx.u0.components;
        // u0 is an eigenvector of every stabilizer element.
        const Complex lambda = ctx.u0.components.dot(moved);
        CHECK((moved - lambda * ctx.u0.components).norm() < 1e-10);
        CHECK(std::abs(std::abs(lambda) - 1.0) < 1e-10);
    }
}

TEST_CASE("householder embedding") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int n : {3, 4, 6}) {
        ComplexVector u(n);
        for (int j = 0; j < n; ++j) u[j] = Complex(gauss(rng), gauss(rng));
        u /= u.norm();
        const UnitaryMatrix h = householder_to_last(u);
        CHECK(unitarity_defect(h) < 1e-12);
        CHECK(special_defect(h) < 1e-12);
        CHECK((h.col(n - 1) - u).norm() < 1e-12);
    }
    ComplexVector bad = ComplexVector::Ones(3);
    CHECK_THROWS_AS(householder_to_last(bad), precondition_error);
}

}  // TEST_SUITE

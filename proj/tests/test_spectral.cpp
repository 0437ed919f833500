#include <doctest.h>

#include <cmath>
#include <complex>

#include "alcove/fiber.hpp"
#include "alcove/polytope.hpp"
#include "alcove/spectral.hpp"

using namespace alcove;

namespace {

constexpr double kPi = 3.14159265358979323846;

AlcovePoint vertex_n4(const Rational& x) {
    return AlcovePoint(std::vector<Rational>{Rational(0), x, Rational(1) - 2 * x, x});
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("torus element of the barycenter") {
    const DeltaMatrix d = delta_of(barycenter(4));
    REQUIRE(d.n() == 4);
    CHECK(d.regular());
    CHECK(d.blocks.size() == 4);
    // Phase steps between consecutive slots are the coordinates.
    for (int j = 0; j + 1 < 4; ++j)
        CHECK(frac_part(d.turns[j + 1] - d.turns[j]) == make_rational(1, 4));
    CHECK(d.turns[0] == make_rational(5, 8));
    const UnitaryMatrix m = d.matrix();
    CHECK(unitarity_defect(m) < 1e-14);
    CHECK(special_defect(m) < 1e-14);
    for (int j = 0; j < 4; ++j) {
        const Complex want = std::polar(1.0, 2.0 * kPi * to_double(d.turns[j]));
        CHECK(std::abs(m(j, j) - want) < 1e-14);
    }
}

TEST_CASE("torus element of a singular vertex") {
    const Rational x = make_rational(5, 12);
    const DeltaMatrix d = delta_of(vertex_n4(x));
    CHECK_FALSE(d.regular());
    REQUIRE(d.blocks.size() == 3);
    // The vanishing first coordinate glues slots 0 and 1.
    CHECK(d.blocks[0].index_set == std::vector<int>{0, 1});
    CHECK(d.blocks[0].multiplicity() == 2);
    CHECK(d.blocks[1].index_set == std::vector<int>{2});
    CHECK(d.blocks[2].index_set == std::vector<int>{3});
    CHECK(special_defect(d.matrix()) < 1e-14);
}

TEST_CASE("xi_of inverts delta_of up to conjugation") {
    const std::vector<std::pair<int, Rational>> cases = {
        {4, make_rational(5, 12)}, {5, make_rational(7, 24)}, {6, make_rational(9, 40)}};
    for (const auto& [n, x] : cases) {
        const PolytopeModel model = build_h_representation(n, x);
        std::mt19937_64 rng(7u + static_cast<unsigned>(n));
        for (int trial = 0; trial < 5; ++trial) {
            const AlcovePoint p = random_interior_point(model, rng);
            const UnitaryMatrix g = delta_of(p).matrix();

            const auto direct = xi_of(g);
            REQUIRE(static_cast<int>(direct.size()) == n);
            for (int j = 0; j < n; ++j)
                CHECK(direct[j] == doctest::Approx(to_double(p.coords[j])).epsilon(1e-10));

            // Conjugation does not change the conjugacy class.
            UnitaryMatrix noise = UnitaryMatrix::Random(n, n);
            const UnitaryMatrix q =
                Eigen::HouseholderQR<UnitaryMatrix>(noise).householderQ();
            const auto conj = xi_of(q * g * q.adjoint());
            for (int j = 0; j < n; ++j)
                CHECK(conj[j] == doctest::Approx(to_double(p.coords[j])).epsilon(1e-8));
        }
    }
    CHECK_THROWS_AS(xi_of(2.0 * UnitaryMatrix::Identity(3, 3)), precondition_error);
}

TEST_CASE("moment map values") {
    const double y = kPi * 5.0 / 12.0;
    const UnitaryMatrix m = mu_zero(4, y);
    CHECK(unitarity_defect(m) < 1e-14);
    CHECK(special_defect(m) < 1e-13);
    CHECK(std::abs(m(0, 0) - std::polar(1.0, 2.0 * y)) < 1e-14);
    CHECK(std::abs(m(3, 3) - std::polar(1.0, -6.0 * y)) < 1e-14);

    // With the mass vector at the last basis slot the rank-one form reduces
    // to the diagonal one.
    UVector u;
    u.components = ComplexVector::Zero(4);
    u.components[3] = 1.0;
    u.zero_pattern = {true, true, true, false};
    CHECK((mu_hat(y, u) - m).cwiseAbs().maxCoeff() < 1e-14);

    u.components[3] = 0.5;  // not unit any more
    CHECK_THROWS_AS(mu_hat(y, u), precondition_error);
}

TEST_CASE("spectral weights agree between the two forms") {
    const std::vector<std::pair<int, Rational>> cases = {
        {4, make_rational(5, 12)}, {5, make_rational(7, 24)}, {6, make_rational(9, 40)}};
    for (const auto& [n, x] : cases) {
        const PolytopeModel model = build_h_representation(n, x);
        std::mt19937_64 rng(11u + static_cast<unsigned>(n));
        for (int trial = 0; trial < 10; ++trial) {
            const AlcovePoint p = random_interior_point(model, rng);
            const auto z1 = z_functions(p, x);
            const auto z2 = z_functions_spectral(p, x);
            REQUIRE(static_cast<int>(z1.size()) == n);
            double sum = 0.0;
            for (int l = 0; l < n; ++l) {
                CHECK(z1[l] > 0.0);
                CHECK(z1[l] == doctest::Approx(z2[l]).epsilon(1e-11));
                sum += z1[l];
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    // Weights are undefined at singular points.
    CHECK_THROWS_AS(z_functions(vertex_n4(make_rational(5, 12)), make_rational(5, 12)),
                    precondition_error);
}

TEST_CASE("residue data at a singular vertex") {
    const Rational x = make_rational(5, 12);
    const double y = kPi * to_double(x);
    const AlcovePoint v = vertex_n4(x);
    const ResidueReport rep = residue_constraints(v, x);
    REQUIRE(rep.pole_orders.size() == 3);
    REQUIRE(rep.block_mass.size() == 3);
    double total = 0.0;
    for (double m : rep.block_mass) {
        CHECK(m >= 0.0);
        total += m;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    // The doubled eigenvalue has a first-order pole; one singleton sits on a
    // zero of the spectral function and carries no mass.
    CHECK(rep.pole_orders == std::vector<int>{1, 1, -1});
    CHECK(rep.block_mass[2] == 0.0);
    // The massive singleton carries the closed form 1 + 1/(2 cos 2y), which
    // is f_1 at order four; the doubled eigenvalue takes the complement.
    CHECK(rep.block_mass[1] ==
          doctest::Approx(1.0 + 0.5 / std::cos(2.0 * y)).epsilon(1e-12));
    CHECK(rep.block_mass[1] == doctest::Approx(f_s(4, 1, y)).epsilon(1e-12));
    CHECK(rep.block_mass[0] == doctest::Approx(-0.5 / std::cos(2.0 * y)).epsilon(1e-12));

    const AlcovePoint outside(std::vector<Rational>{make_rational(1, 2), make_rational(1, 2),
                                                    Rational(0), Rational(0)});
    CHECK_THROWS_AS(residue_constraints(outside, x), out_of_domain_error);
}

TEST_CASE("mass vector at a singular vertex") {
    const Rational x = make_rational(5, 12);
    const AlcovePoint v = vertex_n4(x);
    const UVector u = solve_u(v, x);
    REQUIRE(u.n() == 4);
    // Mass sits on slot 1 (last index of the doubled block) and slot 2; the
    // remaining singleton carries none.
    CHECK(u.zero_pattern == std::vector<bool>{true, false, false, true});
    CHECK(std::abs(u.components[0]) == 0.0);
    CHECK(std::abs(u.components[3]) == 0.0);
    for (int l = 1; l < 3; ++l) {
        CHECK(u.components[l].imag() == 0.0);
        CHECK(u.components[l].real() > 0.0);
    }
    CHECK(u.components.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const double y = kPi * to_double(x);
    CHECK(std::norm(u.components[2]) ==
          doctest::Approx(1.0 + 0.5 / std::cos(2.0 * y)).epsilon(1e-12));
    CHECK(char_identity_residual(v, x, u) < 1e-10);
}

TEST_CASE("mass vector at a regular point") {
    const Rational x = make_rational(7, 24);
    const PolytopeModel model = build_h_representation(5, x);
    std::mt19937_64 rng(23);
    const AlcovePoint p = random_interior_point(model, rng);
    const UVector u = solve_u(p, x);
    const auto z = z_functions(p, x);
    for (int l = 0; l < 5; ++l) {
        CHECK_FALSE(u.zero_pattern[l]);
        CHECK(std::norm(u.components[l]) == doctest::Approx(z[l]).epsilon(1e-10));
    }
    CHECK(char_identity_residual(p, x, u) < 1e-10);
}

TEST_CASE("conjugator between the two moment values") {
    const std::vector<std::pair<int, Rational>> cases = {
        {4, make_rational(5, 12)}, {5, make_rational(7, 24)}, {6, make_rational(9, 40)}};
    for (const auto& [n, x] : cases) {
        CAPTURE(n);
        // At the barycenter and at a singular vertex of the standard pattern.
        std::vector<AlcovePoint> points = {barycenter(n)};
        std::vector<Rational> coords(n, x);
        coords[0] = 0;
        coords[n - 2] = Rational(1) - (n - 2) * x;
        points.emplace_back(coords);
        for (const auto& p : points) {
            const UVector u = solve_u(p, x);
            const UnitaryMatrix a0 = solve_A0(p, x, u);
            CHECK(unitarity_defect(a0) < 1e-9);
            CHECK(special_defect(a0) < 1e-9);
            const UnitaryMatrix dm = delta_of(p).matrix();
            const UnitaryMatrix mh = mu_hat(kPi * to_double(x), u);
            CHECK((a0 * dm - mh * dm * a0).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
}

TEST_CASE("conjugator is deterministic") {
    const Rational x = make_rational(5, 12);
    const AlcovePoint v = vertex_n4(x);
    const UVector u = solve_u(v, x);
    const UnitaryMatrix a = solve_A0(v, x, u);
    const UnitaryMatrix b = solve_A0(v, x, u);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("singular-vertex mass function") {
    CHECK(f_s(5, 1, kPi * 7.0 / 24.0) > 0.0);
    CHECK(f_s(6, 2, kPi * 9.0 / 40.0) > 0.0);
    // Out-of-range index or parameter.
    CHECK_THROWS_AS(f_s(4, 2, kPi * 5.0 / 12.0), precondition_error);
    CHECK_THROWS_AS(f_s(5, 1, kPi * 0.5), precondition_error);
    // Identity sum: the n - 3 singular masses together with the regular
    // leftover weights stay consistent with a unit total at vertices of each
    // pattern; spot-check positivity across the defining window.
    for (int s = 1; s <= 3; ++s) {
        const double lo = kPi / 5.0, hi = kPi / 4.0;
        for (double y : {lo + 0.1 * (hi - lo), lo + 0.5 * (hi - lo), lo + 0.9 * (hi - lo)})
            CHECK(f_s(6, s, y) > 0.0);
    }
}

}  // TEST_SUITE

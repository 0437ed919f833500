#include "alcove/report.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "alcove/dynamics.hpp"
#include "alcove/errors.hpp"
#include "alcove/farey.hpp"
#include "alcove/fiber.hpp"
#include "alcove/golden.hpp"
#include "alcove/polytope.hpp"
#include "alcove/spectral.hpp"

namespace alcove {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num_str(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string vec_long_str(const std::vector<long>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t j = 0; j < v.size(); ++j) os << (j ? ", " : "") << v[j];
    os << ")";
    return os.str();
}

std::string point_str(const AlcovePoint& p) {
    std::ostringstream os;
    os << "(";
    for (int j = 0; j < p.n(); ++j) os << (j ? ", " : "") << rational_str(p.coords[j]);
    os << ")";
    return os.str();
}

CaseResult make_case(std::string id, std::string expected, std::string actual, bool ok,
                     std::string source) {
    CaseResult c;
    c.id = std::move(id);
    c.expected = std::move(expected);
    c.actual = std::move(actual);
    c.status = ok ? CaseStatus::Pass : CaseStatus::Fail;
    c.source = std::move(source);
    return c;
}

CaseResult skipped_case(std::string id, std::string expected, std::string why,
                        std::string source) {
    CaseResult c;
    c.id = std::move(id);
    c.expected = std::move(expected);
    c.actual = std::move(why);
    c.status = CaseStatus::Skipped;
    c.source = std::move(source);
    return c;
}

std::string padded_n(int n) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "n%02d", n);
    return buf;
}

double rand_u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

bool cyclic_equal_affine(const std::vector<AffineForm>& a, const std::vector<AffineForm>& b) {
    const int n = static_cast<int>(a.size());
    if (static_cast<int>(b.size()) != n) return false;
    for (int s = 0; s < n; ++s) {
        bool all = true;
        for (int j = 0; j < n && all; ++j) all = a[(j + s) % n] == b[j];
        if (all) return true;
    }
    return false;
}

bool cyclic_equal_points(const AlcovePoint& a, const AlcovePoint& b) {
    const int n = a.n();
    if (b.n() != n) return false;
    for (int s = 0; s < n; ++s)
        if (cyclic_shift(a, s) == b) return true;
    return false;
}

bool keep_n(const SuiteOptions& opt, int n) { return !opt.only_n || *opt.only_n == n; }

BuildOptions build_options(const SuiteOptions& opt, bool with_faces) {
    BuildOptions bo;
    bo.with_faces = with_faces;
    bo.threads = opt.threads;
    return bo;
}

// The interval sample used everywhere: the mediant of the two endpoints is
// admissible because Farey neighbours of order n have denominator sum > n.
Rational interval_sample(const Rational& lower, const Rational& upper) {
    return mediant(lower, upper);
}

void suite_face_vectors(SuiteReport& rep, const SuiteOptions& opt) {
    for (const auto& tbl : golden().at("vertex_tables")) {
        const int n = tbl.at("n").get<int>();
        if (!keep_n(opt, n)) continue;
        const std::string id = tbl.at("id").get<std::string>();
        const Rational x =
            interval_sample(golden_rational(tbl.at("lower")), golden_rational(tbl.at("upper")));
        PolytopeModel model = build_polytope(n, x, build_options(opt, true));
        const auto expect = tbl.at("face_vector").get<std::vector<long>>();
        rep.cases.push_back(make_case("facevec-" + id, vec_long_str(expect),
                                      vec_long_str(model.face_vector),
                                      model.face_vector == expect,
                                      "golden:vertex_tables/" + id));
    }
}

void suite_vertex_tables(SuiteReport& rep, const SuiteOptions& opt) {
    for (const auto& tbl : golden().at("vertex_tables")) {
        const int n = tbl.at("n").get<int>();
        if (!keep_n(opt, n)) continue;
        const std::string id = tbl.at("id").get<std::string>();
        const Rational lower = golden_rational(tbl.at("lower"));
        const Rational upper = golden_rational(tbl.at("upper"));

        const auto intervals = classify_intervals(n, false);
        const FareyInterval* iv = nullptr;
        for (const auto& cand : intervals)
            if (cand.lower == lower && cand.upper == upper) iv = &cand;
        if (iv == nullptr)
            throw consistency_error("reference interval missing from the decomposition: " + id);

        SymbolicModel sm = symbolic_vertices(n, *iv);
        const auto classes = symbolic_classes(sm);

        const auto& rows = tbl.at("classes");
        std::vector<bool> used(classes.size(), false);
        int matched = 0;
        std::string missing;
        for (const auto& row : rows) {
            std::vector<AffineForm> want;
            for (const auto& coord : row.at("coords")) want.push_back(golden_affine(coord));
            bool found = false;
            for (std::size_t c = 0; c < classes.size() && !found; ++c) {
                if (used[c]) continue;
                if (cyclic_equal_affine(classes[c].representative, want)) {
                    used[c] = true;
                    found = true;
                }
            }
            if (found)
                ++matched;
            else
                missing += (missing.empty() ? "" : ",") + row.at("label").get<std::string>();
        }
        const int listed = static_cast<int>(rows.size());
        const bool ok = matched == listed && classes.size() == rows.size();
        std::ostringstream actual;
        actual << "matched " << matched << " of " << listed << " (computed "
               << classes.size() << ")";
        if (!missing.empty()) actual << ", unmatched: " << missing;
        rep.cases.push_back(make_case("vtable-" + id,
                                      std::to_string(listed) + " classes, all listed",
                                      actual.str(), ok, "golden:vertex_tables/" + id));
    }
}

void suite_interval_counts(SuiteReport& rep, const SuiteOptions& opt) {
    const auto table = interval_counts_table(4, 15);
    for (const auto& row : golden().at("interval_counts")) {
        const int n = row.at("n").get<int>();
        if (!keep_n(opt, n)) continue;
        const int want_i = row.at("type_i").get<int>();
        const int want_ii = row.at("type_ii").get<int>();
        const IntervalCountRow* got = nullptr;
        for (const auto& r : table)
            if (r.n == n) got = &r;
        std::ostringstream exp, act;
        exp << "(" << want_i << ", " << want_ii << ")";
        if (got)
            act << "(" << got->type_i << ", " << got->type_ii << ")";
        else
            act << "missing";
        rep.cases.push_back(make_case("counts-" + padded_n(n), exp.str(), act.str(),
                                      got && got->type_i == want_i && got->type_ii == want_ii,
                                      "golden:interval_counts/n=" + std::to_string(n)));

        const int want_min = row.at("min_classes").get<int>();
        const int want_max = row.at("max_classes").get<int>();
        std::ostringstream exp_cls;
        exp_cls << "min " << want_min << ", max " << want_max;
        const std::string src = "golden:interval_counts/n=" + std::to_string(n);
        if (n >= 13 && !opt.stretch) {
            rep.cases.push_back(skipped_case("classes-" + padded_n(n), exp_cls.str(),
                                             "skipped: enable --stretch", src));
            continue;
        }
        long found_min = std::numeric_limits<long>::max();
        long found_max = 0;
        for (const auto& iv : classify_intervals(n, true)) {
            if (iv.interval_type != IntervalType::TypeII) continue;
            const Rational x = interval_sample(iv.lower, iv.upper);
            PolytopeModel model = build_polytope(n, x, build_options(opt, false));
            const long c = static_cast<long>(cyclic_orbits(model).size());
            found_min = std::min(found_min, c);
            found_max = std::max(found_max, c);
        }
        std::ostringstream act_cls;
        act_cls << "min " << found_min << ", max " << found_max;
        rep.cases.push_back(make_case("classes-" + padded_n(n), exp_cls.str(), act_cls.str(),
                                      found_min == want_min && found_max == want_max, src));
    }
}

void suite_thm51(SuiteReport& rep, const SuiteOptions& opt) {
    for (const auto& entry : golden().at("theorem_5_1").at("cases")) {
        const int n = entry.at("n").get<int>();
        if (!keep_n(opt, n)) continue;
        const Rational x = golden_rational(entry.at("x"));
        const Theorem51Report r = check_theorem_5_1(n, x);
        std::ostringstream exp, act;
        exp << "v=" << r.expected_vertices << " f=" << r.expected_facets
            << " s=" << r.expected_singular << " inc=" << r.expected_incidence_first << "/"
            << r.expected_incidence_second << " patterns";
        act << "v=" << r.vertex_count << " f=" << r.facet_count << " s=" << r.singular_count
            << " inc=" << r.incidence_first_kind << "/" << r.incidence_second_kind
            << (r.patterns_found ? " patterns" : " patterns-missing");
        if (!r.pass && !r.detail.empty()) act << " [" << r.detail << "]";
        rep.cases.push_back(make_case("thm51-" + padded_n(n), exp.str(), act.str(), r.pass,
                                      "golden:theorem_5_1/n=" + std::to_string(n)));
    }
}

void suite_prop56(SuiteReport& rep, const SuiteOptions& opt) {
    const auto& g = golden().at("prop_5_6");
    const int n = g.at("n").get<int>();
    if (!keep_n(opt, n)) return;
    const Rational x = golden_rational(g.at("x"));
    std::vector<Rational> coords;
    for (const auto& c : g.at("point")) coords.push_back(golden_rational(c));
    const AlcovePoint point(coords);
    PolytopeModel model = build_polytope(n, x, build_options(opt, false));

    bool found = false;
    for (const auto& v : model.vertices)
        if (v == point) found = true;
    rep.cases.push_back(make_case("prop56-found", "vertex present",
                                  found ? "vertex present" : "vertex absent", found,
                                  "golden:prop_5_6"));

    const auto classes = cyclic_orbits(model);
    int with_double_zero = 0;
    bool point_in_such_class = false;
    for (const auto& cls : classes) {
        const auto& r = cls.representative;
        bool has = false;
        for (int j = 0; j < r.n(); ++j)
            if (r.coords[j] == 0 && r.cyc(j + 1) == 0) has = true;
        if (!has) continue;
        ++with_double_zero;
        if (cyclic_equal_points(r, point)) point_in_such_class = true;
    }
    std::ostringstream act_u;
    act_u << with_double_zero << " class(es)"
          << (point_in_such_class ? ", contains the point" : ", point elsewhere");
    rep.cases.push_back(make_case("prop56-unique", "1 class(es), contains the point",
                                  act_u.str(), with_double_zero == 1 && point_in_such_class,
                                  "golden:prop_5_6"));

    const int want_active = g.at("expected_active").get<int>();
    const int total = g.at("total_constraints").get<int>();
    const MembershipRecord mr = contains(model, point);
    const int active = static_cast<int>(mr.active.size());
    std::ostringstream exp_a, act_a;
    exp_a << want_active << " of " << total << " active";
    act_a << active << " of " << total << " active";
    rep.cases.push_back(make_case("prop56-active", exp_a.str(), act_a.str(),
                                  active == want_active, "golden:prop_5_6"));
}

void fiber_cases_for(SuiteReport& rep, const SuiteOptions& opt, int n, const Rational& x,
                     int expected_sphere3, const std::string& tag, const std::string& src) {
    PolytopeModel model = build_polytope(n, x, build_options(opt, false));

    const FiberReport interior = fiber_report(barycenter(n), x);
    const bool interior_ok = interior.recognized_type.kind == FiberType::Kind::Torus &&
                             interior.recognized_type.torus_dim == n - 1 &&
                             interior.fiber_dim == n - 1;
    rep.cases.push_back(make_case("fiber-" + tag + "-interior",
                                  "Torus(" + std::to_string(n - 1) + ")",
                                  interior.recognized_type.str(), interior_ok, src));

    int regular = 0;
    int regular_points = 0;
    int sphere = 0;
    std::string stray;
    for (const auto& v : model.vertices) {
        bool singular = false;
        for (const auto& c : v.coords)
            if (c == 0) singular = true;
        const FiberReport r = fiber_report(v, x);
        if (!singular) {
            ++regular;
            if (r.recognized_type.kind == FiberType::Kind::Point && r.fiber_dim == 0)
                ++regular_points;
        } else if (r.recognized_type.kind == FiberType::Kind::Sphere3 && r.fiber_dim == 3) {
            ++sphere;
        } else if (stray.empty()) {
            stray = " (first other: " + point_str(v) + " -> " + r.recognized_type.str() + ")";
        }
    }
    std::ostringstream act_r;
    act_r << regular_points << " of " << regular << " regular vertices are Point";
    rep.cases.push_back(make_case("fiber-" + tag + "-regular",
                                  "Point at all regular vertices", act_r.str(),
                                  regular_points == regular, src));

    std::ostringstream exp_s, act_s;
    exp_s << expected_sphere3 << " Sphere3 verdicts, dim 3";
    act_s << sphere << " Sphere3 verdicts, dim 3" << stray;
    rep.cases.push_back(make_case("fiber-" + tag + "-sphere3", exp_s.str(), act_s.str(),
                                  sphere == expected_sphere3, src));
}

void suite_fiber_s3(SuiteReport& rep, const SuiteOptions& opt) {
    for (const auto& entry : golden().at("fiber_s3").at("cases")) {
        const int n = entry.at("n").get<int>();
        if (!keep_n(opt, n)) continue;
        const Rational x = golden_rational(entry.at("x"));
        fiber_cases_for(rep, opt, n, x, entry.at("expected_sphere3").get<int>(),
                        padded_n(n), "golden:fiber_s3/n=" + std::to_string(n));
    }
    // Second order-7 sample from an interval where the polytope does touch
    // the alcove boundary; informational companion to the n=7 row.
    if (keep_n(opt, 7)) {
        fiber_cases_for(rep, opt, 7, make_rational(23, 120), 28, "n07-alt",
                        "supplementary sample x=23/120");
    }
    if (keep_n(opt, 4)) {
        const AlcovePoint vertex(std::vector<Rational>{
            Rational(0), make_rational(5, 12), make_rational(1, 6), make_rational(5, 12)});
        const SuiteOutcome oc =
            orbit_invariance_suite(vertex, make_rational(5, 12), 100, opt.seed);
        std::ostringstream act;
        act << (oc.pass ? "pass" : "fail") << " (" << oc.samples
            << " samples, max commutator " << num_str(oc.max_commutator)
            << ", max orbit dev " << num_str(oc.max_orbit_dev) << ", min noncentral move "
            << num_str(oc.min_noncentral_move) << ")";
        if (!oc.detail.empty()) act << " " << oc.detail;
        rep.cases.push_back(make_case("fiber-orbit-invariance", "pass (100 samples)",
                                      act.str(), oc.pass, "golden:fiber_s3"));
    }
}

void suite_dynamics(SuiteReport& rep, const SuiteOptions& opt) {
    for (const auto& entry : golden().at("dynamics").at("cases")) {
        const int n = entry.at("n").get<int>();
        if (!keep_n(opt, n)) continue;
        const Rational x = golden_rational(entry.at("x"));
        const std::string src = "golden:dynamics/n=" + std::to_string(n);
        const PolytopeModel model = build_h_representation(n, x);
        std::mt19937_64 rng(static_cast<std::uint64_t>(opt.seed) * 1000003ULL +
                            static_cast<std::uint64_t>(n));
        double max_lax = 0.0, max_cross = 0.0, max_trace = 0.0;
        const int sign = lax_sign(n, x);
        const UnitaryMatrix target_mu = mu_zero(n, kPi * to_double(x));
        for (int s = 0; s < 100; ++s) {
            const AlcovePoint p = random_interior_point(model, rng);
            std::vector<double> theta(n - 1);
            for (double& t : theta) t = 2.0 * kPi * rand_u01(rng);
            const UnitaryMatrix lax = lax_local(p, theta, x);
            max_lax = std::max(max_lax,
                               std::max(unitarity_defect(lax), special_defect(lax)));
            const CrossSectionPoint cs = cross_section(p, theta, x);
            const double residual =
                (cs.a * cs.b * cs.a.adjoint() * cs.b.adjoint() - target_mu)
                    .cwiseAbs()
                    .maxCoeff();
            max_cross = std::max(max_cross, residual);
            const double lhs = sign * lax.trace().real();
            max_trace =
                std::max(max_trace, std::abs(lhs - rs_hamiltonian_of_point(p, theta, x)));
        }
        rep.cases.push_back(make_case("dyn-" + padded_n(n) + "-lax", "< 1e-09",
                                      num_str(max_lax), max_lax < 1e-9, src));
        rep.cases.push_back(make_case("dyn-" + padded_n(n) + "-cross", "< 1e-09",
                                      num_str(max_cross), max_cross < 1e-9, src));
        rep.cases.push_back(make_case("dyn-" + padded_n(n) + "-trace", "< 1e-09",
                                      num_str(max_trace), max_trace < 1e-9, src));
    }

    if (keep_n(opt, 4)) {
        const Rational x = make_rational(5, 12);
        const AlcovePoint vertex(std::vector<Rational>{Rational(0), x, make_rational(1, 6), x});
        const std::vector<double> t_samples = {0.7, kPi / 3.0, 1.9, kPi, 4.4, 5.9};
        std::mt19937_64 rng(static_cast<std::uint64_t>(opt.seed) + 77ULL);
        std::array<double, 2> max_dev{0.0, 0.0};
        std::array<double, 2> max_per{0.0, 0.0};
        double max_summed = 0.0;
        for (int r = 0; r < 10; ++r) {
            Eigen::Matrix2cd z0;
            double a, b, c, d, norm;
            do {
                a = 2.0 * rand_u01(rng) - 1.0;
                b = 2.0 * rand_u01(rng) - 1.0;
                c = 2.0 * rand_u01(rng) - 1.0;
                d = 2.0 * rand_u01(rng) - 1.0;
                norm = std::sqrt(a * a + b * b + c * c + d * d);
            } while (norm < 1e-3);
            const Complex alpha(a / norm, b / norm);
            const Complex beta(c / norm, d / norm);
            z0 << alpha, -std::conj(beta), beta, std::conj(alpha);
            for (int which = 1; which <= 2; ++which) {
                const FiberFlowResult res =
                    fiber_flow_check(vertex, x, which, z0, t_samples, 1e-7);
                max_dev[which - 1] = std::max(max_dev[which - 1], res.max_dev);
                max_per[which - 1] = std::max(max_per[which - 1], res.periodicity_dev);
                max_summed = std::max(max_summed, res.summed_half_period_dev);
            }
        }
        const std::string src = "golden:dynamics/flow";
        for (int which = 1; which <= 2; ++which) {
            std::ostringstream act;
            act << "max dev " << num_str(max_dev[which - 1]) << ", period dev "
                << num_str(max_per[which - 1]) << " (10 starts)";
            rep.cases.push_back(make_case("dyn-n04-flow-z" + std::to_string(which),
                                          "< 1e-07 incl. period", act.str(),
                                          max_dev[which - 1] <= 1e-7 &&
                                              max_per[which - 1] <= 1e-7,
                                          src));
        }
        rep.cases.push_back(make_case("dyn-n04-flow-summed", "reported, not asserted",
                                      "half-period dev " + num_str(max_summed), true, src));
    }
}

void suite_edge_directions(SuiteReport& rep, const SuiteOptions& opt) {
    const auto& g = golden().at("edge_directions");
    const int n = g.at("n").get<int>();
    if (!keep_n(opt, n)) return;
    std::vector<AffineForm> base;
    for (const auto& coord : g.at("base_vertex")) base.push_back(golden_affine(coord));
    std::vector<std::array<long, 3>> targets;
    for (const auto& t : g.at("targets")) {
        const auto row = t.get<std::vector<long>>();
        targets.push_back({row[0], row[1], row[2]});
    }
    std::sort(targets.begin(), targets.end());
    std::ostringstream want;
    want << "{";
    for (std::size_t j = 0; j < targets.size(); ++j)
        want << (j ? ", " : "") << "(" << targets[j][0] << "," << targets[j][1] << ","
             << targets[j][2] << ")";
    want << "}";

    for (const auto& xs : g.at("xs")) {
        const Rational x = golden_rational(xs);
        const std::string xtag = xs.get<std::string>();
        const std::string src = "golden:edge_directions/x=" + xtag;
        PolytopeModel model = build_polytope(n, x, build_options(opt, true));

        std::vector<Rational> vc;
        for (const auto& f : base) vc.push_back(evaluate(f, x));
        const AlcovePoint vertex(vc);
        auto mapped = mapped_edge_directions_n4(model, vertex);
        std::sort(mapped.begin(), mapped.end());
        std::ostringstream got;
        got << "{";
        for (std::size_t j = 0; j < mapped.size(); ++j)
            got << (j ? ", " : "") << "(" << mapped[j][0] << "," << mapped[j][1] << ","
                << mapped[j][2] << ")";
        got << "}";
        rep.cases.push_back(make_case("edges-mapped-x" + xtag, want.str(), got.str(),
                                      mapped == targets, src));

        int regular = 0;
        int unimodular = 0;
        for (const auto& v : model.vertices) {
            bool singular = false;
            for (const auto& c : v.coords)
                if (c == 0) singular = true;
            if (singular) continue;
            ++regular;
            const EdgeDirections dirs = edge_directions_at(model, v);
            if (dirs.primitive.size() != 3) continue;
            // Dropping the last component identifies the sum-zero integer
            // lattice with Z^3, so a basis shows up as determinant +-1.
            const auto& d = dirs.primitive;
            const long det = d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1]) -
                             d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0]) +
                             d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0]);
            if (det == 1 || det == -1) ++unimodular;
        }
        std::ostringstream act;
        act << unimodular << " of " << regular << " regular vertices unimodular";
        rep.cases.push_back(make_case("edges-z3basis-x" + xtag,
                                      "det +-1 at every regular vertex", act.str(),
                                      regular > 0 && unimodular == regular, src));
    }
}

}  // namespace

bool SuiteReport::passed() const {
    for (const auto& c : cases)
        if (c.status == CaseStatus::Fail) return false;
    return true;
}

int SuiteReport::fail_count() const {
    int k = 0;
    for (const auto& c : cases)
        if (c.status == CaseStatus::Fail) ++k;
    return k;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "appendixC-vectors", "appendixC-vertices", "interval-counts", "thm51",
        "fiber-s3",          "dynamics",           "prop56",          "edge-directions"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt) {
    SuiteReport rep;
    rep.suite = name;
    rep.seed = opt.seed;
    rep.tol = opt.tol;
    const auto t0 = std::chrono::steady_clock::now();
    if (name == "appendixC-vectors")
        suite_face_vectors(rep, opt);
    else if (name == "appendixC-vertices")
        suite_vertex_tables(rep, opt);
    else if (name == "interval-counts")
        suite_interval_counts(rep, opt);
    else if (name == "thm51")
        suite_thm51(rep, opt);
    else if (name == "fiber-s3")
        suite_fiber_s3(rep, opt);
    else if (name == "dynamics")
        suite_dynamics(rep, opt);
    else if (name == "prop56")
        suite_prop56(rep, opt);
    else if (name == "edge-directions")
        suite_edge_directions(rep, opt);
    else
        throw parse_error("unknown suite '" + name + "'");
    std::sort(rep.cases.begin(), rep.cases.end(),
              [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

}  // namespace alcove

#include "alcove/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "alcove/dynamics.hpp"
#include "alcove/errors.hpp"
#include "alcove/farey.hpp"
#include "alcove/fiber.hpp"
#include "alcove/polytope.hpp"
#include "alcove/spectral.hpp"

namespace alcove {

namespace {

constexpr double kPi = 3.14159265358979323846;

using nlohmann::ordered_json;

std::string fnum(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const char* status_str(CaseStatus s) {
    switch (s) {
        case CaseStatus::Pass: return "pass";
        case CaseStatus::Fail: return "fail";
        case CaseStatus::Skipped: return "skipped";
    }
    return "?";
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += "\"";
    return out;
}

ordered_json complex_json(const Complex& z) {
    return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

Rational flag_rational(const std::string& text, const std::string& flag) {
    try {
        return parse_rational(text);
    } catch (const error& e) {
        throw parse_error(flag + ": " + e.what());
    }
}

std::vector<Rational> flag_rational_list(const std::string& text, const std::string& flag) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw parse_error(flag + ": empty entry in the list");
        out.push_back(flag_rational(item.substr(b, e - b + 1), flag));
    }
    if (out.empty()) throw parse_error(flag + ": empty list");
    return out;
}

struct GlobalFlags {
    double tol = 1e-10;
    unsigned seed = 0;
    std::string format = "text";
    bool stretch = false;
    bool timing = false;
    int threads = 0;
};

EmitFormat format_of(const std::string& f) {
    if (f == "json") return EmitFormat::Json;
    if (f == "csv") return EmitFormat::Csv;
    return EmitFormat::Text;
}

double rand_u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

std::string point_str(const AlcovePoint& p) {
    std::ostringstream os;
    os << "(";
    for (int j = 0; j < p.n(); ++j) os << (j ? ", " : "") << rational_str(p.coords[j]);
    os << ")";
    return os.str();
}

ordered_json point_json(const AlcovePoint& p) {
    ordered_json a = ordered_json::array();
    for (const auto& c : p.coords) a.push_back(rational_str(c));
    return a;
}

ordered_json matrix_json(const UnitaryMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

void print_payload(const ordered_json& j, const GlobalFlags& g) {
    const EmitFormat fmt = format_of(g.format);
    if (fmt == EmitFormat::Json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (fmt == EmitFormat::Csv) {
        // Flat key,value rows; nested payloads are serialized inline.
        std::cout << "key,value\n";
        for (const auto& [key, value] : j.items()) {
            std::cout << csv_quote(key) << ","
                      << csv_quote(value.is_string() ? value.get<std::string>()
                                                     : value.dump())
                      << "\n";
        }
        return;
    }
    for (const auto& [key, value] : j.items()) {
        if (key == "schema" || key == "command") continue;
        std::cout << key << ": "
                  << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
}

ordered_json payload_header(const char* command) {
    ordered_json j;
    j["schema"] = "alcove-kit/1";
    j["command"] = command;
    return j;
}

int cmd_classify(int n, const GlobalFlags& g) {
    const auto intervals = classify_intervals(n, false);
    ordered_json j = payload_header("classify");
    j["n"] = n;
    int ti = 0, tii = 0;
    ordered_json arr = ordered_json::array();
    for (const auto& iv : intervals) {
        const bool is_i = iv.interval_type == IntervalType::TypeI;
        (is_i ? ti : tii) += 1;
        arr.push_back(ordered_json{{"lower", rational_str(iv.lower)},
                                   {"upper", rational_str(iv.upper)},
                                   {"type", is_i ? "i" : "ii"},
                                   {"k", iv.k_index}});
    }
    j["type_i"] = ti;
    j["type_ii"] = tii;
    j["intervals"] = arr;

    const EmitFormat fmt = format_of(g.format);
    if (fmt == EmitFormat::Json) {
        std::cout << j.dump(2) << "\n";
    } else if (fmt == EmitFormat::Csv) {
        std::cout << "lower,upper,type,k\n";
        for (const auto& iv : arr)
            std::cout << csv_quote(iv.at("lower").get<std::string>()) << ","
                      << csv_quote(iv.at("upper").get<std::string>()) << ","
                      << iv.at("type").get<std::string>() << "," << iv.at("k").get<int>()
                      << "\n";
    } else {
        std::cout << "order " << n << ": " << arr.size() << " intervals over (0, 1), "
                  << ti << " type (i), " << tii << " type (ii)\n";
        for (const auto& iv : arr)
            std::cout << "  (" << iv.at("lower").get<std::string>() << ", "
                      << iv.at("upper").get<std::string>() << ")  type ("
                      << iv.at("type").get<std::string>() << ")  k="
                      << iv.at("k").get<int>() << "\n";
    }
    return 0;
}

int cmd_polytope(int n, const Rational& x, bool with_faces, const GlobalFlags& g) {
    BuildOptions bo;
    bo.with_faces = with_faces;
    bo.threads = g.threads;
    PolytopeModel model = build_polytope(n, x, bo);
    const auto classes = cyclic_orbits(model);

    ordered_json j = payload_header("polytope");
    j["n"] = n;
    j["x"] = rational_str(x);
    j["k"] = model.k_index;
    j["vertex_count"] = model.vertices.size();
    if (model.has_faces) {
        ordered_json fv = ordered_json::array();
        for (long f : model.face_vector) fv.push_back(f);
        j["face_vector"] = fv;
    }
    ordered_json cls = ordered_json::array();
    for (const auto& c : classes)
        cls.push_back(ordered_json{{"representative", point_json(c.representative)},
                                   {"orbit_size", c.orbit_size},
                                   {"singular", c.is_singular}});
    j["class_count"] = classes.size();
    j["classes"] = cls;

    const EmitFormat fmt = format_of(g.format);
    if (fmt == EmitFormat::Json) {
        std::cout << j.dump(2) << "\n";
    } else if (fmt == EmitFormat::Csv) {
        std::cout << "representative,orbit_size,singular\n";
        for (const auto& c : classes)
            std::cout << csv_quote(point_str(c.representative)) << "," << c.orbit_size << ","
                      << (c.is_singular ? "yes" : "no") << "\n";
    } else {
        std::cout << "polytope n=" << n << " x=" << rational_str(x) << " (k=" << model.k_index
                  << ")\n";
        std::cout << "vertices: " << model.vertices.size() << "\n";
        if (model.has_faces) {
            std::cout << "face vector: (";
            for (std::size_t i = 0; i < model.face_vector.size(); ++i)
                std::cout << (i ? ", " : "") << model.face_vector[i];
            std::cout << ")\n";
        }
        std::cout << "cyclic classes: " << classes.size() << "\n";
        for (const auto& c : classes)
            std::cout << "  " << point_str(c.representative) << "  orbit " << c.orbit_size
                      << (c.is_singular ? "  singular" : "  regular") << "\n";
    }
    return 0;
}

int cmd_spectral(int n, const Rational& x, const AlcovePoint& xi, const std::string& op,
                 const GlobalFlags& g) {
    if (xi.n() != n)
        throw parse_error("--xi: expected " + std::to_string(n) + " coordinates, got " +
                          std::to_string(xi.n()));
    ordered_json j = payload_header("spectral");
    j["n"] = n;
    j["x"] = rational_str(x);
    j["xi"] = point_json(xi);
    j["op"] = op;

    if (op == "delta") {
        const DeltaMatrix d = delta_of(xi);
        ordered_json turns = ordered_json::array();
        for (const auto& t : d.turns) turns.push_back(rational_str(t));
        ordered_json diag = ordered_json::array();
        for (const auto& v : d.diagonal) diag.push_back(complex_json(v));
        ordered_json blocks = ordered_json::array();
        for (const auto& b : d.blocks) {
            ordered_json idx = ordered_json::array();
            for (int i : b.index_set) idx.push_back(i);
            blocks.push_back(ordered_json{{"turn", rational_str(b.turn)},
                                          {"value", complex_json(b.value)},
                                          {"indices", idx}});
        }
        j["turns"] = turns;
        j["diagonal"] = diag;
        j["blocks"] = blocks;
        j["regular"] = d.regular();
    } else if (op == "z") {
        const auto z1 = z_functions(xi, x);
        const auto z2 = z_functions_spectral(xi, x);
        double sum = 0.0, dev = 0.0;
        ordered_json a1 = ordered_json::array(), a2 = ordered_json::array();
        for (int l = 0; l < n; ++l) {
            sum += z1[l];
            dev = std::max(dev, std::abs(z1[l] - z2[l]));
            a1.push_back(z1[l]);
            a2.push_back(z2[l]);
        }
        j["z"] = a1;
        j["z_spectral"] = a2;
        j["sum"] = sum;
        j["form_agreement"] = dev;
    } else if (op == "u") {
        const UVector u = solve_u(xi, x, g.tol);
        ordered_json comps = ordered_json::array();
        ordered_json zero = ordered_json::array();
        for (int l = 0; l < n; ++l) {
            comps.push_back(complex_json(u.components[l]));
            zero.push_back(static_cast<bool>(u.zero_pattern[l]));
        }
        j["components"] = comps;
        j["zero_pattern"] = zero;
        j["char_identity_residual"] = char_identity_residual(xi, x, u);
    } else if (op == "A0") {
        const UVector u = solve_u(xi, x, g.tol);
        const UnitaryMatrix a0 = solve_A0(xi, x, u, std::max(g.tol, 1e-9));
        const UnitaryMatrix dm = delta_of(xi).matrix();
        const UnitaryMatrix mh = mu_hat(kPi * to_double(x), u);
        j["matrix"] = matrix_json(a0);
        j["unitarity_defect"] = unitarity_defect(a0);
        j["special_defect"] = special_defect(a0);
        j["conjugation_residual"] = (a0 * dm - mh * dm * a0).cwiseAbs().maxCoeff();
    } else {
        throw parse_error("--op: unknown operation '" + op + "'");
    }
    print_payload(j, g);
    return 0;
}

int cmd_fiber(int n, const Rational& x, const AlcovePoint& vertex, int suite_samples,
              const GlobalFlags& g) {
    if (vertex.n() != n)
        throw parse_error("--vertex: expected " + std::to_string(n) + " coordinates, got " +
                          std::to_string(vertex.n()));
    const FiberReport rep = fiber_report(vertex, x);
    ordered_json j = payload_header("fiber");
    j["n"] = n;
    j["x"] = rational_str(x);
    j["vertex"] = point_json(vertex);
    ordered_json blocks = ordered_json::array();
    for (const auto& b : rep.isotropy.blocks) {
        ordered_json idx = ordered_json::array();
        for (int i : b.index_set) idx.push_back(i);
        blocks.push_back(ordered_json{{"turn", rational_str(b.turn)},
                                      {"value", complex_json(b.value)},
                                      {"indices", idx}});
    }
    j["blocks"] = blocks;
    j["isotropy"] = rep.isotropy.description;
    j["isotropy_dim"] = rep.isotropy.group_dim;
    ordered_json roles = ordered_json::array();
    for (const auto r : rep.stabilizer.per_block)
        roles.push_back(r == BlockRole::Split ? "split" : "full");
    j["stabilizer"] = rep.stabilizer.description;
    j["stabilizer_dim"] = rep.stabilizer.group_dim;
    j["stabilizer_roles"] = roles;
    j["fiber_dim"] = rep.fiber_dim;
    j["type"] = rep.recognized_type.str();

    bool ok = true;
    if (suite_samples > 0) {
        const SuiteOutcome oc = orbit_invariance_suite(vertex, x, suite_samples, g.seed);
        ordered_json so;
        so["pass"] = oc.pass;
        so["samples"] = oc.samples;
        so["seed"] = oc.seed;
        so["max_commutator"] = oc.max_commutator;
        so["max_orbit_dev"] = oc.max_orbit_dev;
        so["min_noncentral_move"] = oc.min_noncentral_move;
        if (!oc.detail.empty()) so["detail"] = oc.detail;
        j["orbit_suite"] = so;
        ok = oc.pass;
    }
    print_payload(j, g);
    return ok ? 0 : 1;
}

int cmd_dynamics(int n, const Rational& x, const std::string& check, int samples,
                 const GlobalFlags& g) {
    ordered_json j = payload_header("dynamics");
    j["n"] = n;
    j["x"] = rational_str(x);
    j["check"] = check;
    j["samples"] = samples;
    j["seed"] = g.seed;
    bool ok = true;

    if (check == "lax" || check == "cross-section" || check == "trace") {
        const PolytopeModel model = build_h_representation(n, x);
        std::mt19937_64 rng(static_cast<std::uint64_t>(g.seed) * 1000003ULL +
                            static_cast<std::uint64_t>(n));
        const int sign = lax_sign(n, x);
        const UnitaryMatrix target_mu = mu_zero(n, kPi * to_double(x));
        double worst = 0.0;
        for (int s = 0; s < samples; ++s) {
            const AlcovePoint p = random_interior_point(model, rng);
            std::vector<double> theta(n - 1);
            for (double& t : theta) t = 2.0 * kPi * rand_u01(rng);
            if (check == "lax") {
                const UnitaryMatrix lax = lax_local(p, theta, x);
                worst = std::max(worst,
                                 std::max(unitarity_defect(lax), special_defect(lax)));
            } else if (check == "cross-section") {
                const CrossSectionPoint cs = cross_section(p, theta, x);
                worst = std::max(worst,
                                 (cs.a * cs.b * cs.a.adjoint() * cs.b.adjoint() - target_mu)
                                     .cwiseAbs()
                                     .maxCoeff());
            } else {
                const UnitaryMatrix lax = lax_local(p, theta, x);
                worst = std::max(worst, std::abs(sign * lax.trace().real() -
                                                 rs_hamiltonian_of_point(p, theta, x)));
            }
        }
        j["max_deviation"] = worst;
        ok = worst <= g.tol;
    } else if (check == "flow") {
        const PolytopeModel model = build_h_representation(n, x);
        std::mt19937_64 rng(static_cast<std::uint64_t>(g.seed) * 1000003ULL +
                            static_cast<std::uint64_t>(n));
        const AlcovePoint p = random_interior_point(model, rng);
        std::vector<double> theta(n - 1);
        for (double& t : theta) t = 2.0 * kPi * rand_u01(rng);
        const CrossSectionPoint cs = cross_section(p, theta, x);
        const UnitaryMatrix grad = gradient_phi(1, cs.b);
        const UnitaryMatrix target_mu = mu_zero(n, kPi * to_double(x));
        double drift = 0.0, xi_dev = 0.0;
        const int steps = std::max(samples, 2);
        for (int s = 0; s <= steps; ++s) {
            const double t = 2.0 * kPi * s / steps;
            const auto flowed = flow_b_hamiltonian(cs.a, cs.b, grad, t);
            drift = std::max(drift, (flowed.first * flowed.second * flowed.first.adjoint() *
                                         flowed.second.adjoint() -
                                     target_mu)
                                        .cwiseAbs()
                                        .maxCoeff());
            const auto back = xi_of(flowed.second);
            for (int c = 0; c < n; ++c)
                xi_dev = std::max(xi_dev,
                                  std::abs(back[c] - to_double(p.coords[c])));
        }
        j["moment_map_drift"] = drift;
        j["xi_reconstruction_dev"] = xi_dev;
        ok = drift <= std::max(g.tol, 1e-8) && xi_dev <= std::max(g.tol, 1e-8);
    } else if (check == "fiber-flow") {
        if (n != 4) throw precondition_error("fiber-flow check is defined for --n 4 only");
        const AlcovePoint vertex(
            std::vector<Rational>{Rational(0), x, Rational(1) - 2 * x, x});
        const std::vector<double> t_samples = {0.7, kPi / 3.0, 1.9, kPi, 4.4, 5.9};
        std::mt19937_64 rng(static_cast<std::uint64_t>(g.seed) + 77ULL);
        double max_dev = 0.0, max_per = 0.0, max_summed = 0.0;
        const int starts = std::max(samples, 1);
        for (int r = 0; r < starts; ++r) {
            double a, b, c, d, norm;
            do {
                a = 2.0 * rand_u01(rng) - 1.0;
                b = 2.0 * rand_u01(rng) - 1.0;
                c = 2.0 * rand_u01(rng) - 1.0;
                d = 2.0 * rand_u01(rng) - 1.0;
                norm = std::sqrt(a * a + b * b + c * c + d * d);
            } while (norm < 1e-3);
            Eigen::Matrix2cd z0;
            z0 << Complex(a / norm, b / norm), Complex(-c / norm, d / norm),
                Complex(c / norm, d / norm), Complex(a / norm, -b / norm);
            for (int which = 1; which <= 2; ++which) {
                const FiberFlowResult res =
                    fiber_flow_check(vertex, x, which, z0, t_samples, g.tol);
                max_dev = std::max(max_dev, res.max_dev);
                max_per = std::max(max_per, res.periodicity_dev);
                max_summed = std::max(max_summed, res.summed_half_period_dev);
            }
        }
        j["max_deviation"] = max_dev;
        j["periodicity_dev"] = max_per;
        j["summed_half_period_dev"] = max_summed;
        ok = max_dev <= g.tol && max_per <= g.tol;
    } else {
        throw parse_error("--check: unknown check '" + check + "'");
    }
    j["pass"] = ok;
    print_payload(j, g);
    return ok ? 0 : 1;
}

int cmd_verify(const std::string& suite, std::optional<int> only_n, const GlobalFlags& g) {
    SuiteOptions opt;
    opt.tol = g.tol;
    opt.seed = g.seed;
    opt.stretch = g.stretch;
    opt.threads = g.threads;
    opt.only_n = only_n;
    const SuiteReport rep = run_suite(suite, opt);
    std::cout << emit(rep, format_of(g.format), g.timing);
    return rep.passed() ? 0 : 1;
}

}  // namespace

std::string emit(const SuiteReport& report, EmitFormat fmt, bool timing) {
    std::ostringstream os;
    int pass = 0, fail = 0, skipped = 0;
    for (const auto& c : report.cases) {
        if (c.status == CaseStatus::Pass) ++pass;
        else if (c.status == CaseStatus::Fail) ++fail;
        else ++skipped;
    }
    switch (fmt) {
        case EmitFormat::Json: {
            ordered_json j;
            j["schema"] = "alcove-kit/1";
            j["suite"] = report.suite;
            j["seed"] = report.seed;
            j["tol"] = report.tol;
            if (timing) j["elapsed_ms"] = report.elapsed_ms;
            ordered_json cases = ordered_json::array();
            for (const auto& c : report.cases)
                cases.push_back(ordered_json{{"id", c.id},
                                             {"expected", c.expected},
                                             {"actual", c.actual},
                                             {"status", status_str(c.status)},
                                             {"source", c.source}});
            j["cases"] = cases;
            j["passed"] = report.passed();
            os << j.dump(2) << "\n";
            break;
        }
        case EmitFormat::Csv: {
            os << "suite,case,expected,actual,status,source\n";
            for (const auto& c : report.cases)
                os << csv_quote(report.suite) << "," << csv_quote(c.id) << ","
                   << csv_quote(c.expected) << "," << csv_quote(c.actual) << ","
                   << status_str(c.status) << "," << csv_quote(c.source) << "\n";
            break;
        }
        case EmitFormat::Text: {
            os << "suite: " << report.suite << "\n";
            os << "seed: " << report.seed << "\n";
            os << "tol: " << fnum(report.tol) << "\n";
            if (timing) os << "elapsed_ms: " << fnum(report.elapsed_ms) << "\n";
            os << "cases (" << report.cases.size() << "):\n";
            for (const auto& c : report.cases) {
                os << "  [" << status_str(c.status) << "] " << c.id
                   << "  expected: " << c.expected << "  actual: " << c.actual;
                if (!c.source.empty()) os << "  <" << c.source << ">";
                os << "\n";
            }
            os << "result: " << (report.passed() ? "PASS" : "FAIL") << " (" << pass
               << " pass, " << fail << " fail, " << skipped << " skipped)\n";
            break;
        }
    }
    return os.str();
}

int run_cli(int argc, char** argv) {
    CLI::App app{"alcove-kit: momentum polytopes of the compactified trigonometric RS system"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--tol", g.tol, "numeric tolerance")->capture_default_str();
    app.add_option("--seed", g.seed, "random seed")->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_flag("--stretch", g.stretch, "include the long-running cases");
    app.add_flag("--timing", g.timing, "include elapsed time in reports");
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)")
        ->capture_default_str();

    int n = 0;
    std::string x_text, xi_text, vertex_text;
    std::string op = "z";
    std::string check = "lax";
    std::string suite_name;
    int samples = 100;
    int fiber_suite_samples = 0;
    bool no_faces = false;
    int verify_n = 0;

    auto* classify = app.add_subcommand("classify", "interval decomposition for one order");
    classify->fallthrough();
    classify->add_option("--n", n, "matrix order")->required()->check(CLI::Range(3, 64));

    auto* polytope = app.add_subcommand("polytope", "vertices, classes and face counts");
    polytope->fallthrough();
    polytope->add_option("--n", n, "matrix order")->required()->check(CLI::Range(3, 64));
    polytope->add_option("--x", x_text, "coupling as a fraction p/q of pi")->required();
    polytope->add_flag("--no-faces", no_faces, "skip the face lattice");

    auto* spectral = app.add_subcommand("spectral", "torus element, weights, residue data");
    spectral->fallthrough();
    spectral->add_option("--n", n, "matrix order")->required()->check(CLI::Range(3, 64));
    spectral->add_option("--x", x_text, "coupling as a fraction p/q of pi")->required();
    spectral->add_option("--xi", xi_text, "comma-separated exact coordinates (units of pi)")
        ->required();
    spectral->add_option("--op", op, "operation")
        ->check(CLI::IsMember({"z", "u", "A0", "delta"}))
        ->capture_default_str();

    auto* fiber = app.add_subcommand("fiber", "fiber structure over a polytope point");
    fiber->fallthrough();
    fiber->add_option("--n", n, "matrix order")->required()->check(CLI::Range(3, 64));
    fiber->add_option("--x", x_text, "coupling as a fraction p/q of pi")->required();
    fiber->add_option("--vertex", vertex_text, "comma-separated exact coordinates")
        ->required();
    fiber->add_option("--suite", fiber_suite_samples,
                      "also run the orbit-invariance suite with this many samples");

    auto* dynamics = app.add_subcommand("dynamics", "Lax, cross-section and flow checks");
    dynamics->fallthrough();
    dynamics->add_option("--n", n, "matrix order")->required()->check(CLI::Range(3, 64));
    dynamics->add_option("--x", x_text, "coupling as a fraction p/q of pi")->required();
    dynamics->add_option("--check", check, "which check to run")
        ->check(CLI::IsMember({"lax", "cross-section", "trace", "flow", "fiber-flow"}))
        ->capture_default_str();
    dynamics->add_option("--samples", samples, "sample count")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run a reproduction suite");
    verify->fallthrough();
    verify->add_option("--suite", suite_name, "suite name")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--n", verify_n, "restrict the suite to one order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*classify) return cmd_classify(n, g);
        if (*polytope)
            return cmd_polytope(n, flag_rational(x_text, "--x"), !no_faces, g);
        if (*spectral) {
            const Rational x = flag_rational(x_text, "--x");
            const AlcovePoint xi(flag_rational_list(xi_text, "--xi"));
            return cmd_spectral(n, x, xi, op, g);
        }
        if (*fiber) {
            const Rational x = flag_rational(x_text, "--x");
            const AlcovePoint v(flag_rational_list(vertex_text, "--vertex"));
            return cmd_fiber(n, x, v, fiber_suite_samples, g);
        }
        if (*dynamics)
            return cmd_dynamics(n, flag_rational(x_text, "--x"), check, samples, g);
        if (*verify)
            return cmd_verify(suite_name,
                              verify_n > 0 ? std::optional<int>(verify_n) : std::nullopt, g);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace alcove

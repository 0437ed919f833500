#include "alcove/polytope.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

namespace alcove {

AlcovePoint::AlcovePoint(std::vector<Rational> c) : coords(std::move(c)) {
    Rational sum(0);
    for (const Rational& v : coords) sum += v;
    if (sum != 1)
        throw precondition_error(
            "alcove point coordinates must sum to 1 (units of pi), got " +
            rational_str(sum));
}

const Rational& AlcovePoint::cyc(long j) const {
    long nn = n();
    long i = ((j % nn) + nn) % nn;
    return coords[static_cast<std::size_t>(i)];
}

AlcovePoint cyclic_shift(const AlcovePoint& p, int r) {
    AlcovePoint out;
    out.coords.reserve(p.coords.size());
    for (int j = 0; j < p.n(); ++j) out.coords.push_back(p.cyc(j + r));
    return out;
}

AlcovePoint barycenter(int n) {
    std::vector<Rational> c(n, make_rational(1, n));
    return AlcovePoint(std::move(c));
}

PolytopeModel build_h_representation(int n, const Rational& x) {
    if (n < 3) throw precondition_error("polytope needs n >= 3");
    if (x <= 0 || x >= 1)
        throw precondition_error("coupling x must satisfy 0 < x < 1, got " +
                                 rational_str(x));
    if (!is_admissible(x, n))
        throw inadmissible_value_error(
            "x = " + rational_str(x) + " is an excluded value for n = " +
            std::to_string(n) + ": its reduced denominator " +
            rational_str(Rational(denominator(x))) +
            " does not exceed n, so " + rational_str(x) +
            " lies in the order-" + std::to_string(n) + " exclusion set");

    PolytopeModel model;
    model.n = n;
    model.x = x;
    Rational nx = x;
    nx *= n;
    model.k_index = floor_long(nx);

    auto window = [&](int ell, int len, Sense sense) {
        Halfspace h;
        h.ell = ell;
        h.len = len;
        h.sense = sense;
        h.bound = AffineForm{Rational(0), Rational(1)};
        h.coeffs.assign(n, 0);
        for (int t = 0; t < len; ++t) h.coeffs[(ell + t) % n] = 1;
        h.vacuous = (len == 0 || len == n);
        return h;
    };
    const int k = model.k_index;
    for (int ell = 0; ell < n; ++ell)
        model.inequalities.push_back(window(ell, k, Sense::LessEq));
    for (int ell = 0; ell < n; ++ell)
        model.inequalities.push_back(window(ell, k + 1, Sense::GreaterEq));
    return model;
}

namespace {

// Affine dimension of a set of exact points (rank of the difference matrix).
int affine_dim(const std::vector<AlcovePoint>& verts,
               const std::vector<int>& ids) {
    if (ids.empty()) return -1;
    if (ids.size() == 1) return 0;
    const int n = verts[ids[0]].n();
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 1; i < ids.size(); ++i) {
        std::vector<Rational> row(n);
        for (int c = 0; c < n; ++c) {
            row[c] = verts[ids[i]].coords[c];
            row[c] -= verts[ids[0]].coords[c];
        }
        rows.push_back(std::move(row));
    }
    int rank = 0;
    for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
            if (rows[r][col] == 0) continue;
            Rational f = rows[r][col];
            f /= rows[rank][col];
            for (int c = col; c < n; ++c) {
                Rational t = rows[rank][c];
                t *= f;
                rows[r][c] -= t;
            }
        }
        ++rank;
    }
    return rank;
}

using Words = std::vector<std::uint64_t>;

struct WordsHash {
    std::size_t operator()(const Words& w) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint64_t x : w) {
            h ^= static_cast<std::size_t>(x);
            h *= 1099511628211ull;
        }
        return h;
    }
};

std::vector<int> words_to_ids(const Words& w) {
    std::vector<int> ids;
    for (std::size_t b = 0; b < w.size(); ++b)
        for (int bit = 0; bit < 64; ++bit)
            if (w[b] & (1ull << bit)) ids.push_back(static_cast<int>(b * 64 + bit));
    return ids;
}

}  // namespace

void build_face_lattice(PolytopeModel& model) {
    const int n = model.n;
    const int V = static_cast<int>(model.vertices.size());
    const std::size_t W = (V + 63) / 64;

    std::vector<Words> facet_sets;
    for (std::size_t i = 0; i < model.inequalities.size(); ++i) {
        if (model.inequalities[i].vacuous) continue;
        Words w(W, 0);
        bool any = false;
        for (int v = 0; v < V; ++v) {
            const auto& act = model.vertex_active[v];
            if (std::binary_search(act.begin(), act.end(), static_cast<int>(i))) {
                w[v / 64] |= 1ull << (v % 64);
                any = true;
            }
        }
        if (!any) continue;
        std::vector<int> ids = words_to_ids(w);
        if (affine_dim(model.vertices, ids) == n - 2) facet_sets.push_back(w);
    }
    std::sort(facet_sets.begin(), facet_sets.end());
    facet_sets.erase(std::unique(facet_sets.begin(), facet_sets.end()),
                     facet_sets.end());

    // Every proper face is an intersection of facets, so close the facet
    // family under pairwise intersection.
    std::unordered_set<Words, WordsHash> all(facet_sets.begin(),
                                             facet_sets.end());
    std::vector<Words> frontier = facet_sets;
    while (!frontier.empty()) {
        std::vector<Words> next;
        for (const Words& f : frontier)
            for (const Words& g : facet_sets) {
                Words h(W, 0);
                bool nonempty = false;
                for (std::size_t b = 0; b < W; ++b) {
                    h[b] = f[b] & g[b];
                    nonempty = nonempty || h[b] != 0;
                }
                if (nonempty && all.insert(h).second) next.push_back(h);
            }
        frontier = std::move(next);
    }

    model.faces.assign(std::max(0, n - 1), std::vector<Face>{});
    for (const Words& w : all) {
        Face face;
        face.vertex_ids = words_to_ids(w);
        face.dim = affine_dim(model.vertices, face.vertex_ids);
        if (face.dim < 0 || face.dim > n - 2) continue;
        face.active = model.vertex_active[face.vertex_ids[0]];
        for (std::size_t i = 1; i < face.vertex_ids.size(); ++i) {
            const auto& act = model.vertex_active[face.vertex_ids[i]];
            std::vector<int> keep;
            std::set_intersection(face.active.begin(), face.active.end(),
                                  act.begin(), act.end(),
                                  std::back_inserter(keep));
            face.active = std::move(keep);
        }
        model.faces[face.dim].push_back(std::move(face));
    }
    for (auto& level : model.faces)
        std::sort(level.begin(), level.end(),
                  [](const Face& a, const Face& b) {
                      return a.vertex_ids < b.vertex_ids;
                  });

    model.face_vector.clear();
    for (int d = 0; d <= n - 2; ++d)
        model.face_vector.push_back(
            static_cast<long>(model.faces[d].size()));
    model.has_faces = true;

    // Sanity link between vertex regularity and the facet count: whenever a
    // fully positive vertex activates windows of both senses, the polytope
    // must have all 2n window facets.
    bool trigger = false;
    for (int v = 0; v < V && !trigger; ++v) {
        bool positive = true;
        for (const Rational& c : model.vertices[v].coords)
            if (c == 0) positive = false;
        if (!positive) continue;
        bool le = false, ge = false;
        for (int id : model.vertex_active[v]) {
            if (model.inequalities[id].sense == Sense::LessEq) le = true;
            else ge = true;
        }
        trigger = le && ge;
    }
    if (trigger && model.face_vector[n - 2] != 2 * n)
        throw consistency_error(
            "facet count " + std::to_string(model.face_vector[n - 2]) +
            " differs from 2n although a positive vertex touches both window "
            "senses");
}

PolytopeModel build_polytope(int n, const Rational& x,
                             const BuildOptions& opt) {
    PolytopeModel model = build_h_representation(n, x);
    enumerate_vertices(model, opt);
    if (opt.with_faces) build_face_lattice(model);
    return model;
}

std::vector<VertexClass> cyclic_orbits(const PolytopeModel& model) {
    const int n = model.n;
    std::map<std::vector<Rational>, VertexClass> classes;
    for (std::size_t v = 0; v < model.vertices.size(); ++v) {
        const AlcovePoint& pt = model.vertices[v];
        std::vector<Rational> best = pt.coords;
        for (int r = 1; r < n; ++r) {
            std::vector<Rational> rot = cyclic_shift(pt, r).coords;
            if (rot < best) best = rot;
        }
        auto it = classes.find(best);
        if (it == classes.end()) {
            VertexClass cls;
            cls.representative = AlcovePoint(best);
            cls.is_singular = std::any_of(
                best.begin(), best.end(),
                [](const Rational& c) { return c == 0; });
            it = classes.emplace(best, std::move(cls)).first;
        }
        it->second.members.push_back(static_cast<int>(v));
    }
    std::vector<VertexClass> out;
    for (auto& [rep, cls] : classes) {
        cls.orbit_size = static_cast<int>(cls.members.size());
        out.push_back(std::move(cls));
    }
    return out;
}

MembershipRecord contains(const PolytopeModel& model, const AlcovePoint& p) {
    if (p.n() != model.n)
        throw precondition_error("point dimension does not match the model");
    MembershipRecord rec;
    for (std::size_t i = 0; i < model.inequalities.size(); ++i) {
        const Halfspace& h = model.inequalities[i];
        if (h.vacuous) continue;
        Rational sum(0);
        for (int c = 0; c < model.n; ++c)
            if (h.coeffs[c]) sum += p.coords[c];
        if (sum == model.x) {
            rec.active.push_back(static_cast<int>(i));
        } else if (h.sense == Sense::LessEq ? sum > model.x : sum < model.x) {
            rec.violated.push_back(static_cast<int>(i));
        }
    }
    if (!rec.violated.empty())
        rec.kind = MembershipRecord::Kind::Outside;
    else if (rec.active.empty())
        rec.kind = MembershipRecord::Kind::Inside;
    else
        rec.kind = MembershipRecord::Kind::Boundary;
    return rec;
}

SymbolicModel symbolic_vertices(int n, const FareyInterval& interval) {
    if (interval.order_n != n)
        throw precondition_error("interval order does not match n");
    Rational med = mediant(interval.lower, interval.upper);
    Rational x1 = mediant(interval.lower, med);
    Rational x2 = mediant(med, interval.upper);

    BuildOptions opt;
    opt.with_faces = false;
    PolytopeModel m1 = build_polytope(n, x1, opt);
    PolytopeModel m2 = build_polytope(n, x2, opt);

    auto describe = [](const Rational& a, const Rational& b) {
        return "samples x = " + rational_str(a) + " and x = " + rational_str(b);
    };
    if (m1.vertices.size() != m2.vertices.size())
        throw structural_instability_error(
            "vertex counts disagree between " + describe(x1, x2) + ": " +
            std::to_string(m1.vertices.size()) + " vs " +
            std::to_string(m2.vertices.size()));

    std::map<std::vector<int>, int> by_active;
    for (std::size_t v = 0; v < m2.vertices.size(); ++v)
        by_active[m2.vertex_active[v]] = static_cast<int>(v);

    SymbolicModel model;
    model.n = n;
    model.lower = interval.lower;
    model.upper = interval.upper;
    model.k_index = interval.k_index;

    for (std::size_t v = 0; v < m1.vertices.size(); ++v) {
        auto it = by_active.find(m1.vertex_active[v]);
        if (it == by_active.end())
            throw structural_instability_error(
                "active sets do not match between " + describe(x1, x2));
        SymbolicVertex sv;
        sv.active = m1.vertex_active[v];
        for (int c = 0; c < n; ++c)
            sv.coords.push_back(interpolate_affine(
                x1, m1.vertices[v].coords[c], x2,
                m2.vertices[it->second].coords[c]));
        model.vertices.push_back(std::move(sv));
    }

    // Third-sample validation at the mediant: the interpolated forms must
    // reproduce a vertex with the same active set.
    PolytopeModel mm = build_h_representation(n, med);
    for (const SymbolicVertex& sv : model.vertices) {
        std::vector<Rational> coords(n);
        for (int c = 0; c < n; ++c) coords[c] = evaluate(sv.coords[c], med);
        AlcovePoint pt(coords);
        MembershipRecord rec = contains(mm, pt);
        if (rec.kind == MembershipRecord::Kind::Outside ||
            rec.active != sv.active)
            throw structural_instability_error(
                "interpolated vertex fails revalidation at x = " +
                rational_str(med));
    }

    std::sort(model.vertices.begin(), model.vertices.end(),
              [&](const SymbolicVertex& a, const SymbolicVertex& b) {
                  for (int c = 0; c < n; ++c) {
                      Rational va = evaluate(a.coords[c], med);
                      Rational vb = evaluate(b.coords[c], med);
                      if (va != vb) return va < vb;
                  }
                  return false;
              });
    return model;
}

std::vector<SymbolicClass> symbolic_classes(const SymbolicModel& model) {
    const int n = model.n;
    Rational mid = model.lower;
    mid += model.upper;
    mid /= 2;

    auto rotate = [&](const std::vector<AffineForm>& f, int r) {
        std::vector<AffineForm> out(n);
        for (int j = 0; j < n; ++j) out[j] = f[(j + r) % n];
        return out;
    };
    auto less_forms = [&](const std::vector<AffineForm>& a,
                          const std::vector<AffineForm>& b) {
        for (int c = 0; c < n; ++c) {
            Rational va = evaluate(a[c], mid), vb = evaluate(b[c], mid);
            if (va != vb) return va < vb;
            if (a[c].const_part != b[c].const_part)
                return a[c].const_part < b[c].const_part;
            if (a[c].slope != b[c].slope) return a[c].slope < b[c].slope;
        }
        return false;
    };

    std::vector<SymbolicClass> out;
    std::vector<std::vector<AffineForm>> seen;
    for (const SymbolicVertex& sv : model.vertices) {
        std::vector<AffineForm> best = sv.coords;
        int distinct = 1;
        for (int r = 1; r < n; ++r) {
            std::vector<AffineForm> rot = rotate(sv.coords, r);
            if (rot == sv.coords) continue;
            if (less_forms(rot, best)) best = rot;
        }
        // Count the distinct rotations for the orbit size.
        std::vector<std::vector<AffineForm>> rots;
        for (int r = 0; r < n; ++r) rots.push_back(rotate(sv.coords, r));
        std::sort(rots.begin(), rots.end(), less_forms);
        rots.erase(std::unique(rots.begin(), rots.end()), rots.end());
        distinct = static_cast<int>(rots.size());

        if (std::find(seen.begin(), seen.end(), best) != seen.end()) continue;
        seen.push_back(best);
        SymbolicClass cls;
        cls.representative = best;
        cls.orbit_size = distinct;
        cls.is_singular = std::any_of(best.begin(), best.end(),
                                      [](const AffineForm& f) {
                                          return f.is_zero();
                                      });
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(),
              [&](const SymbolicClass& a, const SymbolicClass& b) {
                  return less_forms(a.representative, b.representative);
              });
    return out;
}

Theorem51Report check_theorem_5_1(int n, const Rational& x) {
    if (n < 4) throw precondition_error("check_theorem_5_1 needs n >= 4");
    Rational lo = make_rational(1, n - 1), hi = make_rational(1, n - 2);
    if (x <= lo || x >= hi)
        throw precondition_error(
            "check_theorem_5_1 needs x in (1/(n-1), 1/(n-2)), got " +
            rational_str(x));

    PolytopeModel model = build_polytope(n, x);
    Theorem51Report rep;
    rep.n = n;
    rep.x = x;
    rep.expected_vertices = static_cast<long>(n) * (n - 2);
    rep.expected_facets = 2L * n;
    rep.expected_singular = static_cast<long>(n) * (n - 3);
    rep.expected_incidence_first = static_cast<long>(n - 3) * (n - 1);
    rep.expected_incidence_second = 2L * (n - 2);

    rep.vertex_count = static_cast<long>(model.vertices.size());
    rep.facet_count = model.face_vector[n - 2];
    long singular = 0;
    for (const AlcovePoint& v : model.vertices)
        if (std::any_of(v.coords.begin(), v.coords.end(),
                        [](const Rational& c) { return c == 0; }))
            ++singular;
    rep.singular_count = singular;

    Rational one(1);
    auto build_R = [&] {
        std::vector<Rational> c(n, x);
        Rational r0 = x;
        r0 *= (n - 1);
        r0 -= 1;
        Rational r1 = x;
        r1 *= (n - 2);
        Rational tmp = one;
        tmp -= r1;
        c[0] = r0;
        c[1] = tmp;
        c[n - 1] = tmp;
        return AlcovePoint(c);
    };
    auto build_I = [&](int s) {
        std::vector<Rational> c(n, x);
        c[0] = Rational(0);
        Rational r1 = x;
        r1 *= (n - 2);
        Rational tmp = one;
        tmp -= r1;
        c[1 + s] = tmp;
        return AlcovePoint(c);
    };
    auto is_vertex = [&](const AlcovePoint& p) {
        return std::binary_search(
            model.vertices.begin(), model.vertices.end(), p,
            [](const AlcovePoint& a, const AlcovePoint& b) {
                return a.coords < b.coords;
            });
    };

    std::ostringstream diff;
    bool coords_ok = true;
    if (!is_vertex(build_R())) {
        coords_ok = false;
        diff << "regular vertex pattern missing; ";
    }
    for (int s = 1; s <= n - 3; ++s)
        if (!is_vertex(build_I(s))) {
            coords_ok = false;
            diff << "singular vertex pattern s=" << s << " missing; ";
        }
    rep.patterns_found = coords_ok;

    auto classes = cyclic_orbits(model);
    long regular_classes = 0;
    for (const auto& cls : classes)
        if (!cls.is_singular) ++regular_classes;
    rep.regular_class_count = regular_classes;

    for (std::size_t v = 0; v < model.vertices.size(); ++v) {
        const auto& c = model.vertices[v].coords;
        if (c[0] == x) ++rep.incidence_first_kind;
        Rational pair = c[0];
        pair += c[1];
        if (pair == x) ++rep.incidence_second_kind;
    }

    rep.pass = rep.vertex_count == rep.expected_vertices &&
               rep.facet_count == rep.expected_facets &&
               rep.singular_count == rep.expected_singular &&
               coords_ok &&
               rep.incidence_first_kind == rep.expected_incidence_first &&
               rep.incidence_second_kind == rep.expected_incidence_second;
    if (!rep.pass) {
        diff << "counts (vertices " << rep.vertex_count << "/"
             << rep.expected_vertices << ", facets " << rep.facet_count << "/"
             << rep.expected_facets << ", singular "
             << rep.singular_count << "/" << rep.expected_singular
             << ", incidences " << rep.incidence_first_kind << "/"
             << rep.expected_incidence_first << " and "
             << rep.incidence_second_kind << "/"
             << rep.expected_incidence_second << ")";
    }
    rep.detail = diff.str();
    return rep;
}

std::vector<long> primitive_integer_vector(const std::vector<Rational>& v) {
    BigInt lcm(1);
    for (const Rational& c : v) {
        BigInt den = denominator(c);
        lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    std::vector<BigInt> ints;
    BigInt g(0);
    for (const Rational& c : v) {
        Rational scaled = c;
        scaled *= Rational(lcm);
        BigInt value = numerator(scaled);
        ints.push_back(value);
        g = boost::multiprecision::gcd(g, value < 0 ? BigInt(-value) : value);
    }
    if (g == 0)
        throw consistency_error("zero vector has no primitive form");
    std::vector<long> out;
    for (BigInt& value : ints) {
        value /= g;
        out.push_back(value.convert_to<long>());
    }
    return out;
}

EdgeDirections edge_directions_at(const PolytopeModel& model,
                                  const AlcovePoint& vertex) {
    if (!model.has_faces)
        throw precondition_error("edge_directions_at needs the face lattice");
    int vid = -1;
    for (std::size_t v = 0; v < model.vertices.size(); ++v)
        if (model.vertices[v] == vertex) {
            vid = static_cast<int>(v);
            break;
        }
    if (vid < 0)
        throw out_of_domain_error("the given point is not a vertex of the model");

    EdgeDirections out;
    for (const Face& edge : model.faces[1]) {
        if (edge.vertex_ids.size() != 2) continue;
        int other = -1;
        if (edge.vertex_ids[0] == vid) other = edge.vertex_ids[1];
        if (edge.vertex_ids[1] == vid) other = edge.vertex_ids[0];
        if (other < 0) continue;
        std::vector<Rational> d(model.n);
        for (int c = 0; c < model.n; ++c) {
            d[c] = model.vertices[other].coords[c];
            d[c] -= model.vertices[vid].coords[c];
        }
        out.primitive.push_back(primitive_integer_vector(d));
        out.exact.push_back(std::move(d));
    }
    // Deterministic order: sort by the primitive vectors.
    std::vector<std::size_t> perm(out.exact.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return out.primitive[a] < out.primitive[b];
    });
    EdgeDirections sorted;
    for (std::size_t i : perm) {
        sorted.exact.push_back(std::move(out.exact[i]));
        sorted.primitive.push_back(std::move(out.primitive[i]));
    }
    return sorted;
}

std::vector<std::array<long, 3>> mapped_edge_directions_n4(
    const PolytopeModel& model, const AlcovePoint& vertex) {
    if (model.n != 4)
        throw precondition_error("the chart map is defined for n = 4 only");
    EdgeDirections dirs = edge_directions_at(model, vertex);
    std::vector<std::array<long, 3>> out;
    for (const auto& d : dirs.exact) {
        Rational second = d[0];
        Rational twice = d[1];
        twice *= 2;
        second += twice;
        second += d[2];
        std::vector<Rational> mapped{d[0], second, d[2]};
        std::vector<long> prim = primitive_integer_vector(mapped);
        out.push_back({prim[0], prim[1], prim[2]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

AlcovePoint random_interior_point(const PolytopeModel& model, std::mt19937_64& rng) {
    const int n = model.n;
    const long xden = static_cast<long>(denominator(model.x));
    const long den = 16L * n * xden;
    const long range = 2L * xden;
    for (int attempt = 0; attempt < 20000; ++attempt) {
        std::vector<long> pert(n);
        long total = 0;
        for (int j = 0; j < n; ++j) {
            pert[j] = static_cast<long>(rng() % static_cast<unsigned long>(2 * range + 1)) -
                      range;
            total += pert[j];
        }
        pert[0] -= total;
        bool positive = true;
        std::vector<Rational> c(n);
        for (int j = 0; j < n; ++j) {
            const long num = den / n + pert[j];
            if (num <= 0) {
                positive = false;
                break;
            }
            c[j] = make_rational(num, den);
        }
        if (!positive) continue;
        AlcovePoint p(std::move(c));
        if (contains(model, p).kind == MembershipRecord::Kind::Inside) return p;
    }
    throw consistency_error("random_interior_point: no interior sample found");
}

}  // namespace alcove

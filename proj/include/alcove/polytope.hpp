#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "alcove/farey.hpp"
#include "alcove/rational.hpp"

namespace alcove {

// A point of the hyperplane { sum xi_j = 1 }, coordinates in units of pi.
// Membership in the polytope is a separate predicate; the constructor only
// enforces the hyperplane condition.
struct AlcovePoint {
    std::vector<Rational> coords;

    AlcovePoint() = default;
    explicit AlcovePoint(std::vector<Rational> c);

    int n() const { return static_cast<int>(coords.size()); }
    const Rational& cyc(long j) const;  // cyclic 0-based access
    bool operator==(const AlcovePoint& other) const = default;
};

AlcovePoint cyclic_shift(const AlcovePoint& p, int r);  // coords[j] <- coords[j+r]

enum class Sense { LessEq, GreaterEq };

// One window inequality: sum of len consecutive coordinates starting at ell
// (cyclically, 0-based) compared against the bound evaluated at x.
struct Halfspace {
    int ell = 0;
    int len = 0;
    Sense sense = Sense::LessEq;
    AffineForm bound;           // bound as a function of x; here always x itself
    std::vector<int> coeffs;    // 0/1 indicator over the n coordinates
    bool vacuous = false;       // len == 0 or len == n
};

struct Face {
    std::vector<int> vertex_ids;
    std::vector<int> active;  // inequalities active on the whole face
    int dim = 0;
};

struct PolytopeModel {
    int n = 0;
    Rational x;
    int k_index = 0;
    std::vector<Halfspace> inequalities;      // 2n records, ids 0..2n-1
    std::vector<AlcovePoint> vertices;        // sorted lexicographically
    std::vector<std::vector<int>> vertex_active;
    std::vector<std::vector<Face>> faces;     // faces[d] = faces of dimension d
    std::vector<long> face_vector;            // counts for d = 0 .. n-2
    bool has_faces = false;
};

struct BuildOptions {
    bool with_faces = true;
    bool force_bigint = false;
    int threads = 0;  // 0 = hardware concurrency
};

// H-representation only; refuses excluded x with a message naming it.
PolytopeModel build_h_representation(int n, const Rational& x);

// Exact vertex enumeration over the 2n window inequalities.
void enumerate_vertices(PolytopeModel& model, const BuildOptions& opt = {});

// Faces of every dimension from facet intersections, plus the face vector.
void build_face_lattice(PolytopeModel& model);

PolytopeModel build_polytope(int n, const Rational& x,
                             const BuildOptions& opt = {});

struct VertexClass {
    AlcovePoint representative;  // lexicographically least cyclic image
    std::vector<int> members;    // vertex ids in the model
    int orbit_size = 0;
    bool is_singular = false;    // some coordinate vanishes
};

std::vector<VertexClass> cyclic_orbits(const PolytopeModel& model);

struct MembershipRecord {
    enum class Kind { Inside, Boundary, Outside } kind = Kind::Outside;
    std::vector<int> active;
    std::vector<int> violated;
};

MembershipRecord contains(const PolytopeModel& model, const AlcovePoint& p);

// Symbolic vertices over a whole type (ii) interval: enumerate at two inner
// samples, match vertices by active set, interpolate coordinates as affine
// forms of x, then revalidate at a third sample.
struct SymbolicVertex {
    std::vector<AffineForm> coords;
    std::vector<int> active;
};

struct SymbolicModel {
    int n = 0;
    Rational lower, upper;
    int k_index = 0;
    std::vector<SymbolicVertex> vertices;
};

SymbolicModel symbolic_vertices(int n, const FareyInterval& interval);

struct SymbolicClass {
    std::vector<AffineForm> representative;
    int orbit_size = 0;
    bool is_singular = false;
};

std::vector<SymbolicClass> symbolic_classes(const SymbolicModel& model);

// Counting checks for a type (ii) sample: n(n-2) vertices in n-3 singular
// classes plus one regular class, 2n facets, and the two facet incidence
// counts at a regular vertex neighbourhood.
struct Theorem51Report {
    int n = 0;
    Rational x;
    long vertex_count = 0, facet_count = 0, singular_count = 0;
    long expected_vertices = 0, expected_facets = 0, expected_singular = 0;
    bool patterns_found = false;  // explicit R and I_s coordinates present
    long regular_class_count = 0;
    // Incidence counts: pairs (singular vertex, facet of the first kind it
    // lies on) and likewise for the second kind.
    long incidence_first_kind = 0, incidence_second_kind = 0;
    long expected_incidence_first = 0, expected_incidence_second = 0;
    bool pass = false;
    std::string detail;
};

Theorem51Report check_theorem_5_1(int n, const Rational& x);

// Edge directions at a vertex, oriented away from it, as primitive integer
// vectors (the rational differences cleared to coprime integers).
struct EdgeDirections {
    std::vector<std::vector<Rational>> exact;
    std::vector<std::vector<long>> primitive;
};

EdgeDirections edge_directions_at(const PolytopeModel& model,
                                  const AlcovePoint& vertex);

// n = 4 chart helper: images of the edge directions under
// d -> (d1, d1 + 2 d2 + d3, d3), primitivised with orientation kept.
std::vector<std::array<long, 3>> mapped_edge_directions_n4(
    const PolytopeModel& model, const AlcovePoint& vertex);

// Interior base point (1/n, ..., 1/n).
AlcovePoint barycenter(int n);

// Exact rational point strictly inside the polytope, drawn by perturbing the
// barycenter on a fixed denominator grid and rejecting boundary hits.  Only
// the inequality list of the model is consulted.
AlcovePoint random_interior_point(const PolytopeModel& model, std::mt19937_64& rng);

std::vector<long> primitive_integer_vector(const std::vector<Rational>& v);

}  // namespace alcove

#pragma once

#include <random>
#include <string>
#include <vector>

#include "alcove/polytope.hpp"
#include "alcove/spectral.hpp"

namespace alcove {

// Centralizer of the torus element inside the special-unitary group: one
// unitary factor per eigenvalue block, cut by the determinant condition.
struct IsotropyStructure {
    std::vector<EigenBlock> blocks;
    int group_dim = 0;        // sum of m_k^2, minus one for the determinant
    std::string description;  // e.g. "S(U(2) x U(1) x U(1))"
};

IsotropyStructure isotropy_of(const AlcovePoint& xi);

// Role of one eigenvalue block inside the stabilizer of the mass vector:
// blocks carrying no mass contribute their full unitary factor, blocks with
// positive mass are cut to the subgroup fixing the mass direction.
enum class BlockRole { Full, Split };

struct StabilizerStructure {
    std::vector<BlockRole> per_block;
    int group_dim = 0;
    std::string description;  // generator pattern, e.g. "diag(a,b,b,c), a*b^2*c = 1"
};

// Stabilizer of u0 inside the isotropy group.  Elements must have u0 as an
// eigenvector, so every positive-mass block shares one common eigenvalue on
// its mass direction: the dimension is sum over split blocks of (m_k - 1)^2,
// plus sum over full blocks of m_k^2, plus one shared phase, minus one for
// the determinant.
StabilizerStructure stabilizer_of(const AlcovePoint& xi, const UVector& u0);

// Recognized diffeomorphism type of a fiber, or the raw block data when the
// pattern is not one of the classified ones.
struct FiberType {
    enum class Kind { Torus, Point, Sphere3, Conjectural, Unrecognized };
    Kind kind = Kind::Unrecognized;
    int torus_dim = 0;   // meaningful for Kind::Torus
    std::string detail;  // conjectured name, or block data for Unrecognized

    std::string str() const;
};

struct FiberReport {
    AlcovePoint xi;
    IsotropyStructure isotropy;
    StabilizerStructure stabilizer;
    int fiber_dim = 0;
    FiberType recognized_type;
};

// Five-step fiber analysis at a point of the polytope: block structure,
// residue masses, stabilizer, dimension count, pattern recognition.
// Points outside the polytope raise an out-of-domain error.
FiberReport fiber_report(const AlcovePoint& xi, const Rational& x);

// Numeric bundle for the twisted-action computations at a singular vertex of
// the two-then-one mass pattern.  The input vertex is standardized by a
// cyclic rotation to the pattern with the zero coordinate first; rotation
// records the applied shift and s_index the position of the bulk coordinate.
struct VertexContext {
    AlcovePoint xi;        // standardized representative
    Rational x;
    int rotation = 0;      // shift taking the input vertex to xi
    int s_index = 1;
    DeltaMatrix delta;
    UVector u0;
    UnitaryMatrix mu;      // mu_hat at u0
    UnitaryMatrix a0;      // conjugator from solve_A0
};

VertexContext make_vertex_context(const AlcovePoint& xi, const Rational& x);

// Twisted action (X, T) -> Theta0(X) T X^{-1} with Theta0(X) = A0^{-1} X A0.
// X must commute with both the torus element and the rank-one moment value;
// T must commute with the torus element.  The result commutes with the torus
// element again.
UnitaryMatrix twisted_action(const VertexContext& ctx, const UnitaryMatrix& X,
                             const UnitaryMatrix& T, double tol = 1e-8);

// Canonical representative diag(Z, 1, ..., 1) of the twisted orbit of T,
// with the gauge element used to reach it.
struct GaugeFixResult {
    Eigen::Matrix2cd z;
    UnitaryMatrix gauge;
};

GaugeFixResult gauge_fix(const VertexContext& ctx, const UnitaryMatrix& T);

// Randomized orbit checks at one vertex: twisted-action outputs stay in the
// isotropy group, the gauge-fixed representative is invariant along orbits,
// and non-central stabilizer elements move every sampled T.
struct SuiteOutcome {
    bool pass = false;
    int samples = 0;
    unsigned seed = 0;
    double max_commutator = 0.0;
    double max_orbit_dev = 0.0;
    double min_noncentral_move = 0.0;
    std::string detail;
};

SuiteOutcome orbit_invariance_suite(const AlcovePoint& xi, const Rational& x, int samples,
                                    unsigned seed);

// Haar-like random element of the isotropy group of the torus element:
// independent unitary factors per block from orthogonalized Gaussians, with
// the determinant corrected to one.
UnitaryMatrix random_isotropy_element(const DeltaMatrix& delta, std::mt19937_64& rng);

// Random element of the stabilizer of u0 inside the isotropy group.
UnitaryMatrix random_stabilizer_element(const DeltaMatrix& delta, const UVector& u0,
                                        std::mt19937_64& rng);

// Deterministic unitary with last column u and determinant one, built from a
// Householder reflection; the concrete embedding point used by the dynamics
// checks.
UnitaryMatrix householder_to_last(const ComplexVector& u);

}  // namespace alcove

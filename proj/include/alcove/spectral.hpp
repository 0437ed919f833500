#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "alcove/polytope.hpp"
#include "alcove/rational.hpp"

namespace alcove {

using Complex = std::complex<double>;
using UnitaryMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Max-norm of U^H U - 1.  Small for a numerically unitary matrix.
double unitarity_defect(const UnitaryMatrix& u);

// |det(U) - 1|, the defect of the special-unitary condition.
double special_defect(const UnitaryMatrix& u);

// Group of coinciding eigenvalues of a diagonalized group element.  Index
// sets are 0-based coordinate positions in cyclic run order, so the last
// entry is the slot that carries the canonical residue mass.
struct EigenBlock {
    Complex value;
    std::vector<int> index_set;
    Rational turn;  // exact eigenvalue phase as a fraction of a full turn, in [0,1)

    int multiplicity() const { return static_cast<int>(index_set.size()); }
};

// Diagonalized torus element attached to an alcove point.  The phases are
// kept as exact rationals (fractions of a full turn); the complex diagonal
// and the block clustering are derived from them, so coincidences are read
// off exactly rather than within a numeric tolerance.
struct DeltaMatrix {
    AlcovePoint xi;
    std::vector<Rational> turns;
    std::vector<Complex> diagonal;
    std::vector<EigenBlock> blocks;

    int n() const { return static_cast<int>(turns.size()); }
    bool regular() const { return blocks.size() == turns.size(); }
    UnitaryMatrix matrix() const;
};

// Diagonal torus element of the alcove point: the first phase is
// (sum_j j*xi_j)/n of a full turn and each coordinate advances the phase by
// xi_j, which makes the determinant exactly one.
DeltaMatrix delta_of(const AlcovePoint& xi);

// Inverse of delta_of on conjugacy classes: recovers from a special-unitary
// matrix the unique alcove point whose torus element it is conjugate to.
// Returns coordinates in units of pi as doubles, since a general input only
// carries numeric eigenvalues.  The cyclic offset is fixed by matching the
// reconstructed first phase against the eigenvalue list.
std::vector<double> xi_of(const UnitaryMatrix& g, double tol = 1e-8);

// Diagonal moment-map value diag(e^{2iy}, ..., e^{2iy}, e^{-2(n-1)iy}).
UnitaryMatrix mu_zero(int n, double y);

// Unit vector of residue masses, canonical phases: nonnegative real entries
// with each block's mass on the block's last index.
struct UVector {
    ComplexVector components;
    std::vector<bool> zero_pattern;  // true where the component vanishes

    int n() const { return static_cast<int>(components.size()); }
};

// Rank-one perturbation e^{2iy} 1 + (e^{-2(n-1)iy} - e^{2iy}) u u^dagger,
// the moment-map value conjugated so that u plays the role of the last
// basis vector.
UnitaryMatrix mu_hat(double y, const UVector& u);

// The n spectral weights z_l(xi, y) with y = pi*x, via the product of sines
// over partial coordinate sums.  Requires a regular point (all eigenvalues
// of the torus element distinct); singular points must go through
// residue_constraints instead.
std::vector<double> z_functions(const AlcovePoint& xi, const Rational& x);

// Same weights computed from eigenvalue differences of the diagonal torus
// element; agrees with z_functions and serves as a cross-check.
std::vector<double> z_functions_spectral(const AlcovePoint& xi, const Rational& x);

// Residue data of the spectral function at each eigenvalue block: the pole
// order (computed exactly from rational phases) and the resulting block mass
// sum_{j in block} |u_j|^2.  Orders <= 0 give mass zero; order one gives the
// closed-form ratio; order two or higher cannot occur for a point of the
// polytope and reports the point as outside.
struct ResidueReport {
    std::vector<int> pole_orders;
    std::vector<double> block_mass;
};

ResidueReport residue_constraints(const AlcovePoint& xi, const Rational& x);

// Canonical unit vector with block magnitudes from residue_constraints and
// the stated phase convention.  Verifies the characteristic-polynomial
// identity at 2n unit-circle samples before returning.
UVector solve_u(const AlcovePoint& xi, const Rational& x, double tol = 1e-9);

// Special-unitary conjugator with A0 delta = mu_hat delta A0: column j is a
// unit eigenvector of mu_hat*delta with eigenvalue delta_j.  Deterministic
// choice: Schur vectors per block, per-column phase normalization, then a
// global n-th root of unity fixing det = 1 with the first nonzero entry of
// the first column as close to real-positive as the root lattice allows.
UnitaryMatrix solve_A0(const AlcovePoint& xi, const Rational& x, const UVector& u0,
                       double tol = 1e-9);

// Singular-vertex mass f_s(y) = sin((s+1)y) sin((n-1)y) / (sin(sy) sin(ny)).
// Defined for 1 <= s <= n-3 and y strictly between pi/(n-1) and pi/(n-2).
double f_s(int n, int s, double y);

// Max over 2n unit-circle samples of |det(zeta - mu_hat*delta) - det(zeta - delta)|,
// the residual of the characteristic-polynomial identity behind the residue
// equations.
double char_identity_residual(const AlcovePoint& xi, const Rational& x, const UVector& u);

}  // namespace alcove

#pragma once

#include <utility>
#include <vector>

#include "alcove/polytope.hpp"
#include "alcove/spectral.hpp"

namespace alcove {

// Real orthogonal matrix with last column v, smooth in v away from
// v_n = -1.  The off-corner block is 1 - v v^T / (1 + v_n) restricted to the
// first n-1 coordinates, the last row carries -v^T there.
UnitaryMatrix reflection_g(const Eigen::VectorXd& v);

// Sign of sin(pi x)/sin(n pi x), computed from the exact rational position
// of x between the excluded values: (-1)^floor(n x).
int lax_sign(int n, const Rational& x);

// Local Lax matrix at an interior point: built from the square roots of the
// spectral weights at y and at pi - y together with the torus phases theta
// (length n-1; the last phase closes the product to determinant one).
UnitaryMatrix lax_local(const AlcovePoint& xi, const std::vector<double>& theta,
                        const Rational& x);

// Point of the cross-section through the moment-map level set: the pair
// (A, B) obtained by conjugating the local Lax matrix and the torus element
// with the reflection built from the weight vector at y.
struct CrossSectionPoint {
    AlcovePoint xi;
    std::vector<double> theta;
    UnitaryMatrix a;
    UnitaryMatrix b;
};

CrossSectionPoint cross_section(const AlcovePoint& xi, const std::vector<double>& theta,
                                const Rational& x);

// Trigonometric RS Hamiltonian
//   H(q, p) = sum_l cos(p_l) prod_{j != l} [1 - sin^2 y / sin^2(q_l - q_j)]^{1/2}.
// Requires every bracketed factor nonnegative and sum p = 0 mod 2 pi.
double rs_hamiltonian(const std::vector<double>& q, const std::vector<double>& p, double y);

// The same Hamiltonian evaluated at a polytope point and torus angles, with
// the products under the square roots multiplied out first.  Inside the
// polytope individual factors can dip negative in pairs while every full
// product stays nonnegative, so this form is defined on the whole interior;
// it equals Re(s * tr L) for the local Lax matrix at the same data.
double rs_hamiltonian_of_point(const AlcovePoint& xi, const std::vector<double>& theta,
                               const Rational& x);

// Gradient of the spectral function phi_k (k > 0) or phi_{-|k|} (k < 0) at a
// unitary g: traceless anti-Hermitian, commutes with g.
UnitaryMatrix gradient_phi(int k, const UnitaryMatrix& g);

// Closed-form flow of a Hamiltonian depending only on B:
// (A, B) -> (A e^{t grad}, B).  The gradient must commute with B.
std::pair<UnitaryMatrix, UnitaryMatrix> flow_b_hamiltonian(const UnitaryMatrix& a,
                                                           const UnitaryMatrix& b,
                                                           const UnitaryMatrix& h_gradient,
                                                           double t, double tol = 1e-8);

// Coefficients over {grad phi_k, grad phi_{-k} : k = 1..n} reproducing a
// target element of the center of the isotropy algebra at the torus element
// of xi, found by least squares.  A residual beyond tol means the target
// lies outside the span and raises a precondition error.
struct CenterGradient {
    std::vector<double> coefficients;  // c_{+1}, c_{-1}, c_{+2}, c_{-2}, ...
    double residual = 0.0;
};

CenterGradient build_center_gradient(const AlcovePoint& xi, const UnitaryMatrix& target,
                                     double tol = 1e-9);

// Evaluate the combination sum_k (c_{+k} grad phi_k + c_{-k} grad phi_{-k}) at g.
UnitaryMatrix center_gradient_eval(const CenterGradient& cg, const UnitaryMatrix& g);

// Check of the two rotation flows on the fiber over the n = 4 singular
// vertex (0, x, 1-2x, x): flowing the embedding point with the
// center-gradient Hamiltonian and gauge-projecting must reproduce
//   which = 1:  Z(t) = diag(e^{it}, 1) Z0 diag(1, e^{-it})
//   which = 2:  Z(t) = diag(e^{it}, 1) Z0 diag(e^{-it}, 1)
// at every sample, and the flow must be 2 pi periodic.  The deviation of the
// summed generator from minus the start after half a period is reported but
// not asserted.
struct FiberFlowResult {
    bool pass = false;
    double max_dev = 0.0;
    double worst_t = 0.0;
    double periodicity_dev = 0.0;
    double summed_half_period_dev = 0.0;
    std::string detail;
};

FiberFlowResult fiber_flow_check(const AlcovePoint& xi, const Rational& x, int which,
                                 const Eigen::Matrix2cd& z0,
                                 const std::vector<double>& t_samples, double tol = 1e-7);

}  // namespace alcove

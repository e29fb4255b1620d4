#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "lorspin/dirac.hpp"

namespace lorspin {

// Real function of one variable: polynomial coefficients or a linearly
// interpolated sample table (evaluation outside the table is an error).
struct Profile1D {
    enum class Kind { poly, samples };
    Kind kind = Kind::poly;
    std::vector<double> coeffs; // sum_k coeffs[k] x^k
    std::vector<double> xs, ys; // strictly increasing xs

    static Profile1D zero() { return poly({}); }
    static Profile1D constant(double c) { return poly({c}); }
    static Profile1D poly(std::vector<double> c);
    static Profile1D samples(std::vector<double> x, std::vector<double> y);

    double value(double x) const;
    double derivative(double x) const;
};

// Conformal map psi = (1+sigma)/2 psi1(s) + (1-sigma)/2 psi2(t), written as
// psi = theta1 + sigma theta2.
struct ConformalMap {
    Profile1D psi1, psi2;

    double theta1(double s, double t) const { return 0.5 * (psi1.value(s) + psi2.value(t)); }
    double theta2(double s, double t) const { return 0.5 * (psi1.value(s) - psi2.value(t)); }
};

// Solution of the hyperbolic system
//   d_s(lambda,mu) = diag(1,-1) d_t(lambda,mu)
//                    - (1/2) [[0, psi1'+psi2'], [psi1'-psi2', 0]] (lambda,mu),
// i.e. d_u mu = -lambda d_u theta2 and d_v lambda = -mu d_v theta2.
struct HyperbolicSolution {
    NullChart chart;
    Grid<double> lambda, mu;
};

// Characteristics-aligned solver (requires h_s = h_t so the transport is
// exact on grid diagonals), Heun corrector for the source terms. The Cauchy
// data lambda0(t), mu0(t) on the s = s0 line must be evaluable on the
// dependency interval [t0 - extent_s, t0 + extent_t + extent_s].
// Throws ZeroCrossing if lambda or mu vanishes or changes sign.
HyperbolicSolution solveHyperbolic(const ConformalMap& psi, const Profile1D& lambda0,
                                   const Profile1D& mu0, const NullChart& chart);

// The four branches of the frame ODE dg = (g'g^{-1}) g da on the two null
// components g = (1+sigma)/2 g1(s) + (1-sigma)/2 g2(t):
// pos: both components cosh psi J + i sinh psi K (branch 1) or with sinh and
// cosh swapped (branch 2); neg: mixed forms (H(g',g') = ±sigma).
enum class SpinBranch { delta_pos_1, delta_pos_2, delta_neg_1, delta_neg_2 };

struct SpinFrameField {
    NullChart chart;
    SpinBranch branch = SpinBranch::delta_pos_1;
    Grid<H0Element> g;
    Grid<H0Element> gprime; // analytic g' with dg = g' da
    std::vector<H0Element> g1, g2;
};

// Midpoint multiplicative integration of the two decoupled null ODEs with
// renormalization to Spin(2,2); throws NotUnitSpinor on a non-unit g0.
SpinFrameField integrateSpinFrame(const ConformalMap& psi, SpinBranch branch,
                                  const H0Element& g0, const NullChart& chart);

// A generated flat immersion with the data needed for verification.
struct FlatImmersion {
    NullChart chart;
    ImmersionResult immersion;
    XiForm xi;
    FrameCoords frame;    // e2 = (N1-N2)/sqrt(2), e3 = (N1+N2)/sqrt(2)
    MeanCurvature H;
    Grid<double> lambda, mu; // Delta > 0 branch
    Grid<double> nu, rho;    // Delta < 0 branch
    int sign = +1;
};

// Delta > 0 assembly: lightlike frame N1 = ±(e^{theta1}/sqrt2)(1/lambda d_u
// + 1/mu d_v), N2 = (e^{-theta1}/sqrt2)(1/lambda d_u - 1/mu d_v), dual forms
// w1, w2, and xi = i g^{-1} [ ((w2-w1)/sqrt2) J + ((w2+w1)/sqrt2) iK ] hat(g);
// F integrates xi. The induced metric is sign * (lambda^2 du^2 - mu^2 dv^2).
// The sign must match the branch of g (+ for the cosh form delta_pos_1,
// - for the sinh form delta_pos_2); mismatches throw SchemaError.
FlatImmersion assembleFlatImmersion(const HyperbolicSolution& sol, const SpinFrameField& g,
                                    const ConformalMap& psi, int sign, const Vector22& base);

// Solves df/dzbar = b conj(f) for f = rho - i nu on z = s + it by a sparse
// least-squares Keller-box discretization; the seed provides the boundary
// trace fixing the holomorphic freedom.
Grid<std::complex<double>> solvePseudoanalytic(const Grid<std::complex<double>>& b,
                                               const Grid<std::complex<double>>& seed,
                                               const NullChart& chart);

// Cell-centered residual |df/dzbar - b conj(f)| (entries at cell (i,j),
// last row/column zero).
Grid<double> pseudoanalyticResidual(const Grid<std::complex<double>>& f,
                                    const Grid<std::complex<double>>& b,
                                    const NullChart& chart);

// The coefficient b = -psi1'(s)/4 - i psi2'(t)/4 of the Delta < 0 reduction
// (f = rho - i nu solves df/dzbar = b conj(f) iff (nu, rho) solve the flat
// structure equations; equivalently F = f^2 solves dF/dzbar = 2b|F|).
Grid<std::complex<double>> pseudoanalyticCoefficient(const ConformalMap& psi,
                                                     const NullChart& chart);

// Delta < 0 assembly from f = rho - i nu: lightlike frame
// N1 = ±(e^{theta1}/sqrt2)((rho d_s + nu d_t)/(nu^2+rho^2)),
// N2 = (e^{-theta1}/sqrt2)((-nu d_s + rho d_t)/(nu^2+rho^2));
// induced metric sign * 4(nu rho(-ds^2+dt^2) + (rho^2-nu^2) ds dt).
FlatImmersion assembleFlatImmersionNeg(const Grid<std::complex<double>>& f,
                                       const SpinFrameField& g, const ConformalMap& psi,
                                       int sign, const Vector22& base);

// Lightlike ruled input for the Delta = 0 generator.
struct RuledInput {
    std::function<Vector22(double)> gamma; // lightlike curve
    std::function<Vector22(double)> T;     // lightlike ruling field
};

// F(s,t) = gamma(s) + t T(s); checks the lightlike invariants and throws
// DegenerateRuling when gamma' and T are dependent.
Grid<Vector22> generateQuasiUmbilic(const RuledInput& r, const NullChart& chart,
                                    double tol = 1e-6);

} // namespace lorspin

#pragma once

#include <array>
#include <complex>

#include "lorspin/dirac.hpp"

namespace lorspin {

// The two Lorentzian hyperplanes of R^{2,2}: R^{1,2} = (sigma i 1)^perp
// (signature +,-,+) and R^{2,1} = (I)^perp (signature -,-,+).
enum class Target3 { R12, R21 };

// Element of the intrinsic spinor bundle Sigma M = C^2 in a fixed frame;
// Spin(1,1) acts by e^{u/2} on the first and e^{-u/2} on the second
// component, so the half-spinor lines are the two coordinate axes.
struct IntrinsicSpinor {
    std::complex<double> z1, z2;

    IntrinsicSpinor operator-() const { return {-z1, -z2}; }
    IntrinsicSpinor operator+(const IntrinsicSpinor& b) const { return {z1 + b.z1, z2 + b.z2}; }
    IntrinsicSpinor operator-(const IntrinsicSpinor& b) const { return {z1 - b.z1, z2 - b.z2}; }
    IntrinsicSpinor operator*(double c) const { return {z1 * c, z2 * c}; }
    IntrinsicSpinor operator*(std::complex<double> c) const { return {z1 * c, z2 * c}; }

    double norm() const { return std::max(std::abs(z1), std::abs(z2)); }
};

// Target-dependent real scalar product on Sigma M, with z1 = a+ib, z2 = c+id:
// R12: (a d' + a' d - b c' - b' c)/2, R21: -(a c' + a' c + b d' + b' d)/2;
// both have signature (2,2).
double intrinsicDot(const IntrinsicSpinor& p, const IntrinsicSpinor& q, Target3 target);

// Clifford action of the tangent vector X = x2 e2 + x3 e3 (eps2 = -1,
// eps3 = +1): e2 (z1,z2) = -+(z2,z1), e3 (z1,z2) = -+(-z2,z1). The two
// targets use opposite global signs (R12 minus, R21 plus), the choice pinned
// by the norm relation of the identification.
IntrinsicSpinor intrinsicAction(double x2, double x3, const IntrinsicSpinor& p, Target3 target);

// Conjugation psi bar = psi^+ - psi^- and the frame-coordinate complex
// conjugation alpha.
inline IntrinsicSpinor intrinsicConj(const IntrinsicSpinor& p) { return {p.z1, -p.z2}; }
inline IntrinsicSpinor intrinsicAlpha(const IntrinsicSpinor& p) {
    return {std::conj(p.z1), std::conj(p.z2)};
}

// The C-linear identification Sigma M -> Sigma^+ (the sigma = +1 half of H0)
// intertwining the connections, the Clifford actions ((X.psi)* = X.e1.psi*
// for R12, (X.psi)* = i e0.X.psi* for R21) and the norms
// (H(psi*,psi*) = +-(1+sigma)/2 |psi|^2). Stored as the 8x4 real matrix on
// the H0 null coordinates (p0+, p0-, ..., p3+, p3-).
struct Identification {
    Target3 target = Target3::R12;
    std::array<std::array<double, 4>, 8> m{};

    H0Element apply(const IntrinsicSpinor& p) const;
};

// Computes the identification by solving the linear constraint system
// (Sigma^+ membership, C-linearity, intertwining for e2 and e3); the
// two-dimensional solution space (a unit complex scalar times a scale) is
// fixed by the norm relation and the convention that the first nonzero
// complex coordinate of (1,0)* is real and positive. All constraints are
// re-verified to 1e-12; failure throws NoSolution.
Identification buildIdentification(Target3 target);

// Pointwise hyperplane-membership diagnostics for an ambient spinor field.
struct EmbedReport {
    double algebraicDefect = 0; // max |e0.phi - phi| (R12) / |e1.phi + beta(phi)| (R21)
    double normalDefect = 0;    // max |<<e_r.phi,phi>> - constant normal|
};
EmbedReport embedCheck(const SpinorField& phi, Target3 target);

// Residual of the intrinsic Dirac equation D psi = H psi (R12) or
// D psi = iH psi (R21), D = -e2.d_{e2} + e3.d_{e3} with the flat frame
// e2 = d_u, e3 = d_v, plus the norm constraint |psi|^2 = 1 (R12) / -1 (R21).
Grid<double> intrinsicDiracResidual(const Grid<IntrinsicSpinor>& psi, const Grid<double>& H,
                                    Target3 target, const NullChart& chart);

// Lift of an intrinsic solution to an ambient spinor field:
// phi = psi* + e0.psi* (R12) or phi = psi* + e1.beta(psi*) (R21), with the
// flat tangent frame. The intrinsic equation residual is checked first
// (threshold tol, default 100 max(1,|H|) h^2) and a violation throws
// IntrinsicEquationViolated.
SpinorField liftIntrinsic(const Grid<IntrinsicSpinor>& psi, const Grid<double>& H,
                          Target3 target, const NullChart& chart, double tol = -1);

// The immersion form computed directly from the intrinsic data: with
// chi = psi bar,
// R12: xi(X) = <X.psi, alpha(chi)> I + <X.psi, i chi> iJ + <X.psi, i alpha(chi)> K,
// R21: xi(X) = -<X.psi, i alpha(psi)> sigma i 1 - <X.psi, alpha(psi)> iJ
//              - <X.psi, psi bar> K.
// The signs and the phase of alpha are pinned by agreement with xiForm of
// the lifted field (they depend on the gauge of the identification).
XiForm explicitXi(const Grid<IntrinsicSpinor>& psi, Target3 target, const NullChart& chart);

} // namespace lorspin

#pragma once

#include "lorspin/surface.hpp"

namespace lorspin {

// Spinor field in the fixed parallel spinorial frame: coordinates g = [phi],
// with the orthonormal tangent frame (e2, e3) given in (u,v) coordinates
// (eps2 = -1, eps3 = +1). The normal frame (e0, e1) is the constant one.
struct SpinorField {
    NullChart chart;
    Grid<H0Element> g;
    FrameCoords frame;
};

struct MeanCurvature {
    Grid<double> H0, H1; // Hvec = H0 e0 + H1 e1
};

// The R^{2,2}-valued 1-form xi(X) = <<X.phi, phi>> in (u,v) components.
struct XiForm {
    NullChart chart;
    Grid<Vector22> xi_u, xi_v;
    double membershipDefect = 0; // max deviation of the brackets from R^{2,2}
};

// Dirac operator in the parallel frame: D phi = -e2.d_{e2}phi + e3.d_{e3}phi.
Grid<H0Element> diracApply(const SpinorField& phi);

// Pointwise norm of D phi - Hvec . phi.
Grid<double> diracResidual(const SpinorField& phi, const MeanCurvature& H);

// The even Clifford element eta(X) with the Killing equation
// nabla_X phi = eta(X).phi, from B(X, e_j) in coordinate components.
H0Element etaElement(const Vector22& Bxe2, const Vector22& Bxe3);

// Pointwise norm of nabla_X phi - eta(X).phi for X = d_u, d_v.
Grid<double> killingResidual(const SpinorField& phi, const CoordinateB& B);

// Second fundamental form recovered from the spinor field:
// <B(e_i,e_j), nu> = -2 <e_i . nabla_{e_j} phi, nu . phi> with <,> = Re H.
SecondFundamentalForm extractB(const SpinorField& phi, double normTol = 1e-6);

XiForm xiForm(const SpinorField& phi);

// Discrete exterior derivative d_u xi_v - d_v xi_u, pointwise max-abs.
Grid<double> dxiResidual(const XiForm& xi);

struct ImmersionResult {
    NullChart chart;
    Grid<Vector22> F;
    XiForm xi;
    Grid<double> dxi;
    double pathDefect = 0;
};

// Trapezoidal path integration of xi from the base point; row-first and
// column-first lattice paths are compared (path-independence defect).
// Throws NotClosed when the d xi residual exceeds the threshold
// (default 20 * max|xi| * h^2, checked away from the boundary).
ImmersionResult integrateImmersion(const XiForm& xi, const Vector22& base,
                                   double closedTol = -1);

// Step 1 of the two-step integration: multiplicative midpoint integration of
// nabla_X phi = eta(X).phi with renormalization to Spin(2,2).
SpinorField integrateKilling(const CoordinateB& B, const FrameCoords& frame,
                             const H0Element& phi0, const NullChart& chart);

// Full two-step integration of the fundamental equations; checks the
// Gauss-Codazzi-Ricci residuals first (throws IntegrabilityViolated).
ImmersionResult twoStepIntegrate(const Grid<double>& guu, const Grid<double>& guv,
                                 const Grid<double>& gvv, const SecondFundamentalForm& frameB,
                                 const CoordinateB& coordB, const NormalConnection& conn,
                                 const FrameCoords& frame, const H0Element& phi0,
                                 const Vector22& base, const NullChart& chart,
                                 double integrabilityTol);

// Least-squares alignment y ~ A x + b over affine maps, with the deviation
// of A from O(2,2) added to the reported residual.
struct ProcrustesResult {
    Mat4 A;
    Vector22 b;
    double rms = 0;         // fit error
    double orthoDefect = 0; // max |A^T eta A - eta|
    double residual = 0;    // rms + orthoDefect
};

ProcrustesResult procrustesAlign(const Grid<Vector22>& X, const Grid<Vector22>& Y);

} // namespace lorspin

#pragma once

#include "lorspin/grid.hpp"
#include "lorspin/spin.hpp"

namespace lorspin {

// Conformal-null metric ±(lambda^2 du^2 - mu^2 dv^2) sampled on a chart.
struct MetricField {
    NullChart chart;
    Grid<double> lambda, mu;
    int sign = +1;

    Grid<double> guu() const;
    Grid<double> guv() const { return Grid<double>(chart, 0.0); }
    Grid<double> gvv() const;
};

// Christoffel symbols of a 2D metric in (u,v) coordinates.
struct ChristoffelField {
    Grid<double> uuu, uuv, uvv; // Gamma^u_{uu}, Gamma^u_{uv}, Gamma^u_{vv}
    Grid<double> vuu, vuv, vvv; // Gamma^v_{..}
};

ChristoffelField christoffel(const Grid<double>& guu, const Grid<double>& guv,
                             const Grid<double>& gvv, const NullChart& chart);
ChristoffelField christoffel(const MetricField& m);

// Sectional curvature K = <R(d_u,d_v)d_v, d_u> / det g of a 2D metric.
Grid<double> gaussCurvatureIntrinsic(const Grid<double>& guu, const Grid<double>& guv,
                                     const Grid<double>& gvv, const NullChart& chart);
Grid<double> gaussCurvatureIntrinsic(const MetricField& m);

// Second fundamental form in the orthonormal frames (e2,e3) of TM and
// (e0,e1) of E: b_ij_k is the e_k-component of B(e_i,e_j).
struct SecondFundamentalForm {
    Grid<double> b22_0, b22_1, b23_0, b23_1, b33_0, b33_1;
};

// Extrinsic curvature from the Gauss equation: |B(e2,e3)|^2 - <B(e2,e2),B(e3,e3)>.
Grid<double> gaussCurvatureExtrinsic(const SecondFundamentalForm& B);
// Normal curvature from the Ricci equation: <(S_{e0}S_{e1}-S_{e1}S_{e0})e2, e3>.
Grid<double> normalCurvatureExtrinsic(const SecondFundamentalForm& B);

// Mean curvature components H = H0 e0 + H1 e1, from (1/2) tr_g B with
// eps2 = -1, eps3 = +1.
void meanCurvatureFromB(const SecondFundamentalForm& B, Grid<double>& H0, Grid<double>& H1);

// Gauss map from a spin frame field: G = i g^{-1} I g, H(G,G) = -1.
Grid<ImH0Element> gaussMapFromSpinFrame(const Grid<H0Element>& g, double tol = 1e-8);
ImH0Element gaussMapPoint(const H0Element& g);

// Oriented tangent plane of a frame (u1,u2) as a point of the Grassmannian.
ImH0Element grassmannPoint(const Vector22& u1, const Vector22& u2);

// The delta invariant: the quadratic form delta = (1/2) dG ^ dG in the
// (ds,dt) coordinates, and the sign of Delta = det_g delta (det g < 0, so
// sign(Delta) = -sign(det delta)).
struct DeltaInvariant {
    Grid<double> d_ss, d_st, d_tt;
    Grid<int> sign; // +1, 0, -1
};

DeltaInvariant deltaInvariant(const Grid<ImH0Element>& G, const NullChart& chart,
                              double zeroTol = 1e-9);

// Smallest/largest singular value ratio of the real 6x2 Jacobian of G;
// throws GaussMapNotRegular below the threshold.
void checkGaussMapRegular(const Grid<ImH0Element>& G, const NullChart& chart,
                          double threshold = 1e-8);

// A-valued area form on the Grassmannian: omega_Q(xi,xi') = [xi, xi', G].
LorentzNumber omegaQ(const ImH0Element& xi, const ImH0Element& xi2, const ImH0Element& G);

// Residual of the pullback identity G* omega_Q = (K + sigma K_N) omega_M,
// evaluated on (d_u, d_v). The tangent frame coordinates (e2 = e2u d_u + e2v d_v,
// etc.) fix the orientation of omega_M.
Grid<LorentzNumber> pullbackResidual(const Grid<ImH0Element>& G, const Grid<double>& K,
                                     const Grid<double>& KN, const Grid<double>& e2u,
                                     const Grid<double>& e2v, const Grid<double>& e3u,
                                     const Grid<double>& e3v, const NullChart& chart);

// Normal connection 1-form alpha(X) = <d_X e0, e1> in (u,v) coordinates.
struct NormalConnection {
    Grid<double> alpha_u, alpha_v;
};

// B in coordinate components (values on the (e0,e1) frame of E), for the
// Codazzi residual.
struct CoordinateB {
    Grid<double> buu_0, buu_1, buv_0, buv_1, bvv_0, bvv_1;
};

// Orthonormal tangent frame in (u,v) coordinates: e2 = e2u d_u + e2v d_v, etc.
struct FrameCoords {
    Grid<double> e2u, e2v, e3u, e3v;
};

struct FundamentalResiduals {
    Grid<double> gauss, codazzi, ricci;
};

FundamentalResiduals fundamentalResiduals(const Grid<double>& guu, const Grid<double>& guv,
                                          const Grid<double>& gvv,
                                          const SecondFundamentalForm& frameB,
                                          const CoordinateB& coordB,
                                          const NormalConnection& conn,
                                          const FrameCoords& frame,
                                          const NullChart& chart);

enum class CrossClass { scalarMultiple, antiScalar, sigmaRelation, independent };

// Classifier for degenerate cross products: when xi x xi2 = 0,
// either xi2 = lambda xi, xi = mu xi2, or xi + xi2 = ±sigma (xi - xi2).
CrossClass degenerateCrossCheck(const ImH0Element& xi, const ImH0Element& xi2,
                                double tol = 1e-8);

// Full differential-geometric analysis of a sampled immersion
// F: chart -> R^{2,2}: induced metric, propagated orthonormal frames,
// second fundamental form, normal connection, curvatures and Gauss map.
struct ImmersionAnalysis {
    NullChart chart;
    Grid<Vector22> F;
    Grid<double> guu, guv, gvv;
    Grid<Vector22> e0, e1, e2, e3;
    Grid<double> e2u, e2v, e3u, e3v;
    SecondFundamentalForm frameB;
    CoordinateB coordB;
    NormalConnection conn;
    Grid<double> K, KN, H0, H1;
    Grid<ImH0Element> G;
};

ImmersionAnalysis analyzeImmersion(const Grid<Vector22>& F, const NullChart& chart);

} // namespace lorspin

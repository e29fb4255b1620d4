#include "lorspin/surface.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace lorspin {

namespace {

std::string gridLocation(const NullChart& c, int i, int j) {
    std::ostringstream os;
    os << "(s,t)=(" << c.s(i) << "," << c.t(j) << ")";
    return os.str();
}

// Euclidean helpers for the Gauss-map Jacobian.
std::array<double, 6> components6(const ImH0Element& x) {
    return {x.a1.plus, x.a1.minus, x.a2.plus, x.a2.minus, x.a3.plus, x.a3.minus};
}

double dot6(const std::array<double, 6>& a, const std::array<double, 6>& b) {
    double s = 0;
    for (int k = 0; k < 6; ++k) s += a[k] * b[k];
    return s;
}

} // namespace

Grid<double> MetricField::guu() const {
    Grid<double> g(chart);
    serialFor(chart.n_s, chart.n_t, [&](int i, int j) {
        const double l = lambda.at(i, j);
        g.at(i, j) = sign * l * l;
    });
    return g;
}

Grid<double> MetricField::gvv() const {
    Grid<double> g(chart);
    serialFor(chart.n_s, chart.n_t, [&](int i, int j) {
        const double m = mu.at(i, j);
        g.at(i, j) = -sign * m * m;
    });
    return g;
}

ChristoffelField christoffel(const Grid<double>& guu, const Grid<double>& guv,
                             const Grid<double>& gvv, const NullChart& chart) {
    const int ns = chart.n_s, nt = chart.n_t;
    ChristoffelField ch{Grid<double>(chart), Grid<double>(chart), Grid<double>(chart),
                        Grid<double>(chart), Grid<double>(chart), Grid<double>(chart)};
    parallelForChecked(ns, nt, [&](int i, int j) {
        const double g[2][2] = {{guu.at(i, j), guv.at(i, j)}, {guv.at(i, j), gvv.at(i, j)}};
        const double det = g[0][0] * g[1][1] - g[0][1] * g[0][1];
        if (std::abs(det) < 1e-14)
            throw DegenerateMetric("metric degenerate at " + gridLocation(chart, i, j));
        const double ginv[2][2] = {{g[1][1] / det, -g[0][1] / det},
                                   {-g[0][1] / det, g[0][0] / det}};
        // dg[l][a][b] = d_l g_ab
        double dg[2][2][2];
        dg[0][0][0] = derivU(guu, i, j, chart);
        dg[0][0][1] = dg[0][1][0] = derivU(guv, i, j, chart);
        dg[0][1][1] = derivU(gvv, i, j, chart);
        dg[1][0][0] = derivV(guu, i, j, chart);
        dg[1][0][1] = dg[1][1][0] = derivV(guv, i, j, chart);
        dg[1][1][1] = derivV(gvv, i, j, chart);
        double gamma[2][2][2];
        for (int k = 0; k < 2; ++k)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    double s = 0;
                    for (int l = 0; l < 2; ++l)
                        s += ginv[k][l] * (dg[a][b][l] + dg[b][a][l] - dg[l][a][b]);
                    gamma[k][a][b] = 0.5 * s;
                }
        ch.uuu.at(i, j) = gamma[0][0][0];
        ch.uuv.at(i, j) = gamma[0][0][1];
        ch.uvv.at(i, j) = gamma[0][1][1];
        ch.vuu.at(i, j) = gamma[1][0][0];
        ch.vuv.at(i, j) = gamma[1][0][1];
        ch.vvv.at(i, j) = gamma[1][1][1];
    });
    return ch;
}

ChristoffelField christoffel(const MetricField& m) {
    serialFor(m.chart.n_s, m.chart.n_t, [&](int i, int j) {
        if (std::abs(m.lambda.at(i, j)) < 1e-12 || std::abs(m.mu.at(i, j)) < 1e-12)
            throw DegenerateMetric("lambda or mu vanishes at " + gridLocation(m.chart, i, j));
    });
    return christoffel(m.guu(), m.guv(), m.gvv(), m.chart);
}

Grid<double> gaussCurvatureIntrinsic(const Grid<double>& guu, const Grid<double>& guv,
                                     const Grid<double>& gvv, const NullChart& chart) {
    const ChristoffelField ch = christoffel(guu, guv, gvv, chart);
    Grid<double> K(chart);
    parallelFor(chart.n_s, chart.n_t, [&](int i, int j) {
        // R(d_u,d_v)d_v, components on (d_u,d_v)
        const double du_uvv = derivU(ch.uvv, i, j, chart);
        const double du_vvv = derivU(ch.vvv, i, j, chart);
        const double dv_uuv = derivV(ch.uuv, i, j, chart);
        const double dv_vuv = derivV(ch.vuv, i, j, chart);
        const double uuu = ch.uuu.at(i, j), uuv = ch.uuv.at(i, j), uvv = ch.uvv.at(i, j);
        const double vuu = ch.vuu.at(i, j), vuv = ch.vuv.at(i, j), vvv = ch.vvv.at(i, j);
        const double Ru = du_uvv - dv_uuv + uuu * uvv + uuv * vvv - uuv * uuv - uvv * vuv;
        const double Rv = du_vvv - dv_vuv + vuu * uvv + vuv * vvv - vuv * uuv - vvv * vuv;
        const double det = guu.at(i, j) * gvv.at(i, j) - guv.at(i, j) * guv.at(i, j);
        K.at(i, j) = (guu.at(i, j) * Ru + guv.at(i, j) * Rv) / det;
    });
    return K;
}

Grid<double> gaussCurvatureIntrinsic(const MetricField& m) {
    return gaussCurvatureIntrinsic(m.guu(), m.guv(), m.gvv(), m.chart);
}

Grid<double> gaussCurvatureExtrinsic(const SecondFundamentalForm& B) {
    Grid<double> K(B.b22_0.n_s, B.b22_0.n_t);
    parallelFor(K.n_s, K.n_t, [&](int i, int j) {
        // |nu|^2 = -c0^2 + c1^2 on E
        const double b23sq = -B.b23_0.at(i, j) * B.b23_0.at(i, j) +
                             B.b23_1.at(i, j) * B.b23_1.at(i, j);
        const double inner = -B.b22_0.at(i, j) * B.b33_0.at(i, j) +
                             B.b22_1.at(i, j) * B.b33_1.at(i, j);
        K.at(i, j) = b23sq - inner;
    });
    return K;
}

Grid<double> normalCurvatureExtrinsic(const SecondFundamentalForm& B) {
    Grid<double> KN(B.b22_0.n_s, B.b22_0.n_t);
    parallelFor(KN.n_s, KN.n_t, [&](int i, int j) {
        // S_nu e_j = sum_i eps_i <B(e_i,e_j),nu> e_i, eps = (-1,+1);
        // <nu, e0> = -c0, <nu, e1> = c1.
        auto shape = [&](double s0, double s1) {
            // s-coefficients select the normal direction: nu = s0 e0 + s1 e1
            auto bnu = [&](double c0, double c1) { return -s0 * c0 + s1 * c1; };
            std::array<std::array<double, 2>, 2> S{};
            const double b22 = bnu(B.b22_0.at(i, j), B.b22_1.at(i, j));
            const double b23 = bnu(B.b23_0.at(i, j), B.b23_1.at(i, j));
            const double b33 = bnu(B.b33_0.at(i, j), B.b33_1.at(i, j));
            S[0][0] = -b22; S[0][1] = -b23;
            S[1][0] = b23;  S[1][1] = b33;
            return S;
        };
        const auto S0 = shape(1, 0), S1 = shape(0, 1);
        // commutator entry <([S0,S1]) e2, e3> = eps3 * (e3-component) = row 1, col 0
        double c = 0;
        for (int k = 0; k < 2; ++k) c += S0.at(1).at(k) * S1.at(k).at(0) - S1.at(1).at(k) * S0.at(k).at(0);
        KN.at(i, j) = c;
    });
    return KN;
}

void meanCurvatureFromB(const SecondFundamentalForm& B, Grid<double>& H0, Grid<double>& H1) {
    H0 = Grid<double>(B.b22_0.n_s, B.b22_0.n_t);
    H1 = Grid<double>(B.b22_0.n_s, B.b22_0.n_t);
    parallelFor(H0.n_s, H0.n_t, [&](int i, int j) {
        // (1/2) tr_g B = (1/2)(eps2 B(e2,e2) + eps3 B(e3,e3))
        H0.at(i, j) = 0.5 * (-B.b22_0.at(i, j) + B.b33_0.at(i, j));
        H1.at(i, j) = 0.5 * (-B.b22_1.at(i, j) + B.b33_1.at(i, j));
    });
}

ImH0Element gaussMapPoint(const H0Element& g) {
    const QuatAC q = LorentzComplex::i() * (inverseH0(g).toQuat() * QuatAC::I() * g.toQuat());
    double parity = 0, scalar = 0;
    const H0Element even = H0Element::fromQuat(q, &parity);
    const ImH0Element G = ImH0Element::fromH0(even, &scalar);
    if (parity > 1e-9 || scalar > 1e-9) throw NotUnitSpinor("Gauss map left Im H0");
    return G;
}

Grid<ImH0Element> gaussMapFromSpinFrame(const Grid<H0Element>& g, double tol) {
    Grid<ImH0Element> G(g.n_s, g.n_t);
    serialFor(g.n_s, g.n_t, [&](int i, int j) {
        const LorentzNumber h = hForm(g.at(i, j), g.at(i, j));
        if (std::abs(h.plus - 1) > tol || std::abs(h.minus - 1) > tol)
            throw NotUnitSpinor("spin frame is not H-unit");
        G.at(i, j) = gaussMapPoint(g.at(i, j));
    });
    return G;
}

ImH0Element grassmannPoint(const Vector22& u1, const Vector22& u2) {
    double scalar = 0;
    const H0Element even = vectorActionOdd(gammaOdd(u1), gammaOdd(u2));
    const ImH0Element G = ImH0Element::fromH0(even, &scalar);
    if (scalar > 1e-8 * std::max(1.0, maxAbs(u1) * maxAbs(u2)))
        throw GaussMapNotRegular("frame vectors are not orthogonal");
    return G;
}

DeltaInvariant deltaInvariant(const Grid<ImH0Element>& G, const NullChart& chart,
                              double zeroTol) {
    DeltaInvariant d{Grid<double>(chart), Grid<double>(chart), Grid<double>(chart),
                     Grid<int>(chart, 0)};
    parallelFor(chart.n_s, chart.n_t, [&](int i, int j) {
        const ImH0Element Gs = derivS(G, i, j, chart.h_s);
        const ImH0Element Gt = derivT(G, i, j, chart.h_t);
        d.d_ss.at(i, j) = 0.5 * bivectorWedge(Gs, Gs);
        d.d_st.at(i, j) = 0.5 * bivectorWedge(Gs, Gt);
        d.d_tt.at(i, j) = 0.5 * bivectorWedge(Gt, Gt);
        const double det = d.d_ss.at(i, j) * d.d_tt.at(i, j) -
                           d.d_st.at(i, j) * d.d_st.at(i, j);
        const double scale = std::max(1.0, Gs.norm() * Gs.norm() * Gt.norm() * Gt.norm());
        // det g < 0 on a Lorentzian chart, so sign(Delta) = -sign(det delta)
        d.sign.at(i, j) = std::abs(det) <= zeroTol * scale ? 0 : (det > 0 ? -1 : +1);
    });
    return d;
}

void checkGaussMapRegular(const Grid<ImH0Element>& G, const NullChart& chart,
                          double threshold) {
    for (int i = 0; i < chart.n_s; ++i)
        for (int j = 0; j < chart.n_t; ++j) {
            const auto cs = components6(derivS(G, i, j, chart.h_s));
            const auto ct = components6(derivT(G, i, j, chart.h_t));
            const double a = dot6(cs, cs), b = dot6(cs, ct), c = dot6(ct, ct);
            const double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4 * b * b));
            const double lmax = 0.5 * (a + c + disc), lmin = 0.5 * (a + c - disc);
            if (lmin < threshold * threshold * lmax || lmax == 0.0)
                throw GaussMapNotRegular("dG rank deficient at " + gridLocation(chart, i, j));
        }
}

LorentzNumber omegaQ(const ImH0Element& xi, const ImH0Element& xi2, const ImH0Element& G) {
    return mixed(xi, xi2, G);
}

Grid<LorentzNumber> pullbackResidual(const Grid<ImH0Element>& G, const Grid<double>& K,
                                     const Grid<double>& KN, const Grid<double>& e2u,
                                     const Grid<double>& e2v, const Grid<double>& e3u,
                                     const Grid<double>& e3v, const NullChart& chart) {
    Grid<LorentzNumber> res(chart);
    parallelFor(chart.n_s, chart.n_t, [&](int i, int j) {
        const ImH0Element Gu = derivU(G, i, j, chart);
        const ImH0Element Gv = derivV(G, i, j, chart);
        const LorentzNumber lhs = omegaQ(Gu, Gv, G.at(i, j));
        // omega_M(d_u,d_v) = 1/det[[e2u,e3u],[e2v,e3v]] with omega_M(e2,e3)=1
        const double det = e2u.at(i, j) * e3v.at(i, j) - e3u.at(i, j) * e2v.at(i, j);
        const double wm = 1.0 / det;
        const LorentzNumber rhs =
            (LorentzNumber::real(K.at(i, j)) + LorentzNumber::sigma() * KN.at(i, j)) * wm;
        res.at(i, j) = lhs - rhs;
    });
    return res;
}

FundamentalResiduals fundamentalResiduals(const Grid<double>& guu, const Grid<double>& guv,
                                          const Grid<double>& gvv,
                                          const SecondFundamentalForm& frameB,
                                          const CoordinateB& coordB,
                                          const NormalConnection& conn,
                                          const FrameCoords& frame,
                                          const NullChart& chart) {
    const ChristoffelField ch = christoffel(guu, guv, gvv, chart);
    const Grid<double> Kint = gaussCurvatureIntrinsic(guu, guv, gvv, chart);
    const Grid<double> Kext = gaussCurvatureExtrinsic(frameB);
    const Grid<double> KNext = normalCurvatureExtrinsic(frameB);
    FundamentalResiduals r{Grid<double>(chart), Grid<double>(chart), Grid<double>(chart)};
    parallelFor(chart.n_s, chart.n_t, [&](int i, int j) {
        r.gauss.at(i, j) = Kint.at(i, j) - Kext.at(i, j);

        // Ricci: curvature of the normal connection vs the shape-operator term;
        // d alpha(e2,e3) = det(frame coords) * d alpha(d_u,d_v).
        const double dalpha = derivU(conn.alpha_v, i, j, chart) - derivV(conn.alpha_u, i, j, chart);
        const double det = frame.e2u.at(i, j) * frame.e3v.at(i, j) -
                           frame.e3u.at(i, j) * frame.e2v.at(i, j);
        r.ricci.at(i, j) = det * dalpha - KNext.at(i, j);

        // Codazzi in coordinates; normal covariant derivative of nu = c0 e0 + c1 e1
        // has components (X c0 + c1 alpha(X), X c1 + c0 alpha(X)).
        const double au = conn.alpha_u.at(i, j), av = conn.alpha_v.at(i, j);
        const double uuu = ch.uuu.at(i, j), uuv = ch.uuv.at(i, j), uvv = ch.uvv.at(i, j);
        const double vuu = ch.vuu.at(i, j), vuv = ch.vuv.at(i, j), vvv = ch.vvv.at(i, j);
        auto at = [&](const Grid<double>& g) { return g.at(i, j); };
        const double buu[2] = {at(coordB.buu_0), at(coordB.buu_1)};
        const double buv[2] = {at(coordB.buv_0), at(coordB.buv_1)};
        const double bvv[2] = {at(coordB.bvv_0), at(coordB.bvv_1)};
        const double du_buv[2] = {derivU(coordB.buv_0, i, j, chart), derivU(coordB.buv_1, i, j, chart)};
        const double dv_buu[2] = {derivV(coordB.buu_0, i, j, chart), derivV(coordB.buu_1, i, j, chart)};
        const double du_bvv[2] = {derivU(coordB.bvv_0, i, j, chart), derivU(coordB.bvv_1, i, j, chart)};
        const double dv_buv[2] = {derivV(coordB.buv_0, i, j, chart), derivV(coordB.buv_1, i, j, chart)};
        double resid = 0;
        {
            // Z = d_u
            const double c0 = du_buv[0] + buv[1] * au - (dv_buu[0] + buu[1] * av) -
                              uuu * buv[0] - vuu * bvv[0] + uuv * buu[0] + vuv * buv[0];
            const double c1 = du_buv[1] + buv[0] * au - (dv_buu[1] + buu[0] * av) -
                              uuu * buv[1] - vuu * bvv[1] + uuv * buu[1] + vuv * buv[1];
            resid = std::max(resid, std::max(std::abs(c0), std::abs(c1)));
        }
        {
            // Z = d_v
            const double c0 = du_bvv[0] + bvv[1] * au - (dv_buv[0] + buv[1] * av) -
                              uuv * buv[0] - vuv * bvv[0] + uvv * buu[0] + vvv * buv[0];
            const double c1 = du_bvv[1] + bvv[0] * au - (dv_buv[1] + buv[0] * av) -
                              uuv * buv[1] - vuv * bvv[1] + uvv * buu[1] + vvv * buv[1];
            resid = std::max(resid, std::max(std::abs(c0), std::abs(c1)));
        }
        r.codazzi.at(i, j) = resid;
    });
    return r;
}

CrossClass degenerateCrossCheck(const ImH0Element& xi, const ImH0Element& xi2, double tol) {
    auto nullPart = [](const ImH0Element& x, int comp) {
        return std::array<double, 3>{comp == 0 ? x.a1.plus : x.a1.minus,
                                     comp == 0 ? x.a2.plus : x.a2.minus,
                                     comp == 0 ? x.a3.plus : x.a3.minus};
    };
    auto norm3 = [](const std::array<double, 3>& v) {
        return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    };
    auto cross3 = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return std::array<double, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                     a[0] * b[1] - a[1] * b[0]};
    };
    const double scale = std::max(1.0, xi.norm() * xi2.norm());
    bool degenerate = true;
    bool zero[2], zero2[2];
    for (int comp = 0; comp < 2; ++comp) {
        const auto a = nullPart(xi, comp), b = nullPart(xi2, comp);
        if (norm3(cross3(a, b)) > tol * scale) degenerate = false;
        zero[comp] = norm3(a) <= tol * std::max(1.0, xi.norm());
        zero2[comp] = norm3(b) <= tol * std::max(1.0, xi2.norm());
    }
    if (!degenerate) return CrossClass::independent;
    const bool forward = (!zero[0] || zero2[0]) && (!zero[1] || zero2[1]); // xi2 = lambda xi
    const bool backward = (!zero2[0] || zero[0]) && (!zero2[1] || zero[1]); // xi = mu xi2
    if (forward) return CrossClass::scalarMultiple;
    if (backward) return CrossClass::antiScalar;
    return CrossClass::sigmaRelation;
}

namespace {

struct FramePoint {
    Vector22 e0, e1, e2, e3;
};

// Coefficients (a,b) with tangentPart(w) = a Fu + b Fv.
void tangentCoeffs(const Vector22& w, const Vector22& Fu, const Vector22& Fv, double p,
                   double q, double r, double& a, double& b) {
    const double det = p * r - q * q;
    const double x = inner22(w, Fu), y = inner22(w, Fv);
    a = (r * x - q * y) / det;
    b = (p * y - q * x) / det;
}

Vector22 normalPart(const Vector22& w, const Vector22& Fu, const Vector22& Fv, double p,
                    double q, double r) {
    double a, b;
    tangentCoeffs(w, Fu, Fv, p, q, r, a, b);
    return w - a * Fu - b * Fv;
}

Vector22 normalizeTimelike(const Vector22& w) {
    const double n = inner22(w, w);
    if (n >= -1e-12) throw DegenerateMetric("frame propagation lost the timelike direction");
    return w * (1.0 / std::sqrt(-n));
}

Vector22 normalizeSpacelike(const Vector22& w) {
    const double n = inner22(w, w);
    if (n <= 1e-12) throw DegenerateMetric("frame propagation lost the spacelike direction");
    return w * (1.0 / std::sqrt(n));
}

double det4(const Vector22& a, const Vector22& b, const Vector22& c, const Vector22& d) {
    const Vector22* m[4] = {&a, &b, &c, &d};
    double result = 0;
    int perm[4] = {0, 1, 2, 3};
    // Laplace expansion on the first column
    for (int i = 0; i < 4; ++i) {
        double minor[3][3];
        int r = 0;
        for (int row = 0; row < 4; ++row) {
            if (row == i) continue;
            for (int col = 1; col < 4; ++col) minor[r][col - 1] = (*m[col])[row];
            ++r;
        }
        const double det3 = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1]) -
                            minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0]) +
                            minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
        result += ((i % 2 == 0) ? 1.0 : -1.0) * (*m[0])[i] * det3;
    }
    (void)perm;
    return result;
}

FramePoint seedFrame(const Vector22& Fu, const Vector22& Fv, double p, double q, double r) {
    // timelike tangent direction
    Vector22 tl;
    if (p < -1e-10) tl = Fu;
    else if (r < -1e-10) tl = Fv;
    else if (std::abs(r) > 1e-10) tl = Fu - (q / r) * Fv;
    else tl = Fu - ((p + 1) / (2 * q)) * Fv;
    FramePoint f;
    f.e2 = normalizeTimelike(tl);
    Vector22 w = Fv + inner22(Fv, f.e2) * f.e2;
    if (inner22(w, w) <= 1e-12) w = Fu + inner22(Fu, f.e2) * f.e2;
    f.e3 = normalizeSpacelike(w);
    // orientation of (e2,e3) follows (Fu,Fv)
    double a2, b2, a3, b3;
    tangentCoeffs(f.e2, Fu, Fv, p, q, r, a2, b2);
    tangentCoeffs(f.e3, Fu, Fv, p, q, r, a3, b3);
    if (a2 * b3 - a3 * b2 < 0) f.e3 = -f.e3;

    // normal frame from projected basis vectors
    Vector22 best0, best1;
    double most = 0;
    for (int k = 0; k < 4; ++k) {
        const Vector22 n = normalPart(Vector22::basis(k), Fu, Fv, p, q, r);
        const double nn = inner22(n, n);
        if (nn < most) {
            most = nn;
            best0 = n;
        }
    }
    if (most >= -1e-10) throw DegenerateMetric("no timelike normal direction found");
    f.e0 = normalizeTimelike(best0);
    double mostPos = 0;
    for (int k = 0; k < 4; ++k) {
        Vector22 n = normalPart(Vector22::basis(k), Fu, Fv, p, q, r);
        n = n + inner22(n, f.e0) * f.e0;
        const double nn = inner22(n, n);
        if (nn > mostPos) {
            mostPos = nn;
            best1 = n;
        }
    }
    if (mostPos <= 1e-10) throw DegenerateMetric("no spacelike normal direction found");
    f.e1 = normalizeSpacelike(best1);
    if (det4(f.e0, f.e1, f.e2, f.e3) < 0) f.e1 = -f.e1;
    return f;
}

FramePoint propagateFrame(const FramePoint& prev, const Vector22& Fu, const Vector22& Fv,
                          double p, double q, double r) {
    FramePoint f;
    double a, b;
    tangentCoeffs(prev.e2, Fu, Fv, p, q, r, a, b);
    f.e2 = normalizeTimelike(a * Fu + b * Fv);
    tangentCoeffs(prev.e3, Fu, Fv, p, q, r, a, b);
    Vector22 w = a * Fu + b * Fv;
    w = w + inner22(w, f.e2) * f.e2;
    f.e3 = normalizeSpacelike(w);
    Vector22 n0 = normalPart(prev.e0, Fu, Fv, p, q, r);
    f.e0 = normalizeTimelike(n0);
    Vector22 n1 = normalPart(prev.e1, Fu, Fv, p, q, r);
    n1 = n1 + inner22(n1, f.e0) * f.e0;
    f.e1 = normalizeSpacelike(n1);
    return f;
}

} // namespace

ImmersionAnalysis analyzeImmersion(const Grid<Vector22>& F, const NullChart& chart) {
    const int ns = chart.n_s, nt = chart.n_t;
    ImmersionAnalysis out;
    out.chart = chart;
    out.F = F;

    Grid<Vector22> Fu(chart), Fv(chart);
    serialFor(ns, nt, [&](int i, int j) {
        Fu.at(i, j) = derivU(F, i, j, chart);
        Fv.at(i, j) = derivV(F, i, j, chart);
    });
    out.guu = Grid<double>(chart);
    out.guv = Grid<double>(chart);
    out.gvv = Grid<double>(chart);
    serialFor(ns, nt, [&](int i, int j) {
        out.guu.at(i, j) = inner22(Fu.at(i, j), Fu.at(i, j));
        out.guv.at(i, j) = inner22(Fu.at(i, j), Fv.at(i, j));
        out.gvv.at(i, j) = inner22(Fv.at(i, j), Fv.at(i, j));
        const double det = out.guu.at(i, j) * out.gvv.at(i, j) -
                           out.guv.at(i, j) * out.guv.at(i, j);
        if (det >= -1e-12)
            throw DegenerateMetric("induced metric is not Lorentzian at " +
                                   gridLocation(chart, i, j));
    });

    // frame propagation: seed at (0,0), first row in t, then rows in s
    Grid<FramePoint> frames(chart);
    auto frameAt = [&](int i, int j, const FramePoint* prev) {
        const double p = out.guu.at(i, j), q = out.guv.at(i, j), r = out.gvv.at(i, j);
        frames.at(i, j) = prev ? propagateFrame(*prev, Fu.at(i, j), Fv.at(i, j), p, q, r)
                               : seedFrame(Fu.at(i, j), Fv.at(i, j), p, q, r);
    };
    frameAt(0, 0, nullptr);
    for (int j = 1; j < nt; ++j) frameAt(0, j, &frames.at(0, j - 1));
    for (int i = 1; i < ns; ++i)
        for (int j = 0; j < nt; ++j) frameAt(i, j, &frames.at(i - 1, j));

    out.e0 = Grid<Vector22>(chart);
    out.e1 = Grid<Vector22>(chart);
    out.e2 = Grid<Vector22>(chart);
    out.e3 = Grid<Vector22>(chart);
    out.e2u = Grid<double>(chart);
    out.e2v = Grid<double>(chart);
    out.e3u = Grid<double>(chart);
    out.e3v = Grid<double>(chart);
    out.G = Grid<ImH0Element>(chart);
    serialFor(ns, nt, [&](int i, int j) {
        const FramePoint& f = frames.at(i, j);
        out.e0.at(i, j) = f.e0;
        out.e1.at(i, j) = f.e1;
        out.e2.at(i, j) = f.e2;
        out.e3.at(i, j) = f.e3;
        double a, b;
        tangentCoeffs(f.e2, Fu.at(i, j), Fv.at(i, j), out.guu.at(i, j), out.guv.at(i, j),
                      out.gvv.at(i, j), a, b);
        out.e2u.at(i, j) = a;
        out.e2v.at(i, j) = b;
        tangentCoeffs(f.e3, Fu.at(i, j), Fv.at(i, j), out.guu.at(i, j), out.guv.at(i, j),
                      out.gvv.at(i, j), a, b);
        out.e3u.at(i, j) = a;
        out.e3v.at(i, j) = b;
        out.G.at(i, j) = grassmannPoint(f.e2, f.e3);
    });

    // second derivatives and B
    Grid<Vector22> Fs(chart), Ft(chart);
    serialFor(ns, nt, [&](int i, int j) {
        Fs.at(i, j) = derivS(F, i, j, chart.h_s);
        Ft.at(i, j) = derivT(F, i, j, chart.h_t);
    });
    out.coordB = CoordinateB{Grid<double>(chart), Grid<double>(chart), Grid<double>(chart),
                             Grid<double>(chart), Grid<double>(chart), Grid<double>(chart)};
    out.frameB = SecondFundamentalForm{Grid<double>(chart), Grid<double>(chart),
                                       Grid<double>(chart), Grid<double>(chart),
                                       Grid<double>(chart), Grid<double>(chart)};
    parallelFor(ns, nt, [&](int i, int j) {
        const Vector22 Fss = derivS(Fs, i, j, chart.h_s);
        const Vector22 Fst = derivT(Fs, i, j, chart.h_t);
        const Vector22 Ftt = derivT(Ft, i, j, chart.h_t);
        const Vector22 Fuu = Fss + 2.0 * Fst + Ftt;
        const Vector22 Fuv = Fss - Ftt;
        const Vector22 Fvv = Fss - 2.0 * Fst + Ftt;
        const double p = out.guu.at(i, j), q = out.guv.at(i, j), r = out.gvv.at(i, j);
        const Vector22 Buu = normalPart(Fuu, Fu.at(i, j), Fv.at(i, j), p, q, r);
        const Vector22 Buv = normalPart(Fuv, Fu.at(i, j), Fv.at(i, j), p, q, r);
        const Vector22 Bvv = normalPart(Fvv, Fu.at(i, j), Fv.at(i, j), p, q, r);
        const FramePoint& f = frames.at(i, j);
        auto comp = [&](const Vector22& nu, double& c0, double& c1) {
            c0 = -inner22(nu, f.e0);
            c1 = inner22(nu, f.e1);
        };
        comp(Buu, out.coordB.buu_0.at(i, j), out.coordB.buu_1.at(i, j));
        comp(Buv, out.coordB.buv_0.at(i, j), out.coordB.buv_1.at(i, j));
        comp(Bvv, out.coordB.bvv_0.at(i, j), out.coordB.bvv_1.at(i, j));
        // frame components: B(e2,e2) etc. from the coordinate ones
        const double a2 = out.e2u.at(i, j), b2 = out.e2v.at(i, j);
        const double a3 = out.e3u.at(i, j), b3 = out.e3v.at(i, j);
        auto combine = [&](double au, double bu, double av, double bv, const Vector22& nuu,
                           const Vector22& nuv, const Vector22& nvv) {
            return au * av * nuu + (au * bv + bu * av) * nuv + bu * bv * nvv;
        };
        const Vector22 B22 = combine(a2, b2, a2, b2, Buu, Buv, Bvv);
        const Vector22 B23 = combine(a2, b2, a3, b3, Buu, Buv, Bvv);
        const Vector22 B33 = combine(a3, b3, a3, b3, Buu, Buv, Bvv);
        comp(B22, out.frameB.b22_0.at(i, j), out.frameB.b22_1.at(i, j));
        comp(B23, out.frameB.b23_0.at(i, j), out.frameB.b23_1.at(i, j));
        comp(B33, out.frameB.b33_0.at(i, j), out.frameB.b33_1.at(i, j));
    });

    out.conn = NormalConnection{Grid<double>(chart), Grid<double>(chart)};
    serialFor(ns, nt, [&](int i, int j) {
        out.conn.alpha_u.at(i, j) = inner22(derivU(out.e0, i, j, chart), out.e1.at(i, j));
        out.conn.alpha_v.at(i, j) = inner22(derivV(out.e0, i, j, chart), out.e1.at(i, j));
    });

    out.K = gaussCurvatureExtrinsic(out.frameB);
    out.KN = normalCurvatureExtrinsic(out.frameB);
    meanCurvatureFromB(out.frameB, out.H0, out.H1);
    return out;
}

} // namespace lorspin

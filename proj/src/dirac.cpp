#include "lorspin/dirac.hpp"

#include <cmath>

namespace lorspin {

namespace {

// Directional derivative of the spinor coordinates along e_j = eju d_u + ejv d_v.
H0Element frameDeriv(const Grid<H0Element>& g, double eju, double ejv, int i, int j,
                     const NullChart& c) {
    return eju * derivU(g, i, j, c) + ejv * derivV(g, i, j, c);
}

// Coordinates of d_u and d_v in the frame (e2,e3), by inverting the 2x2
// frame matrix.
struct DualFrame {
    double a_u, b_u; // d_u = a_u e2 + b_u e3
    double a_v, b_v;
};

DualFrame dualFrame(const FrameCoords& f, int i, int j) {
    const double e2u = f.e2u.at(i, j), e2v = f.e2v.at(i, j);
    const double e3u = f.e3u.at(i, j), e3v = f.e3v.at(i, j);
    const double det = e2u * e3v - e3u * e2v;
    const double scale = std::max({std::abs(e2u), std::abs(e2v), std::abs(e3u), std::abs(e3v), 1.0});
    if (std::abs(det) < 1e-12 * scale * scale) throw DegenerateMetric("frame is not a basis");
    return {e3v / det, -e2v / det, -e3u / det, e2u / det};
}

Vector22 normalVector(double c0, double c1) { return {c0, c1, 0, 0}; }

} // namespace

Grid<H0Element> diracApply(const SpinorField& phi) {
    const NullChart& c = phi.chart;
    Grid<H0Element> D(c);
    const H0Element sigmaJ = LorentzNumber::sigma() * H0Element::J();
    const H0Element sigmaiK = LorentzNumber::sigma() * H0Element::iK();
    parallelFor(c.n_s, c.n_t, [&](int i, int j) {
        const H0Element d2 = frameDeriv(phi.g, phi.frame.e2u.at(i, j), phi.frame.e2v.at(i, j), i, j, c);
        const H0Element d3 = frameDeriv(phi.g, phi.frame.e3u.at(i, j), phi.frame.e3v.at(i, j), i, j, c);
        D.at(i, j) = sigmaJ * d2.hat() + sigmaiK * d3.hat();
    });
    return D;
}

Grid<double> diracResidual(const SpinorField& phi, const MeanCurvature& H) {
    const NullChart& c = phi.chart;
    const Grid<H0Element> D = diracApply(phi);
    Grid<double> res(c);
    parallelFor(c.n_s, c.n_t, [&](int i, int j) {
        const Vector22 hv = normalVector(H.H0.at(i, j), H.H1.at(i, j));
        res.at(i, j) = (D.at(i, j) - vectorAction(hv, phi.g.at(i, j))).norm();
    });
    return res;
}

H0Element etaElement(const Vector22& Bxe2, const Vector22& Bxe3) {
    const H0Element t2 = vectorActionOdd(gammaOdd(Vector22::basis(2)), gammaOdd(Bxe2));
    const H0Element t3 = vectorActionOdd(gammaOdd(Vector22::basis(3)), gammaOdd(Bxe3));
    return 0.5 * t2 - 0.5 * t3;
}

namespace {

// eta(d_u) and eta(d_v) from B in coordinate components.
void etaGrids(const CoordinateB& B, const FrameCoords& frame, const NullChart& c,
              Grid<H0Element>& eta_u, Grid<H0Element>& eta_v) {
    eta_u = Grid<H0Element>(c);
    eta_v = Grid<H0Element>(c);
    parallelFor(c.n_s, c.n_t, [&](int i, int j) {
        const double e2u = frame.e2u.at(i, j), e2v = frame.e2v.at(i, j);
        const double e3u = frame.e3u.at(i, j), e3v = frame.e3v.at(i, j);
        const Vector22 Buu = normalVector(B.buu_0.at(i, j), B.buu_1.at(i, j));
        const Vector22 Buv = normalVector(B.buv_0.at(i, j), B.buv_1.at(i, j));
        const Vector22 Bvv = normalVector(B.bvv_0.at(i, j), B.bvv_1.at(i, j));
        eta_u.at(i, j) = etaElement(e2u * Buu + e2v * Buv, e3u * Buu + e3v * Buv);
        eta_v.at(i, j) = etaElement(e2u * Buv + e2v * Bvv, e3u * Buv + e3v * Bvv);
    });
}

} // namespace

Grid<double> killingResidual(const SpinorField& phi, const CoordinateB& B) {
    const NullChart& c = phi.chart;
    Grid<H0Element> eta_u, eta_v;
    etaGrids(B, phi.frame, c, eta_u, eta_v);
    Grid<double> res(c);
    parallelFor(c.n_s, c.n_t, [&](int i, int j) {
        const H0Element g = phi.g.at(i, j);
        const double ru = (derivU(phi.g, i, j, c) - eta_u.at(i, j) * g).norm();
        const double rv = (derivV(phi.g, i, j, c) - eta_v.at(i, j) * g).norm();
        res.at(i, j) = std::max(ru, rv);
    });
    return res;
}

SecondFundamentalForm extractB(const SpinorField& phi, double normTol) {
    const NullChart& c = phi.chart;
    SecondFundamentalForm B{Grid<double>(c), Grid<double>(c), Grid<double>(c),
                            Grid<double>(c), Grid<double>(c), Grid<double>(c)};
    parallelForChecked(c.n_s, c.n_t, [&](int i, int j) {
        const H0Element g = phi.g.at(i, j);
        const LorentzNumber h = hForm(g, g);
        if (std::abs(h.plus - 1.0) > normTol || std::abs(h.minus - 1.0) > normTol)
            throw NotNormalized("spinor field is not H-unit");
        const H0Element grad2 =
            frameDeriv(phi.g, phi.frame.e2u.at(i, j), phi.frame.e2v.at(i, j), i, j, c);
        const H0Element grad3 =
            frameDeriv(phi.g, phi.frame.e3u.at(i, j), phi.frame.e3v.at(i, j), i, j, c);
        const H0Element nu0phi = vectorAction(Vector22::basis(0), g);
        const H0Element nu1phi = vectorAction(Vector22::basis(1), g);
        // <B(e_i,e_j), nu> = -2 <e_i . nabla_{e_j} phi, nu . phi>, with
        // components c0 = -<B,e0>, c1 = +<B,e1>.
        auto comp = [&](int iv, const H0Element& grad, const H0Element& nuphi, double sgn) {
            const H0Element act = vectorAction(Vector22::basis(iv), grad);
            return sgn * (-2.0) * hForm(act, nuphi).u();
        };
        B.b22_0.at(i, j) = comp(2, grad2, nu0phi, -1.0);
        B.b22_1.at(i, j) = comp(2, grad2, nu1phi, +1.0);
        B.b33_0.at(i, j) = comp(3, grad3, nu0phi, -1.0);
        B.b33_1.at(i, j) = comp(3, grad3, nu1phi, +1.0);
        B.b23_0.at(i, j) = 0.5 * (comp(2, grad3, nu0phi, -1.0) + comp(3, grad2, nu0phi, -1.0));
        B.b23_1.at(i, j) = 0.5 * (comp(2, grad3, nu1phi, +1.0) + comp(3, grad2, nu1phi, +1.0));
    });
    return B;
}

XiForm xiForm(const SpinorField& phi) {
    const NullChart& c = phi.chart;
    XiForm xi{c, Grid<Vector22>(c), Grid<Vector22>(c), 0.0};
    Grid<double> defect(c, 0.0);
    parallelForChecked(c.n_s, c.n_t, [&](int i, int j) {
        const H0Element g = phi.g.at(i, j);
        const DualFrame d = dualFrame(phi.frame, i, j);
        auto evaluate = [&](double a, double b, Vector22& out) {
            const Vector22 x{0, 0, a, b};
            const SpinorPairing p = spinorPairing(vectorAction(x, g), g);
            defect.at(i, j) = std::max(defect.at(i, j), p.bracket.vectorDefect());
            out = p.bracket.toVector();
        };
        evaluate(d.a_u, d.b_u, xi.xi_u.at(i, j));
        evaluate(d.a_v, d.b_v, xi.xi_v.at(i, j));
    });
    xi.membershipDefect = maxInterior(c.n_s, c.n_t, 0, [&](int i, int j) { return defect.at(i, j); });
    return xi;
}

Grid<double> dxiResidual(const XiForm& xi) {
    const NullChart& c = xi.chart;
    Grid<double> res(c);
    parallelFor(c.n_s, c.n_t, [&](int i, int j) {
        res.at(i, j) = maxAbs(derivU(xi.xi_v, i, j, c) - derivV(xi.xi_u, i, j, c));
    });
    return res;
}

ImmersionResult integrateImmersion(const XiForm& xi, const Vector22& base, double closedTol) {
    const NullChart& c = xi.chart;
    Grid<Vector22> xi_s(c), xi_t(c);
    parallelFor(c.n_s, c.n_t, [&](int i, int j) {
        xi_s.at(i, j) = 0.5 * (xi.xi_u.at(i, j) + xi.xi_v.at(i, j));
        xi_t.at(i, j) = 0.5 * (xi.xi_u.at(i, j) - xi.xi_v.at(i, j));
    });

    ImmersionResult r{c, Grid<Vector22>(c), xi, dxiResidual(xi), 0.0};
    double xiScale = 0;
    for (const Vector22& x : xi.xi_u.data) xiScale = std::max(xiScale, maxAbs(x));
    for (const Vector22& x : xi.xi_v.data) xiScale = std::max(xiScale, maxAbs(x));
    // Consistent sampled data has a discrete d xi of size O(h^2 |d^3 xi|),
    // so the gate must scale with h^2 to accept it while rejecting O(1)
    // non-closedness.
    const double h = std::max(c.h_s, c.h_t);
    if (closedTol < 0) closedTol = 20.0 * std::max(xiScale, 1e-30) * h * h;
    const double worst = maxInterior(c.n_s, c.n_t, 1, [&](int i, int j) { return r.dxi.at(i, j); });
    if (worst > closedTol) throw NotClosed("d xi residual " + std::to_string(worst));

    Grid<Vector22> FA(c), FB(c);
    FA.at(0, 0) = FB.at(0, 0) = base;
    // Row-first: along s at t=t0, then along t.
    for (int i = 1; i < c.n_s; ++i)
        FA.at(i, 0) = FA.at(i - 1, 0) + (0.5 * c.h_s) * (xi_s.at(i - 1, 0) + xi_s.at(i, 0));
    for (int i = 0; i < c.n_s; ++i)
        for (int j = 1; j < c.n_t; ++j)
            FA.at(i, j) = FA.at(i, j - 1) + (0.5 * c.h_t) * (xi_t.at(i, j - 1) + xi_t.at(i, j));
    // Column-first.
    for (int j = 1; j < c.n_t; ++j)
        FB.at(0, j) = FB.at(0, j - 1) + (0.5 * c.h_t) * (xi_t.at(0, j - 1) + xi_t.at(0, j));
    for (int j = 0; j < c.n_t; ++j)
        for (int i = 1; i < c.n_s; ++i)
            FB.at(i, j) = FB.at(i - 1, j) + (0.5 * c.h_s) * (xi_s.at(i - 1, j) + xi_s.at(i, j));

    double defect = 0;
    for (int i = 0; i < c.n_s; ++i)
        for (int j = 0; j < c.n_t; ++j) defect = std::max(defect, maxAbs(FA.at(i, j) - FB.at(i, j)));
    r.F = FA;
    r.pathDefect = defect;
    return r;
}

SpinorField integrateKilling(const CoordinateB& B, const FrameCoords& frame,
                             const H0Element& phi0, const NullChart& chart) {
    Grid<H0Element> eta_u, eta_v;
    etaGrids(B, frame, chart, eta_u, eta_v);
    Grid<H0Element> eta_s(chart), eta_t(chart);
    parallelFor(chart.n_s, chart.n_t, [&](int i, int j) {
        eta_s.at(i, j) = 0.5 * (eta_u.at(i, j) + eta_v.at(i, j));
        eta_t.at(i, j) = 0.5 * (eta_u.at(i, j) - eta_v.at(i, j));
    });

    SpinorField phi{chart, Grid<H0Element>(chart), frame};
    phi.g.at(0, 0) = normalizeSpin(phi0);
    for (int i = 1; i < chart.n_s; ++i) {
        const H0Element step = (0.5 * chart.h_s) * (eta_s.at(i - 1, 0) + eta_s.at(i, 0));
        phi.g.at(i, 0) = normalizeSpin(expH0(step) * phi.g.at(i - 1, 0));
    }
    for (int i = 0; i < chart.n_s; ++i)
        for (int j = 1; j < chart.n_t; ++j) {
            const H0Element step = (0.5 * chart.h_t) * (eta_t.at(i, j - 1) + eta_t.at(i, j));
            phi.g.at(i, j) = normalizeSpin(expH0(step) * phi.g.at(i, j - 1));
        }
    return phi;
}

ImmersionResult twoStepIntegrate(const Grid<double>& guu, const Grid<double>& guv,
                                 const Grid<double>& gvv, const SecondFundamentalForm& frameB,
                                 const CoordinateB& coordB, const NormalConnection& conn,
                                 const FrameCoords& frame, const H0Element& phi0,
                                 const Vector22& base, const NullChart& chart,
                                 double integrabilityTol) {
    const FundamentalResiduals res =
        fundamentalResiduals(guu, guv, gvv, frameB, coordB, conn, frame, chart);
    const double worst = maxInterior(chart.n_s, chart.n_t, 2, [&](int i, int j) {
        return std::max({res.gauss.at(i, j), res.codazzi.at(i, j), res.ricci.at(i, j)});
    });
    if (worst > integrabilityTol)
        throw IntegrabilityViolated("Gauss-Codazzi-Ricci residual " + std::to_string(worst));

    const SpinorField phi = integrateKilling(coordB, frame, phi0, chart);
    return integrateImmersion(xiForm(phi), base);
}

ProcrustesResult procrustesAlign(const Grid<Vector22>& X, const Grid<Vector22>& Y) {
    if (X.n_s != Y.n_s || X.n_t != Y.n_t || X.data.empty())
        throw SchemaError("mismatched point sets");
    // Normal equations of y ~ A x + b, one 5-unknown system per output row,
    // all sharing the Gram matrix of (x0,x1,x2,x3,1).  A small ridge seeded
    // at the identity map keeps the system solvable when the points lie in
    // an affine subspace (the fit is then pulled toward the identity in the
    // unconstrained directions, and orthoDefect is only meaningful for
    // affinely full-dimensional point sets).
    double G[5][5] = {};
    double rhs[4][5] = {};
    const size_t n = X.data.size();
    for (size_t k = 0; k < n; ++k) {
        const double z[5] = {X.data[k].x0, X.data[k].x1, X.data[k].x2, X.data[k].x3, 1.0};
        for (int a = 0; a < 5; ++a) {
            for (int b = 0; b < 5; ++b) G[a][b] += z[a] * z[b];
            for (int r = 0; r < 4; ++r) rhs[r][a] += Y.data[k][r] * z[a];
        }
    }
    double gScale = 0;
    for (int a = 0; a < 5; ++a) gScale = std::max(gScale, G[a][a]);
    const double ridge = 1e-10 * std::max(gScale, 1.0);
    for (int a = 0; a < 5; ++a) G[a][a] += ridge;
    for (int r = 0; r < 4; ++r) rhs[r][r] += ridge; // identity seed: A = Id, b = 0
    // Gaussian elimination with partial pivoting on the shared matrix.
    double M[5][10];
    for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) M[a][b] = G[a][b];
        for (int r = 0; r < 4; ++r) M[a][5 + r] = rhs[r][a];
        M[a][9] = 0;
    }
    for (int col = 0; col < 5; ++col) {
        int piv = col;
        for (int a = col + 1; a < 5; ++a)
            if (std::abs(M[a][col]) > std::abs(M[piv][col])) piv = a;
        if (std::abs(M[piv][col]) <= 0.0)
            throw SingularSystem("degenerate point configuration");
        if (piv != col)
            for (int b = 0; b < 10; ++b) std::swap(M[piv][b], M[col][b]);
        for (int a = 0; a < 5; ++a) {
            if (a == col) continue;
            const double f = M[a][col] / M[col][col];
            for (int b = col; b < 10; ++b) M[a][b] -= f * M[col][b];
        }
    }
    ProcrustesResult out;
    for (int r = 0; r < 4; ++r) {
        for (int c2 = 0; c2 < 4; ++c2) out.A.a[r][c2] = M[c2][5 + r] / M[c2][c2];
        out.b[r] = M[4][5 + r] / M[4][4];
    }
    double sq = 0;
    for (size_t k = 0; k < n; ++k) {
        const Vector22 d = out.A * X.data[k] + out.b - Y.data[k];
        sq += d.x0 * d.x0 + d.x1 * d.x1 + d.x2 * d.x2 + d.x3 * d.x3;
    }
    out.rms = std::sqrt(sq / double(n));
    out.orthoDefect = metricDefect(out.A);
    out.residual = out.rms + out.orthoDefect;
    return out;
}

} // namespace lorspin

#include "lorspin/generator.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <string>

namespace lorspin {

namespace {

std::string location(double s, double t) {
    return "(s,t)=(" + std::to_string(s) + "," + std::to_string(t) + ")";
}

} // namespace

Profile1D Profile1D::poly(std::vector<double> c) {
    Profile1D p;
    p.kind = Kind::poly;
    p.coeffs = std::move(c);
    return p;
}

Profile1D Profile1D::samples(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size() || x.size() < 2) throw SchemaError("profile needs >= 2 samples");
    for (size_t k = 1; k < x.size(); ++k)
        if (x[k] <= x[k - 1]) throw SchemaError("profile samples must be increasing");
    Profile1D p;
    p.kind = Kind::samples;
    p.xs = std::move(x);
    p.ys = std::move(y);
    return p;
}

double Profile1D::value(double x) const {
    if (kind == Kind::poly) {
        double r = 0;
        for (size_t k = coeffs.size(); k-- > 0;) r = r * x + coeffs[k];
        return r;
    }
    if (x < xs.front() - 1e-12 || x > xs.back() + 1e-12)
        throw SchemaError("profile evaluated outside its sample range at x=" + std::to_string(x));
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const size_t hi = std::min(size_t(std::max<long>(1, it - xs.begin())), xs.size() - 1);
    const double w = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
    return ys[hi - 1] + w * (ys[hi] - ys[hi - 1]);
}

double Profile1D::derivative(double x) const {
    if (kind == Kind::poly) {
        double r = 0;
        for (size_t k = coeffs.size(); k-- > 1;) r = r * x + k * coeffs[k];
        return r;
    }
    if (x < xs.front() - 1e-12 || x > xs.back() + 1e-12)
        throw SchemaError("profile evaluated outside its sample range at x=" + std::to_string(x));
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const size_t hi = std::min(size_t(std::max<long>(1, it - xs.begin())), xs.size() - 1);
    return (ys[hi] - ys[hi - 1]) / (xs[hi] - xs[hi - 1]);
}

HyperbolicSolution solveHyperbolic(const ConformalMap& psi, const Profile1D& lambda0,
                                   const Profile1D& mu0, const NullChart& chart) {
    if (std::abs(chart.h_s - chart.h_t) > 1e-12 * chart.h_s)
        throw SchemaError("hyperbolic solver requires h_s = h_t");
    const double h = chart.h_s;
    const int m = chart.n_s - 1;        // extra columns on each side
    const int W = chart.n_t + 2 * m;    // extended row width
    const auto tOf = [&](int jj) { return chart.t0 + (jj - m) * h; };

    // Source terms along the two characteristics:
    // (d_s - d_t) lambda = -1/2 (psi1' + psi2') mu,
    // (d_s + d_t) mu     = -1/2 (psi1' - psi2') lambda.
    const auto Fl = [&](double s, double t, double mu) {
        return -0.5 * (psi.psi1.derivative(s) + psi.psi2.derivative(t)) * mu;
    };
    const auto Fm = [&](double s, double t, double lam) {
        return -0.5 * (psi.psi1.derivative(s) - psi.psi2.derivative(t)) * lam;
    };

    HyperbolicSolution sol{chart, Grid<double>(chart), Grid<double>(chart)};
    std::vector<double> lam(W), mu(W), lamNext(W), muNext(W);
    for (int jj = 0; jj < W; ++jj) {
        lam[jj] = lambda0.value(tOf(jj));
        mu[jj] = mu0.value(tOf(jj));
    }
    for (int i = 0; i < chart.n_s; ++i) {
        for (int j = 0; j < chart.n_t; ++j) {
            const double l = lam[j + m], u = mu[j + m];
            if (l == 0.0 || u == 0.0)
                throw ZeroCrossing("lambda or mu vanishes at " + location(chart.s(i), chart.t(j)));
            sol.lambda.at(i, j) = l;
            sol.mu.at(i, j) = u;
        }
        if (i == chart.n_s - 1) break;
        const double s = chart.s(i), sn = chart.s(i + 1);
        for (int jj = i + 1; jj < W - 1 - i; ++jj) {
            const double t = tOf(jj);
            const double fl0 = Fl(s, tOf(jj + 1), mu[jj + 1]);
            const double fm0 = Fm(s, tOf(jj - 1), lam[jj - 1]);
            const double lp = lam[jj + 1] + h * fl0;
            const double mp = mu[jj - 1] + h * fm0;
            lamNext[jj] = lam[jj + 1] + 0.5 * h * (fl0 + Fl(sn, t, mp));
            muNext[jj] = mu[jj - 1] + 0.5 * h * (fm0 + Fm(sn, t, lp));
            if (lamNext[jj] * lam[jj + 1] <= 0.0 || muNext[jj] * mu[jj - 1] <= 0.0)
                throw ZeroCrossing("lambda or mu crosses zero near " + location(sn, t));
        }
        std::swap(lam, lamNext);
        std::swap(mu, muNext);
    }
    return sol;
}

namespace {

// g'g^{-1} of the null component: cosh psi J + i sinh psi K, or with the
// hyperbolic functions swapped.
H0Element frameForm(double psiValue, bool coshForm) {
    const double c = std::cosh(psiValue), s = std::sinh(psiValue);
    return coshForm ? H0Element{{}, {}, LorentzNumber::real(c), LorentzNumber::real(s)}
                    : H0Element{{}, {}, LorentzNumber::real(s), LorentzNumber::real(c)};
}

void branchForms(SpinBranch b, bool& cosh1, bool& cosh2) {
    switch (b) {
        case SpinBranch::delta_pos_1: cosh1 = true;  cosh2 = true;  break;
        case SpinBranch::delta_pos_2: cosh1 = false; cosh2 = false; break;
        case SpinBranch::delta_neg_1: cosh1 = true;  cosh2 = false; break;
        case SpinBranch::delta_neg_2: cosh1 = false; cosh2 = true;  break;
    }
}

H0Element nullComponent(const H0Element& p, bool plusPart) {
    const auto pick = [&](const LorentzNumber& x) {
        return LorentzNumber::real(plusPart ? x.plus : x.minus);
    };
    return {pick(p.p0), pick(p.p1), pick(p.p2), pick(p.p3)};
}

H0Element combineNull(const H0Element& a, const H0Element& b) {
    const auto mix = [](const LorentzNumber& x, const LorentzNumber& y) {
        return LorentzNumber::fromNull(x.u(), y.u());
    };
    return {mix(a.p0, b.p0), mix(a.p1, b.p1), mix(a.p2, b.p2), mix(a.p3, b.p3)};
}

// i * (even element): i(p0 + i p1 I + p2 J + i p3 K) in H1 coordinates.
H1Element iTimesH0(const H0Element& p) {
    return {p.p0, -p.p1, p.p2, -p.p3};
}

// xi component i g^{-1} (alpha J + beta iK) hat(g), as a vector of R^{2,2}.
Vector22 xiComponent(const H0Element& g, double alpha, double beta, double& defect) {
    const H0Element core{{}, {}, LorentzNumber::real(alpha), LorentzNumber::real(beta)};
    const H1Element xi = iTimesH0(inverseH0(g) * core * g.hat());
    defect = std::max(defect, xi.vectorDefect());
    return xi.toVector();
}

} // namespace

SpinFrameField integrateSpinFrame(const ConformalMap& psi, SpinBranch branch,
                                  const H0Element& g0, const NullChart& chart) {
    const LorentzNumber h0 = hForm(g0, g0);
    if (std::abs(h0.plus - 1.0) > 1e-9 || std::abs(h0.minus - 1.0) > 1e-9)
        throw NotUnitSpinor("g0 is not H-unit");
    bool cosh1 = true, cosh2 = true;
    branchForms(branch, cosh1, cosh2);

    SpinFrameField f{chart, branch, Grid<H0Element>(chart), Grid<H0Element>(chart), {}, {}};
    f.g1.resize(chart.n_s);
    f.g2.resize(chart.n_t);
    f.g1[0] = nullComponent(g0, true);
    f.g2[0] = nullComponent(g0, false);
    for (int i = 1; i < chart.n_s; ++i) {
        const double mid = chart.s(i - 1) + 0.5 * chart.h_s;
        const H0Element step = chart.h_s * frameForm(psi.psi1.value(mid), cosh1);
        f.g1[i] = normalizeSpin(expH0(step) * f.g1[i - 1]);
    }
    for (int j = 1; j < chart.n_t; ++j) {
        const double mid = chart.t(j - 1) + 0.5 * chart.h_t;
        const H0Element step = chart.h_t * frameForm(psi.psi2.value(mid), cosh2);
        f.g2[j] = normalizeSpin(expH0(step) * f.g2[j - 1]);
    }
    parallelFor(chart.n_s, chart.n_t, [&](int i, int j) {
        f.g.at(i, j) = combineNull(f.g1[i], f.g2[j]);
        f.gprime.at(i, j) = combineNull(frameForm(psi.psi1.value(chart.s(i)), cosh1) * f.g1[i],
                                        frameForm(psi.psi2.value(chart.t(j)), cosh2) * f.g2[j]);
    });
    return f;
}

FlatImmersion assembleFlatImmersion(const HyperbolicSolution& sol, const SpinFrameField& g,
                                    const ConformalMap& psi, int sign, const Vector22& base) {
    // The sign of N1 is determined by the branch of the frame equation
    // (the cosh form gives +, the sinh form gives -); a mismatched pair
    // yields a non-closed xi.
    if (g.branch != (sign >= 0 ? SpinBranch::delta_pos_1 : SpinBranch::delta_pos_2))
        throw SchemaError("sign inconsistent with the spin frame branch");
    const NullChart& c = sol.chart;
    const double sg = sign >= 0 ? 1.0 : -1.0;
    FlatImmersion out;
    out.chart = c;
    out.sign = sign >= 0 ? +1 : -1;
    out.lambda = sol.lambda;
    out.mu = sol.mu;
    out.xi = XiForm{c, Grid<Vector22>(c), Grid<Vector22>(c), 0.0};
    out.frame = FrameCoords{Grid<double>(c), Grid<double>(c), Grid<double>(c), Grid<double>(c)};
    out.H = MeanCurvature{Grid<double>(c), Grid<double>(c)};
    Grid<double> defects(c, 0.0);

    parallelForChecked(c.n_s, c.n_t, [&](int i, int j) {
        const double s = c.s(i), t = c.t(j);
        const double lam = sol.lambda.at(i, j), mu = sol.mu.at(i, j);
        if (std::abs(lam) < 1e-12 || std::abs(mu) < 1e-12)
            throw ZeroCrossing("lambda or mu vanishes at " + location(s, t));
        const double th1 = psi.theta1(s, t), th2 = psi.theta2(s, t);
        const double ep = std::exp(th1), em = std::exp(-th1);

        // Dual forms of N1 = sg (e^{th1}/sqrt2)(1/lam d_u + 1/mu d_v) and
        // N2 = (e^{-th1}/sqrt2)(1/lam d_u - 1/mu d_v), combined into the
        // J and iK coefficients of xi.
        const double alpha_u = 0.5 * lam * (ep - sg * em);
        const double beta_u = 0.5 * lam * (ep + sg * em);
        const double alpha_v = -0.5 * mu * (ep + sg * em);
        const double beta_v = -0.5 * mu * (ep - sg * em);

        double d = 0;
        const H0Element& gij = g.g.at(i, j);
        out.xi.xi_u.at(i, j) = xiComponent(gij, alpha_u, beta_u, d);
        out.xi.xi_v.at(i, j) = xiComponent(gij, alpha_v, beta_v, d);
        defects.at(i, j) = d;

        out.frame.e2u.at(i, j) = (sg * ep - em) / (2 * lam);
        out.frame.e2v.at(i, j) = (sg * ep + em) / (2 * mu);
        out.frame.e3u.at(i, j) = (sg * ep + em) / (2 * lam);
        out.frame.e3v.at(i, j) = (sg * ep - em) / (2 * mu);

        out.H.H0.at(i, j) = -(std::cosh(th2) / mu - std::sinh(th2) / lam);
        out.H.H1.at(i, j) = -(-std::sinh(th2) / mu + std::cosh(th2) / lam);
    });
    out.xi.membershipDefect =
        maxInterior(c.n_s, c.n_t, 0, [&](int i, int j) { return defects.at(i, j); });
    out.immersion = integrateImmersion(out.xi, base);
    return out;
}

Grid<std::complex<double>> pseudoanalyticCoefficient(const ConformalMap& psi,
                                                     const NullChart& chart) {
    Grid<std::complex<double>> b(chart);
    parallelFor(chart.n_s, chart.n_t, [&](int i, int j) {
        b.at(i, j) = {-0.25 * psi.psi1.derivative(chart.s(i)),
                      -0.25 * psi.psi2.derivative(chart.t(j))};
    });
    return b;
}

Grid<std::complex<double>> solvePseudoanalytic(const Grid<std::complex<double>>& b,
                                               const Grid<std::complex<double>>& seed,
                                               const NullChart& chart) {
    const int ns = chart.n_s, nt = chart.n_t;
    const int unknowns = 2 * ns * nt;
    const auto id = [&](int i, int j, int comp) { return 2 * (i * nt + j) + comp; };

    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> rhs;
    int row = 0;

    // Keller-box equations of (1/2)(d_s + i d_t) f = b conj(f), centered at
    // cell midpoints: difference/average stencils over the four corners.
    const double cs[4] = {-1, +1, -1, +1}; // (i,j), (i+1,j), (i,j+1), (i+1,j+1)
    const double ct[4] = {-1, -1, +1, +1};
    for (int i = 0; i < ns - 1; ++i)
        for (int j = 0; j < nt - 1; ++j) {
            const int ci[4] = {i, i + 1, i, i + 1};
            const int cj[4] = {j, j, j + 1, j + 1};
            std::complex<double> bc = 0.25 * (b.at(i, j) + b.at(i + 1, j) + b.at(i, j + 1) +
                                              b.at(i + 1, j + 1));
            const double br = bc.real(), bi = bc.imag();
            for (int k = 0; k < 4; ++k) {
                const double ds = 0.5 * cs[k] / (2 * chart.h_s);
                const double dt = 0.5 * ct[k] / (2 * chart.h_t);
                const int fr = id(ci[k], cj[k], 0), fi = id(ci[k], cj[k], 1);
                // Re: (1/2)(Ds fr - Dt fi) - br <fr> - bi <fi> = 0
                trip.emplace_back(row, fr, ds - 0.25 * br);
                trip.emplace_back(row, fi, -dt - 0.25 * bi);
                // Im: (1/2)(Ds fi + Dt fr) - bi <fr> + br <fi> = 0
                trip.emplace_back(row + 1, fr, dt - 0.25 * bi);
                trip.emplace_back(row + 1, fi, ds + 0.25 * br);
            }
            rhs.push_back(0);
            rhs.push_back(0);
            row += 2;
        }
    // Boundary trace fixing the holomorphic freedom.
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j) {
            if (i != 0 && i != ns - 1 && j != 0 && j != nt - 1) continue;
            trip.emplace_back(row, id(i, j, 0), 1.0);
            rhs.push_back(seed.at(i, j).real());
            ++row;
            trip.emplace_back(row, id(i, j, 1), 1.0);
            rhs.push_back(seed.at(i, j).imag());
            ++row;
        }

    Eigen::SparseMatrix<double> A(row, unknowns);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::VectorXd rv = Eigen::Map<Eigen::VectorXd>(rhs.data(), row);
    Eigen::SparseMatrix<double> AtA = Eigen::SparseMatrix<double>(A.transpose()) * A;
    for (int k = 0; k < unknowns; ++k) AtA.coeffRef(k, k) += 1e-12;
    const Eigen::VectorXd Atb = A.transpose() * rv;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(AtA);
    if (solver.info() != Eigen::Success) throw SingularSystem("pseudoanalytic factorization failed");
    const Eigen::VectorXd x = solver.solve(Atb);
    if (solver.info() != Eigen::Success) throw SingularSystem("pseudoanalytic solve failed");

    Grid<std::complex<double>> f(chart);
    parallelFor(ns, nt, [&](int i, int j) {
        f.at(i, j) = {x[id(i, j, 0)], x[id(i, j, 1)]};
    });
    return f;
}

Grid<double> pseudoanalyticResidual(const Grid<std::complex<double>>& f,
                                    const Grid<std::complex<double>>& b,
                                    const NullChart& chart) {
    Grid<double> res(chart, 0.0);
    parallelFor(chart.n_s - 1, chart.n_t - 1, [&](int i, int j) {
        const std::complex<double> ds =
            (f.at(i + 1, j) + f.at(i + 1, j + 1) - f.at(i, j) - f.at(i, j + 1)) /
            (2 * chart.h_s);
        const std::complex<double> dt =
            (f.at(i, j + 1) + f.at(i + 1, j + 1) - f.at(i, j) - f.at(i + 1, j)) /
            (2 * chart.h_t);
        const std::complex<double> avg =
            0.25 * (f.at(i, j) + f.at(i + 1, j) + f.at(i, j + 1) + f.at(i + 1, j + 1));
        const std::complex<double> bc =
            0.25 * (b.at(i, j) + b.at(i + 1, j) + b.at(i, j + 1) + b.at(i + 1, j + 1));
        const std::complex<double> r =
            0.5 * (ds + std::complex<double>(0, 1) * dt) - bc * std::conj(avg);
        res.at(i, j) = std::abs(r);
    });
    return res;
}

FlatImmersion assembleFlatImmersionNeg(const Grid<std::complex<double>>& f,
                                       const SpinFrameField& g, const ConformalMap& psi,
                                       int sign, const Vector22& base) {
    if (g.branch != (sign >= 0 ? SpinBranch::delta_neg_1 : SpinBranch::delta_neg_2))
        throw SchemaError("sign inconsistent with the spin frame branch");
    const NullChart& c = g.chart;
    const double sg = sign >= 0 ? 1.0 : -1.0;
    FlatImmersion out;
    out.chart = c;
    out.sign = sign >= 0 ? +1 : -1;
    out.nu = Grid<double>(c);
    out.rho = Grid<double>(c);
    out.xi = XiForm{c, Grid<Vector22>(c), Grid<Vector22>(c), 0.0};
    out.frame = FrameCoords{Grid<double>(c), Grid<double>(c), Grid<double>(c), Grid<double>(c)};
    out.H = MeanCurvature{Grid<double>(c), Grid<double>(c)};
    Grid<double> defects(c, 0.0);

    parallelForChecked(c.n_s, c.n_t, [&](int i, int j) {
        const double s = c.s(i), t = c.t(j);
        const double rho = f.at(i, j).real(), nu = -f.at(i, j).imag();
        const double r2 = nu * nu + rho * rho;
        if (r2 < 1e-12) throw ZeroCrossing("f vanishes at " + location(s, t));
        out.nu.at(i, j) = nu;
        out.rho.at(i, j) = rho;
        const double th1 = psi.theta1(s, t), th2 = psi.theta2(s, t);
        const double ep = std::exp(th1), em = std::exp(-th1);

        // Dual forms of N1 = sg (e^{th1}/sqrt2)(rho d_s + nu d_t)/r2 and
        // N2 = (e^{-th1}/sqrt2)(-nu d_s + rho d_t)/r2:
        // w1 = sg sqrt2 e^{-th1}(rho, nu), w2 = sqrt2 e^{th1}(-nu, rho).
        const double alpha_s = -ep * nu - sg * em * rho;
        const double beta_s = -ep * nu + sg * em * rho;
        const double alpha_t = ep * rho - sg * em * nu;
        const double beta_t = ep * rho + sg * em * nu;

        double d = 0;
        const H0Element& gij = g.g.at(i, j);
        const Vector22 xs = xiComponent(gij, alpha_s, beta_s, d);
        const Vector22 xt = xiComponent(gij, alpha_t, beta_t, d);
        out.xi.xi_u.at(i, j) = xs + xt;
        out.xi.xi_v.at(i, j) = xs - xt;
        defects.at(i, j) = d;

        const double e2s = (sg * ep * rho + em * nu) / (2 * r2);
        const double e2t = (sg * ep * nu - em * rho) / (2 * r2);
        const double e3s = (sg * ep * rho - em * nu) / (2 * r2);
        const double e3t = (sg * ep * nu + em * rho) / (2 * r2);
        out.frame.e2u.at(i, j) = 0.5 * (e2s + e2t);
        out.frame.e2v.at(i, j) = 0.5 * (e2s - e2t);
        out.frame.e3u.at(i, j) = 0.5 * (e3s + e3t);
        out.frame.e3v.at(i, j) = 0.5 * (e3s - e3t);

        out.H.H0.at(i, j) = 0.5 * (-std::exp(th2) * nu - std::exp(-th2) * rho) / r2;
        out.H.H1.at(i, j) = 0.5 * (std::exp(th2) * nu - std::exp(-th2) * rho) / r2;
    });
    out.xi.membershipDefect =
        maxInterior(c.n_s, c.n_t, 0, [&](int i, int j) { return defects.at(i, j); });
    out.immersion = integrateImmersion(out.xi, base);
    return out;
}

Grid<Vector22> generateQuasiUmbilic(const RuledInput& r, const NullChart& chart, double tol) {
    const double dh = 1e-5;
    for (int i = 0; i < chart.n_s; ++i) {
        const double s = chart.s(i);
        const Vector22 gp = (r.gamma(s + dh) - r.gamma(s - dh)) * (0.5 / dh);
        const Vector22 T = r.T(s);
        const double scale = std::max(1.0, maxAbs(gp) * maxAbs(gp));
        if (std::abs(inner22(gp, gp)) > tol * scale)
            throw SchemaError("gamma is not lightlike at s=" + std::to_string(s));
        if (std::abs(inner22(T, T)) > tol * std::max(1.0, maxAbs(T) * maxAbs(T)))
            throw SchemaError("T is not lightlike at s=" + std::to_string(s));
        // Independence via the Euclidean Gram determinant.
        double gg = 0, gt = 0, tt = 0;
        for (int k = 0; k < 4; ++k) {
            gg += gp[k] * gp[k];
            gt += gp[k] * T[k];
            tt += T[k] * T[k];
        }
        if (gg * tt - gt * gt < tol * std::max(1.0, gg * tt))
            throw DegenerateRuling("gamma' and T dependent at s=" + std::to_string(s));
        if (std::abs(inner22(gp, T)) < tol * std::max(1.0, std::sqrt(gg * tt)))
            throw DegenerateRuling("ruling not transverse to gamma' at s=" + std::to_string(s));
    }
    Grid<Vector22> F(chart);
    parallelFor(chart.n_s, chart.n_t, [&](int i, int j) {
        F.at(i, j) = r.gamma(chart.s(i)) + chart.t(j) * r.T(chart.s(i));
    });
    return F;
}

} // namespace lorspin

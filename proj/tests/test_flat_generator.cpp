#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "lorspin/generator.hpp"

using namespace lorspin;

namespace {

double maxGridAbs(const Grid<double>& g) {
    double m = 0;
    for (double x : g.data) m = std::max(m, std::abs(x));
    return m;
}

// Max interior deviation of the induced metric of an analyzed immersion from
// the target (guu, guv, gvv).
double metricError(const ImmersionAnalysis& an, const NullChart& c,
                   std::function<double(int, int)> guu, std::function<double(int, int)> guv,
                   std::function<double(int, int)> gvv) {
    return maxInterior(c.n_s, c.n_t, 2, [&](int i, int j) {
        return std::max({std::abs(an.guu.at(i, j) - guu(i, j)),
                         std::abs(an.guv.at(i, j) - guv(i, j)),
                         std::abs(an.gvv.at(i, j) - gvv(i, j))});
    });
}

// Combined flatness defect: intrinsic and normal curvature on the interior.
double flatnessError(const ImmersionAnalysis& an, const NullChart& c) {
    return maxInterior(c.n_s, c.n_t, 2, [&](int i, int j) {
        return std::max(std::abs(an.K.at(i, j)), std::abs(an.KN.at(i, j)));
    });
}

} // namespace

TEST_CASE("profiles evaluate polynomials and sample tables") {
    const Profile1D p = Profile1D::poly({1.0, -2.0, 0.5});
    CHECK(p.value(2.0) == doctest::Approx(1 - 4 + 2).epsilon(1e-14));
    CHECK(p.derivative(2.0) == doctest::Approx(-2 + 2 * 0.5 * 2).epsilon(1e-14));
    CHECK(Profile1D::zero().value(3.0) == 0.0);
    CHECK(Profile1D::constant(4.0).derivative(1.0) == 0.0);

    const Profile1D s = Profile1D::samples({0.0, 1.0, 2.0}, {0.0, 1.0, 4.0});
    CHECK(s.value(0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s.value(1.5) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(s.derivative(0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.derivative(1.5) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(s.value(2.5), SchemaError);
    CHECK_THROWS_AS(Profile1D::samples({0.0, 0.0}, {1.0, 2.0}), SchemaError);
}

TEST_CASE("hyperbolic solver: exact transport when the coupling vanishes") {
    const ConformalMap psi{Profile1D::zero(), Profile1D::zero()};

    // Constant data stays constant.
    const NullChart c = NullChart::square(17, 2.0, 2.0);
    const HyperbolicSolution triv =
        solveHyperbolic(psi, Profile1D::constant(1.0), Profile1D::constant(1.0), c);
    for (double x : triv.lambda.data) CHECK(x == doctest::Approx(1.0).epsilon(1e-14));
    for (double x : triv.mu.data) CHECK(x == doctest::Approx(1.0).epsilon(1e-14));

    // d'Alembert oracle: lambda(s,t) = lambda0(s+t), mu(s,t) = mu0(t-s).
    const Profile1D l0 = Profile1D::poly({1.0, 0.0, 0.1});
    const Profile1D m0 = Profile1D::poly({2.0, 0.3, 0.0, 0.01});
    const HyperbolicSolution sol = solveHyperbolic(psi, l0, m0, c);
    double worst = 0;
    for (int i = 0; i < c.n_s; ++i)
        for (int j = 0; j < c.n_t; ++j) {
            worst = std::max(worst, std::abs(sol.lambda.at(i, j) - l0.value(c.s(i) + c.t(j))));
            worst = std::max(worst, std::abs(sol.mu.at(i, j) - m0.value(c.t(j) - c.s(i))));
        }
    CHECK(worst <= 1e-12);

    // A sign change of the Cauchy data is rejected.
    CHECK_THROWS_AS(
        solveHyperbolic(psi, Profile1D::poly({1.0, -1.0}), Profile1D::constant(1.0), c),
        ZeroCrossing);
    // Mismatched steps are rejected.
    CHECK_THROWS_AS(solveHyperbolic(psi, Profile1D::constant(1.0), Profile1D::constant(1.0),
                                    NullChart(17, 17, 0.1, 0.2)),
                    SchemaError);
}

TEST_CASE("hyperbolic solver: second-order residual for a coupled system") {
    const ConformalMap psi{Profile1D::poly({0.0, 0.4}), Profile1D::poly({0.0, -0.3})};
    const double dth2_u = 0.5 * (0.4 + 0.3); // d_u theta2
    const double dth2_v = 0.5 * (0.4 - 0.3); // d_v theta2
    double err[2];
    int idx = 0;
    for (int n : {33, 65}) {
        const NullChart c = NullChart::square(n, 2.0, 2.0, -1.0, -1.0);
        const HyperbolicSolution sol =
            solveHyperbolic(psi, Profile1D::constant(1.0), Profile1D::constant(1.0), c);
        err[idx++] = maxInterior(c.n_s, c.n_t, 1, [&](int i, int j) {
            const double r1 = derivU(sol.mu, i, j, c) + sol.lambda.at(i, j) * dth2_u;
            const double r2 = derivV(sol.lambda, i, j, c) + sol.mu.at(i, j) * dth2_v;
            return std::max(std::abs(r1), std::abs(r2));
        });
    }
    // At least second order; smooth near-linear data superconverges.
    const double order = std::log2(err[0] / err[1]);
    CHECK(order >= 1.7);
    CHECK(order <= 3.4);
}

TEST_CASE("spin frame integration matches closed forms") {
    const NullChart c = NullChart::square(17, 2.0, 2.0, -1.0, -1.0);

    // psi = 0, branch 1: both null components rotate by exp((a - a0) J).
    const ConformalMap zero{Profile1D::zero(), Profile1D::zero()};
    const SpinFrameField f = integrateSpinFrame(zero, SpinBranch::delta_pos_1,
                                                H0Element::one(), c);
    double worst = 0;
    for (int i = 0; i < c.n_s; ++i)
        for (int j = 0; j < c.n_t; ++j) {
            const double as = c.s(i) - c.s(0), at = c.t(j) - c.t(0);
            const H0Element expected{
                LorentzNumber::fromNull(std::cos(as), std::cos(at)), {},
                LorentzNumber::fromNull(std::sin(as), std::sin(at)), {}};
            worst = std::max(worst, (f.g.at(i, j) - expected).norm());
        }
    CHECK(worst <= 1e-12);

    // Constant psi: each component is exp(a m) with m = cosh(psi) J + i sinh(psi) K.
    const ConformalMap con{Profile1D::constant(0.4), Profile1D::constant(-0.2)};
    const SpinFrameField fc = integrateSpinFrame(con, SpinBranch::delta_pos_1,
                                                 H0Element::one(), c);
    const H0Element m1{{}, {}, LorentzNumber::real(std::cosh(0.4)),
                       LorentzNumber::real(std::sinh(0.4))};
    const H0Element m2{{}, {}, LorentzNumber::real(std::cosh(-0.2)),
                       LorentzNumber::real(std::sinh(-0.2))};
    worst = 0;
    for (int i = 0; i < c.n_s; ++i) {
        const H0Element e1 = expH0((c.s(i) - c.s(0)) * m1);
        for (int j = 0; j < c.n_t; ++j) {
            const H0Element e2 = expH0((c.t(j) - c.t(0)) * m2);
            const auto mix = [&](const LorentzNumber& a, const LorentzNumber& b) {
                return LorentzNumber::fromNull(a.u(), b.u());
            };
            const H0Element expected{mix(e1.p0, e2.p0), mix(e1.p1, e2.p1),
                                     mix(e1.p2, e2.p2), mix(e1.p3, e2.p3)};
            worst = std::max(worst, (fc.g.at(i, j) - expected).norm());
        }
    }
    CHECK(worst <= 1e-12);

    // H(g,g) = 1, H(g',g') = +1 / -1 / sigma / -sigma per branch, and g' is
    // the derivative of g: d_s g = g' (1+sigma)/2.
    const LorentzNumber expectH[4] = {LorentzNumber::real(1), LorentzNumber::real(-1),
                                      LorentzNumber::sigma(), -LorentzNumber::sigma()};
    const SpinBranch branches[4] = {SpinBranch::delta_pos_1, SpinBranch::delta_pos_2,
                                    SpinBranch::delta_neg_1, SpinBranch::delta_neg_2};
    for (int k = 0; k < 4; ++k) {
        const SpinFrameField fb = integrateSpinFrame(con, branches[k], H0Element::one(), c);
        double hErr = 0, hpErr = 0, dErr = 0;
        for (int i = 0; i < c.n_s; ++i)
            for (int j = 0; j < c.n_t; ++j) {
                const LorentzNumber h = hForm(fb.g.at(i, j), fb.g.at(i, j));
                hErr = std::max(hErr, (h - LorentzNumber::real(1)).norm());
                const LorentzNumber hp = hForm(fb.gprime.at(i, j), fb.gprime.at(i, j));
                hpErr = std::max(hpErr, (hp - expectH[k]).norm());
                if (i > 0 && i < c.n_s - 1) {
                    const H0Element ds = (fb.g.at(i + 1, j) - fb.g.at(i - 1, j)) * (0.5 / c.h_s);
                    dErr = std::max(
                        dErr, (ds - fb.gprime.at(i, j) * LorentzNumber::fromNull(1, 0)).norm());
                }
            }
        CHECK(hErr <= 1e-12);
        CHECK(hpErr <= 1e-12);
        CHECK(dErr <= 10 * c.h_s * c.h_s);
    }

    CHECK_THROWS_AS(integrateSpinFrame(zero, SpinBranch::delta_pos_1,
                                       2.0 * H0Element::one(), c),
                    NotUnitSpinor);
}

TEST_CASE("positive-branch assembly: flat, correct metric, consistent spinor data") {
    const ConformalMap psi{Profile1D::poly({0.0, 0.4}), Profile1D::poly({0.0, -0.3})};
    const Vector22 base{0, 0, 0, 0};

    const int n = 65;
    const NullChart c = NullChart::square(n, 2.0, 2.0, -1.0, -1.0);
    const HyperbolicSolution sol =
        solveHyperbolic(psi, Profile1D::constant(1.0), Profile1D::constant(1.0), c);
    const SpinFrameField g = integrateSpinFrame(psi, SpinBranch::delta_pos_1,
                                                H0Element::one(), c);
    const FlatImmersion flat = assembleFlatImmersion(sol, g, psi, +1, base);
    CHECK(flat.xi.membershipDefect <= 1e-12);

    const double h2 = c.h_s * c.h_s;
    const ImmersionAnalysis an = analyzeImmersion(flat.immersion.F, c);
    CHECK(flatnessError(an, c) <= 100 * h2);
    CHECK(metricError(an, c,
                      [&](int i, int j) { return sol.lambda.at(i, j) * sol.lambda.at(i, j); },
                      [&](int, int) { return 0.0; },
                      [&](int i, int j) { return -sol.mu.at(i, j) * sol.mu.at(i, j); }) <=
          100 * h2);

    // The assembled xi agrees with the spinor pairing of the frame field.
    const SpinorField phi{c, g.g, flat.frame};
    const XiForm xp = xiForm(phi);
    double xiErr = 0;
    for (int i = 0; i < c.n_s; ++i)
        for (int j = 0; j < c.n_t; ++j) {
            xiErr = std::max(xiErr, maxAbs(flat.xi.xi_u.at(i, j) - xp.xi_u.at(i, j)));
            xiErr = std::max(xiErr, maxAbs(flat.xi.xi_v.at(i, j) - xp.xi_v.at(i, j)));
        }
    CHECK(xiErr <= 1e-10);

    // Mean curvature agrees with the one recovered from the spinor field.
    const SecondFundamentalForm B = extractB(phi);
    Grid<double> H0g(c), H1g(c);
    meanCurvatureFromB(B, H0g, H1g);
    const double hErr = maxInterior(c.n_s, c.n_t, 2, [&](int i, int j) {
        return std::max(std::abs(H0g.at(i, j) - flat.H.H0.at(i, j)),
                        std::abs(H1g.at(i, j) - flat.H.H1.at(i, j)));
    });
    CHECK(hErr <= 100 * h2);

    // Delta > 0 on the whole interior, and dG lies in an A-line.
    const Grid<ImH0Element> G = gaussMapFromSpinFrame(g.g);
    const DeltaInvariant delta = deltaInvariant(G, c);
    int pos = 0, total = 0;
    for (int i = 2; i < c.n_s - 2; ++i)
        for (int j = 2; j < c.n_t - 2; ++j) {
            ++total;
            if (delta.sign.at(i, j) == +1) ++pos;
            const ImH0Element Gs = derivS(G, i, j, c.h_s);
            const ImH0Element Gt = derivT(G, i, j, c.h_t);
            CHECK(degenerateCrossCheck(Gs, Gt, 50 * h2) != CrossClass::independent);
        }
    CHECK(pos == total);

    // The sinh branch carries the negative sign and flips the induced metric.
    const SpinFrameField g2 = integrateSpinFrame(psi, SpinBranch::delta_pos_2,
                                                 H0Element::one(), c);
    const FlatImmersion neg = assembleFlatImmersion(sol, g2, psi, -1, base);
    const ImmersionAnalysis anNeg = analyzeImmersion(neg.immersion.F, c);
    CHECK(metricError(anNeg, c,
                      [&](int i, int j) { return -sol.lambda.at(i, j) * sol.lambda.at(i, j); },
                      [&](int, int) { return 0.0; },
                      [&](int i, int j) { return sol.mu.at(i, j) * sol.mu.at(i, j); }) <=
          100 * h2);

    // The sign is tied to the branch; a mismatched pair is rejected.
    CHECK_THROWS_AS(assembleFlatImmersion(sol, g, psi, -1, base), SchemaError);
    CHECK_THROWS_AS(assembleFlatImmersion(sol, g2, psi, +1, base), SchemaError);
}

TEST_CASE("positive-branch pipeline converges at second order") {
    const ConformalMap psi{Profile1D::poly({0.0, 0.4}), Profile1D::poly({0.0, -0.3})};
    const Profile1D one = Profile1D::constant(1.0);
    const Vector22 base{0, 0, 0, 0};

    const auto run = [&](int n) {
        const NullChart c = NullChart::square(n, 2.0, 2.0, -1.0, -1.0);
        const HyperbolicSolution sol = solveHyperbolic(psi, one, one, c);
        const SpinFrameField g =
            integrateSpinFrame(psi, SpinBranch::delta_pos_1, H0Element::one(), c);
        return assembleFlatImmersion(sol, g, psi, +1, base);
    };

    const FlatImmersion ref = run(257);
    double err[2];
    int idx = 0;
    for (int n : {33, 65}) {
        const FlatImmersion flat = run(n);
        const int stride = 256 / (n - 1);
        double fErr = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                fErr = std::max(fErr, maxAbs(flat.immersion.F.at(i, j) -
                                             ref.immersion.F.at(i * stride, j * stride)));
        err[idx++] = fErr;
        CHECK(flat.immersion.pathDefect <= 20.0 / (n * n));
    }
    const double order = std::log2(err[0] / err[1]);
    CHECK(order >= 1.7);
    CHECK(order <= 2.4);
}

TEST_CASE("pseudoanalytic solver: holomorphic and manufactured solutions") {
    // b = 0, boundary trace of f = z: the discrete solution is exactly linear.
    const NullChart c = NullChart::square(17, 2.0, 2.0, 1.0, 1.0);
    Grid<std::complex<double>> b0(c, 0.0), seed(c);
    for (int i = 0; i < c.n_s; ++i)
        for (int j = 0; j < c.n_t; ++j) seed.at(i, j) = {c.s(i), c.t(j)};
    const Grid<std::complex<double>> f0 = solvePseudoanalytic(b0, seed, c);
    double worst = 0;
    for (int i = 0; i < c.n_s; ++i)
        for (int j = 0; j < c.n_t; ++j)
            worst = std::max(worst, std::abs(f0.at(i, j) - seed.at(i, j)));
    CHECK(worst <= 1e-8);
    CHECK(maxGridAbs(pseudoanalyticResidual(f0, b0, c)) <= 1e-10);

    // Manufactured solution f = e^{0.2 s} for b = 0.1, i.e. psi1 = -0.4s.
    const ConformalMap psi{Profile1D::poly({0.0, -0.4}), Profile1D::zero()};
    double err[2];
    int idx = 0;
    for (int n : {17, 33}) {
        const NullChart cn = NullChart::square(n, 2.0, 2.0, 1.0, 1.0);
        const Grid<std::complex<double>> b = pseudoanalyticCoefficient(psi, cn);
        for (const std::complex<double>& x : b.data)
            CHECK(std::abs(x - std::complex<double>(0.1, 0.0)) <= 1e-14);
        Grid<std::complex<double>> exact(cn), sd(cn);
        for (int i = 0; i < cn.n_s; ++i)
            for (int j = 0; j < cn.n_t; ++j) {
                exact.at(i, j) = std::exp(0.2 * cn.s(i));
                sd.at(i, j) = exact.at(i, j);
            }
        const Grid<std::complex<double>> f = solvePseudoanalytic(b, sd, cn);
        double e = 0;
        for (size_t k = 0; k < f.data.size(); ++k)
            e = std::max(e, std::abs(f.data[k] - exact.data[k]));
        err[idx++] = e;
    }
    const double order = std::log2(err[0] / err[1]);
    CHECK(order >= 1.5);
    CHECK(order <= 2.6);
}

TEST_CASE("negative-branch assembly: flat, correct metric, Delta < 0") {
    // psi1 = -0.4s gives the constant coefficient b = 0.1; seed with the
    // manufactured solution f = e^{0.2 s}.
    const ConformalMap psi{Profile1D::poly({0.0, -0.4}), Profile1D::zero()};
    const Vector22 base{0, 0, 0, 0};

    const auto run = [&](int n) {
        const NullChart c = NullChart::square(n, 2.0, 2.0, 1.0, 1.0);
        const Grid<std::complex<double>> b = pseudoanalyticCoefficient(psi, c);
        Grid<std::complex<double>> sd(c);
        for (int i = 0; i < c.n_s; ++i)
            for (int j = 0; j < c.n_t; ++j) sd.at(i, j) = std::exp(0.2 * c.s(i));
        const Grid<std::complex<double>> f = solvePseudoanalytic(b, sd, c);
        const SpinFrameField g =
            integrateSpinFrame(psi, SpinBranch::delta_neg_1, H0Element::one(), c);
        return assembleFlatImmersionNeg(f, g, psi, +1, base);
    };

    const int n = 33;
    const NullChart c = NullChart::square(n, 2.0, 2.0, 1.0, 1.0);
    const double h2 = c.h_s * c.h_s;
    const FlatImmersion flat = run(n);
    CHECK(flat.xi.membershipDefect <= 1e-10);

    const ImmersionAnalysis an = analyzeImmersion(flat.immersion.F, c);
    CHECK(flatnessError(an, c) <= 200 * h2);

    // Metric sign*4(nu rho(-ds^2+dt^2) + (rho^2-nu^2) ds dt) in (u,v):
    // guu = 4(rho^2-nu^2), guv = -8 nu rho, gvv = -4(rho^2-nu^2).
    const auto rho = [&](int i, int j) { return flat.rho.at(i, j); };
    const auto nu = [&](int i, int j) { return flat.nu.at(i, j); };
    CHECK(metricError(an, c,
                      [&](int i, int j) {
                          return 4 * (rho(i, j) * rho(i, j) - nu(i, j) * nu(i, j));
                      },
                      [&](int i, int j) { return -8 * nu(i, j) * rho(i, j); },
                      [&](int i, int j) {
                          return -4 * (rho(i, j) * rho(i, j) - nu(i, j) * nu(i, j));
                      }) <= 200 * h2);

    // 100% of the interior has Delta < 0.
    const SpinFrameField gneg = integrateSpinFrame(psi, SpinBranch::delta_neg_1,
                                                   H0Element::one(), c);
    const Grid<ImH0Element> G = gaussMapFromSpinFrame(gneg.g);
    const DeltaInvariant delta = deltaInvariant(G, c);
    int negCount = 0, total = 0;
    for (int i = 2; i < c.n_s - 2; ++i)
        for (int j = 2; j < c.n_t - 2; ++j) {
            ++total;
            if (delta.sign.at(i, j) == -1) ++negCount;
        }
    CHECK(negCount == total);

    // Xi agrees with the spinor pairing of the frame field.
    const SpinorField phi{c, gneg.g, flat.frame};
    const XiForm xp = xiForm(phi);
    double xiErr = 0;
    for (int i = 0; i < c.n_s; ++i)
        for (int j = 0; j < c.n_t; ++j) {
            xiErr = std::max(xiErr, maxAbs(flat.xi.xi_u.at(i, j) - xp.xi_u.at(i, j)));
            xiErr = std::max(xiErr, maxAbs(flat.xi.xi_v.at(i, j) - xp.xi_v.at(i, j)));
        }
    CHECK(xiErr <= 1e-6);

    // Mean curvature agrees with the one recovered from the spinor field.
    const SecondFundamentalForm B = extractB(phi);
    Grid<double> H0g(c), H1g(c);
    meanCurvatureFromB(B, H0g, H1g);
    const double hErr = maxInterior(c.n_s, c.n_t, 2, [&](int i, int j) {
        return std::max(std::abs(H0g.at(i, j) - flat.H.H0.at(i, j)),
                        std::abs(H1g.at(i, j) - flat.H.H1.at(i, j)));
    });
    CHECK(hErr <= 200 * h2);

    // The sign is tied to the branch; a mismatched pair is rejected.
    {
        Grid<std::complex<double>> sd(c);
        for (int i = 0; i < c.n_s; ++i)
            for (int j = 0; j < c.n_t; ++j) sd.at(i, j) = std::exp(0.2 * c.s(i));
        CHECK_THROWS_AS(assembleFlatImmersionNeg(sd, gneg, psi, -1, base), SchemaError);
    }

    // F = f^2 solves d_zbar F = 2 b |F| (checked at interior points).
    const Grid<std::complex<double>> b = pseudoanalyticCoefficient(psi, c);
    Grid<std::complex<double>> F2(c);
    for (int i = 0; i < c.n_s; ++i)
        for (int j = 0; j < c.n_t; ++j) {
            const std::complex<double> f(flat.rho.at(i, j), -flat.nu.at(i, j));
            F2.at(i, j) = f * f;
        }
    const double fsqErr = maxInterior(c.n_s, c.n_t, 1, [&](int i, int j) {
        const std::complex<double> dz =
            0.5 * (derivS(F2, i, j, c.h_s) +
                   std::complex<double>(0, 1) * derivT(F2, i, j, c.h_t));
        return std::abs(dz - 2.0 * b.at(i, j) * std::abs(F2.at(i, j)));
    });
    CHECK(fsqErr <= 200 * h2);

    // Second-order convergence of the immersion.
    const FlatImmersion ref = run(129);
    double err[2];
    int idx = 0;
    for (int m : {17, 33}) {
        const FlatImmersion fm = run(m);
        const int stride = 128 / (m - 1);
        double fErr = 0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                fErr = std::max(fErr, maxAbs(fm.immersion.F.at(i, j) -
                                             ref.immersion.F.at(i * stride, j * stride)));
        err[idx++] = fErr;
    }
    const double order = std::log2(err[0] / err[1]);
    CHECK(order >= 1.5);
    CHECK(order <= 2.6);

    // f crossing zero is rejected: b = 0 with trace z on a chart through 0.
    const NullChart c0 = NullChart::square(9, 2.0, 2.0, -1.0, -1.0);
    Grid<std::complex<double>> bz(c0, 0.0), sz(c0);
    for (int i = 0; i < c0.n_s; ++i)
        for (int j = 0; j < c0.n_t; ++j) sz.at(i, j) = {c0.s(i), c0.t(j)};
    const Grid<std::complex<double>> fz = solvePseudoanalytic(bz, sz, c0);
    const SpinFrameField gz = integrateSpinFrame({Profile1D::zero(), Profile1D::zero()},
                                                 SpinBranch::delta_neg_1, H0Element::one(), c0);
    CHECK_THROWS_AS(assembleFlatImmersionNeg(fz, gz, {Profile1D::zero(), Profile1D::zero()},
                                             +1, base),
                    ZeroCrossing);
}

TEST_CASE("quasi-umbilic ruled surfaces are flat with Delta = 0") {
    RuledInput r;
    r.gamma = [](double s) { return Vector22{std::sin(s), std::sin(s), 1 - std::cos(s), 1 - std::cos(s)}; };
    r.T = [](double s) { return Vector22{std::cos(s), -std::cos(s), std::sin(s), -std::sin(s)}; };

    const int n = 65;
    const NullChart c(n, n, 2.0 / (n - 1), 2.0 / (n - 1), -1.0, -1.0);
    const double h2 = c.h_s * c.h_s;
    const Grid<Vector22> F = generateQuasiUmbilic(r, c);
    const ImmersionAnalysis an = analyzeImmersion(F, c);
    CHECK(flatnessError(an, c) <= 100 * h2);
    const DeltaInvariant delta = deltaInvariant(an.G, c, 100 * h2);
    int zero = 0, total = 0;
    for (int i = 2; i < c.n_s - 2; ++i)
        for (int j = 2; j < c.n_t - 2; ++j) {
            ++total;
            if (delta.sign.at(i, j) == 0) ++zero;
        }
    CHECK(zero == total);

    // Plane spanned by two transverse lightlike directions.
    RuledInput plane;
    plane.gamma = [](double s) { return Vector22{s, s, 0, 0}; };
    plane.T = [](double) { return Vector22{1, -1, 0, 0}; };
    const Grid<Vector22> P = generateQuasiUmbilic(plane, c);
    const ImmersionAnalysis anP = analyzeImmersion(P, c);
    CHECK(flatnessError(anP, c) <= 100 * h2);

    // Rejections: dependent ruling, non-transverse ruling, non-lightlike data.
    RuledInput dep = r;
    dep.T = [&](double s) { return 2.0 * r.gamma(s + 0.0); };
    RuledInput depCurve;
    depCurve.gamma = [](double s) { return Vector22{s, s, 0, 0}; };
    depCurve.T = [](double) { return Vector22{1, 1, 0, 0}; };
    CHECK_THROWS_AS(generateQuasiUmbilic(depCurve, c), DegenerateRuling);
    RuledInput nontrans;
    nontrans.gamma = [](double s) { return Vector22{s, s, 0, 0}; };
    nontrans.T = [](double) { return Vector22{0, 0, 1, 1}; };
    CHECK_THROWS_AS(generateQuasiUmbilic(nontrans, c), DegenerateRuling);
    RuledInput bad;
    bad.gamma = [](double s) { return Vector22{s, 0, 0, 0}; };
    bad.T = [](double) { return Vector22{1, -1, 0, 0}; };
    CHECK_THROWS_AS(generateQuasiUmbilic(bad, c), SchemaError);
}

TEST_CASE("distinct generator data produce non-congruent immersions") {
    const int n = 17;
    const NullChart c = NullChart::square(n, 2.0, 2.0, -1.0, -1.0);
    const double h2 = c.h_s * c.h_s;
    const Profile1D one = Profile1D::constant(1.0);

    struct Data {
        ConformalMap psi;
        Profile1D l0, m0;
    };
    const Data data[5] = {
        {{Profile1D::zero(), Profile1D::zero()}, one, one},
        {{Profile1D::poly({0.0, 0.4}), Profile1D::zero()}, one, one},
        {{Profile1D::zero(), Profile1D::poly({0.0, 0.4})}, one, one},
        {{Profile1D::poly({0.0, 0.4}), Profile1D::zero()}, Profile1D::constant(1.5), one},
        {{Profile1D::poly({0.0, 0.2}), Profile1D::poly({0.0, -0.3})}, one,
         Profile1D::constant(0.8)},
    };
    Grid<Vector22> F[5];
    for (int k = 0; k < 5; ++k) {
        const HyperbolicSolution sol = solveHyperbolic(data[k].psi, data[k].l0, data[k].m0, c);
        const SpinFrameField g =
            integrateSpinFrame(data[k].psi, SpinBranch::delta_pos_1, H0Element::one(), c);
        F[k] = assembleFlatImmersion(sol, g, data[k].psi, +1, {0, 0, 0, 0}).immersion.F;
    }
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            CHECK(procrustesAlign(F[a], F[b]).residual > 10 * h2);
}

TEST_CASE("generation is equivariant under chart translation") {
    const double shift = 0.7;
    const ConformalMap psi{Profile1D::poly({0.1, 0.4}), Profile1D::poly({-0.2, 0.3})};
    // Same profiles precomposed with the shift a -> a - shift.
    const ConformalMap psiS{Profile1D::poly({0.1 - 0.4 * shift, 0.4}),
                            Profile1D::poly({-0.2 - 0.3 * shift, 0.3})};
    const Profile1D one = Profile1D::constant(1.0);

    const int n = 17;
    const NullChart c = NullChart::square(n, 2.0, 2.0, -1.0, -1.0);
    const NullChart cs = NullChart::square(n, 2.0, 2.0, -1.0 + shift, -1.0 + shift);

    const FlatImmersion a = assembleFlatImmersion(
        solveHyperbolic(psi, one, one, c),
        integrateSpinFrame(psi, SpinBranch::delta_pos_1, H0Element::one(), c), psi, +1,
        {0, 0, 0, 0});
    const FlatImmersion b = assembleFlatImmersion(
        solveHyperbolic(psiS, one, one, cs),
        integrateSpinFrame(psiS, SpinBranch::delta_pos_1, H0Element::one(), cs), psiS, +1,
        {0, 0, 0, 0});
    double worst = 0;
    for (size_t k = 0; k < a.immersion.F.data.size(); ++k)
        worst = std::max(worst, maxAbs(a.immersion.F.data[k] - b.immersion.F.data[k]));
    CHECK(worst <= 1e-11);
}

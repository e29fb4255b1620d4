#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lorspin/spin.hpp"

using namespace lorspin;

namespace {

std::mt19937 rng(20240812u);

double uniform(double lo = -2.0, double hi = 2.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}
LorentzNumber randA() { return LorentzNumber::fromUV(uniform(), uniform()); }
H0Element randH0() { return {randA(), randA(), randA(), randA()}; }
Vector22 randVec() { return {uniform(), uniform(), uniform(), uniform()}; }

H0Element randUnit() {
    for (;;) {
        const H0Element p = randH0();
        const LorentzNumber h = hForm(p, p);
        if (h.plus > 0.2 && h.minus > 0.2) return normalizeSpin(p);
    }
}

// complex structure: right multiplication by J
H0Element timesI(const H0Element& s) { return s * H0Element::J(); }

} // namespace

TEST_CASE("even action is left multiplication and associative") {
    CHECK((evenAction(H0Element::J(), H0Element::one()) - H0Element::J()).norm() == 0.0);
    const H0Element idem(LorentzNumber::fromNull(1, 0), {}, {}, {});
    CHECK((evenAction(H0Element::sigmaOne(), idem) - idem).norm() == 0.0);
    for (int k = 0; k < 100; ++k) {
        const H0Element p = randH0(), q = randH0(), s = randH0();
        const double scale = std::max(1.0, p.norm() * q.norm() * s.norm());
        CHECK((evenAction(p, evenAction(q, s)) - evenAction(p * q, s)).norm() <= 1e-13 * scale);
        // complex-linearity for the right-J structure
        CHECK((evenAction(p, timesI(s)) - timesI(evenAction(p, s))).norm() <= 1e-13 * scale);
    }
}

TEST_CASE("vector action squares to minus the norm") {
    // e2 . 1 = sigma i (iJ) 1 = -sigma J
    const H0Element img = vectorAction(Vector22::basis(2), H0Element::one());
    const H0Element expect(LorentzNumber(), LorentzNumber(), -LorentzNumber::sigma(), LorentzNumber());
    CHECK((img - expect).norm() == 0.0);

    for (int k = 0; k < 100; ++k) {
        const H0Element s = randH0();
        const Vector22 x = randVec();
        const H0Element twice = vectorAction(x, vectorAction(x, s));
        CHECK((twice - s * (-inner22(x, x))).norm() <=
              1e-13 * std::max(1.0, maxAbs(x) * maxAbs(x) * s.norm()));
        // spot checks: e3 twice = -id, e0 twice = +id
        CHECK((vectorAction(Vector22::basis(3), vectorAction(Vector22::basis(3), s)) + s).norm() <=
              1e-14 * std::max(1.0, s.norm()));
        CHECK((vectorAction(Vector22::basis(0), vectorAction(Vector22::basis(0), s)) - s).norm() <=
              1e-14 * std::max(1.0, s.norm()));
        // anticommutation with the complex structure is not required; but
        // complex-linearity is (the action commutes with right-J)
        CHECK((vectorAction(x, timesI(s)) - timesI(vectorAction(x, s))).norm() <=
              1e-13 * std::max(1.0, maxAbs(x) * s.norm()));
    }
}

TEST_CASE("double cover basics") {
    CHECK((doubleCover(H0Element::one()) - Mat4::identity()).norm() == 0.0);
    CHECK((doubleCover(-H0Element::one()) - Mat4::identity()).norm() <= 1e-15);
    CHECK_THROWS_AS(doubleCover(H0Element::one() * 2.0), NotUnitSpinor);

    for (int k = 0; k < 100; ++k) {
        const H0Element p = randUnit(), q = randUnit();
        const Mat4 mp = doubleCover(p), mq = doubleCover(q);
        CHECK((doubleCover(p * q) - mp * mq).norm() <= 1e-10);
        CHECK(metricDefect(mp) <= 1e-10);
        CHECK((doubleCover(-p) - mp).norm() <= 1e-12);
    }
}

TEST_CASE("double cover of the sigma-rotation is a boost in the (x0,x1) plane") {
    const double v = 0.4;
    // p = cosh v + sigma i sinh v I
    const H0Element p(LorentzNumber::real(std::cosh(v)),
                      LorentzNumber::sigma() * std::sinh(v), {}, {});
    const Mat4 m = doubleCover(p);
    Mat4 expect = Mat4::identity();
    expect.a[0][0] = expect.a[1][1] = std::cosh(2 * v);
    expect.a[0][1] = expect.a[1][0] = -std::sinh(2 * v);
    CHECK((m - expect).norm() <= 1e-12);
}

TEST_CASE("A-circle generators map to block-diagonal SO(1,1)xSO(1,1)") {
    for (int k = 0; k < 50; ++k) {
        const LorentzNumber a = randA();
        const H0Element p(aCosh(a), aSinh(a), {}, {});
        const Mat4 m = doubleCover(p);
        double off = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 2; j < 4; ++j)
                off = std::max(off, std::max(std::abs(m.a[i][j]), std::abs(m.a[j][i])));
        CHECK(off <= 1e-10);
        CHECK(metricDefect(m) <= 1e-10);
    }
}

TEST_CASE("split projections") {
    const SplitMask masks[4] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
    // s=1, mask (+,+) -> (1+sigma)(1+iI)/4
    const H0Element pr = splitProject(H0Element::one(), {+1, +1});
    const LorentzNumber q = (LorentzNumber::real(1) + LorentzNumber::sigma()) * 0.25;
    const H0Element expect(q, q, {}, {});
    CHECK((pr - expect).norm() <= 1e-15);

    for (int k = 0; k < 50; ++k) {
        const H0Element s = randH0();
        H0Element sum{};
        for (const SplitMask& m : masks) {
            const H0Element pm = splitProject(s, m);
            sum += pm;
            // idempotent
            CHECK((splitProject(pm, m) - pm).norm() <= 1e-13 * std::max(1.0, s.norm()));
            // sigma acts with the recorded sign
            CHECK((evenAction(H0Element::sigmaOne(), pm) - pm * double(m.sign_sigma)).norm() <=
                  1e-13 * std::max(1.0, s.norm()));
            // e0.e1 acts with the recorded sign
            const H0Element e01 = vectorAction(Vector22::basis(0),
                                               vectorAction(Vector22::basis(1), pm));
            CHECK((e01 - pm * double(m.sign_e01)).norm() <= 1e-13 * std::max(1.0, s.norm()));
            // annihilated by the other projectors
            for (const SplitMask& m2 : masks) {
                if (m2.sign_sigma == m.sign_sigma && m2.sign_e01 == m.sign_e01) continue;
                CHECK(splitProject(pm, m2).norm() <= 1e-13 * std::max(1.0, s.norm()));
            }
        }
        CHECK((sum - s).norm() <= 1e-13 * std::max(1.0, s.norm()));
    }
}

TEST_CASE("real structure") {
    // beta(1) = sigma i I
    const H0Element b1 = realStructure(H0Element::one());
    const H0Element expect({}, LorentzNumber::sigma(), {}, {});
    CHECK((b1 - expect).norm() == 0.0);

    for (int k = 0; k < 100; ++k) {
        const H0Element s = randH0();
        const double scale = std::max(1.0, s.norm());
        CHECK((realStructure(realStructure(s)) - s).norm() <= 1e-13 * scale);
        // anti-linearity for the right-J complex structure
        CHECK((realStructure(timesI(s)) + timesI(realStructure(s))).norm() <= 1e-13 * scale);
        // anticommutes with the vector action
        const Vector22 x = randVec();
        CHECK((realStructure(vectorAction(x, s)) + vectorAction(x, realStructure(s))).norm() <=
              1e-12 * std::max(1.0, maxAbs(x) * scale));
        // H(beta s, beta s) = -H(s,s)
        CHECK((hForm(realStructure(s), realStructure(s)) + hForm(s, s)).norm() <=
              1e-12 * std::max(1.0, s.norm() * s.norm()));
    }
}

TEST_CASE("spinor pairing and its vector adjunction") {
    const SpinorPairing p11 = spinorPairing(H0Element::one(), H0Element::one());
    // bracket = sigma i 1, i.e. q0 = sigma in H1 coordinates; h = 1
    CHECK((p11.bracket.q0 - LorentzNumber::sigma()).norm() == 0.0);
    CHECK(p11.bracket.q1.norm() == 0.0);
    CHECK(p11.bracket.q2.norm() == 0.0);
    CHECK(p11.bracket.q3.norm() == 0.0);
    CHECK((p11.h - LorentzNumber::real(1)).norm() == 0.0);

    for (int k = 0; k < 200; ++k) {
        const H0Element s = randH0(), t = randH0();
        const Vector22 x = randVec();
        const double scale = std::max(1.0, maxAbs(x) * s.norm() * t.norm());
        // h coefficient equals the H form
        CHECK((spinorPairing(s, t).h - hForm(s, t)).norm() <= 1e-13 * scale);
        // <<X.s, t>> = -hat(<<s, X.t>>)
        const QuatAC lhs = spinorPairing(vectorAction(x, s), t).bracket.toQuat();
        const QuatAC rhs = -(spinorPairing(s, vectorAction(x, t)).bracket.toQuat().hat());
        CHECK((lhs - rhs).norm() <= 1e-12 * scale);
        // H(X.s, t) = hat(H(s, X.t))
        CHECK((hForm(vectorAction(x, s), t) - hForm(s, vectorAction(x, t)).hat()).norm() <=
              1e-12 * scale);
    }
}

TEST_CASE("real scalar product has signature (4,4) on the basis spinors") {
    H0Element basis[8];
    const H0Element units[4] = {H0Element::one(), H0Element::iI(), H0Element::J(),
                                H0Element::iK()};
    for (int k = 0; k < 4; ++k) {
        basis[k] = units[k];
        basis[k + 4] = evenAction(H0Element::sigmaOne(), units[k]);
    }
    int pos = 0, neg = 0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const double gram = hForm(basis[i], basis[j]).u();
            if (i != j) {
                CHECK(std::abs(gram) <= 1e-15);
            } else {
                if (gram > 0.5) ++pos;
                if (gram < -0.5) ++neg;
            }
        }
    CHECK(pos == 4);
    CHECK(neg == 4);
}

TEST_CASE("orthogonal quadruple with norms 1,-1,1,-1") {
    auto act2 = [](int a, int b, const H0Element& s) {
        return vectorAction(Vector22::basis(a), vectorAction(Vector22::basis(b), s));
    };
    for (int k = 0; k < 100; ++k) {
        const H0Element phi = randUnit();
        const H0Element quad[4] = {phi, act2(2, 3, phi), act2(3, 1, phi), act2(1, 2, phi)};
        const double norms[4] = {1, -1, 1, -1};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const LorentzNumber h = hForm(quad[i], quad[j]);
                const LorentzNumber expect = LorentzNumber::real(i == j ? norms[i] : 0.0);
                CHECK((h - expect).norm() <= 1e-10);
            }
    }
}

TEST_CASE("odd-odd action lands in the even part") {
    for (int k = 0; k < 50; ++k) {
        const Vector22 x = randVec();
        const H1Element nu = gammaOdd(randVec());
        double defect = 1;
        H0Element::fromQuat(gammaOdd(x).toQuat() * nu.toQuat().hat(), &defect);
        CHECK(defect <= 1e-14 * std::max(1.0, maxAbs(x)));
        (void)vectorActionOdd(gammaOdd(x), nu);
    }
}

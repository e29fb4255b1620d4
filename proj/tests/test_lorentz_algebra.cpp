#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lorspin/lorentz.hpp"
#include "lorspin/quat.hpp"

using namespace lorspin;

namespace {

std::mt19937 rng(20240811u);

double uniform(double lo = -2.0, double hi = 2.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

LorentzNumber randA() { return LorentzNumber::fromUV(uniform(), uniform()); }
LorentzComplex randAC() {
    return {{uniform(), uniform()}, {uniform(), uniform()}};
}
QuatAC randQuat() { return {randAC(), randAC(), randAC(), randAC()}; }
H0Element randH0() { return {randA(), randA(), randA(), randA()}; }
ImH0Element randImH0() { return {randA(), randA(), randA()}; }
Vector22 randVec() { return {uniform(), uniform(), uniform(), uniform()}; }

// Independent oracle for A-arithmetic: direct (u,v) representation with
// (u1+sv1)(u2+sv2) = (u1u2+v1v2) + s(u1v2+u2v1).
struct UV {
    double u, v;
    UV operator*(UV b) const { return {u * b.u + v * b.v, u * b.v + v * b.u}; }
    UV operator+(UV b) const { return {u + b.u, v + b.v}; }
    UV operator*(double c) const { return {u * c, v * c}; }
};

UV seriesExp(UV a) {
    UV term{1, 0}, sum{1, 0};
    for (int k = 1; k <= 30; ++k) {
        term = term * a * (1.0 / k);
        sum = sum + term;
    }
    return sum;
}

double dist(LorentzNumber a, LorentzNumber b) { return (a - b).norm(); }
double dist(const QuatAC& a, const QuatAC& b) { return (a - b).norm(); }

} // namespace

TEST_CASE("sigma squares to one and the idempotents annihilate") {
    const LorentzNumber s = LorentzNumber::sigma();
    CHECK(dist(s * s, LorentzNumber::real(1)) == 0.0);
    const LorentzNumber ps = LorentzNumber::real(1) + s;
    const LorentzNumber ms = LorentzNumber::real(1) - s;
    CHECK((ps * ms).norm() == 0.0);
    // (2+sigma)(3+sigma) = 7+5sigma
    const LorentzNumber prod = LorentzNumber::fromUV(2, 1) * LorentzNumber::fromUV(3, 1);
    CHECK(dist(prod, LorentzNumber::fromUV(7, 5)) <= 1e-13);
}

TEST_CASE("ring axioms on random triples") {
    for (int k = 0; k < 1000; ++k) {
        const LorentzNumber a = randA(), b = randA(), c = randA();
        const double scale = std::max(1.0, a.norm() * b.norm() * c.norm());
        CHECK(dist((a * b) * c, a * (b * c)) <= 1e-13 * scale);
        CHECK(dist(a * (b + c), a * b + a * c) <= 1e-13 * scale);
        CHECK(dist(a * b, b * a) <= 1e-13 * scale);
        // hat is a ring involution
        CHECK(dist((a * b).hat(), a.hat() * b.hat()) == 0.0);
    }
}

TEST_CASE("uv round trip and null-basis accessors") {
    const LorentzNumber a = LorentzNumber::fromUV(0.3, -1.7);
    CHECK(a.u() == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(a.v() == doctest::Approx(-1.7).epsilon(1e-15));
    CHECK(dist(a.hat(), LorentzNumber::fromUV(0.3, 1.7)) <= 1e-15);
}

TEST_CASE("inverse and zero divisors") {
    const LorentzNumber a = LorentzNumber::fromUV(2, 1); // null comps 3, 1
    CHECK(dist(a * a.inverse(), LorentzNumber::real(1)) <= 1e-15);
    CHECK_THROWS_AS(LorentzNumber::fromNull(0.0, 2.0).inverse(), InverseOfZeroDivisor);
    CHECK(LorentzNumber::fromNull(0.0, 2.0).isZeroDivisor());
    CHECK(!LorentzNumber::fromUV(2, 1).isZeroDivisor());
}

TEST_CASE("exponential family on A") {
    CHECK(dist(aExp(LorentzNumber::real(0)), LorentzNumber::real(1)) == 0.0);
    // exp(sigma ln 2) = cosh(ln2) + sigma sinh(ln2) = 1.25 + 0.75 sigma
    const LorentzNumber e = aExp(LorentzNumber::sigma() * std::log(2.0));
    CHECK(dist(e, LorentzNumber::fromUV(1.25, 0.75)) <= 1e-14);
    CHECK(dist(aCosh(LorentzNumber::sigma()), LorentzNumber::real(std::cosh(1.0))) <= 1e-14);

    for (int k = 0; k < 200; ++k) {
        const LorentzNumber a = randA(), b = randA();
        const UV oracle = seriesExp({a.u(), a.v()});
        CHECK(dist(aExp(a), LorentzNumber::fromUV(oracle.u, oracle.v)) <=
              1e-12 * aExp(a).norm());
        CHECK(dist(aExp(a + b), aExp(a) * aExp(b)) <= 1e-12 * (aExp(a) * aExp(b)).norm());
        // cosh(a+b) = cosh a cosh b + sinh a sinh b; cosh^2 - sinh^2 = 1
        CHECK(dist(aCosh(a + b), aCosh(a) * aCosh(b) + aSinh(a) * aSinh(b)) <=
              1e-12 * aCosh(a + b).norm());
        CHECK(dist(aSinh(a + b), aSinh(a) * aCosh(b) + aCosh(a) * aSinh(b)) <=
              1e-12 * std::max(1.0, aSinh(a + b).norm()));
        CHECK(dist(aCosh(a) * aCosh(a) - aSinh(a) * aSinh(a), LorentzNumber::real(1)) <=
              1e-12 * aCosh(a).norm() * aCosh(a).norm());
    }
}

TEST_CASE("A square root") {
    const LorentzNumber a = LorentzNumber::fromNull(4.0, 9.0);
    CHECK(dist(aSqrt(a) * aSqrt(a), a) <= 1e-14);
    CHECK_THROWS_AS(aSqrt(LorentzNumber::fromNull(-1.0, 1.0)), NegativeSquareRoot);
}

TEST_CASE("quaternion basis relations") {
    const QuatAC I = QuatAC::I(), J = QuatAC::J(), K = QuatAC::K();
    CHECK(dist(I * J, K) == 0.0);
    CHECK(dist(J * I, -K) == 0.0);
    CHECK(dist(I * I, -QuatAC::one()) == 0.0);
    CHECK(dist(J * J, -QuatAC::one()) == 0.0);
    CHECK(dist(K * K, -QuatAC::one()) == 0.0);
    CHECK(dist(K.bar(), -K) == 0.0);
    const QuatAC si = LorentzComplex::sigma() * LorentzComplex::i() * QuatAC::one();
    CHECK(dist(si.hat(), -si) == 0.0);
}

TEST_CASE("quaternion ring properties on random triples") {
    for (int k = 0; k < 300; ++k) {
        const QuatAC a = randQuat(), b = randQuat(), c = randQuat();
        const double scale = std::max(1.0, a.norm() * b.norm() * c.norm());
        CHECK(dist((a * b) * c, a * (b * c)) <= 1e-13 * scale);
        CHECK(dist(a * (b + c), a * b + a * c) <= 1e-13 * scale);
        CHECK(dist((a * b).bar(), b.bar() * a.bar()) <= 1e-13 * scale);
        CHECK(dist((a * b).hat(), a.hat() * b.hat()) <= 1e-13 * scale);
    }
}

TEST_CASE("H form basics and restriction to H0") {
    CHECK(hForm(QuatAC::one(), QuatAC::one()).norm() == doctest::Approx(1.0));
    const QuatAC iI = LorentzComplex::i() * QuatAC::I();
    CHECK((hForm(iI, iI) + LorentzComplex::real(1)).norm() <= 1e-15);

    for (int k = 0; k < 200; ++k) {
        const H0Element p = randH0(), q = randH0();
        // restricted formula agrees with the ambient H form
        const LorentzComplex ambient = hForm(p.toQuat(), q.toQuat());
        const LorentzNumber restricted = hForm(p, q);
        CHECK((ambient - LorentzComplex(restricted)).norm() <= 1e-13 * std::max(1.0, ambient.norm()));
        // H0 product agrees with the quaternion product (closure + parity)
        double defect = 0;
        const H0Element viaQuat = H0Element::fromQuat(p.toQuat() * q.toQuat(), &defect);
        CHECK(defect <= 1e-14 * std::max(1.0, p.norm() * q.norm()));
        CHECK((viaQuat - p * q).norm() <= 1e-13 * std::max(1.0, p.norm() * q.norm()));
    }
    // unit circle element
    const LorentzNumber a = randA();
    const H0Element circ(aCosh(a), aSinh(a), LorentzNumber(), LorentzNumber());
    CHECK(dist(hForm(circ, circ), LorentzNumber::real(1)) <= 1e-12 * circ.norm() * circ.norm());
}

TEST_CASE("H0 inverse") {
    for (int k = 0; k < 100; ++k) {
        const H0Element p = randH0();
        const LorentzNumber h = hForm(p, p);
        if (h.isZeroDivisor(1e-3)) continue;
        const H0Element pinv = inverseH0(p);
        CHECK((p * pinv - H0Element::one()).norm() <= 1e-11 * std::max(1.0, pinv.norm() * p.norm()));
        CHECK((pinv * p - H0Element::one()).norm() <= 1e-11 * std::max(1.0, pinv.norm() * p.norm()));
    }
}

TEST_CASE("Clifford relation for the gamma map") {
    // gamma(x) = [[0, q_x],[hat q_x, 0]], so the anticommutator identity reads
    // q_x hat(q_y) + q_y hat(q_x) = -2<x,y> on both blocks.
    for (int k = 0; k < 200; ++k) {
        const Vector22 x = randVec(), y = randVec();
        const QuatAC qx = gammaOdd(x).toQuat(), qy = gammaOdd(y).toQuat();
        const QuatAC upper = qx * qy.hat() + qy * qx.hat();
        const QuatAC lower = qx.hat() * qy + qy.hat() * qx;
        const QuatAC expected = LorentzComplex::real(-2.0 * inner22(x, y)) * QuatAC::one();
        CHECK(dist(upper, expected) <= 1e-13 * std::max(1.0, maxAbs(x) * maxAbs(y)));
        CHECK(dist(lower, expected) <= 1e-13 * std::max(1.0, maxAbs(x) * maxAbs(y)));
    }
    // basis images
    CHECK((gammaOdd(Vector22::basis(0)).toQuat() -
           LorentzComplex::sigma() * LorentzComplex::i() * QuatAC::one()).norm() == 0.0);
    CHECK((gammaOdd(Vector22::basis(1)).toQuat() - QuatAC::I()).norm() == 0.0);
    CHECK((gammaOdd(Vector22::basis(2)).toQuat() - LorentzComplex::i() * QuatAC::J()).norm() == 0.0);
    CHECK((gammaOdd(Vector22::basis(3)).toQuat() - QuatAC::K()).norm() == 0.0);
}

TEST_CASE("vector membership of H1: q = -hat(bar q)") {
    for (int k = 0; k < 100; ++k) {
        const Vector22 x = randVec();
        const H1Element q = gammaOdd(x);
        CHECK(q.vectorDefect() == 0.0);
        const QuatAC lhs = q.toQuat();
        const QuatAC rhs = -(lhs.bar().hat());
        CHECK(dist(lhs, rhs) <= 1e-15);
        const Vector22 back = q.toVector();
        CHECK(maxAbs(back - x) == 0.0);
    }
}

TEST_CASE("cross and mixed products") {
    const ImH0Element e1{LorentzNumber::real(1), {}, {}};
    const ImH0Element e2{{}, LorentzNumber::real(1), {}};
    const ImH0Element e3{{}, {}, LorentzNumber::real(1)};
    // iI x J = iK
    CHECK((cross(e1, e2) - e3).norm() == 0.0);
    // [iI, J, iK] = H(iK, iK) = -1
    CHECK(dist(mixed(e1, e2, e3), -LorentzNumber::real(1)) == 0.0);

    for (int k = 0; k < 200; ++k) {
        const ImH0Element a = randImH0(), b = randImH0(), c = randImH0();
        const double scale = std::max(1.0, a.norm() * b.norm());
        CHECK((cross(a, a)).norm() == 0.0);
        CHECK((cross(a, b) + cross(b, a)).norm() <= 1e-13 * scale);
        // cross equals the commutator half, computed in the ambient quaternions
        const QuatAC qa = a.toH0().toQuat(), qb = b.toH0().toQuat();
        const QuatAC comm = (qa * qb - qb * qa) * 0.5;
        CHECK(dist(comm, cross(a, b).toH0().toQuat()) <= 1e-13 * scale);
        // mixed product = componentwise 3x3 determinant in the null basis
        for (int comp = 0; comp < 2; ++comp) {
            auto pick = [&](const ImH0Element& x, int idx) {
                const LorentzNumber* f[3] = {&x.a1, &x.a2, &x.a3};
                return comp == 0 ? f[idx]->plus : f[idx]->minus;
            };
            double det = 0;
            const ImH0Element* rows[3] = {&a, &b, &c};
            for (int i = 0; i < 3; ++i) {
                const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
                det += pick(*rows[0], i) *
                       (pick(*rows[1], i1) * pick(*rows[2], i2) -
                        pick(*rows[1], i2) * pick(*rows[2], i1));
            }
            const LorentzNumber m = mixed(a, b, c);
            const double got = comp == 0 ? m.plus : m.minus;
            // the mixed product is minus the determinant in the (iI,J,iK) basis
            CHECK(std::abs(got + det) <= 1e-12 * std::max(1.0, std::abs(det)));
        }
    }
}

TEST_CASE("bivector norm decomposition") {
    const ImH0Element e23{LorentzNumber::real(1), {}, {}}; // iI = e2^e3 direction
    const BivectorNorm n1 = bivectorNorm(e23);
    CHECK(n1.scalar == doctest::Approx(-1.0));
    CHECK(n1.wedge == doctest::Approx(0.0));

    const ImH0Element mix{LorentzNumber::real(1) + LorentzNumber::sigma(), {}, {}};
    // xi = e2^e3 + e0^e1: <xi,xi> = -2, xi^xi = 2 u1 v1 = 2
    const BivectorNorm n2 = bivectorNorm(mix);
    CHECK(n2.scalar == doctest::Approx(-2.0));
    CHECK(n2.wedge == doctest::Approx(2.0));

    CHECK(bivectorNorm(ImH0Element{}).scalar == 0.0);
    CHECK(bivectorNorm(ImH0Element{}).wedge == 0.0);

    for (int k = 0; k < 200; ++k) {
        const ImH0Element x = randImH0();
        const BivectorNorm n = bivectorNorm(x);
        const LorentzNumber recombined =
            LorentzNumber::real(n.scalar) - LorentzNumber::sigma() * n.wedge;
        CHECK(dist(recombined, hForm(x, x)) <= 1e-12 * std::max(1.0, hForm(x, x).norm()));
    }
}

TEST_CASE("exponential on H0") {
    CHECK((expH0(H0Element{}) - H0Element::one()).norm() == 0.0);
    // exp(a J) = cos a + sin a J since J^2 = -1
    const double a = 0.7;
    const H0Element eaJ = expH0(H0Element::J() * a);
    const H0Element expect(LorentzNumber::real(std::cos(a)), {},
                           LorentzNumber::real(std::sin(a)), {});
    CHECK((eaJ - expect).norm() <= 1e-14);

    for (int k = 0; k < 50; ++k) {
        const H0Element m = randH0();
        // oracle: plain 60-term series on the quaternions after scaling by 1/16
        QuatAC q = m.toQuat() * (1.0 / 16.0);
        QuatAC term = QuatAC::one(), sum = QuatAC::one();
        for (int n = 1; n <= 60; ++n) {
            term = term * q * (1.0 / n);
            sum += term;
        }
        for (int s = 0; s < 4; ++s) sum = sum * sum;
        const H0Element oracle = H0Element::fromQuat(sum);
        CHECK((expH0(m) - oracle).norm() <= 1e-12 * std::max(1.0, oracle.norm()));
        // exp(m)exp(-m) = 1
        CHECK((expH0(m) * expH0(-m) - H0Element::one()).norm() <=
              1e-12 * expH0(m).norm() * expH0(-m).norm());
    }
}

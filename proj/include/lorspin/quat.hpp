#pragma once

#include <array>
#include <cmath>

#include "lorspin/lorentz.hpp"

namespace lorspin {

// Quaternions over the complexified Lorentz numbers,
// zeta = c0 + c1 I + c2 J + c3 K with I^2=J^2=K^2=-1, IJ=-JI=K.
struct QuatAC {
    LorentzComplex c0, c1, c2, c3;

    QuatAC() = default;
    QuatAC(LorentzComplex a0, LorentzComplex a1, LorentzComplex a2, LorentzComplex a3)
        : c0(a0), c1(a1), c2(a2), c3(a3) {}

    static QuatAC one() { return {LorentzComplex::real(1), {}, {}, {}}; }
    static QuatAC I() { return {{}, LorentzComplex::real(1), {}, {}}; }
    static QuatAC J() { return {{}, {}, LorentzComplex::real(1), {}}; }
    static QuatAC K() { return {{}, {}, {}, LorentzComplex::real(1)}; }

    QuatAC operator-() const { return {-c0, -c1, -c2, -c3}; }
    QuatAC operator+(const QuatAC& b) const { return {c0 + b.c0, c1 + b.c1, c2 + b.c2, c3 + b.c3}; }
    QuatAC operator-(const QuatAC& b) const { return {c0 - b.c0, c1 - b.c1, c2 - b.c2, c3 - b.c3}; }
    QuatAC& operator+=(const QuatAC& b) { c0 += b.c0; c1 += b.c1; c2 += b.c2; c3 += b.c3; return *this; }

    QuatAC operator*(const QuatAC& b) const {
        return {c0 * b.c0 - c1 * b.c1 - c2 * b.c2 - c3 * b.c3,
                c0 * b.c1 + c1 * b.c0 + c2 * b.c3 - c3 * b.c2,
                c0 * b.c2 + c2 * b.c0 + c3 * b.c1 - c1 * b.c3,
                c0 * b.c3 + c3 * b.c0 + c1 * b.c2 - c2 * b.c1};
    }
    QuatAC operator*(const LorentzComplex& s) const { return {c0 * s, c1 * s, c2 * s, c3 * s}; }
    QuatAC operator*(double s) const { return {c0 * s, c1 * s, c2 * s, c3 * s}; }

    // bar: quaternion conjugation, negates the I, J, K parts.
    QuatAC bar() const { return {c0, -c1, -c2, -c3}; }
    // hat: the A-conjugation u+sigma v -> u-sigma v, coefficientwise.
    QuatAC hat() const { return {c0.hat(), c1.hat(), c2.hat(), c3.hat()}; }

    double norm() const {
        return std::max(std::max(c0.norm(), c1.norm()), std::max(c2.norm(), c3.norm()));
    }
};

inline QuatAC operator*(const LorentzComplex& s, const QuatAC& q) { return q * s; }
inline QuatAC operator*(double s, const QuatAC& q) { return q * s; }

// The symmetric A_C-bilinear form H(zeta,zeta') = sum zeta_i zeta_i'.
inline LorentzComplex hForm(const QuatAC& a, const QuatAC& b) {
    return a.c0 * b.c0 + a.c1 * b.c1 + a.c2 * b.c2 + a.c3 * b.c3;
}

// A vector of R^{2,2} with <x,x> = -x0^2 + x1^2 - x2^2 + x3^2.
struct Vector22 {
    double x0 = 0, x1 = 0, x2 = 0, x3 = 0;

    Vector22() = default;
    Vector22(double a0, double a1, double a2, double a3) : x0(a0), x1(a1), x2(a2), x3(a3) {}
    static Vector22 basis(int k) {
        Vector22 e;
        (&e.x0)[k] = 1.0;
        return e;
    }

    Vector22 operator-() const { return {-x0, -x1, -x2, -x3}; }
    Vector22 operator+(const Vector22& b) const { return {x0 + b.x0, x1 + b.x1, x2 + b.x2, x3 + b.x3}; }
    Vector22 operator-(const Vector22& b) const { return {x0 - b.x0, x1 - b.x1, x2 - b.x2, x3 - b.x3}; }
    Vector22 operator*(double c) const { return {x0 * c, x1 * c, x2 * c, x3 * c}; }
    Vector22& operator+=(const Vector22& b) { x0 += b.x0; x1 += b.x1; x2 += b.x2; x3 += b.x3; return *this; }

    double operator[](int k) const { return (&x0)[k]; }
    double& operator[](int k) { return (&x0)[k]; }
};

inline Vector22 operator*(double c, const Vector22& x) { return x * c; }

inline double inner22(const Vector22& a, const Vector22& b) {
    return -a.x0 * b.x0 + a.x1 * b.x1 - a.x2 * b.x2 + a.x3 * b.x3;
}
inline double norm22(const Vector22& x) { return inner22(x, x); }
inline double maxAbs(const Vector22& x) {
    return std::max(std::max(std::abs(x.x0), std::abs(x.x1)), std::max(std::abs(x.x2), std::abs(x.x3)));
}

// Element of the even part H0 = {p0 + i p1 I + p2 J + i p3 K, p_i in A}.
struct H0Element {
    LorentzNumber p0, p1, p2, p3;

    H0Element() = default;
    H0Element(LorentzNumber a0, LorentzNumber a1, LorentzNumber a2, LorentzNumber a3)
        : p0(a0), p1(a1), p2(a2), p3(a3) {}
    static H0Element one() { return {LorentzNumber::real(1), {}, {}, {}}; }
    static H0Element sigmaOne() { return {LorentzNumber::sigma(), {}, {}, {}}; }
    static H0Element iI() { return {{}, LorentzNumber::real(1), {}, {}}; }
    static H0Element J() { return {{}, {}, LorentzNumber::real(1), {}}; }
    static H0Element iK() { return {{}, {}, {}, LorentzNumber::real(1)}; }

    H0Element operator-() const { return {-p0, -p1, -p2, -p3}; }
    H0Element operator+(const H0Element& b) const { return {p0 + b.p0, p1 + b.p1, p2 + b.p2, p3 + b.p3}; }
    H0Element operator-(const H0Element& b) const { return {p0 - b.p0, p1 - b.p1, p2 - b.p2, p3 - b.p3}; }
    H0Element& operator+=(const H0Element& b) { p0 += b.p0; p1 += b.p1; p2 += b.p2; p3 += b.p3; return *this; }

    // H0 is closed under the quaternion product; this is the product
    // expanded in the (1, iI, J, iK) coordinates over A.
    H0Element operator*(const H0Element& b) const {
        return {p0 * b.p0 + p1 * b.p1 - p2 * b.p2 + p3 * b.p3,
                p0 * b.p1 + p1 * b.p0 + p2 * b.p3 - p3 * b.p2,
                p0 * b.p2 + p2 * b.p0 + p1 * b.p3 - p3 * b.p1,
                p0 * b.p3 + p3 * b.p0 + p1 * b.p2 - p2 * b.p1};
    }
    H0Element operator*(LorentzNumber s) const { return {p0 * s, p1 * s, p2 * s, p3 * s}; }
    H0Element operator*(double s) const { return {p0 * s, p1 * s, p2 * s, p3 * s}; }

    H0Element bar() const { return {p0, -p1, -p2, -p3}; }
    H0Element hat() const { return {p0.hat(), p1.hat(), p2.hat(), p3.hat()}; }

    QuatAC toQuat() const {
        const LorentzComplex i = LorentzComplex::i();
        return {LorentzComplex(p0), i * LorentzComplex(p1), LorentzComplex(p2), i * LorentzComplex(p3)};
    }
    static H0Element fromQuat(const QuatAC& q, double* parityDefect = nullptr) {
        const double defect = std::max(std::max(q.c0.imagPart().norm(), q.c1.realPart().norm()),
                                       std::max(q.c2.imagPart().norm(), q.c3.realPart().norm()));
        if (parityDefect) *parityDefect = defect;
        return {q.c0.realPart(), q.c1.imagPart(), q.c2.realPart(), q.c3.imagPart()};
    }

    double norm() const {
        return std::max(std::max(p0.norm(), p1.norm()), std::max(p2.norm(), p3.norm()));
    }
};

inline H0Element operator*(LorentzNumber s, const H0Element& p) { return p * s; }
inline H0Element operator*(double s, const H0Element& p) { return p * s; }

// Restriction of H to H0: H(p,p') = p0 p0' - p1 p1' + p2 p2' - p3 p3' in A.
inline LorentzNumber hForm(const H0Element& a, const H0Element& b) {
    return a.p0 * b.p0 - a.p1 * b.p1 + a.p2 * b.p2 - a.p3 * b.p3;
}

// Inverse of an H0 element: p^{-1} = bar(p) / H(p,p).
inline H0Element inverseH0(const H0Element& p) {
    return p.bar() * hForm(p, p).inverse();
}

// Element of the odd part H1 = {i q0 + q1 I + i q2 J + q3 K, q_i in A}.
struct H1Element {
    LorentzNumber q0, q1, q2, q3;

    H1Element() = default;
    H1Element(LorentzNumber a0, LorentzNumber a1, LorentzNumber a2, LorentzNumber a3)
        : q0(a0), q1(a1), q2(a2), q3(a3) {}

    H1Element operator-() const { return {-q0, -q1, -q2, -q3}; }
    H1Element operator+(const H1Element& b) const { return {q0 + b.q0, q1 + b.q1, q2 + b.q2, q3 + b.q3}; }
    H1Element operator-(const H1Element& b) const { return {q0 - b.q0, q1 - b.q1, q2 - b.q2, q3 - b.q3}; }

    QuatAC toQuat() const {
        const LorentzComplex i = LorentzComplex::i();
        return {i * LorentzComplex(q0), LorentzComplex(q1), i * LorentzComplex(q2), LorentzComplex(q3)};
    }
    static H1Element fromQuat(const QuatAC& q, double* parityDefect = nullptr) {
        const double defect = std::max(std::max(q.c0.realPart().norm(), q.c1.imagPart().norm()),
                                       std::max(q.c2.realPart().norm(), q.c3.imagPart().norm()));
        if (parityDefect) *parityDefect = defect;
        return {q.c0.imagPart(), q.c1.realPart(), q.c2.imagPart(), q.c3.realPart()};
    }

    double norm() const {
        return std::max(std::max(q0.norm(), q1.norm()), std::max(q2.norm(), q3.norm()));
    }

    // Membership defect for R^{2,2} = {q in H1 : q = -hat(bar(q))}: q0 must be
    // purely sigma and q1,q2,q3 real.
    double vectorDefect() const {
        return std::max(std::max(std::abs(q0.u()), std::abs(q1.v())),
                        std::max(std::abs(q2.v()), std::abs(q3.v())));
    }
    Vector22 toVector() const { return {q0.v(), q1.u(), q2.u(), q3.u()}; }
};

// Clifford coordinates of a vector of R^{2,2}: the odd block of gamma(x),
// [x] = sigma i x0 + x1 I + i x2 J + x3 K.  In particular e0, e1, e2, e3 are
// represented by sigma i 1, I, iJ and K.
inline H1Element gammaOdd(const Vector22& x) {
    return {LorentzNumber::sigma() * x.x0, LorentzNumber::real(x.x1),
            LorentzNumber::real(x.x2), LorentzNumber::real(x.x3)};
}

// Bivector part Im H0 = iA I + A J + iA K, in coordinates (a1, a2, a3)
// on the basis (iI, J, iK).
struct ImH0Element {
    LorentzNumber a1, a2, a3;

    ImH0Element() = default;
    ImH0Element(LorentzNumber b1, LorentzNumber b2, LorentzNumber b3) : a1(b1), a2(b2), a3(b3) {}

    ImH0Element operator-() const { return {-a1, -a2, -a3}; }
    ImH0Element operator+(const ImH0Element& b) const { return {a1 + b.a1, a2 + b.a2, a3 + b.a3}; }
    ImH0Element operator-(const ImH0Element& b) const { return {a1 - b.a1, a2 - b.a2, a3 - b.a3}; }
    ImH0Element operator*(LorentzNumber s) const { return {a1 * s, a2 * s, a3 * s}; }
    ImH0Element operator*(double s) const { return {a1 * s, a2 * s, a3 * s}; }

    H0Element toH0() const { return {{}, a1, a2, a3}; }
    static ImH0Element fromH0(const H0Element& p, double* scalarDefect = nullptr) {
        if (scalarDefect) *scalarDefect = p.p0.norm();
        return {p.p1, p.p2, p.p3};
    }

    double norm() const { return std::max(a1.norm(), std::max(a2.norm(), a3.norm())); }
};

inline ImH0Element operator*(LorentzNumber s, const ImH0Element& x) { return x * s; }

inline LorentzNumber hForm(const ImH0Element& a, const ImH0Element& b) {
    return -(a.a1 * b.a1) + a.a2 * b.a2 - (a.a3 * b.a3);
}

// Cross product xi x xi' = (xi xi' - xi' xi)/2, valued in Im H0.
inline ImH0Element cross(const ImH0Element& a, const ImH0Element& b) {
    return {a.a2 * b.a3 - a.a3 * b.a2,
            a.a1 * b.a3 - a.a3 * b.a1,
            a.a1 * b.a2 - a.a2 * b.a1};
}

// Mixed product [xi,xi',xi''] = H(xi x xi', xi''), an A-valued volume form.
inline LorentzNumber mixed(const ImH0Element& a, const ImH0Element& b, const ImH0Element& c) {
    return hForm(cross(a, b), c);
}

// Decomposition H(xi,xi) = <xi,xi> - sigma xi^xi of the norm of a bivector:
// returns (Lambda^2 scalar product, wedge) with the wedge read in the
// volume element e0^e1^e2^e3.
struct BivectorNorm {
    double scalar;
    double wedge;
};

inline BivectorNorm bivectorNorm(const ImH0Element& x) {
    const LorentzNumber h = hForm(x, x);
    return {h.u(), -h.v()};
}

// Polarized wedge: the bilinear form whose quadratic form is xi^xi.
inline double bivectorWedge(const ImH0Element& a, const ImH0Element& b) {
    return -hForm(a, b).v();
}

// Exponential on H0 by scaling-and-squaring with a truncated power series;
// relative tail bound ~1e-14.
inline H0Element expH0(H0Element m) {
    int squarings = 0;
    double n = m.norm();
    while (n > 0.5) {
        m = m * 0.5;
        n *= 0.5;
        ++squarings;
    }
    H0Element term = H0Element::one();
    H0Element sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = term * m * (1.0 / k);
        sum += term;
        if (term.norm() <= 1e-16 * std::max(1.0, sum.norm())) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

} // namespace lorspin

#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>
#include <ostream>

#include "lorspin/errors.hpp"

namespace lorspin {

// Lorentz numbers A = R[sigma]/(sigma^2 - 1), stored in the null
// (idempotent) basis: a = (1+sigma)/2 * plus + (1-sigma)/2 * minus.
// Multiplication, inversion, exp and sqrt are componentwise in this basis.
struct LorentzNumber {
    double plus = 0.0;
    double minus = 0.0;

    constexpr LorentzNumber() = default;
    static constexpr LorentzNumber fromNull(double p, double m) { return {p, m}; }
    static constexpr LorentzNumber fromUV(double u, double v) { return {u + v, u - v}; }
    static constexpr LorentzNumber real(double u) { return {u, u}; }
    static constexpr LorentzNumber sigma() { return {1.0, -1.0}; }

    constexpr double u() const { return 0.5 * (plus + minus); }
    constexpr double v() const { return 0.5 * (plus - minus); }

    constexpr LorentzNumber hat() const { return {minus, plus}; }

    constexpr LorentzNumber operator-() const { return {-plus, -minus}; }
    constexpr LorentzNumber operator+(LorentzNumber b) const { return {plus + b.plus, minus + b.minus}; }
    constexpr LorentzNumber operator-(LorentzNumber b) const { return {plus - b.plus, minus - b.minus}; }
    constexpr LorentzNumber operator*(LorentzNumber b) const { return {plus * b.plus, minus * b.minus}; }
    constexpr LorentzNumber operator*(double c) const { return {plus * c, minus * c}; }
    constexpr LorentzNumber& operator+=(LorentzNumber b) { plus += b.plus; minus += b.minus; return *this; }
    constexpr LorentzNumber& operator-=(LorentzNumber b) { plus -= b.plus; minus -= b.minus; return *this; }

    bool isZeroDivisor(double tol = 0.0) const {
        return std::abs(plus) <= tol || std::abs(minus) <= tol;
    }

    LorentzNumber inverse() const {
        if (plus == 0.0 || minus == 0.0) throw InverseOfZeroDivisor();
        return {1.0 / plus, 1.0 / minus};
    }

    double norm() const { return std::max(std::abs(plus), std::abs(minus)); }

private:
    constexpr LorentzNumber(double p, double m) : plus(p), minus(m) {}
};

inline constexpr LorentzNumber operator*(double c, LorentzNumber a) { return a * c; }

inline LorentzNumber aExp(LorentzNumber a) {
    return LorentzNumber::fromNull(std::exp(a.plus), std::exp(a.minus));
}
inline LorentzNumber aCosh(LorentzNumber a) {
    return LorentzNumber::fromNull(std::cosh(a.plus), std::cosh(a.minus));
}
inline LorentzNumber aSinh(LorentzNumber a) {
    return LorentzNumber::fromNull(std::sinh(a.plus), std::sinh(a.minus));
}

// Componentwise square root; defined only where both null components are
// nonnegative (the domain where the normalization 1/sqrt|h| expressions live).
inline LorentzNumber aSqrt(LorentzNumber a) {
    if (a.plus < 0.0 || a.minus < 0.0) throw NegativeSquareRoot();
    return LorentzNumber::fromNull(std::sqrt(a.plus), std::sqrt(a.minus));
}

// Complexified Lorentz numbers A_C, null-basis storage with complex components.
struct LorentzComplex {
    std::complex<double> plus{0.0, 0.0};
    std::complex<double> minus{0.0, 0.0};

    LorentzComplex() = default;
    LorentzComplex(std::complex<double> p, std::complex<double> m) : plus(p), minus(m) {}
    LorentzComplex(LorentzNumber a) : plus(a.plus), minus(a.minus) {}
    static LorentzComplex real(double u) { return {{u, 0.0}, {u, 0.0}}; }
    static LorentzComplex i() { return {{0.0, 1.0}, {0.0, 1.0}}; }
    static LorentzComplex sigma() { return {{1.0, 0.0}, {-1.0, 0.0}}; }

    std::complex<double> u() const { return 0.5 * (plus + minus); }
    std::complex<double> v() const { return 0.5 * (plus - minus); }

    LorentzComplex hat() const { return {minus, plus}; }
    LorentzComplex conj() const { return {std::conj(plus), std::conj(minus)}; }

    LorentzComplex operator-() const { return {-plus, -minus}; }
    LorentzComplex operator+(const LorentzComplex& b) const { return {plus + b.plus, minus + b.minus}; }
    LorentzComplex operator-(const LorentzComplex& b) const { return {plus - b.plus, minus - b.minus}; }
    LorentzComplex operator*(const LorentzComplex& b) const { return {plus * b.plus, minus * b.minus}; }
    LorentzComplex operator*(double c) const { return {plus * c, minus * c}; }
    LorentzComplex& operator+=(const LorentzComplex& b) { plus += b.plus; minus += b.minus; return *this; }

    double norm() const { return std::max(std::abs(plus), std::abs(minus)); }

    // Real A-part and imaginary A-part of an element of A_C = A + iA.
    LorentzNumber realPart() const { return LorentzNumber::fromNull(plus.real(), minus.real()); }
    LorentzNumber imagPart() const { return LorentzNumber::fromNull(plus.imag(), minus.imag()); }
};

inline LorentzComplex operator*(double c, const LorentzComplex& a) { return a * c; }

std::ostream& operator<<(std::ostream& os, LorentzNumber a);
std::ostream& operator<<(std::ostream& os, const LorentzComplex& a);

inline std::ostream& operator<<(std::ostream& os, LorentzNumber a) {
    return os << a.u() << (a.v() < 0 ? "" : "+") << a.v() << "s";
}
inline std::ostream& operator<<(std::ostream& os, const LorentzComplex& a) {
    return os << "(" << a.u() << ")+(" << a.v() << ")s";
}

} // namespace lorspin

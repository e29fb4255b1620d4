#pragma once

#include <array>

#include "lorspin/quat.hpp"

namespace lorspin {

// 4x4 real matrix acting on R^{2,2}; columns are images of e0..e3.
struct Mat4 {
    std::array<std::array<double, 4>, 4> a{};

    static Mat4 identity() {
        Mat4 m;
        for (int i = 0; i < 4; ++i) m.a[i][i] = 1.0;
        return m;
    }

    Mat4 operator*(const Mat4& b) const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0;
                for (int k = 0; k < 4; ++k) s += a[i][k] * b.a[k][j];
                r.a[i][j] = s;
            }
        return r;
    }
    Vector22 operator*(const Vector22& x) const {
        Vector22 y;
        for (int i = 0; i < 4; ++i) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += a[i][k] * x[k];
            y[i] = s;
        }
        return y;
    }
    Mat4 operator-(const Mat4& b) const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.a[i][j] = a[i][j] - b.a[i][j];
        return r;
    }

    double norm() const {
        double m = 0;
        for (const auto& row : a)
            for (double x : row) m = std::max(m, std::abs(x));
        return m;
    }
};

// Defect of A^T eta A = eta with eta = diag(-1,1,-1,1).
inline double metricDefect(const Mat4& m) {
    static const double eta[4] = {-1, 1, -1, 1};
    double d = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += m.a[k][i] * eta[k] * m.a[k][j];
            d = std::max(d, std::abs(s - (i == j ? eta[i] : 0.0)));
        }
    return d;
}

// Left Clifford action of an even element on a spinor (both in H0 coordinates).
inline H0Element evenAction(const H0Element& p, const H0Element& s) { return p * s; }

// Clifford action of a vector on a spinor: [Y.phi] = sigma i [Y] hat([phi]).
inline H0Element vectorAction(const H1Element& y, const H0Element& s) {
    const LorentzComplex si = LorentzComplex::sigma() * LorentzComplex::i();
    double defect = 0;
    H0Element r = H0Element::fromQuat(si * (y.toQuat() * s.toQuat().hat()), &defect);
    (void)defect;
    return r;
}
inline H0Element vectorAction(const Vector22& x, const H0Element& s) {
    return vectorAction(gammaOdd(x), s);
}

// Action of a vector on an odd element: [e_j . nu] = [e_j] hat([nu]), even-valued.
inline H0Element vectorActionOdd(const H1Element& y, const H1Element& nu) {
    return H0Element::fromQuat(y.toQuat() * nu.toQuat().hat());
}

// Renormalize to Spin(2,2): divide by the A-square-root of H(p,p).
// Throws if H(p,p) has a nonpositive null component.
inline H0Element normalizeSpin(const H0Element& p) {
    LorentzNumber h = hForm(p, p);
    if (h.plus <= 0.0 || h.minus <= 0.0) throw NotUnitSpinor();
    return p * aSqrt(h).inverse();
}

// The double cover Spin(2,2) -> SO(2,2), Phi(p): q -> p q hat(p)^{-1}.
// For unit p, hat(p)^{-1} = hat(bar(p)).
inline Mat4 doubleCover(const H0Element& p, double tol = 1e-9) {
    const LorentzNumber h = hForm(p, p);
    if (std::abs(h.plus - 1.0) > tol || std::abs(h.minus - 1.0) > tol) throw NotUnitSpinor();
    const QuatAC pq = p.toQuat();
    const QuatAC pinv = p.bar().hat().toQuat();
    Mat4 m;
    for (int k = 0; k < 4; ++k) {
        const H1Element img = H1Element::fromQuat(pq * gammaOdd(Vector22::basis(k)).toQuat() * pinv);
        if (img.vectorDefect() > 1e-10 * std::max(1.0, img.norm())) throw NotUnitSpinor(
            "conjugated basis vector left R^{2,2}");
        const Vector22 col = img.toVector();
        for (int i = 0; i < 4; ++i) m.a[i][k] = col[i];
    }
    return m;
}

// Addresses of the four lines Sigma^{±±}: sign of the sigma-action and of
// the e0.e1-action.
struct SplitMask {
    int sign_sigma;  // +1 or -1
    int sign_e01;    // +1 or -1
};

// Projection onto Sigma^{sign_sigma, sign_e01}: composition of the left
// multiplications by (1 ± sigma)/2 and (1 ± [e0.e1])/2, where [e0.e1] acts
// as left multiplication by sigma iI.
inline H0Element splitProject(const H0Element& s, SplitMask mask) {
    const H0Element ps = (H0Element::one() + double(mask.sign_sigma) * H0Element::sigmaOne()) * 0.5;
    const H0Element sigmaiI = LorentzNumber::sigma() * H0Element::iI();
    const H0Element pe = (H0Element::one() + double(mask.sign_e01) * sigmaiI) * 0.5;
    return pe * (ps * s);
}

// Real structure beta(xi) = i sigma xi I; in H0 coordinates
// (p0,p1,p2,p3) -> (sigma p1, sigma p0, -sigma p3, -sigma p2).
inline H0Element realStructure(const H0Element& s) {
    const LorentzNumber sg = LorentzNumber::sigma();
    return {sg * s.p1, sg * s.p0, -(sg * s.p3), -(sg * s.p2)};
}

// Spinor pairing <<s,t>> = sigma i bar([t]) [s], valued in H1; its sigma-i-1
// coefficient is H(s,t).
struct SpinorPairing {
    H1Element bracket;
    LorentzNumber h;
};

inline SpinorPairing spinorPairing(const H0Element& s, const H0Element& t) {
    const LorentzComplex si = LorentzComplex::sigma() * LorentzComplex::i();
    const H1Element br = H1Element::fromQuat(si * (t.toQuat().bar() * s.toQuat()));
    return {br, LorentzNumber::sigma() * br.q0};
}

} // namespace lorspin

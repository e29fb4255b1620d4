#include "lorspin/reduction.hpp"

#include <Eigen/Dense>
#include <random>

namespace lorspin {

namespace {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat4r = Eigen::Matrix<double, 4, 4>;
using Mat84 = Eigen::Matrix<double, 8, 4>;

Vec8 toVec8(const H0Element& p) {
    Vec8 x;
    x << p.p0.plus, p.p0.minus, p.p1.plus, p.p1.minus, p.p2.plus, p.p2.minus, p.p3.plus,
        p.p3.minus;
    return x;
}

H0Element fromVec8(const Vec8& x) {
    return {LorentzNumber::fromNull(x[0], x[1]), LorentzNumber::fromNull(x[2], x[3]),
            LorentzNumber::fromNull(x[4], x[5]), LorentzNumber::fromNull(x[6], x[7])};
}

template <typename F>
Mat8 opMat8(F&& f) {
    Mat8 a;
    for (int k = 0; k < 8; ++k) {
        Vec8 e = Vec8::Zero();
        e[k] = 1.0;
        a.col(k) = toVec8(f(fromVec8(e)));
    }
    return a;
}

IntrinsicSpinor fromReal4(double a, double b, double c, double d) {
    return {{a, b}, {c, d}};
}

template <typename F>
Mat4r opMat4(F&& f) {
    Mat4r a;
    for (int k = 0; k < 4; ++k) {
        double r[4] = {0, 0, 0, 0};
        r[k] = 1.0;
        const IntrinsicSpinor img = f(fromReal4(r[0], r[1], r[2], r[3]));
        a.col(k) << img.z1.real(), img.z1.imag(), img.z2.real(), img.z2.imag();
    }
    return a;
}

// The complex coordinates of an element of Sigma^+ in the basis
// ((1+sigma)/2, (1+sigma)/2 iI), with i = right multiplication by J.
std::complex<double> plusCoord1(const H0Element& p) { return {p.p0.plus, p.p2.plus}; }
std::complex<double> plusCoord2(const H0Element& p) { return {p.p1.plus, p.p3.plus}; }

IntrinsicSpinor randomSpinor(std::mt19937& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return fromReal4(d(rng), d(rng), d(rng), d(rng));
}

double intrinsicNormSq(const IntrinsicSpinor& p, Target3 target) {
    return intrinsicDot(p, p, target);
}

} // namespace

double intrinsicDot(const IntrinsicSpinor& p, const IntrinsicSpinor& q, Target3 target) {
    const double a = p.z1.real(), b = p.z1.imag(), c = p.z2.real(), d = p.z2.imag();
    const double a1 = q.z1.real(), b1 = q.z1.imag(), c1 = q.z2.real(), d1 = q.z2.imag();
    if (target == Target3::R12) return 0.5 * (a * d1 + a1 * d - b * c1 - b1 * c);
    return -0.5 * (a * c1 + a1 * c + b * d1 + b1 * d);
}

IntrinsicSpinor intrinsicAction(double x2, double x3, const IntrinsicSpinor& p, Target3 target) {
    const double s = target == Target3::R12 ? -1.0 : 1.0;
    return {s * (x2 * p.z2 - x3 * p.z2), s * (x2 * p.z1 + x3 * p.z1)};
}

H0Element Identification::apply(const IntrinsicSpinor& p) const {
    const double r[4] = {p.z1.real(), p.z1.imag(), p.z2.real(), p.z2.imag()};
    Vec8 x = Vec8::Zero();
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 4; ++k) x[i] += m[i][k] * r[k];
    return fromVec8(x);
}

Identification buildIdentification(Target3 target) {
    const H0Element jElem = H0Element::J();
    const H0Element projMinus = (H0Element::one() - H0Element::sigmaOne()) * 0.5;

    const Mat8 PM = opMat8([&](const H0Element& s) { return projMinus * s; });
    const Mat8 RJ = opMat8([&](const H0Element& s) { return s * jElem; });
    Mat8 A[4];
    for (int k = 0; k < 4; ++k)
        A[k] = opMat8([&](const H0Element& s) { return vectorAction(Vector22::basis(k), s); });

    const Mat4r rho2 =
        opMat4([&](const IntrinsicSpinor& p) { return intrinsicAction(1, 0, p, target); });
    const Mat4r rho3 =
        opMat4([&](const IntrinsicSpinor& p) { return intrinsicAction(0, 1, p, target); });
    const Mat4r rhoI =
        opMat4([](const IntrinsicSpinor& p) { return p * std::complex<double>(0, 1); });

    // Linear system on vec(M) (column-major), blocks L M - M R = 0 written
    // as (I4 x L - R^T x I8) vec(M) = 0.
    const auto block = [](const Mat8& L, const Mat4r& R) {
        Eigen::Matrix<double, 32, 32> B = Eigen::Matrix<double, 32, 32>::Zero();
        for (int c = 0; c < 4; ++c) {
            B.block<8, 8>(8 * c, 8 * c) += L;
            for (int c2 = 0; c2 < 4; ++c2)
                B.block<8, 8>(8 * c, 8 * c2) -= R(c2, c) * Mat8::Identity();
        }
        return B;
    };

    Eigen::MatrixXd K(128, 32);
    K.block<32, 32>(0, 0) = block(PM, Mat4r::Zero());
    K.block<32, 32>(32, 0) = block(RJ, rhoI);
    if (target == Target3::R12) {
        K.block<32, 32>(64, 0) = block(A[2] * A[1], rho2);
        K.block<32, 32>(96, 0) = block(A[3] * A[1], rho3);
    } else {
        K.block<32, 32>(64, 0) = block(RJ * A[0] * A[2], rho2);
        K.block<32, 32>(96, 0) = block(RJ * A[0] * A[3], rho3);
    }

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(K, Eigen::ComputeFullV);
    const double smax = svd.singularValues()[0];
    int dim = 0;
    for (int k = 0; k < 32; ++k)
        if (svd.singularValues()[k] <= 1e-10 * smax) ++dim;
    if (dim != 2) throw NoSolution("identification constraint system has kernel dim != 2");

    const auto reshape = [](const Eigen::VectorXd& v) {
        Mat84 M;
        for (int c = 0; c < 4; ++c)
            for (int r = 0; r < 8; ++r) M(r, c) = v[8 * c + r];
        return M;
    };
    const Mat84 M1 = reshape(svd.matrixV().col(30));
    const Mat84 M2 = reshape(svd.matrixV().col(31));

    const auto applyM = [](const Mat84& M, const IntrinsicSpinor& p) {
        Eigen::Vector4d r;
        r << p.z1.real(), p.z1.imag(), p.z2.real(), p.z2.imag();
        return fromVec8(M * r);
    };

    // Scale: H(psi*, psi*).plus must equal +-|psi|^2 on a test vector of
    // nonzero intrinsic norm.
    const IntrinsicSpinor tv =
        target == Target3::R12 ? fromReal4(1, 0, 0, 1) : fromReal4(1, 0, 1, 0);
    const double want = target == Target3::R12 ? intrinsicNormSq(tv, target)
                                               : -intrinsicNormSq(tv, target);
    const double g11 = hForm(applyM(M1, tv), applyM(M1, tv)).plus;
    if (g11 * want <= 0) throw NoSolution("norm form degenerate on the kernel");
    Mat84 M = M1 * std::sqrt(want / g11);

    // Phase: make the first nonzero complex coordinate of (1,0)* real positive.
    {
        const H0Element w = applyM(M, fromReal4(1, 0, 0, 0));
        std::complex<double> z = plusCoord1(w);
        if (std::abs(z) < 1e-8) z = plusCoord2(w);
        if (std::abs(z) < 1e-8) throw NoSolution("vanishing gauge pivot");
        const std::complex<double> lam = std::conj(z) / std::abs(z);
        const Mat8 RL = opMat8(
            [&](const H0Element& s) { return s * (H0Element::one() * lam.real() + jElem * lam.imag()); });
        M = RL * M;
    }

    Identification id;
    id.target = target;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 4; ++c) id.m[r][c] = M(r, c);

    // Re-verify every constraint on random spinors.
    std::mt19937 rng(20240823u);
    for (int trial = 0; trial < 100; ++trial) {
        const IntrinsicSpinor p = randomSpinor(rng);
        const H0Element s = id.apply(p);
        double defect = (projMinus * s).norm();
        const LorentzNumber h = hForm(s, s);
        const double n2 = intrinsicNormSq(p, target);
        defect = std::max(defect,
                          std::abs(h.plus - (target == Target3::R12 ? n2 : -n2)));
        defect = std::max(defect, std::abs(h.minus));
        defect = std::max(defect,
                          (id.apply(p * std::complex<double>(0, 1)) - s * jElem).norm());
        for (int x = 2; x <= 3; ++x) {
            const H0Element lhs = id.apply(intrinsicAction(x == 2, x == 3, p, target));
            const H0Element rhs =
                target == Target3::R12
                    ? vectorAction(Vector22::basis(x),
                                   vectorAction(Vector22::basis(1), s))
                    : vectorAction(Vector22::basis(0),
                                   vectorAction(Vector22::basis(x), s)) *
                          jElem;
            defect = std::max(defect, (lhs - rhs).norm());
        }
        if (defect > 1e-12) throw NoSolution("identification fails verification");
    }
    return id;
}

EmbedReport embedCheck(const SpinorField& phi, Target3 target) {
    const NullChart& c = phi.chart;
    Grid<double> alg(c, 0.0), nrm(c, 0.0);
    const Vector22 er = Vector22::basis(target == Target3::R12 ? 0 : 1);
    parallelFor(c.n_s, c.n_t, [&](int i, int j) {
        const H0Element g = phi.g.at(i, j);
        const H0Element act = vectorAction(er, g);
        alg.at(i, j) = target == Target3::R12 ? (act - g).norm()
                                              : (act + realStructure(g)).norm();
        const SpinorPairing p = spinorPairing(act, g);
        const Vector22 dev = p.bracket.toVector() - er;
        nrm.at(i, j) = std::max(maxAbs(dev), p.bracket.vectorDefect());
    });
    EmbedReport r;
    r.algebraicDefect = maxInterior(c.n_s, c.n_t, 0, [&](int i, int j) { return alg.at(i, j); });
    r.normalDefect = maxInterior(c.n_s, c.n_t, 0, [&](int i, int j) { return nrm.at(i, j); });
    return r;
}

Grid<double> intrinsicDiracResidual(const Grid<IntrinsicSpinor>& psi, const Grid<double>& H,
                                    Target3 target, const NullChart& chart) {
    Grid<double> res(chart);
    parallelFor(chart.n_s, chart.n_t, [&](int i, int j) {
        const IntrinsicSpinor du = derivU(psi, i, j, chart);
        const IntrinsicSpinor dv = derivV(psi, i, j, chart);
        const IntrinsicSpinor D =
            intrinsicAction(-1, 0, du, target) + intrinsicAction(0, 1, dv, target);
        const std::complex<double> hfac =
            target == Target3::R12 ? std::complex<double>(H.at(i, j), 0)
                                   : std::complex<double>(0, H.at(i, j));
        const double eq = (D - psi.at(i, j) * hfac).norm();
        const double want = target == Target3::R12 ? 1.0 : -1.0;
        const double norm = std::abs(intrinsicDot(psi.at(i, j), psi.at(i, j), target) - want);
        res.at(i, j) = std::max(eq, norm);
    });
    return res;
}

SpinorField liftIntrinsic(const Grid<IntrinsicSpinor>& psi, const Grid<double>& H,
                          Target3 target, const NullChart& chart, double tol) {
    if (tol < 0) {
        double maxH = 0;
        for (double h : H.data) maxH = std::max(maxH, std::abs(h));
        const double h = std::max(chart.h_s, chart.h_t);
        tol = 100.0 * std::max(1.0, maxH) * h * h;
    }
    const Grid<double> res = intrinsicDiracResidual(psi, H, target, chart);
    const double worst =
        maxInterior(chart.n_s, chart.n_t, 1, [&](int i, int j) { return res.at(i, j); });
    if (worst > tol) throw IntrinsicEquationViolated("intrinsic Dirac residual too large");

    const Identification id = buildIdentification(target);
    SpinorField phi{chart, Grid<H0Element>(chart),
                    FrameCoords{Grid<double>(chart, 1.0), Grid<double>(chart, 0.0),
                                Grid<double>(chart, 0.0), Grid<double>(chart, 1.0)}};
    const Vector22 er = Vector22::basis(target == Target3::R12 ? 0 : 1);
    parallelFor(chart.n_s, chart.n_t, [&](int i, int j) {
        const H0Element s = id.apply(psi.at(i, j));
        const H0Element neg =
            target == Target3::R12 ? vectorAction(er, s) : vectorAction(er, realStructure(s));
        phi.g.at(i, j) = s + neg;
    });
    return phi;
}

XiForm explicitXi(const Grid<IntrinsicSpinor>& psi, Target3 target, const NullChart& chart) {
    XiForm xi{chart, Grid<Vector22>(chart), Grid<Vector22>(chart), 0.0};
    const std::complex<double> I1(0, 1);
    parallelFor(chart.n_s, chart.n_t, [&](int i, int j) {
        const IntrinsicSpinor p = psi.at(i, j);
        const auto component = [&](double x2, double x3) {
            const IntrinsicSpinor Xp = intrinsicAction(x2, x3, p, target);
            Vector22 out;
            if (target == Target3::R12) {
                const IntrinsicSpinor chi = intrinsicConj(p);
                const IntrinsicSpinor achi = intrinsicAlpha(chi);
                out = {0.0, intrinsicDot(Xp, achi, target),
                       intrinsicDot(Xp, chi * I1, target),
                       intrinsicDot(Xp, achi * I1, target)};
            } else {
                const IntrinsicSpinor ap = intrinsicAlpha(p);
                out = {-intrinsicDot(Xp, ap * I1, target), 0.0,
                       -intrinsicDot(Xp, ap, target),
                       -intrinsicDot(Xp, intrinsicConj(p), target)};
            }
            return out;
        };
        xi.xi_u.at(i, j) = component(1, 0); // d_u = e2
        xi.xi_v.at(i, j) = component(0, 1); // d_v = e3
    });
    return xi;
}

} // namespace lorspin

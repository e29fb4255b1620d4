// Benchmark of the OpenMP grid kernels against the serial reference loop.
// The kernel is the pointwise Dirac-residual stencil, the most common shape
// in the library (a 5-point even-Clifford stencil per grid point).
#include <chrono>
#include <cstdio>

#include "lorspin/dirac.hpp"

using namespace lorspin;

namespace {

SpinorField makeField(const NullChart& c) {
    SpinorField phi;
    phi.chart = c;
    phi.g = Grid<H0Element>(c);
    for (int i = 0; i < c.n_s; ++i)
        for (int j = 0; j < c.n_t; ++j) {
            const double u = c.u(i, j);
            phi.g.at(i, j) = normalizeSpin(H0Element::one() * std::cosh(0.3 * u) +
                                           H0Element::J() * std::sinh(0.3 * u));
        }
    phi.frame.e2u = Grid<double>(c, 1.0);
    phi.frame.e2v = Grid<double>(c, 0.0);
    phi.frame.e3u = Grid<double>(c, 0.0);
    phi.frame.e3v = Grid<double>(c, 1.0);
    return phi;
}

// The residual stencil with a chosen loop driver; identical body to
// diracResidual so the comparison is loop-overhead only.
template <typename Loop>
double runStencil(const SpinorField& phi, const MeanCurvature& H, Loop&& loop,
                  Grid<double>& out) {
    const NullChart& c = phi.chart;
    loop(c.n_s, c.n_t, [&](int i, int j) {
        const H0Element du = derivU(phi.g, i, j, c);
        const H0Element dv = derivV(phi.g, i, j, c);
        const H0Element de2 = du * phi.frame.e2u.at(i, j) + dv * phi.frame.e2v.at(i, j);
        const H0Element de3 = du * phi.frame.e3u.at(i, j) + dv * phi.frame.e3v.at(i, j);
        const H0Element D = -vectorAction(Vector22{0, 0, 1, 0}, de2) +
                            vectorAction(Vector22{0, 0, 0, 1}, de3);
        const Vector22 hv{H.H0.at(i, j), H.H1.at(i, j), 0, 0};
        out.at(i, j) = (D - vectorAction(hv, phi.g.at(i, j))).norm();
    });
    double acc = 0;
    for (double v : out.data) acc += v;
    return acc;
}

template <typename F>
double timeMs(F&& f, int reps) {
    // warm-up
    f();
    const auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) f();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

} // namespace

int main() {
    std::printf("threads: %d\n", maxThreads());
    std::printf("%8s %6s %14s %14s %9s %12s\n", "n", "reps", "serial (ms)", "parallel (ms)",
                "speedup", "max |diff|");
    for (int n : {129, 257, 513, 1025}) {
        const NullChart c = NullChart::square(n, 2.0, 2.0, -1.0, -1.0);
        const SpinorField phi = makeField(c);
        const MeanCurvature H{Grid<double>(c, 0.0), Grid<double>(c, 0.0)};
        Grid<double> outSerial(c), outParallel(c);
        const int reps = n <= 257 ? 20 : 5;
        const double ser = timeMs(
            [&] { runStencil(phi, H, [](int a, int b, auto&& f) { serialFor(a, b, f); },
                             outSerial); },
            reps);
        const double par = timeMs(
            [&] { runStencil(phi, H, [](int a, int b, auto&& f) { parallelFor(a, b, f); },
                             outParallel); },
            reps);
        double diff = 0;
        for (size_t k = 0; k < outSerial.data.size(); ++k)
            diff = std::max(diff, std::abs(outSerial.data[k] - outParallel.data[k]));
        std::printf("%8d %6d %14.3f %14.3f %8.2fx %12.3e\n", n, reps, ser, par, ser / par, diff);
    }
    return 0;
}

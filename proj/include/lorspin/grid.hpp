#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lorspin/errors.hpp"

namespace lorspin {

// Uniform grid in the null coordinates (s,t), with u=(s+t)/2, v=(s-t)/2.
struct NullChart {
    int n_s = 0, n_t = 0;
    double h_s = 0, h_t = 0;
    double s0 = 0, t0 = 0;

    NullChart() = default;
    NullChart(int ns, int nt, double hs, double ht, double s_origin = 0, double t_origin = 0)
        : n_s(ns), n_t(nt), h_s(hs), h_t(ht), s0(s_origin), t0(t_origin) {
        if (ns < 2 || nt < 2 || hs <= 0 || ht <= 0) throw SchemaError("invalid chart dimensions");
    }
    static NullChart square(int n, double extent_s, double extent_t,
                            double s_origin = 0, double t_origin = 0) {
        return NullChart(n, n, extent_s / (n - 1), extent_t / (n - 1), s_origin, t_origin);
    }

    double s(int i) const { return s0 + i * h_s; }
    double t(int j) const { return t0 + j * h_t; }
    double u(int i, int j) const { return 0.5 * (s(i) + t(j)); }
    double v(int i, int j) const { return 0.5 * (s(i) - t(j)); }
    int size() const { return n_s * n_t; }
};

template <typename T>
struct Grid {
    int n_s = 0, n_t = 0;
    std::vector<T> data;

    Grid() = default;
    Grid(int ns, int nt, const T& fill = T()) : n_s(ns), n_t(nt), data(size_t(ns) * nt, fill) {}
    explicit Grid(const NullChart& c, const T& fill = T()) : Grid(c.n_s, c.n_t, fill) {}

    T& at(int i, int j) { return data[size_t(i) * n_t + j]; }
    const T& at(int i, int j) const { return data[size_t(i) * n_t + j]; }
};

inline int maxThreads() {
    if (const char* env = std::getenv("LORSPIN_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Parallel loop over grid points (i,j); each iteration must write only to
// its own slot so the result is independent of scheduling.
template <typename F>
void parallelFor(int n_s, int n_t, F&& f) {
#ifdef _OPENMP
    const int threads = maxThreads();
#pragma omp parallel for collapse(2) num_threads(threads) schedule(static)
    for (int i = 0; i < n_s; ++i)
        for (int j = 0; j < n_t; ++j) f(i, j);
#else
    for (int i = 0; i < n_s; ++i)
        for (int j = 0; j < n_t; ++j) f(i, j);
#endif
}

// Parallel loop whose body may throw: the first exception is captured and
// rethrown after the region ends (throwing out of an OpenMP region aborts).
template <typename F>
void parallelForChecked(int n_s, int n_t, F&& f) {
#ifdef _OPENMP
    std::exception_ptr error;
    const int threads = maxThreads();
#pragma omp parallel for collapse(2) num_threads(threads) schedule(static) shared(error)
    for (int i = 0; i < n_s; ++i)
        for (int j = 0; j < n_t; ++j) {
            try {
                f(i, j);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
    if (error) std::rethrow_exception(error);
#else
    for (int i = 0; i < n_s; ++i)
        for (int j = 0; j < n_t; ++j) f(i, j);
#endif
}

template <typename F>
void serialFor(int n_s, int n_t, F&& f) {
    for (int i = 0; i < n_s; ++i)
        for (int j = 0; j < n_t; ++j) f(i, j);
}

// Max over interior points (boundary layer of the given width excluded);
// order-independent, safe to parallelize.
template <typename F>
double maxInterior(int n_s, int n_t, int margin, F&& value) {
    double m = 0;
    for (int i = margin; i < n_s - margin; ++i)
        for (int j = margin; j < n_t - margin; ++j) m = std::max(m, value(i, j));
    return m;
}

template <typename F>
double meanInterior(int n_s, int n_t, int margin, F&& value) {
    double s = 0;
    long count = 0;
    for (int i = margin; i < n_s - margin; ++i)
        for (int j = margin; j < n_t - margin; ++j) {
            s += value(i, j);
            ++count;
        }
    return count ? s / count : 0.0;
}

// Second-order derivative in the s-direction: central in the interior,
// one-sided 3-point at the boundary.
template <typename T>
T derivS(const Grid<T>& g, int i, int j, double h) {
    if (i == 0) return (g.at(2, j) * -1.0 + g.at(1, j) * 4.0 - g.at(0, j) * 3.0) * (0.5 / h);
    if (i == g.n_s - 1)
        return (g.at(i, j) * 3.0 - g.at(i - 1, j) * 4.0 + g.at(i - 2, j)) * (0.5 / h);
    return (g.at(i + 1, j) - g.at(i - 1, j)) * (0.5 / h);
}

template <typename T>
T derivT(const Grid<T>& g, int i, int j, double h) {
    if (j == 0) return (g.at(i, 2) * -1.0 + g.at(i, 1) * 4.0 - g.at(i, 0) * 3.0) * (0.5 / h);
    if (j == g.n_t - 1)
        return (g.at(i, j) * 3.0 - g.at(i, j - 1) * 4.0 + g.at(i, j - 2)) * (0.5 / h);
    return (g.at(i, j + 1) - g.at(i, j - 1)) * (0.5 / h);
}

// Derivatives in (u,v): with s=u+v, t=u-v, d_u = d_s + d_t and d_v = d_s - d_t.
template <typename T>
T derivU(const Grid<T>& g, int i, int j, const NullChart& c) {
    return derivS(g, i, j, c.h_s) + derivT(g, i, j, c.h_t);
}
template <typename T>
T derivV(const Grid<T>& g, int i, int j, const NullChart& c) {
    return derivS(g, i, j, c.h_s) - derivT(g, i, j, c.h_t);
}

} // namespace lorspin

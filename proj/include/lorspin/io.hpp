#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lorspin/generator.hpp"

namespace lorspin {

// On-disk immersion dataset: the chart, the immersion grid and named
// per-point extra columns (lam/mu or nu/rho) carried through round trips.
struct SurfaceData {
    NullChart chart;
    Grid<Vector22> F;
    std::vector<std::pair<std::string, Grid<double>>> extras;
};

// CSV schema: header "s,t,x0,x1,x2,x3[,extra...]", rows in row-major order
// (s outer, t inner), all floats printed round-trip exact (%.17g).
void writeSurfaceCsv(const SurfaceData& s, const std::string& path);
SurfaceData readSurfaceCsv(const std::string& path);

// Lossless JSON form: chart parameters plus one array per column.
void writeSurfaceJson(const SurfaceData& s, const std::string& path);
SurfaceData readSurfaceJson(const std::string& path);

// Triangulated mesh through a 3x4 projection (default drops x0); throws
// SchemaError if the projection is rank-deficient. Emits 2(n_s-1)(n_t-1)
// triangles.
using Projection34 = std::array<std::array<double, 4>, 3>;
Projection34 dropX0Projection();
void writeObj(const SurfaceData& s, const Projection34& proj, const std::string& path);

struct ResidualStat {
    double max = 0, mean = 0;
    int max_i = 0, max_j = 0; // grid point attaining the max
};

// Residual battery of an immersion: curvatures and structure-equation
// residuals from the grid itself, plus Dirac/Killing/xi residuals of the
// spinor field re-integrated from the extracted fundamental data.
struct InvariantReport {
    int n_s = 0, n_t = 0;
    double h_s = 0, h_t = 0;
    ResidualStat dirac, killing, dxi, gaussEq, codazzi, ricci, K, KN;
    double pathDefect = 0;
    double spinDrift = 0; // max |H(phi,phi) - 1| of the verification spinor
    int deltaPos = 0, deltaZero = 0, deltaNeg = 0;
    std::optional<double> orderK, orderDxi; // with a second resolution

    // Threshold policy: every residual <= absTol + scale * h^2 (flatness
    // included: the verifier targets the flat pipeline).
    bool pass(double absTol = 1e-6, double scale = 100.0) const;
};

InvariantReport verifySurface(const SurfaceData& s);

// Human-readable list of the residuals exceeding the threshold policy,
// each naming the invariant and the grid point attaining the max.
std::vector<std::string> failedInvariants(const InvariantReport& r, double absTol = 1e-6,
                                          double scale = 100.0);

// Richardson order estimates from a coarse/fine pair of reports.
void attachOrders(InvariantReport& coarse, const InvariantReport& fine);

std::string reportToJson(const InvariantReport& r);

// Runs the generation pipeline described by a JSON configuration; returns
// the surface plus the JSON sidecar (branch, frames, auxiliary fields and
// the invariant report). Schema violations throw SchemaError; numerical
// failures propagate (ZeroCrossing, NotClosed, ...).
struct GenerationOutput {
    SurfaceData surface;
    std::string sidecar;
};
GenerationOutput runGeneration(const std::string& configJson);

} // namespace lorspin

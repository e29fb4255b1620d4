// Command-line front end: generate flat Lorentzian immersions in R^{2,2},
// verify the structure-equation invariants of a sampled immersion, and export
// datasets to CSV/JSON/OBJ. Exit codes: 0 success, 1 invariant failure,
// 2 malformed input, 3 numerical failure.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lorspin/io.hpp"

namespace {

using namespace lorspin;

std::string readFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open for reading: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool hasSuffix(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

SurfaceData loadSurface(const std::string& path) {
    return hasSuffix(path, ".json") ? readSurfaceJson(path) : readSurfaceCsv(path);
}

int cmdGenerate(const std::string& configPath, const std::string& outPath,
                std::string sidecarPath) {
    const GenerationOutput out = runGeneration(readFile(configPath));
    writeSurfaceCsv(out.surface, outPath);
    if (sidecarPath.empty()) sidecarPath = outPath + ".json";
    std::ofstream side(sidecarPath);
    if (!side) throw SchemaError("cannot open for writing: " + sidecarPath);
    side << out.sidecar << '\n';
    std::cout << "wrote " << outPath << " and " << sidecarPath << '\n';
    return 0;
}

int cmdVerify(const std::string& inPath, const std::string& pairPath, double tol,
              const std::string& reportPath) {
    const SurfaceData s = loadSurface(inPath);
    InvariantReport report = verifySurface(s);
    if (!pairPath.empty()) {
        InvariantReport other = verifySurface(loadSurface(pairPath));
        // Richardson orders need coarse-before-fine; accept either CLI order.
        if (std::max(report.h_s, report.h_t) > std::max(other.h_s, other.h_t)) {
            attachOrders(report, other);
        } else {
            attachOrders(other, report);
            report.orderK = other.orderK;
            report.orderDxi = other.orderDxi;
        }
    }
    const std::string json = reportToJson(report);
    if (reportPath.empty()) {
        std::cout << json << '\n';
    } else {
        std::ofstream out(reportPath);
        if (!out) throw SchemaError("cannot open for writing: " + reportPath);
        out << json << '\n';
    }
    const std::vector<std::string> bad = failedInvariants(report, tol);
    for (const std::string& msg : bad) std::cerr << "invariant failure: " << msg << '\n';
    return bad.empty() ? 0 : 1;
}

int cmdExport(const std::string& inPath, const std::string& format, const std::string& outPath,
              const std::vector<double>& projection) {
    const SurfaceData s = loadSurface(inPath);
    if (format == "csv") {
        writeSurfaceCsv(s, outPath);
    } else if (format == "json") {
        writeSurfaceJson(s, outPath);
    } else if (format == "obj-projection" || format == "obj") {
        Projection34 proj = dropX0Projection();
        if (!projection.empty()) {
            if (projection.size() != 12)
                throw SchemaError("--projection needs 12 reals (3x4, row-major)");
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 4; ++c) proj[r][c] = projection[size_t(r) * 4 + c];
        }
        writeObj(s, proj, outPath);
    } else {
        throw SchemaError("unknown format '" + format + "' (csv, json, obj-projection)");
    }
    std::cout << "wrote " << outPath << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flat Lorentzian surfaces in R^{2,2}: generation, verification, export"};
    app.require_subcommand(1);

    std::string configPath, outPath, sidecarPath;
    auto* gen = app.add_subcommand("generate", "generate a flat immersion from a JSON config");
    gen->add_option("--config", configPath, "generation config (JSON)")->required();
    gen->add_option("--out", outPath, "output CSV path")->required();
    gen->add_option("--sidecar", sidecarPath, "sidecar JSON path (default: <out>.json)");

    std::string verifyIn, pairPath, reportPath;
    double tol = 1e-6;
    auto* ver = app.add_subcommand("verify", "check the invariants of a sampled immersion");
    ver->add_option("input", verifyIn, "surface file (.csv or .json)")->required();
    ver->add_option("--resolution-pair", pairPath,
                    "second resolution of the same surface, enables order estimates");
    ver->add_option("--tol", tol, "absolute tolerance added to the h^2-scaled bound");
    ver->add_option("--report", reportPath, "write the report here instead of stdout");

    std::string exportIn, format = "csv", exportOut;
    std::vector<double> projection;
    auto* exp = app.add_subcommand("export", "convert a surface file");
    exp->add_option("input", exportIn, "surface file (.csv or .json)")->required();
    exp->add_option("--format", format, "csv | json | obj-projection")->required();
    exp->add_option("--out", exportOut, "output path")->required();
    exp->add_option("--projection", projection, "3x4 projection, row-major (obj only)")
        ->expected(12);

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmdGenerate(configPath, outPath, sidecarPath);
        if (ver->parsed()) return cmdVerify(verifyIn, pairPath, tol, reportPath);
        return cmdExport(exportIn, format, exportOut, projection);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const lorspin::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return int(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

#include "lorspin/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

namespace lorspin {

using nlohmann::json;

namespace {

std::string fmtDouble(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::ofstream openOut(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot open for writing: " + path);
    return out;
}

std::ifstream openIn(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open for reading: " + path);
    return in;
}

std::vector<std::string> splitCsv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

double parseDouble(const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw SchemaError("trailing characters in number: " + s);
        return v;
    } catch (const std::invalid_argument&) {
        throw SchemaError("not a number: " + s);
    } catch (const std::out_of_range&) {
        throw SchemaError("number out of range: " + s);
    }
}

json gridToJson(const Grid<double>& g) {
    json a = json::array();
    for (double v : g.data) a.push_back(v);
    return a;
}

Grid<double> gridFromJson(const json& a, const NullChart& c, const std::string& name) {
    if (!a.is_array() || int(a.size()) != c.size())
        throw SchemaError("column " + name + " has wrong length");
    Grid<double> g(c);
    for (int k = 0; k < c.size(); ++k) g.data[k] = a[k].get<double>();
    return g;
}

} // namespace

void writeSurfaceCsv(const SurfaceData& s, const std::string& path) {
    std::ofstream out = openOut(path);
    out << "s,t,x0,x1,x2,x3";
    for (const auto& [name, g] : s.extras) out << ',' << name;
    out << '\n';
    const NullChart& c = s.chart;
    for (int i = 0; i < c.n_s; ++i)
        for (int j = 0; j < c.n_t; ++j) {
            const Vector22& x = s.F.at(i, j);
            out << fmtDouble(c.s(i)) << ',' << fmtDouble(c.t(j)) << ',' << fmtDouble(x.x0) << ','
                << fmtDouble(x.x1) << ',' << fmtDouble(x.x2) << ',' << fmtDouble(x.x3);
            for (const auto& [name, g] : s.extras) out << ',' << fmtDouble(g.at(i, j));
            out << '\n';
        }
    if (!out) throw SchemaError("write failed: " + path);
}

SurfaceData readSurfaceCsv(const std::string& path) {
    std::ifstream in = openIn(path);
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("empty file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = splitCsv(line);
    const std::vector<std::string> required = {"s", "t", "x0", "x1", "x2", "x3"};
    if (header.size() < required.size()) throw SchemaError("missing header columns in " + path);
    for (size_t k = 0; k < required.size(); ++k)
        if (header[k] != required[k])
            throw SchemaError("header column " + std::to_string(k) + " is '" + header[k] +
                              "', expected '" + required[k] + "'");

    std::vector<std::vector<double>> rows;
    int lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = splitCsv(line);
        if (cells.size() != header.size())
            throw SchemaError("line " + std::to_string(lineNo) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(header.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& cell : cells) row.push_back(parseDouble(cell));
        rows.push_back(std::move(row));
    }
    if (rows.size() < 4) throw SchemaError("too few data rows in " + path);

    // Recover the chart: rows are row-major (s outer, t inner).
    int n_t = 0;
    while (n_t < int(rows.size()) && rows[n_t][0] == rows[0][0]) ++n_t;
    if (n_t < 2 || rows.size() % n_t != 0)
        throw SchemaError("rows do not form a rectangular grid");
    const int n_s = int(rows.size()) / n_t;
    if (n_s < 2) throw SchemaError("grid needs at least two s-lines");
    const double t0 = rows[0][1], h_t = rows[1][1] - rows[0][1];
    const double s0 = rows[0][0], h_s = rows[n_t][0] - rows[0][0];
    if (h_s <= 0 || h_t <= 0) throw SchemaError("grid coordinates are not increasing");
    const double tolS = 1e-9 * (1 + std::abs(s0) + n_s * h_s);
    const double tolT = 1e-9 * (1 + std::abs(t0) + n_t * h_t);
    NullChart c(n_s, n_t, h_s, h_t, s0, t0);
    for (int i = 0; i < n_s; ++i)
        for (int j = 0; j < n_t; ++j) {
            const auto& row = rows[size_t(i) * n_t + j];
            if (std::abs(row[0] - c.s(i)) > tolS || std::abs(row[1] - c.t(j)) > tolT)
                throw SchemaError("grid is not uniform at row (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
        }

    SurfaceData s;
    s.chart = c;
    s.F = Grid<Vector22>(c);
    for (size_t k = 6; k < header.size(); ++k)
        s.extras.emplace_back(header[k], Grid<double>(c));
    for (int i = 0; i < n_s; ++i)
        for (int j = 0; j < n_t; ++j) {
            const auto& row = rows[size_t(i) * n_t + j];
            s.F.at(i, j) = {row[2], row[3], row[4], row[5]};
            for (size_t k = 0; k < s.extras.size(); ++k)
                s.extras[k].second.at(i, j) = row[6 + k];
        }
    return s;
}

void writeSurfaceJson(const SurfaceData& s, const std::string& path) {
    json j;
    j["chart"] = {{"n_s", s.chart.n_s}, {"n_t", s.chart.n_t}, {"h_s", s.chart.h_s},
                  {"h_t", s.chart.h_t}, {"s0", s.chart.s0},   {"t0", s.chart.t0}};
    Grid<double> col(s.chart);
    const auto writeComp = [&](const char* name, double Vector22::* member) {
        for (int k = 0; k < s.chart.size(); ++k) col.data[k] = s.F.data[k].*member;
        j["columns"][name] = gridToJson(col);
    };
    writeComp("x0", &Vector22::x0);
    writeComp("x1", &Vector22::x1);
    writeComp("x2", &Vector22::x2);
    writeComp("x3", &Vector22::x3);
    json order = json::array();
    for (const auto& [name, g] : s.extras) {
        order.push_back(name);
        j["columns"][name] = gridToJson(g);
    }
    j["extras"] = order;
    std::ofstream out = openOut(path);
    out << j.dump(2) << '\n';
    if (!out) throw SchemaError("write failed: " + path);
}

SurfaceData readSurfaceJson(const std::string& path) {
    std::ifstream in = openIn(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    try {
        const json& cj = j.at("chart");
        NullChart c(cj.at("n_s").get<int>(), cj.at("n_t").get<int>(), cj.at("h_s").get<double>(),
                    cj.at("h_t").get<double>(), cj.at("s0").get<double>(),
                    cj.at("t0").get<double>());
        SurfaceData s;
        s.chart = c;
        s.F = Grid<Vector22>(c);
        const json& cols = j.at("columns");
        const Grid<double> x0 = gridFromJson(cols.at("x0"), c, "x0");
        const Grid<double> x1 = gridFromJson(cols.at("x1"), c, "x1");
        const Grid<double> x2 = gridFromJson(cols.at("x2"), c, "x2");
        const Grid<double> x3 = gridFromJson(cols.at("x3"), c, "x3");
        for (int k = 0; k < c.size(); ++k)
            s.F.data[k] = {x0.data[k], x1.data[k], x2.data[k], x3.data[k]};
        for (const auto& name : j.at("extras"))
            s.extras.emplace_back(name.get<std::string>(),
                                  gridFromJson(cols.at(name.get<std::string>()), c,
                                               name.get<std::string>()));
        return s;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("surface JSON schema violation: ") + e.what());
    }
}

Projection34 dropX0Projection() {
    return {{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
}

void writeObj(const SurfaceData& s, const Projection34& proj, const std::string& path) {
    Eigen::Matrix<double, 3, 4> P;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 4; ++c) P(r, c) = proj[r][c];
    const Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(P);
    if (svd.singularValues()(2) <= 1e-12 * svd.singularValues()(0))
        throw SchemaError("projection matrix is rank-deficient");

    std::ofstream out = openOut(path);
    const NullChart& c = s.chart;
    for (int i = 0; i < c.n_s; ++i)
        for (int j = 0; j < c.n_t; ++j) {
            const Vector22& x = s.F.at(i, j);
            const Eigen::Vector4d v(x.x0, x.x1, x.x2, x.x3);
            const Eigen::Vector3d p = P * v;
            out << "v " << fmtDouble(p(0)) << ' ' << fmtDouble(p(1)) << ' ' << fmtDouble(p(2))
                << '\n';
        }
    const auto vid = [&](int i, int j) { return i * c.n_t + j + 1; }; // OBJ is 1-based
    for (int i = 0; i + 1 < c.n_s; ++i)
        for (int j = 0; j + 1 < c.n_t; ++j) {
            out << "f " << vid(i, j) << ' ' << vid(i + 1, j) << ' ' << vid(i + 1, j + 1) << '\n';
            out << "f " << vid(i, j) << ' ' << vid(i + 1, j + 1) << ' ' << vid(i, j + 1) << '\n';
        }
    if (!out) throw SchemaError("write failed: " + path);
}

namespace {

ResidualStat statOf(const Grid<double>& g, int margin = 1) {
    ResidualStat r;
    r.max = maxInterior(g.n_s, g.n_t, margin,
                        [&](int i, int j) { return std::abs(g.at(i, j)); });
    r.mean = meanInterior(g.n_s, g.n_t, margin,
                          [&](int i, int j) { return std::abs(g.at(i, j)); });
    for (int i = margin; i < g.n_s - margin; ++i)
        for (int j = margin; j < g.n_t - margin; ++j)
            if (std::abs(g.at(i, j)) == r.max) {
                r.max_i = i;
                r.max_j = j;
                return r;
            }
    return r;
}

} // namespace

bool InvariantReport::pass(double absTol, double scale) const {
    return failedInvariants(*this, absTol, scale).empty();
}

std::vector<std::string> failedInvariants(const InvariantReport& r, double absTol, double scale) {
    const double h = std::max(r.h_s, r.h_t);
    const double thr = absTol + scale * h * h;
    std::vector<std::string> bad;
    const auto check = [&](const char* name, const ResidualStat& s) {
        if (!(s.max <= thr))
            bad.push_back(std::string(name) + " max " + fmtDouble(s.max) + " > " + fmtDouble(thr) +
                          " at grid point (" + std::to_string(s.max_i) + "," +
                          std::to_string(s.max_j) + ")");
    };
    check("dirac", r.dirac);
    check("killing", r.killing);
    check("dxi", r.dxi);
    check("gauss", r.gaussEq);
    check("codazzi", r.codazzi);
    check("ricci", r.ricci);
    check("gaussCurvature", r.K);
    check("normalCurvature", r.KN);
    if (!(r.pathDefect <= thr))
        bad.push_back("pathIndependence defect " + fmtDouble(r.pathDefect) + " > " +
                      fmtDouble(thr));
    if (!(r.spinDrift <= thr))
        bad.push_back("spinNorm drift " + fmtDouble(r.spinDrift) + " > " + fmtDouble(thr));
    return bad;
}

InvariantReport verifySurface(const SurfaceData& s) {
    const NullChart& c = s.chart;
    InvariantReport r;
    r.n_s = c.n_s;
    r.n_t = c.n_t;
    r.h_s = c.h_s;
    r.h_t = c.h_t;

    const ImmersionAnalysis an = analyzeImmersion(s.F, c);
    const FrameCoords frame{an.e2u, an.e2v, an.e3u, an.e3v};
    const FundamentalResiduals fr =
        fundamentalResiduals(an.guu, an.guv, an.gvv, an.frameB, an.coordB, an.conn, frame, c);
    r.gaussEq = statOf(fr.gauss);
    r.codazzi = statOf(fr.codazzi);
    r.ricci = statOf(fr.ricci);
    r.K = statOf(an.K);
    r.KN = statOf(an.KN);

    const double h = std::max(c.h_s, c.h_t);
    const DeltaInvariant delta = deltaInvariant(an.G, c);
    for (int i = 1; i < c.n_s - 1; ++i)
        for (int j = 1; j < c.n_t - 1; ++j) {
            const int sg = delta.sign.at(i, j);
            (sg > 0 ? r.deltaPos : sg < 0 ? r.deltaNeg : r.deltaZero) += 1;
        }

    // Re-integrate a spinor field from the extracted fundamental data and
    // check the representation equations it must satisfy.
    const SpinorField phi = integrateKilling(an.coordB, frame, H0Element::one(), c);
    r.dirac = statOf(diracResidual(phi, MeanCurvature{an.H0, an.H1}));
    r.killing = statOf(killingResidual(phi, an.coordB));
    const XiForm xi = xiForm(phi);
    r.dxi = statOf(dxiResidual(xi));
    const ImmersionResult im = integrateImmersion(xi, Vector22{}, 1e300);
    r.pathDefect = im.pathDefect;
    Grid<double> drift(c);
    for (int k = 0; k < c.size(); ++k)
        drift.data[k] = (hForm(phi.g.data[k], phi.g.data[k]) - LorentzNumber::real(1)).norm();
    r.spinDrift = statOf(drift, 0).max;
    return r;
}

void attachOrders(InvariantReport& coarse, const InvariantReport& fine) {
    const double hc = std::max(coarse.h_s, coarse.h_t);
    const double hf = std::max(fine.h_s, fine.h_t);
    if (!(hc > hf)) throw SchemaError("resolution pair must have distinct spacings, coarse first");
    const auto order = [&](double mc, double mf) -> std::optional<double> {
        if (mc <= 0 || mf <= 0) return std::nullopt;
        return std::log(mc / mf) / std::log(hc / hf);
    };
    coarse.orderK = order(coarse.K.max, fine.K.max);
    coarse.orderDxi = order(coarse.dxi.max, fine.dxi.max);
}

namespace {

json statJson(const ResidualStat& s) {
    return {{"max", s.max}, {"mean", s.mean}, {"max_i", s.max_i}, {"max_j", s.max_j}};
}

json reportJsonObj(const InvariantReport& r) {
    json j;
    j["grid"] = {{"n_s", r.n_s}, {"n_t", r.n_t}, {"h_s", r.h_s}, {"h_t", r.h_t}};
    j["residuals"] = {{"dirac", statJson(r.dirac)},
                      {"killing", statJson(r.killing)},
                      {"dxi", statJson(r.dxi)},
                      {"gauss", statJson(r.gaussEq)},
                      {"codazzi", statJson(r.codazzi)},
                      {"ricci", statJson(r.ricci)},
                      {"gaussCurvature", statJson(r.K)},
                      {"normalCurvature", statJson(r.KN)}};
    j["pathIndependence"] = r.pathDefect;
    j["spinNormDrift"] = r.spinDrift;
    j["deltaSignHistogram"] = {{"positive", r.deltaPos}, {"zero", r.deltaZero},
                               {"negative", r.deltaNeg}};
    if (r.orderK) j["orders"]["gaussCurvature"] = *r.orderK;
    if (r.orderDxi) j["orders"]["dxi"] = *r.orderDxi;
    return j;
}

} // namespace

std::string reportToJson(const InvariantReport& r) { return reportJsonObj(r).dump(2); }

namespace {

Profile1D profileFromJson(const json& j, const std::string& name) {
    if (!j.is_object() || !j.contains("kind"))
        throw SchemaError("profile " + name + " needs a 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "poly") {
        if (!j.contains("data") || !j.at("data").is_array())
            throw SchemaError("poly profile " + name + " needs a 'data' coefficient array");
        return Profile1D::poly(j.at("data").get<std::vector<double>>());
    }
    if (kind == "samples") {
        if (!j.contains("xs") || !j.contains("ys"))
            throw SchemaError("samples profile " + name + " needs 'xs' and 'ys'");
        return Profile1D::samples(j.at("xs").get<std::vector<double>>(),
                                  j.at("ys").get<std::vector<double>>());
    }
    throw SchemaError("profile " + name + " has unknown kind '" + kind + "'");
}

NullChart chartFromJson(const json& j) {
    if (!j.is_object()) throw SchemaError("config needs a 'grid' object");
    const int n = j.at("n").get<int>();
    const double es = j.at("extent_s").get<double>();
    const double et = j.at("extent_t").get<double>();
    if (n < 9) throw SchemaError("grid.n must be at least 9");
    if (es <= 0 || et <= 0) throw SchemaError("grid extents must be positive");
    const double s0 = j.value("s0", 0.0), t0 = j.value("t0", 0.0);
    return NullChart::square(n, es, et, s0, t0);
}

H0Element g0FromJson(const json& cfg) {
    if (!cfg.contains("g0")) return H0Element::one();
    const auto a = cfg.at("g0").get<std::vector<double>>();
    if (a.size() != 8) throw SchemaError("g0 needs 8 reals (null components p0+,p0-,...,p3-)");
    return {LorentzNumber::fromNull(a[0], a[1]), LorentzNumber::fromNull(a[2], a[3]),
            LorentzNumber::fromNull(a[4], a[5]), LorentzNumber::fromNull(a[6], a[7])};
}

Vector22 baseFromJson(const json& cfg) {
    if (!cfg.contains("base")) return {};
    const auto a = cfg.at("base").get<std::vector<double>>();
    if (a.size() != 4) throw SchemaError("base needs 4 reals");
    return {a[0], a[1], a[2], a[3]};
}

Grid<std::complex<double>> seedFromJson(const json& j, const NullChart& c) {
    if (!j.is_object() || !j.contains("type"))
        throw SchemaError("Delta<0 config needs a 'seed' object with a 'type'");
    const std::string type = j.at("type").get<std::string>();
    Grid<std::complex<double>> seed(c);
    if (type == "const") {
        const std::complex<double> z(j.value("re", 1.0), j.value("im", 0.0));
        if (std::abs(z) == 0) throw SchemaError("constant seed must be nonzero");
        for (auto& w : seed.data) w = z;
        return seed;
    }
    if (type == "exp") {
        const double rate = j.at("rate").get<double>();
        for (int i = 0; i < c.n_s; ++i)
            for (int jj = 0; jj < c.n_t; ++jj) seed.at(i, jj) = std::exp(rate * c.s(i));
        return seed;
    }
    throw SchemaError("unknown seed type '" + type + "' (use 'const' or 'exp')");
}

json framesJson(const FrameCoords& f) {
    return {{"e2u", gridToJson(f.e2u)}, {"e2v", gridToJson(f.e2v)},
            {"e3u", gridToJson(f.e3u)}, {"e3v", gridToJson(f.e3v)}};
}

} // namespace

GenerationOutput runGeneration(const std::string& configJson) {
    json cfg;
    try {
        cfg = json::parse(configJson);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("invalid configuration JSON: ") + e.what());
    }
    try {
        if (!cfg.contains("branch")) throw SchemaError("config needs a 'branch'");
        const std::string branch = cfg.at("branch").get<std::string>();
        const NullChart chart = chartFromJson(cfg.value("grid", json::object()));
        const Vector22 base = baseFromJson(cfg);
        const int sign = cfg.value("sign", +1);
        if (sign != 1 && sign != -1) throw SchemaError("sign must be +1 or -1");

        GenerationOutput out;
        json side;
        side["config"] = cfg;
        side["branch"] = branch;

        if (branch == "quasi_umbilic") {
            if (!cfg.contains("gamma") || !cfg.contains("T"))
                throw SchemaError("quasi_umbilic needs 'gamma' and 'T' (4 profiles each)");
            const auto curve = [&](const json& j, const std::string& name) {
                if (!j.is_array() || j.size() != 4)
                    throw SchemaError(name + " must be an array of 4 profiles");
                std::array<Profile1D, 4> p{
                    profileFromJson(j[0], name + "[0]"), profileFromJson(j[1], name + "[1]"),
                    profileFromJson(j[2], name + "[2]"), profileFromJson(j[3], name + "[3]")};
                return [p](double x) {
                    return Vector22{p[0].value(x), p[1].value(x), p[2].value(x), p[3].value(x)};
                };
            };
            RuledInput r;
            r.gamma = curve(cfg.at("gamma"), "gamma");
            r.T = curve(cfg.at("T"), "T");
            out.surface.chart = chart;
            out.surface.F = generateQuasiUmbilic(r, chart);
        } else {
            SpinBranch sb;
            if (branch == "delta_pos_1") sb = SpinBranch::delta_pos_1;
            else if (branch == "delta_pos_2") sb = SpinBranch::delta_pos_2;
            else if (branch == "delta_neg_1") sb = SpinBranch::delta_neg_1;
            else if (branch == "delta_neg_2") sb = SpinBranch::delta_neg_2;
            else throw SchemaError("unknown branch '" + branch + "'");

            ConformalMap psi;
            psi.psi1 = profileFromJson(cfg.value("psi1", json{{"kind", "poly"}, {"data", json::array()}}), "psi1");
            psi.psi2 = profileFromJson(cfg.value("psi2", json{{"kind", "poly"}, {"data", json::array()}}), "psi2");
            const H0Element g0 = g0FromJson(cfg);
            const SpinFrameField g = integrateSpinFrame(psi, sb, g0, chart);

            FlatImmersion fi;
            if (sb == SpinBranch::delta_pos_1 || sb == SpinBranch::delta_pos_2) {
                if (chart.h_s != chart.h_t)
                    throw SchemaError("Delta>0 branches need equal spacings "
                                      "(extent_s == extent_t)");
                if (!cfg.contains("lambda0") || !cfg.contains("mu0"))
                    throw SchemaError("Delta>0 branches need 'lambda0' and 'mu0' profiles");
                const Profile1D lambda0 = profileFromJson(cfg.at("lambda0"), "lambda0");
                const Profile1D mu0 = profileFromJson(cfg.at("mu0"), "mu0");
                const HyperbolicSolution sol = solveHyperbolic(psi, lambda0, mu0, chart);
                fi = assembleFlatImmersion(sol, g, psi, sign, base);
                out.surface.extras.emplace_back("lam", fi.lambda);
                out.surface.extras.emplace_back("mu", fi.mu);
                side["fields"] = {{"lam", gridToJson(fi.lambda)}, {"mu", gridToJson(fi.mu)}};
            } else {
                const Grid<std::complex<double>> b = pseudoanalyticCoefficient(psi, chart);
                const Grid<std::complex<double>> seed =
                    seedFromJson(cfg.value("seed", json{{"type", "const"}}), chart);
                const Grid<std::complex<double>> f = solvePseudoanalytic(b, seed, chart);
                fi = assembleFlatImmersionNeg(f, g, psi, sign, base);
                out.surface.extras.emplace_back("nu", fi.nu);
                out.surface.extras.emplace_back("rho", fi.rho);
                side["fields"] = {{"nu", gridToJson(fi.nu)}, {"rho", gridToJson(fi.rho)}};
            }
            out.surface.chart = chart;
            out.surface.F = fi.immersion.F;
            side["sign"] = fi.sign;
            side["frames"] = framesJson(fi.frame);
        }

        side["report"] = reportJsonObj(verifySurface(out.surface));
        out.sidecar = side.dump(2);
        return out;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("configuration schema violation: ") + e.what());
    }
}

} // namespace lorspin

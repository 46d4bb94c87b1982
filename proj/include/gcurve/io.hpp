#pragma once

// File ingestion (JSON/CSV), curve export (CSV/SVG/OBJ), demo-data
// generation, and report serialization.

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "gcurve/verify.hpp"

namespace gcurve {

// 17 significant digits: lossless double round-trip
inline std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

enum class InputFormat { Json, Csv };

inline PointCloud load_points(const std::string& path, InputFormat format) {
    std::ifstream in(path);
    if (!in) fail(Err::ParseError, "cannot open " + path);
    PointCloud cloud;
    if (format == InputFormat::Json) {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            fail(Err::ParseError, path + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
            fail(Err::ParseError, path + ": expected object with a \"points\" array");
        for (const auto& row : j["points"]) {
            if (!row.is_array()) fail(Err::ParseError, path + ": point is not an array");
            Vec p(int(row.size()));
            for (int k = 0; k < int(row.size()); ++k) {
                if (!row[k].is_number()) fail(Err::ParseError, path + ": non-numeric coordinate");
                p[k] = row[k].get<double>();
            }
            cloud.points.push_back(std::move(p));
        }
        if (j.contains("closed")) {
            if (!j["closed"].is_boolean()) fail(Err::ParseError, path + ": closed must be bool");
            cloud.closed = j["closed"].get<bool>();
        }
    } else {
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
            std::vector<double> vals;
            std::stringstream ss(line);
            std::string cell;
            bool numeric = true;
            int col = 0;
            while (std::getline(ss, cell, ',')) {
                ++col;
                char* end = nullptr;
                double v = std::strtod(cell.c_str(), &end);
                while (end && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
                if (!end || *end != '\0' || end == cell.c_str()) {
                    if (lineno == 1) {
                        numeric = false;  // header row
                        break;
                    }
                    fail(Err::ParseError, path + ": line " + std::to_string(lineno) + ", column " +
                                              std::to_string(col) + ": not a number");
                }
                vals.push_back(v);
            }
            if (!numeric) continue;
            if (!cloud.points.empty() && int(vals.size()) != cloud.dim())
                fail(Err::DimensionMismatch,
                     path + ": line " + std::to_string(lineno) + ": row width differs");
            cloud.points.push_back(Vec(std::move(vals)));
        }
    }
    if (!cloud.points.empty() && cloud.dim() >= 2) {
        // surface dimension inconsistencies as DimensionMismatch, not InvalidCloud
        for (const auto& p : cloud.points)
            if (p.dim() != cloud.dim())
                fail(Err::DimensionMismatch, path + ": inconsistent point dimensions");
    }
    return cloud;
}

inline void export_csv(const std::vector<SamplePoint>& samples, const std::string& path) {
    if (samples.empty()) fail(Err::BadParams, "export: no samples");
    std::ofstream out(path);
    if (!out) fail(Err::ParseError, "cannot write " + path);
    const int d = samples.front().pos.dim();
    out << "t";
    for (int k = 1; k <= d; ++k) out << ",x" << k;
    out << ",curvature\n";
    for (const auto& s : samples) {
        out << fmt17(s.t);
        for (int k = 0; k < d; ++k) out << ',' << fmt17(s.pos[k]);
        out << ',' << fmt17(s.curvature) << '\n';
    }
}

namespace detail {

// blue -> red ramp over the sample curvature range
inline std::string ramp_color(double x) {
    x = std::max(0.0, std::min(1.0, x));
    int rch = int(255 * x + 0.5), bch = int(255 * (1 - x) + 0.5);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x40%02x", rch, bch);
    return buf;
}

}  // namespace detail

// Single-path polyline; curvature drives per-segment overlay strokes and
// data points get circle markers. Inputs above 2-D are projected onto the
// first two coordinates.
inline void export_svg(const std::vector<SamplePoint>& samples, const std::string& path,
                       const std::vector<Vec>* markers = nullptr,
                       std::vector<std::string>* warnings = nullptr) {
    if (samples.empty()) fail(Err::BadParams, "export: no samples");
    const int d = samples.front().pos.dim();
    if (d < 2) fail(Err::UnsupportedDimension, "svg export needs dimension >= 2");
    if (d > 2 && warnings)
        warnings->push_back("svg export: projecting " + std::to_string(d) +
                            "-D samples orthographically onto x1, x2");
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300, kmax = 0;
    for (const auto& s : samples) {
        x0 = std::min(x0, s.pos[0]);
        x1 = std::max(x1, s.pos[0]);
        y0 = std::min(y0, s.pos[1]);
        y1 = std::max(y1, s.pos[1]);
        kmax = std::max(kmax, s.curvature);
    }
    double w = std::max(x1 - x0, 1e-9), h = std::max(y1 - y0, 1e-9);
    double pad = 0.05 * std::max(w, h);
    std::ofstream out(path);
    if (!out) fail(Err::ParseError, "cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt17(x0 - pad) << ' '
        << fmt17(y0 - pad) << ' ' << fmt17(w + 2 * pad) << ' ' << fmt17(h + 2 * pad) << "\">\n";
    out << "<path fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt17(0.002 * std::max(w, h))
        << "\" d=\"";
    for (size_t k = 0; k < samples.size(); ++k)
        out << (k == 0 ? "M " : "L ") << fmt17(samples[k].pos[0]) << ' '
            << fmt17(samples[k].pos[1]) << ' ';
    out << "\"/>\n";
    // curvature overlay: short colored strokes per segment
    for (size_t k = 0; k + 1 < samples.size(); ++k) {
        double kv = kmax > 0 ? 0.5 * (samples[k].curvature + samples[k + 1].curvature) / kmax : 0;
        out << "<line x1=\"" << fmt17(samples[k].pos[0]) << "\" y1=\"" << fmt17(samples[k].pos[1])
            << "\" x2=\"" << fmt17(samples[k + 1].pos[0]) << "\" y2=\""
            << fmt17(samples[k + 1].pos[1]) << "\" stroke=\"" << detail::ramp_color(kv)
            << "\" stroke-width=\"" << fmt17(0.004 * std::max(w, h)) << "\" stroke-opacity=\"0.6\"/>\n";
    }
    if (markers)
        for (const auto& m : *markers)
            out << "<circle cx=\"" << fmt17(m[0]) << "\" cy=\"" << fmt17(m[1]) << "\" r=\""
                << fmt17(0.01 * std::max(w, h)) << "\" fill=\"red\"/>\n";
    out << "</svg>\n";
}

inline void export_obj(const std::vector<SamplePoint>& samples, const std::string& path,
                       bool closed = false) {
    if (samples.empty()) fail(Err::BadParams, "export: no samples");
    const int d = samples.front().pos.dim();
    if (d != 2 && d != 3) fail(Err::UnsupportedDimension, "obj export needs dimension 2 or 3");
    std::ofstream out(path);
    if (!out) fail(Err::ParseError, "cannot write " + path);
    for (const auto& s : samples) {
        out << "v " << fmt17(s.pos[0]) << ' ' << fmt17(s.pos[1]) << ' '
            << fmt17(d == 3 ? s.pos[2] : 0.0) << '\n';
    }
    const int n = int(samples.size());
    for (int k = 1; k < n; ++k) out << "l " << k << ' ' << k + 1 << '\n';
    if (closed) out << "l " << n << " 1\n";
}

struct DemoParams {
    int n = 20;
    double radius = 1.0;
    int lissajous_a = 3, lissajous_b = 2, lissajous_c = 7;
    double lissajous_delta = 0.4;
    int midpoints = 1;     // square-corners: midpoints per edge
    std::uint64_t seed = 12345;
};

inline PointCloud gen_demo(const std::string& name, const DemoParams& p = {}) {
    PointCloud cloud;
    if (name == "lissajous") {
        if (p.n < 3) fail(Err::BadParams, "lissajous: need n >= 3");
        for (int k = 0; k < p.n; ++k) {
            double t = 2 * kPi * double(k) / p.n;
            cloud.points.push_back(Vec{std::sin(p.lissajous_a * t + p.lissajous_delta),
                                       std::sin(p.lissajous_b * t),
                                       std::sin(p.lissajous_c * t)});
        }
        cloud.closed = true;
    } else if (name == "circle") {
        if (p.n < 3) fail(Err::BadParams, "circle: need n >= 3");
        for (int k = 0; k < p.n; ++k) {
            double t = 2 * kPi * double(k) / p.n;
            cloud.points.push_back(Vec{p.radius * std::cos(t), p.radius * std::sin(t)});
        }
        cloud.closed = true;
    } else if (name == "sphere-random") {
        if (p.n < 4) fail(Err::BadParams, "sphere-random: need n >= 4");
        // jittered Fibonacci spiral, then a greedy nearest-neighbor tour
        std::mt19937_64 rng(p.seed);
        std::uniform_real_distribution<double> jit(-0.03, 0.03);
        std::vector<Vec> pts;
        const double ga = kPi * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < p.n; ++k) {
            double z = 1.0 - 2.0 * (k + 0.5) / p.n;
            double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
            double th = ga * k;
            Vec v{rr * std::cos(th) + jit(rng), rr * std::sin(th) + jit(rng), z + jit(rng)};
            pts.push_back(normalize(v) * p.radius);
        }
        std::vector<bool> used(p.n, false);
        int cur = 0;
        used[0] = true;
        cloud.points.push_back(pts[0]);
        for (int step = 1; step < p.n; ++step) {
            int best = -1;
            double bd = 1e300;
            for (int k = 0; k < p.n; ++k)
                if (!used[k] && dist(pts[cur], pts[k]) < bd) {
                    bd = dist(pts[cur], pts[k]);
                    best = k;
                }
            used[best] = true;
            cloud.points.push_back(pts[best]);
            cur = best;
        }
        cloud.closed = false;
    } else if (name == "square-corners") {
        if (p.midpoints < 0) fail(Err::BadParams, "square-corners: midpoints >= 0");
        Vec corners[4] = {Vec{0, 0}, Vec{1, 0}, Vec{1, 1}, Vec{0, 1}};
        for (int e = 0; e < 4; ++e) {
            const Vec &A = corners[e], &B = corners[(e + 1) % 4];
            cloud.points.push_back(A);
            for (int m = 1; m <= p.midpoints; ++m)
                cloud.points.push_back(A + (B - A) * (double(m) / (p.midpoints + 1)));
        }
        cloud.closed = true;
    } else if (name == "convex-polygon") {
        if (p.n < 3) fail(Err::BadParams, "convex-polygon: need n >= 3");
        for (int k = 0; k < p.n; ++k) {
            double t = 2 * kPi * double(k) / p.n;
            cloud.points.push_back(Vec{p.radius * std::cos(t), p.radius * std::sin(t)});
        }
        cloud.closed = true;
    } else {
        fail(Err::BadParams, "unknown demo: " + name);
    }
    return cloud;
}

inline std::string report_text(const SmoothnessReport& rep) {
    std::ostringstream out;
    out << "r=" << rep.r << '\n';
    out << "interpolation_err=" << fmt17(rep.interpolation_err) << '\n';
    out << "min_speed=" << fmt17(rep.min_speed) << '\n';
    out << "min_speed_at=" << fmt17(rep.min_speed_at) << '\n';
    out << "span_pd_margin=" << fmt17(rep.span_pd_margin) << '\n';
    out << "max_knot_mismatch=" << fmt17(rep.max_knot_mismatch) << '\n';
    out << "max_curvature_jump=" << fmt17(rep.max_curvature_jump) << '\n';
    for (const auto& kc : rep.knots) {
        out << "knot." << kc.knot << ".curvature_jump=" << fmt17(kc.curvature_jump) << '\n';
        for (size_t d = 0; d < kc.mismatch.size(); ++d)
            out << "knot." << kc.knot << ".mismatch." << d + 1 << '=' << fmt17(kc.mismatch[d])
                << '\n';
        out << "knot." << kc.knot << ".guard_ratio=" << fmt17(kc.guard_ratio) << '\n';
    }
    out << "pass_interpolation=" << rep.pass_interpolation << '\n';
    out << "pass_regularity=" << rep.pass_regularity << '\n';
    out << "pass_pd=" << rep.pass_pd << '\n';
    out << "pass_knots=" << rep.pass_knots << '\n';
    out << "pass_curvature=" << rep.pass_curvature << '\n';
    out << "pass_guard=" << rep.pass_guard << '\n';
    out << "pass=" << rep.pass() << '\n';
    return out.str();
}

inline nlohmann::json report_json(const SmoothnessReport& rep) {
    nlohmann::json j;
    j["r"] = rep.r;
    j["interpolation_err"] = rep.interpolation_err;
    j["min_speed"] = rep.min_speed;
    j["min_speed_at"] = rep.min_speed_at;
    j["span_pd_margin"] = rep.span_pd_margin;
    j["max_knot_mismatch"] = rep.max_knot_mismatch;
    j["max_curvature_jump"] = rep.max_curvature_jump;
    j["knots"] = nlohmann::json::array();
    for (const auto& kc : rep.knots) {
        nlohmann::json k;
        k["knot"] = kc.knot;
        k["mismatch"] = kc.mismatch;
        k["guard_ratio"] = kc.guard_ratio;
        k["curvature_left"] = kc.curvature_left;
        k["curvature_right"] = kc.curvature_right;
        k["curvature_jump"] = kc.curvature_jump;
        j["knots"].push_back(k);
    }
    j["pass"] = {{"interpolation", rep.pass_interpolation}, {"regularity", rep.pass_regularity},
                 {"pd", rep.pass_pd},                       {"knots", rep.pass_knots},
                 {"curvature", rep.pass_curvature},         {"guard", rep.pass_guard},
                 {"all", rep.pass()}};
    return j;
}

}  // namespace gcurve

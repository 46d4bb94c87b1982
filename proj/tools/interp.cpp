// Command-line front end for the interpolation pipeline.
//
// Exit codes: 0 = verification passed, 2 = verification failed,
// 1 = usage or IO error.

#include <iostream>

#include <CLI11.hpp>

#include "gcurve/gcurve.hpp"

namespace {

std::string lower(std::string s) {
    for (auto& c : s) c = char(std::tolower(c));
    return s;
}

std::string extension(const std::string& path) {
    auto dot = path.rfind('.');
    return dot == std::string::npos ? "" : lower(path.substr(dot + 1));
}

gcurve::Vec parse_sphere_spec(const std::string& s, double& radius) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ','))
        vals.push_back(std::stod(cell));
    if (vals.size() < 3)
        gcurve::fail(gcurve::Err::BadParams, "--sphere expects auto or cx,cy[,cz],R");
    radius = vals.back();
    vals.pop_back();
    return gcurve::Vec(std::move(vals));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"G^r-smooth interpolating curves through ordered point data"};

    std::string input, format = "auto", local = "parabola", boundary = "linear";
    std::string blend = "poly:2", sphere, output, report_path, demo;
    int smoothness = 2, samples_per_span = 64;
    bool corner_detect = false;
    double corner_eps = 0.1;
    std::uint64_t seed = 12345;
    int demo_n = 0;

    app.add_option("--input", input, "input file (json or csv point list)");
    app.add_option("--format", format, "input format: json|csv (default: by extension)");
    app.add_option("--smoothness", smoothness, "target smoothness order r")->check(CLI::Range(0, 10));
    app.add_option("--local", local, "local curves: parabola|arc|auto|linear|convex-chord");
    app.add_option("--boundary", boundary, "boundary rule: linear|natural|closed");
    app.add_option("--blend", blend, "blend family: poly:K|trig|smooth");
    app.add_flag("--corner-detect", corner_detect, "classify and preserve corner vertices");
    app.add_option("--corner-eps", corner_eps, "corner tolerance, relative to chord length");
    app.add_option("--sphere", sphere, "sphere-preserving gluing: auto or cx,cy[,cz],R");
    app.add_option("--samples-per-span", samples_per_span, "output samples per span")
        ->check(CLI::Range(2, 100000));
    app.add_option("--output", output, "curve output file (.csv, .svg, or .obj)");
    app.add_option("--report", report_path, "verification report file (.json or text)");
    app.add_option("--demo", demo,
                   "generate demo data instead of reading --input: "
                   "lissajous|circle|sphere-random|square-corners|convex-polygon");
    app.add_option("--demo-n", demo_n, "demo point count (generator default if 0)");
    app.add_option("--seed", seed, "seed for randomized demo data");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        gcurve::RunConfig cfg;

        if (!demo.empty()) {
            gcurve::DemoParams dp;
            dp.seed = seed;
            if (demo_n > 0) dp.n = demo_n;
            if (demo == "square-corners" && demo_n > 0) dp.midpoints = demo_n;
            cfg.cloud = gcurve::gen_demo(demo, dp);
        } else {
            if (input.empty()) {
                std::cerr << "error: either --input or --demo is required\n";
                return 1;
            }
            std::string fmt = lower(format);
            if (fmt == "auto") fmt = extension(input) == "json" ? "json" : "csv";
            if (fmt != "json" && fmt != "csv") {
                std::cerr << "error: unknown input format " << format << "\n";
                return 1;
            }
            cfg.cloud = gcurve::load_points(
                input, fmt == "json" ? gcurve::InputFormat::Json : gcurve::InputFormat::Csv);
        }

        cfg.r = smoothness;
        std::string lm = lower(local);
        if (lm == "parabola") cfg.mode = gcurve::LocalMode::Parabola;
        else if (lm == "arc") cfg.mode = gcurve::LocalMode::Arc;
        else if (lm == "auto") cfg.mode = gcurve::LocalMode::Auto;
        else if (lm == "linear") cfg.mode = gcurve::LocalMode::Linear;
        else if (lm == "convex-chord") cfg.mode = gcurve::LocalMode::ConvexChord;
        else {
            std::cerr << "error: unknown local mode " << local << "\n";
            return 1;
        }

        std::string bd = lower(boundary);
        if (bd == "linear") cfg.boundary = gcurve::BoundaryRuleTag::Linear;
        else if (bd == "natural") cfg.boundary = gcurve::BoundaryRuleTag::Natural;
        else if (bd == "closed") cfg.boundary = gcurve::BoundaryRuleTag::Closed;
        else {
            std::cerr << "error: unknown boundary rule " << boundary << "\n";
            return 1;
        }
        // closed is a directive for csv input, which carries no closed flag
        if (cfg.boundary == gcurve::BoundaryRuleTag::Closed && !cfg.cloud.closed)
            cfg.cloud.closed = true;

        std::string bl = lower(blend);
        if (bl.rfind("poly:", 0) == 0) {
            cfg.blend_family = gcurve::BlendChoice::Poly;
            cfg.blend_order = std::stoi(bl.substr(5));
        } else if (bl == "trig") {
            cfg.blend_family = gcurve::BlendChoice::Trig;
        } else if (bl == "smooth") {
            cfg.blend_family = gcurve::BlendChoice::Smooth;
        } else {
            std::cerr << "error: unknown blend " << blend << "\n";
            return 1;
        }

        cfg.corner_detect = corner_detect;
        cfg.corner_eps = corner_eps;
        cfg.samples_per_span = samples_per_span;

        if (!sphere.empty()) {
            cfg.sphere = true;
            if (lower(sphere) == "auto") {
                cfg.sphere_auto = true;
            } else {
                cfg.sphere_center = parse_sphere_spec(sphere, cfg.sphere_radius);
            }
            if (cfg.mode != gcurve::LocalMode::Arc && cfg.mode != gcurve::LocalMode::Auto) {
                std::cerr << "error: --sphere requires --local arc (or auto)\n";
                return 1;
            }
        }

        gcurve::RunResult res = gcurve::run_pipeline(std::move(cfg));

        for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
        if (corner_detect) std::cerr << "corners detected: " << res.corner_count << "\n";

        if (!output.empty()) {
            std::string ext = extension(output);
            if (ext == "csv") gcurve::export_csv(res.samples, output);
            else if (ext == "svg") {
                std::vector<gcurve::Vec> markers;
                for (const auto& F : res.curve.qr) markers.push_back(F.v0);
                gcurve::export_svg(res.samples, output, &markers, &res.warnings);
            }
            else if (ext == "obj") gcurve::export_obj(res.samples, output, res.curve.closed);
            else {
                std::cerr << "error: unknown output format ." << ext << "\n";
                return 1;
            }
        }

        if (!report_path.empty()) {
            std::ofstream rout(report_path);
            if (!rout) {
                std::cerr << "error: cannot write " << report_path << "\n";
                return 1;
            }
            if (extension(report_path) == "json")
                rout << gcurve::report_json(res.report).dump(2) << "\n";
            else
                rout << gcurve::report_text(res.report);
        }

        std::cout << gcurve::report_text(res.report);
        return res.report.pass() ? 0 : 2;
    } catch (const gcurve::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#pragma once

// End-to-end pipeline: locals -> redistribution (+ certification) -> blend
// (+ validation) -> gluing -> verification -> sampling.

#include "gcurve/io.hpp"

namespace gcurve {

// Algebraic least-squares sphere (or circle) fit: 2 p.c + (R^2 - |c|^2) = |p|^2
// is linear in the unknowns. Rejects when the worst radial residual exceeds
// 1e-6 R.
inline void fit_sphere(const std::vector<Vec>& pts, Vec& center, double& radius) {
    const int d = pts.front().dim();
    const int m = d + 1;
    std::vector<double> A(m * m, 0.0), b(m, 0.0);
    for (const auto& p : pts) {
        std::vector<double> row(m, 1.0);
        for (int k = 0; k < d; ++k) row[k] = 2.0 * p[k];
        double rhs = norm2(p);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) A[i * m + j] += row[i] * row[j];
            b[i] += row[i] * rhs;
        }
    }
    // gaussian elimination with partial pivoting
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int rr = col + 1; rr < m; ++rr)
            if (std::abs(A[rr * m + col]) > std::abs(A[piv * m + col])) piv = rr;
        if (std::abs(A[piv * m + col]) < 1e-14) fail(Err::NoSolution, "sphere fit is singular");
        if (piv != col) {
            for (int j = 0; j < m; ++j) std::swap(A[piv * m + j], A[col * m + j]);
            std::swap(b[piv], b[col]);
        }
        for (int rr = 0; rr < m; ++rr) {
            if (rr == col) continue;
            double f = A[rr * m + col] / A[col * m + col];
            for (int j = 0; j < m; ++j) A[rr * m + j] -= f * A[col * m + j];
            b[rr] -= f * b[col];
        }
    }
    center = Vec(d);
    for (int k = 0; k < d; ++k) center[k] = b[k] / A[k * m + k];
    double k0 = b[d] / A[d * m + d];
    double r2 = k0 + norm2(center);
    if (r2 <= 0) fail(Err::NoSolution, "sphere fit yields nonpositive radius");
    radius = std::sqrt(r2);
    for (const auto& p : pts)
        if (std::abs(dist(p, center) - radius) > 1e-6 * radius)
            fail(Err::OffSphereData, "points do not lie on a common sphere");
}

enum class BlendChoice { Poly, Trig, Smooth };

struct RunConfig {
    PointCloud cloud;
    int r = 2;  // target smoothness order
    LocalMode mode = LocalMode::Parabola;
    BoundaryRuleTag boundary = BoundaryRuleTag::Linear;
    BlendChoice blend_family = BlendChoice::Poly;
    int blend_order = 2;
    bool corner_detect = false;
    double corner_eps = 0.1;
    double det_tol = 1e-9;
    bool sphere = false;
    bool sphere_auto = false;
    Vec sphere_center;
    double sphere_radius = 0;
    int samples_per_span = 64;
    bool strict_cert = false;  // fail the run on certification failures
    VerifyThresholds thresholds;
};

struct RunResult {
    GluedCurve curve;
    SmoothnessReport report;
    std::vector<SamplePoint> samples;
    std::vector<std::string> warnings;
    std::vector<VertexTag> vertex_tags;  // per index, when corner detection is on
    int corner_count = 0;
    std::vector<CertReport> cert_contracted, cert_pd;
    bool cert_ok = true;
};

inline Blend make_blend(BlendChoice family, int order) {
    switch (family) {
        case BlendChoice::Poly: return make_polynomial_blend(order);
        case BlendChoice::Trig: return make_trig_blend();
        case BlendChoice::Smooth: return make_smooth_blend();
    }
    fail(Err::BadParams, "unknown blend family");
}

inline RunResult run_pipeline(RunConfig cfg) {
    RunResult res;
    PointCloud& cloud = cfg.cloud;
    if (cfg.boundary == BoundaryRuleTag::Closed && !cloud.closed)
        fail(Err::BadParams, "closed boundary rule requires closed input data");
    if (cloud.closed && cfg.boundary != BoundaryRuleTag::Closed) {
        res.warnings.push_back("input is closed; using the closed boundary rule");
        cfg.boundary = BoundaryRuleTag::Closed;
    }
    cloud.validate();
    const int N = cloud.span_count();

    LocalOptions lo;
    lo.mode = cfg.mode;
    lo.boundary = cfg.boundary;
    lo.corner_detect = cfg.corner_detect;
    lo.corner_eps = cfg.corner_eps;
    lo.det_tol = cfg.det_tol;
    lo.log = &res.warnings;

    if (cfg.corner_detect) {
        int n_idx = cloud.closed ? N : N + 1;
        for (int i = 0; i < n_idx; ++i) {
            bool window5 = cloud.closed ? int(cloud.points.size()) >= 5 : (i >= 2 && i + 2 <= N);
            if (!window5) {
                res.vertex_tags.push_back(VertexTag::General);
                continue;
            }
            VertexClass cls = classify_vertex(
                cloud.at_wrapped(i - 2), cloud.at_wrapped(i - 1), cloud.at_wrapped(i),
                cloud.at_wrapped(i + 1), cloud.at_wrapped(i + 2), cfg.corner_eps, cfg.det_tol);
            res.vertex_tags.push_back(cls.tag);
            if (cls.tag == VertexTag::Corner) ++res.corner_count;
        }
    }

    // Step 1: local curves, Step 2: redistribution
    std::vector<QRCurve> qr;
    for (int i = 0; i <= N; ++i) {
        LocalCurve f = local_for(i, cloud, lo);
        qr.push_back(make_qr(f, i, cloud.at_wrapped(i - 1), cloud.at_wrapped(i),
                             cloud.at_wrapped(i + 1)));
    }

    for (const auto& F : qr) {
        if (!F.has_left() || !F.has_right()) continue;
        res.cert_contracted.push_back(certify_contracted(F));
        res.cert_pd.push_back(certify_positive_definite(F));
        if (!res.cert_contracted.back().pass || !res.cert_pd.back().pass) {
            res.cert_ok = false;
            res.warnings.push_back("curve " + std::to_string(F.index) +
                                   ": certification failed (" +
                                   (res.cert_contracted.back().pass ? "positive definiteness"
                                                                    : "contractedness") +
                                   ")");
        }
    }
    if (cfg.strict_cert && !res.cert_ok)
        fail(Err::BadParams, "certification failed and strict mode is on");

    // Step 3: blend
    Blend blend = make_blend(cfg.blend_family, cfg.blend_order);
    int vr = blend.order == kInfOrder ? cfg.r : std::min(cfg.r, blend.order);
    auto brep = validate_blend(blend, blend.order == kInfOrder ? cfg.r : blend.order);
    if (!brep.pass)
        for (const auto& f : brep.failures) res.warnings.push_back("blend: " + f);

    // Step 4: gluing
    if (cfg.sphere) {
        Vec center = cfg.sphere_center;
        double radius = cfg.sphere_radius;
        if (cfg.sphere_auto) fit_sphere(cloud.points, center, radius);
        res.curve = glue_sphere(std::move(qr), blend, center, radius, cloud.closed);
    } else {
        res.curve = glue_linear(std::move(qr), blend, cloud.closed);
    }
    for (const auto& w : res.curve.warnings) res.warnings.push_back(w);

    std::vector<int> corner_knots;
    for (int i = 0; i < int(res.vertex_tags.size()); ++i)
        if (res.vertex_tags[i] == VertexTag::Corner) corner_knots.push_back(i);
    res.report = verify(res.curve, cloud, vr, cfg.thresholds,
                        corner_knots.empty() ? nullptr : &corner_knots);
    res.samples = sample(res.curve, cfg.samples_per_span);
    return res;
}

}  // namespace gcurve

// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <gcurve/gcurve.hpp>

#include "helpers.hpp"

using namespace gcurve;
using Clock = std::chrono::steady_clock;

namespace {

bool g_all_ok = true;

void report(int criterion, bool ok, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    if (!ok) g_all_ok = false;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CloudSet {
    std::vector<PointCloud> clouds;
};

CloudSet make_clouds() {
    const int sizes[3] = {5, 20, 100};
    const int dims[3] = {2, 3, 5};
    CloudSet cs;
    for (int k = 0; k < 50; ++k)
        cs.clouds.push_back(
            testutil::random_flattenable_cloud(sizes[k % 3], dims[(k / 3) % 3], 2000 + k));
    return cs;
}

GluedCurve build_curve(const PointCloud& cloud, int blend_r, LocalMode mode = LocalMode::Parabola,
                       BoundaryRuleTag boundary = BoundaryRuleTag::Linear) {
    LocalOptions o;
    o.mode = mode;
    o.boundary = boundary;
    std::vector<QRCurve> qr;
    for (int i = 0; i <= cloud.span_count(); ++i)
        qr.push_back(make_qr(local_for(i, cloud, o), i, cloud.at_wrapped(i - 1),
                             cloud.at_wrapped(i), cloud.at_wrapped(i + 1)));
    return glue_linear(std::move(qr), make_polynomial_blend(blend_r), cloud.closed);
}

// one open span whose blended surface is supplied directly
GluedCurve custom_span(const Vec& a, const Vec& b, int blend_r,
                       std::function<Vec(double, double)> phi) {
    PointCloud two;
    two.points = {a, b};
    LocalOptions o;
    std::vector<QRCurve> qr;
    for (int i = 0; i <= 1; ++i)
        qr.push_back(make_qr(local_for(i, two, o), i, two.at_wrapped(i - 1), two.at_wrapped(i),
                             two.at_wrapped(i + 1)));
    return glue_custom(std::move(qr), make_polynomial_blend(blend_r),
                       [phi](int, double t, double u) { return phi(t, u); }, false, false);
}

double beta_quadrature(int r, double t) {
    auto integrand = [&](double s) { return std::pow(s, r) * std::pow(1 - s, r); };
    auto simpson = [&](double hi) {
        const int n = 20000;
        double h = hi / n, acc = integrand(0.0) + integrand(hi);
        for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * integrand(k * h);
        return acc * h / 3.0;
    };
    return simpson(t) / simpson(1.0);
}

void criterion_1(const CloudSet& cs) {
    auto t0 = Clock::now();
    double worst = 0;
    for (const auto& cloud : cs.clouds) {
        GluedCurve g = build_curve(cloud, 2);
        const int N = g.spans();
        for (int i = 0; i <= N; ++i) {
            double e =
                dist(to_double(g.eval(double(i), 0, i == N ? -1 : 1)), cloud.at_wrapped(i));
            worst = std::max(worst, e);
        }
    }
    double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "interpolation on 50 clouds, max residual %.3g (<= 1e-10), %.2f s (< 5)",
                  worst, dt);
    report(1, worst <= 1e-10 && dt < 5.0, buf);
}

void criterion_2() {
    bool ok = true;
    std::string why;
    for (int r = 0; r <= 5 && ok; ++r)
        if (!validate_blend(make_polynomial_blend(r), r).pass) {
            ok = false;
            why = "validate_blend failed at r=" + std::to_string(r);
        }
    Blend b1 = make_polynomial_blend(1);
    if (ok && !(b1.coef == std::vector<double>{1.0, 0.0, -3.0, 2.0})) {
        ok = false;
        why = "r=1 coefficients are not exactly 2t^3-3t^2+1";
    }
    double worst = 0;
    for (int r = 0; r <= 5 && ok; ++r) {
        Blend b = make_polynomial_blend(r);
        for (int k = 1; k <= 9; ++k) {
            double t = k / 10.0;
            worst = std::max(worst, std::abs(b.b2(t) - beta_quadrature(r, t)));
        }
    }
    if (ok && worst > 1e-10) {
        ok = false;
        why = "quadrature oracle deviation " + std::to_string(worst);
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "blending axioms r=0..5, exact r=1 coefficients, quadrature deviation %.3g%s%s",
                  worst, why.empty() ? "" : "; ", why.c_str());
    report(2, ok, buf);
}

void criteria_3_4(const CloudSet& cs) {
    bool ok_reg = true, ok_pd = true, ok_knots = true, ok_guard = true;
    double worst_mismatch = 0, worst_pd = 1e300, worst_speed_rel = 1e300;
    for (int r = 1; r <= 3; ++r) {
        for (const auto& cloud : cs.clouds) {
            GluedCurve g = build_curve(cloud, r);
            SmoothnessReport rep = verify(g, cloud, r);
            ok_reg = ok_reg && rep.pass_regularity;
            ok_pd = ok_pd && rep.span_pd_margin > 0;
            ok_knots = ok_knots && rep.pass_knots;
            ok_guard = ok_guard && rep.pass_guard;
            worst_mismatch = std::max(worst_mismatch, rep.max_knot_mismatch);
            worst_pd = std::min(worst_pd, rep.span_pd_margin);
            worst_speed_rel = std::min(worst_speed_rel, rep.min_speed / rep.chord_scale);
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "span regularity r=1..3 on 50 clouds, min pd margin %.3g, min relative speed "
                  "%.3g (> 1e-8)",
                  worst_pd, worst_speed_rel);
    report(3, ok_reg && ok_pd, buf);
    std::snprintf(buf, sizeof(buf),
                  "knot pullback mismatch max %.3g (<= 1e-6), guard ratios in [1.5, 8]: %s",
                  worst_mismatch, ok_guard ? "yes" : "no");
    report(4, ok_knots && ok_guard, buf);
}

void criterion_5() {
    auto t0 = Clock::now();
    PointCloud cloud = gen_demo("lissajous");
    GluedCurve g = build_curve(cloud, 2, LocalMode::Parabola, BoundaryRuleTag::Closed);
    SmoothnessReport rep = verify(g, cloud, 2);
    double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "curvature continuity on the Lissajous demo, max jump %.3g (<= 1e-3), %.2f s",
                  rep.max_curvature_jump, dt);
    report(5, rep.max_curvature_jump <= 1e-3 && dt < 1.0, buf);
}

void criterion_6(const CloudSet& cs) {
    double worst = 0;
    for (const auto& cloud : cs.clouds) {
        GluedCurve g = build_curve(cloud, 1);
        SmoothnessReport rep = verify(g, cloud, 2);
        for (const auto& kc : rep.knots)
            for (double m : kc.mismatch) worst = std::max(worst, m);
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "bonus smoothness: order-2 mismatch with the degree-3 blend, max %.3g (<= 1e-4)",
                  worst);
    report(6, worst <= 1e-4, buf);
}

void criterion_7() {
    GluedCurve cusp = custom_span(Vec{0, 0}, Vec{1, 1}, 1,
                                  [](double t, double) { return Vec{t * t, t * t * t}; });
    PointCloud c1;
    c1.points = {Vec{0, 0}, Vec{1, 1}};
    SmoothnessReport r1 = verify(cusp, c1, 1);

    auto F = [](double t) {
        return Vec{0.5 + 4 * std::pow(t - 0.5, 3), t * (1 - t) * (1 - t)};
    };
    auto G = [](double t) {
        return Vec{0.5 + 4 * std::pow(t - 0.5, 3), t * t * (1 - t)};
    };
    GluedCurve mix = custom_span(Vec{0, 0}, Vec{1, 0}, 1,
                                 [&](double t, double u) { return u * F(t) + (1 - u) * G(t); });
    PointCloud c2;
    c2.points = {Vec{0, 0}, Vec{1, 0}};
    SmoothnessReport r2 = verify(mix, c2, 1);

    bool ok = !r1.pass_regularity && std::abs(r1.min_speed_at) < 1e-9 && !r2.pass_regularity &&
              std::abs(r2.min_speed_at - 0.5) < 1e-3;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "negative controls fail regularity: cusp at t=%.3g, crossing pair at t=%.3g",
                  r1.min_speed_at, r2.min_speed_at);
    report(7, ok, buf);
}

void criterion_8() {
    PointCloud cloud = gen_demo("square-corners");  // 8 points, closed

    RunConfig with;
    with.cloud = cloud;
    with.boundary = BoundaryRuleTag::Closed;
    with.corner_detect = true;
    RunResult rw = run_pipeline(with);
    int big_jumps = 0;
    for (int i = 0; i < rw.curve.spans(); ++i) {
        Vec dl = to_double(rw.curve.eval(double(i), 1, -1));
        Vec dr = to_double(rw.curve.eval(double(i), 1, +1));
        double cosang = dot(dl, dr) / (norm(dl) * norm(dr));
        double deg = std::acos(std::max(-1.0, std::min(1.0, cosang))) * 180 / kPi;
        if (deg >= 80.0) ++big_jumps;
    }

    RunConfig without;
    without.cloud = cloud;
    without.boundary = BoundaryRuleTag::Closed;
    RunResult ro = run_pipeline(without);

    bool ok = rw.corner_count == 4 && big_jumps == 4 && ro.corner_count == 0 &&
              ro.report.max_curvature_jump <= 1e-3;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "corners: detected %d (= 4), tangent jumps >= 80 deg at %d knots (= 4); "
                  "without detection: %d corners, max curvature jump %.3g (<= 1e-3)",
                  rw.corner_count, big_jumps, ro.corner_count, ro.report.max_curvature_jump);
    report(8, ok, buf);
}

void criterion_9() {
    DemoParams p;
    p.n = 8;
    PointCloud oct = gen_demo("convex-polygon", p);
    GluedCurve g = build_curve(oct, 2, LocalMode::ConvexChord, BoundaryRuleTag::Closed);
    auto samples = sample(g, 64);
    double lo = 1e300, hi = -1e300;
    for (const auto& s : samples) {
        double k = signed_curvature_2d(s.d1, s.d2);
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    bool ok = lo >= -1e-9 || hi <= 1e-9;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "convexity: octagon signed curvature in [%.3g, %.3g], one-signed within 1e-9",
                  lo, hi);
    report(9, ok, buf);
}

void criterion_10() {
    auto t0 = Clock::now();
    DemoParams pc;
    pc.n = 12;
    PointCloud circ = gen_demo("circle", pc);
    LocalOptions o;
    o.mode = LocalMode::Arc;
    o.boundary = BoundaryRuleTag::Closed;
    std::vector<QRCurve> qr;
    for (int i = 0; i <= circ.span_count(); ++i)
        qr.push_back(make_qr(local_for(i, circ, o), i, circ.at_wrapped(i - 1), circ.at_wrapped(i),
                             circ.at_wrapped(i + 1)));
    GluedCurve gc = glue_sphere(std::move(qr), make_polynomial_blend(2), Vec{0, 0}, 1.0, true);
    double circle_dev = 0;
    for (const auto& s : sample(gc, 64)) circle_dev = std::max(circle_dev, std::abs(norm(s.pos) - 1.0));
    double dt_circle = seconds_since(t0);

    t0 = Clock::now();
    DemoParams ps;
    ps.n = 15;
    PointCloud sph = gen_demo("sphere-random", ps);
    o.boundary = BoundaryRuleTag::Natural;
    std::vector<QRCurve> qs;
    for (int i = 0; i <= sph.span_count(); ++i)
        qs.push_back(make_qr(local_for(i, sph, o), i, sph.at_wrapped(i - 1), sph.at_wrapped(i),
                             sph.at_wrapped(i + 1)));
    GluedCurve gs = glue_sphere(std::move(qs), make_polynomial_blend(2), Vec{0, 0, 0}, 1.0);
    double sphere_dev = 0;
    for (const auto& s : sample(gs, 64)) sphere_dev = std::max(sphere_dev, std::abs(norm(s.pos) - 1.0));
    double dt_sphere = seconds_since(t0);

    bool ok = circle_dev <= 1e-9 && sphere_dev <= 1e-8 && dt_circle < 1.0 && dt_sphere < 1.0;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "circle radial deviation %.3g (<= 1e-9) in %.2f s; sphere deviation %.3g "
                  "(<= 1e-8) in %.2f s",
                  circle_dev, dt_circle, sphere_dev, dt_sphere);
    report(10, ok, buf);
}

void criterion_11() {
    bool ok = true;
    double worst_c = 1e300, worst_p = 1e300;
    for (int k = 0; k < 100; ++k) {
        auto tri = testutil::random_triple(2 + k % 3, 7000 + k);
        LocalCurve f = fit_parabola(tri[0], tri[1], tri[2]);
        QRCurve F = make_qr(f, 1, tri[0], tri[1], tri[2]);
        auto c = certify_contracted(F);
        auto p = certify_positive_definite(F);
        ok = ok && c.pass && p.pass;
        worst_c = std::min(worst_c, c.worst_margin);
        worst_p = std::min(worst_p, p.worst_margin);
    }
    auto pt = [](double deg) {
        return Vec{std::cos(deg * kPi / 180), std::sin(deg * kPi / 180)};
    };
    LocalCurve arc = fit_circle_arc(pt(0), pt(200), pt(280));
    QRCurve A = make_qr(arc, 1, pt(0), pt(200), pt(280));
    bool wide_arc_fails = !certify_positive_definite(A).pass;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "certification: 100 parabola triples pass (margins >= %.3g, %.3g); arc over "
                  "half a turn fails positive definiteness: %s",
                  worst_c, worst_p, wide_arc_fails ? "yes" : "no");
    report(11, ok && wide_arc_fails, buf);
}

}  // namespace

int main() {
    CloudSet cs = make_clouds();
    criterion_1(cs);
    criterion_2();
    criteria_3_4(cs);
    criterion_5();
    criterion_6(cs);
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("%s\n", g_all_ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED");
    return g_all_ok ? 0 : 1;
}

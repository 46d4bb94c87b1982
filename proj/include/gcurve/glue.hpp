#pragma once

// Gluing consecutive quasi-regular curves into the global curve on [0, N]:
// linear blending, sphere-preserving (and 2-D circle-preserving) blending,
// and user-supplied surface families.

#include "gcurve/blend.hpp"
#include "gcurve/redistribute.hpp"

namespace gcurve {

enum class GlueRule { Linear, Sphere, Custom };

// Per-span data of the sphere (or 2-D circle) gluing family. Every member
// curve is an arc from P to Q; the arc's circle center moves with the blend
// parameter u, at constant angular speed along the circle of centers in 3-D
// and linearly along the perpendicular bisector in 2-D.
struct SpanSurface {
    bool is2d = false;
    Vec P, Q, M, a;  // endpoints, chord midpoint, unit chord direction
    double L = 0;    // half chord length
    // 3-D: centers C(psi) = Cc + rho (cos psi e1 + sin psi e2)
    Vec Cc, e1, e2;
    double rho = 0, psi0 = 0, dpsi = 0;  // psi(u) = psi0 + u dpsi
    // 2-D: centers C(u) = M + (hs0 + u (hs1 - hs0)) n
    Vec n;
    double hs0 = 0, hs1 = 0;
    // major-arc offsets of the two endpoint curves (u = 0 is F_{i+1}, u = 1
    // is F_i); interpolated linearly in u so the family stays smooth even
    // when the endpoints bow to opposite sides
    bool major0 = false, major1 = false;

    // point at arc fraction tau on the member curve of parameter u
    template <class T>
    VecT<T> point(T tau, T u) const {
        VecT<T> C, w;
        T hs;
        if (is2d) {
            T lam = T(hs0) + u * T(hs1 - hs0);
            C = to_scalar<T>(M) + lam * to_scalar<T>(n);
            hs = lam;
            w = -to_scalar<T>(n);
        } else {
            T psi = T(psi0) + u * T(dpsi);
            T ch = t_cos(psi / T(2)), sh = t_sin(psi / T(2));
            VecT<T> E1 = to_scalar<T>(e1), E2 = to_scalar<T>(e2);
            T cp = ch * ch - sh * sh, sp = T(2) * sh * ch;
            C = to_scalar<T>(Cc) + T(rho) * (cp * E1 + sp * E2);
            hs = T(2 * rho) * sh;
            w = sh * E1 - ch * E2;
        }
        T angle_p = t_atan2(T(-L), hs);
        T moff = u * T(major1 ? 1 : 0) + (T(1) - u) * T(major0 ? 1 : 0);
        T sweep = T(2) * t_atan2(T(L), hs) - moff * T(2 * kPi);
        T phi = angle_p + tau * sweep;
        T rc = t_sqrt(hs * hs + T(L) * T(L));
        return C + rc * (t_cos(phi) * w + t_sin(phi) * to_scalar<T>(a));
    }
};

struct GluedCurve {
    std::vector<QRCurve> qr;  // indices 0..N
    Blend blend;
    GlueRule rule = GlueRule::Linear;
    bool closed = false;
    Vec sphere_center;
    double sphere_radius = 0;
    std::vector<SpanSurface> spans_data;                    // Sphere rule
    std::function<Vec(int, double, double)> phi;            // Custom rule
    std::vector<std::string> warnings;

    int spans() const { return int(qr.size()) - 1; }
    int dim() const { return qr.front().v0.dim(); }

    // k-th derivative at t; side < 0 resolves integer t to the left span.
    // Linear gluing differentiates the blend products analytically; the
    // surface rules use finite differences on positions.
    template <class T>
    VecT<T> eval(T t, int order = 0, int side = 0) const {
        const int N = spans();
        if (closed) {
            while (double(t) < 0) t += T(N);
            while (double(t) > N) t -= T(N);
            // left limit at the seam lives at the end of the last span
            if (side < 0 && double(t) == 0.0) t += T(N);
        }
        double td = double(t);
        if (td < -1e-9 || td > N + 1e-9) fail(Err::OutOfDomain, "eval: t outside [0, N]");
        int i = int(std::floor(td));
        if (td == std::floor(td) && side < 0) i = int(td) - 1;
        i = std::max(0, std::min(N - 1, i));
        if (rule == GlueRule::Linear) return eval_linear(t, i, order);
        if (order == 0) return position(t, i);
        return fd_derivative(t, i, order);
    }

private:
    template <class T>
    VecT<T> eval_linear(T t, int i, int order) const {
        T tau = t - T(i);
        VecT<T> out(dim());
        for (int j = 0; j <= order; ++j) {
            T cj = T(binomial(order, j));
            VecT<T> fi = qr[i].eval(t, j, 1);
            VecT<T> fn = qr[i + 1].eval(t, j, -1);
            out += cj * (blend.b1(tau, order - j) * fi + blend.b2(tau, order - j) * fn);
        }
        return out;
    }

    template <class T>
    VecT<T> position(T t, int i) const {
        T tau = t - T(i);
        if (rule == GlueRule::Sphere) return spans_data[i].point(tau, blend.b1(tau));
        Vec p = phi(i, double(t), double(blend.b1(double(tau))));
        return to_scalar<T>(p);
    }

    // centered stencil clipped to the span, order-4 accuracy
    template <class T>
    VecT<T> fd_derivative(T t, int i, int order) const {
        const int npts = order + 4;
        const T h = T(1e-5);
        T lo = t - T(npts - 1) / T(2) * h;
        if (lo < T(i)) lo = T(i);
        if (lo + T(npts - 1) * h > T(i + 1)) lo = T(i + 1) - T(npts - 1) * h;
        std::vector<T> nodes(npts);
        for (int k = 0; k < npts; ++k) nodes[k] = lo + T(k) * h;
        auto w = fd_weights<T>(t, nodes, order);
        VecT<T> acc(dim());
        for (int k = 0; k < npts; ++k) acc += w[order][k] * position(nodes[k], i);
        return acc;
    }
};

namespace detail {

inline void check_span_links(const std::vector<QRCurve>& qr) {
    if (qr.size() < 2) fail(Err::SpanMismatch, "need at least two quasi-regular curves");
    for (size_t i = 0; i + 1 < qr.size(); ++i) {
        double scale = std::max({norm(qr[i].v0), norm(qr[i].vp), 1.0});
        if (dist(qr[i].vp, qr[i + 1].v0) > 1e-9 * scale ||
            dist(qr[i].v0, qr[i + 1].vm) > 1e-9 * scale)
            fail(Err::SpanMismatch, "consecutive curves disagree on shared data points");
    }
}

}  // namespace detail

inline GluedCurve glue_linear(std::vector<QRCurve> qrcurves, Blend blend, bool closed = false) {
    detail::check_span_links(qrcurves);
    GluedCurve g;
    g.rule = GlueRule::Linear;
    g.closed = closed;
    int r = blend.order == kInfOrder ? 4 : blend.order;
    if (!validate_blend(blend, r).pass)
        g.warnings.push_back("blend failed axiom validation; gluing anyway");
    g.qr = std::move(qrcurves);
    g.blend = std::move(blend);
    return g;
}

// Sphere-preserving gluing (dim 3) or circle-preserving gluing (dim 2).
// Requires circle-arc locals whose circles lie on the target sphere.
inline GluedCurve glue_sphere(std::vector<QRCurve> qrcurves, Blend blend, const Vec& center,
                              double radius, bool closed = false) {
    detail::check_span_links(qrcurves);
    const int d = center.dim();
    if (d != 2 && d != 3) fail(Err::UnsupportedDimension, "sphere gluing needs dimension 2 or 3");
    GluedCurve g;
    g.rule = GlueRule::Sphere;
    g.closed = closed;
    g.sphere_center = center;
    g.sphere_radius = radius;
    int r = blend.order == kInfOrder ? 4 : blend.order;
    if (!validate_blend(blend, r).pass)
        g.warnings.push_back("blend failed axiom validation; gluing anyway");

    for (const auto& F : qrcurves) {
        if (std::abs(dist(F.v0, center) - radius) > 1e-8 * radius)
            fail(Err::OffSphereData, "data point off the sphere");
        if (F.local.kind != LocalKind::CircleArc)
            fail(Err::BadParams, "sphere gluing requires circle-arc locals");
    }

    const int N = int(qrcurves.size()) - 1;
    for (int i = 0; i < N; ++i) {
        SpanSurface sp;
        sp.is2d = (d == 2);
        sp.P = qrcurves[i].v0;
        sp.Q = qrcurves[i].vp;
        sp.M = 0.5 * (sp.P + sp.Q);
        sp.a = normalize(sp.Q - sp.P);
        sp.L = 0.5 * dist(sp.P, sp.Q);
        const Vec& O1 = qrcurves[i].local.origin;      // circle center of F_i   (u = 1)
        const Vec& O0 = qrcurves[i + 1].local.origin;  // circle center of F_{i+1} (u = 0)
        if (sp.is2d) {
            sp.n = Vec{-sp.a[1], sp.a[0]};
            sp.hs0 = dot(O0 - sp.M, sp.n);  // signed center offsets: C(u) = M + hs(u) n
            sp.hs1 = dot(O1 - sp.M, sp.n);
        } else {
            Vec mc = sp.M - center;
            double dmc = norm(mc);
            if (dmc <= 1e-12 * radius)
                fail(Err::AntipodalChord, "antipodal span endpoints: center family degenerate");
            sp.e1 = mc * (1.0 / dmc);
            sp.e2 = cross3(sp.a, sp.e1);
            sp.Cc = 0.5 * (center + sp.M);
            sp.rho = 0.5 * dmc;
            auto psi_of = [&](const Vec& O) {
                Vec v = O - sp.Cc;
                return std::atan2(dot(v, sp.e2), dot(v, sp.e1));
            };
            sp.psi0 = psi_of(O0);
            double dpsi = psi_of(O1) - sp.psi0;
            while (dpsi > kPi) dpsi -= 2 * kPi;
            while (dpsi <= -kPi) dpsi += 2 * kPi;
            sp.dpsi = dpsi;
            for (const Vec& O : {O0, O1})
                if (std::abs(dist(O, sp.Cc) - sp.rho) > 1e-7 * radius)
                    fail(Err::OffSphereData, "local arc does not lie on the sphere");
        }
        // arc side: compare each endpoint curve's mid-arc sample against the
        // +w point of its own circle
        auto side_of = [&](const QRCurve& F, double u) {
            Vec X = to_double(F.eval(double(i) + 0.5));
            Vec C, w;
            if (sp.is2d) {
                double lam = sp.hs0 + u * (sp.hs1 - sp.hs0);
                C = sp.M + lam * sp.n;
                w = -1.0 * sp.n;
            } else {
                double psi = sp.psi0 + u * sp.dpsi;
                C = sp.Cc + sp.rho * (std::cos(psi) * sp.e1 + std::sin(psi) * sp.e2);
                w = std::sin(psi / 2) * sp.e1 - std::cos(psi / 2) * sp.e2;
            }
            return dot(X - C, w) < 0;  // true = major side
        };
        sp.major1 = side_of(qrcurves[i], 1.0);
        sp.major0 = side_of(qrcurves[i + 1], 0.0);
        g.spans_data.push_back(sp);
    }
    g.qr = std::move(qrcurves);
    g.blend = std::move(blend);
    return g;
}

// User-supplied family: Gamma(t) = Phi(i, t, B_1(t - i)) per span. The
// endpoint identities Phi(., 1) = F_i and Phi(., 0) = F_{i+1} are spot
// checked on a sample grid.
inline GluedCurve glue_custom(std::vector<QRCurve> qrcurves, Blend blend,
                              std::function<Vec(int, double, double)> phi, bool closed = false,
                              bool check_endpoints = true) {
    detail::check_span_links(qrcurves);
    GluedCurve g;
    g.rule = GlueRule::Custom;
    g.closed = closed;
    if (check_endpoints) {
        const int N = int(qrcurves.size()) - 1;
        for (int i = 0; i < N; ++i) {
            double scale = std::max(1.0, dist(qrcurves[i].v0, qrcurves[i].vp));
            for (int k = 0; k <= 16; ++k) {
                double t = i + double(k) / 16;
                if (dist(phi(i, t, 1.0), to_double(qrcurves[i].eval(t, 0, 1))) > 1e-10 * scale ||
                    dist(phi(i, t, 0.0), to_double(qrcurves[i + 1].eval(t, 0, -1))) >
                        1e-10 * scale)
                    fail(Err::EndpointMismatch, "surface family does not match endpoint curves");
            }
        }
    }
    g.qr = std::move(qrcurves);
    g.blend = std::move(blend);
    g.phi = std::move(phi);
    return g;
}

}  // namespace gcurve

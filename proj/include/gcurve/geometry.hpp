#pragma once

// Curvature, flattenability, and vertex classification.

#include <optional>

#include "gcurve/vec.hpp"

namespace gcurve {

// kappa = sqrt(|d1|^2 |d2|^2 - (d1.d2)^2) / |d1|^3. The radicand is
// nonnegative by Cauchy-Schwarz; rounding may drive it slightly below zero,
// in which case it is clamped.
template <class T>
T curvature_t(const VecT<T>& d1, const VecT<T>& d2) {
    T n1 = norm2(d1);
    if (!(n1 > T(0))) fail(Err::ZeroSpeed, "curvature: zero first derivative");
    T n2 = norm2(d2);
    T d12 = dot(d1, d2);
    T radicand = n1 * n2 - d12 * d12;
    if (radicand < T(0)) {
        if (t_abs(radicand) <= T(1e-12) * n1 * n2) radicand = T(0);
        // larger violations cannot happen analytically; clamp those too but
        // only after the relative check documents the expectation
        if (radicand < T(0)) radicand = T(0);
    }
    T speed = t_sqrt(n1);
    return t_sqrt(radicand) / (speed * speed * speed);
}

inline double curvature(const Vec& d1, const Vec& d2) { return curvature_t<double>(d1, d2); }

// Signed planar curvature (x'y'' - y'x'') / |d1|^3.
inline double signed_curvature_2d(const Vec& d1, const Vec& d2) {
    double speed = norm(d1);
    if (speed <= 0.0) fail(Err::ZeroSpeed, "signed_curvature_2d: zero first derivative");
    return cross2(d1, d2) / (speed * speed * speed);
}

struct FlattenResult {
    bool ok = false;
    Vec witness;  // unit direction with positive projections of both chords
};

// Three points are flattenable iff the chords b-a and c-b are not
// antiparallel; the normalized sum of unit chords is then a valid witness.
inline FlattenResult flattenable(const Vec& a, const Vec& b, const Vec& c) {
    Vec u = b - a;
    Vec v = c - b;
    double nu = norm(u), nv = norm(v);
    if (nu == 0.0 || nv == 0.0) fail(Err::DegenerateChord, "flattenable: coincident points");
    Vec uh = u * (1.0 / nu);
    Vec vh = v * (1.0 / nv);
    Vec s = uh + vh;
    double ns = norm(s);
    FlattenResult res;
    if (ns == 0.0) return res;  // exactly antiparallel chords
    res.witness = s * (1.0 / ns);
    // antiparallel within rounding: both projections must stay positive
    res.ok = dot(u, res.witness) > 0.0 && dot(v, res.witness) > 0.0;
    return res;
}

enum class VertexTag { LocalConvex, Degenerate, Corner, General };

struct VertexClass {
    VertexTag tag = VertexTag::General;
    std::optional<Vec> witness;  // ray intersection A for corners
};

// Project points onto the best-fit plane of their centered set (two dominant
// principal directions). Identity for 2-D input.
inline std::vector<Vec> project_to_plane(const std::vector<Vec>& pts) {
    const int d = pts.front().dim();
    if (d == 2) return pts;
    const int m = int(pts.size());
    Vec mean(d);
    for (const auto& p : pts) mean += p;
    mean *= 1.0 / m;
    std::vector<double> cov(d * d, 0.0);
    for (const auto& p : pts) {
        Vec q = p - mean;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) cov[i * d + j] += q[i] * q[j];
    }
    std::vector<double> eval, evec;
    jacobi_eigen_sym(d, cov, eval, evec);
    std::vector<Vec> out;
    out.reserve(m);
    for (const auto& p : pts) {
        Vec q = p - mean;
        Vec xy(2);
        for (int i = 0; i < d; ++i) {
            xy[0] += q[i] * evec[i * d + 0];
            xy[1] += q[i] * evec[i * d + 1];
        }
        out.push_back(xy);
    }
    return out;
}

inline std::optional<Vec> ray_intersection_2d(const Vec& o1, const Vec& d1, const Vec& o2,
                                              const Vec& d2) {
    double denom = cross2(d1, d2);
    double scale = std::max(norm(d1), norm(d2));
    if (std::abs(denom) <= 1e-14 * scale * scale) return std::nullopt;
    Vec w = o2 - o1;
    double t = cross2(w, d2) / denom;
    double s = cross2(w, d1) / denom;
    if (t < 0.0 || s < 0.0) return std::nullopt;  // rays, not lines
    return o1 + d1 * t;
}

// Classifies the middle vertex v3 of five consecutive points. Points of
// dimension > 2 are first projected onto their best-fit plane.
inline VertexClass classify_vertex(const Vec& v1, const Vec& v2, const Vec& v3, const Vec& v4,
                                   const Vec& v5, double corner_eps = 0.1,
                                   double det_tol = 1e-9) {
    std::vector<Vec> pts = {v1, v2, v3, v4, v5};
    std::vector<Vec> plane = project_to_plane(pts);
    const Vec &w1 = plane[0], &w2 = plane[1], &w3 = plane[2], &w4 = plane[3], &w5 = plane[4];
    Vec c1 = w2 - w1, c2 = w3 - w2, c3 = w4 - w3, c4 = w5 - w4;
    double scale = std::max(std::max(norm(c1), norm(c2)), std::max(norm(c3), norm(c4)));
    double tol = det_tol * scale * scale;
    double d1 = cross2(c1, c2), d2 = cross2(c2, c3), d3 = cross2(c3, c4);

    VertexClass res;
    bool any_zero = std::abs(d1) <= tol || std::abs(d2) <= tol || std::abs(d3) <= tol;
    if (!any_zero) {
        bool same = (d1 > 0) == (d2 > 0) && (d2 > 0) == (d3 > 0);
        res.tag = same ? VertexTag::LocalConvex : VertexTag::General;
        return res;
    }
    res.tag = VertexTag::Degenerate;
    // corner test: rays from v2 along v2-v1 and from v4 along v4-v5
    auto hit = ray_intersection_2d(w2, w2 - w1, w4, w4 - w5);
    if (hit) {
        double near = corner_eps * std::min(norm(w3 - w2), norm(w4 - w3));
        if (dist(w3, *hit) <= near) {
            res.tag = VertexTag::Corner;
            res.witness = *hit;  // in plane coordinates for n > 2
        }
    }
    return res;
}

}  // namespace gcurve

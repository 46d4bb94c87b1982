#pragma once

// Local interpolating curves: spatial parabola, circle and ellipse arcs,
// linear segments, convexity-preserving chord lines, and corner polylines,
// plus the per-index dispatcher with boundary rules.

#include <functional>

#include "gcurve/geometry.hpp"

namespace gcurve {

enum class LocalKind { Parabola, CircleArc, EllipseArc, Linear, ConvexChord, Polyline, Custom };

// f on [p, r] with knot q and f(q) = v. Boundary one-sided curves use p == q
// (start) or q == r (end). The payload depends on kind:
//   Parabola:    f(s) = origin + s*ax + Q(s)*ay,  Q(s) = qa s^2 + qb s + qc
//   Circle/Ellipse arc: f(s) = origin + cos(s)*ax + sin(s)*ay
//   Linear/ConvexChord: f(s) = origin + s*ax
//   Polyline:    chain of segments through pts at knots
//   Custom:      user map (s, order) -> derivative, double precision
struct LocalCurve {
    LocalKind kind = LocalKind::Linear;
    double p = 0, q = 0, r = 1;
    int dim = 0;
    Vec origin, ax, ay;
    double qa = 0, qb = 0, qc = 0;
    std::vector<Vec> pts;
    std::vector<double> knots;
    std::function<Vec(double, int)> custom;

    bool has_left() const { return p < q; }
    bool has_right() const { return q < r; }

    // order-k derivative at s; side breaks ties at polyline knots
    template <class T>
    VecT<T> eval(T s, int order = 0, int side = 0) const {
        switch (kind) {
            case LocalKind::Parabola: {
                if (order == 0)
                    return to_scalar<T>(origin) + s * to_scalar<T>(ax) +
                           (T(qa) * s * s + T(qb) * s + T(qc)) * to_scalar<T>(ay);
                if (order == 1)
                    return to_scalar<T>(ax) + (T(2 * qa) * s + T(qb)) * to_scalar<T>(ay);
                if (order == 2) return T(2 * qa) * to_scalar<T>(ay);
                return VecT<T>(dim);
            }
            case LocalKind::CircleArc:
            case LocalKind::EllipseArc: {
                // d^k/ds^k of cos(s) ax + sin(s) ay cycles with period 4
                T c = t_cos(s), sn = t_sin(s);
                VecT<T> X = to_scalar<T>(ax), Y = to_scalar<T>(ay);
                VecT<T> out(dim);
                switch (order % 4) {
                    case 0: out = c * X + sn * Y; break;
                    case 1: out = -sn * X + c * Y; break;
                    case 2: out = -c * X - sn * Y; break;
                    case 3: out = sn * X - c * Y; break;
                }
                if (order == 0) out += to_scalar<T>(origin);
                return out;
            }
            case LocalKind::Linear:
            case LocalKind::ConvexChord: {
                if (order == 0) return to_scalar<T>(origin) + s * to_scalar<T>(ax);
                if (order == 1) return to_scalar<T>(ax);
                return VecT<T>(dim);
            }
            case LocalKind::Polyline: {
                int seg = polyline_segment(double(s), side);
                T t0 = T(knots[seg]), t1 = T(knots[seg + 1]);
                VecT<T> a = to_scalar<T>(pts[seg]), b = to_scalar<T>(pts[seg + 1]);
                VecT<T> d = (b - a) * (T(1) / (t1 - t0));
                if (order == 0) return a + (s - t0) * d;
                if (order == 1) return d;
                return VecT<T>(dim);
            }
            case LocalKind::Custom:
                return to_scalar<T>(custom(double(s), order));
        }
        return VecT<T>(dim);
    }

private:
    int polyline_segment(double s, int side) const {
        int n = int(knots.size());
        int seg = 0;
        for (int j = 1; j < n - 1; ++j)
            if (s > knots[j] || (s == knots[j] && side > 0)) seg = j;
        return seg;
    }
};

namespace detail {

// orthonormal in-plane basis of the triple, origin at a; fails on collinear
inline void plane_basis(const Vec& a, const Vec& b, const Vec& c, Vec& e1, Vec& e2) {
    Vec u = b - a, v = c - b;
    e1 = normalize(u);
    Vec w = v - dot(v, e1) * e1;
    double nw = norm(w);
    double scale = std::max(norm(u), norm(v));
    if (nw <= 1e-12 * scale) fail(Err::Collinear, "points are collinear");
    e2 = w * (1.0 / nw);
}

struct Planar {
    Vec e1, e2;           // plane basis, origin at a
    double bx, by, cx, cy;  // in-plane coordinates of b and c (a at 0,0)
};

inline Planar to_plane(const Vec& a, const Vec& b, const Vec& c) {
    Planar pl;
    plane_basis(a, b, c, pl.e1, pl.e2);
    Vec ab = b - a, ac = c - a;
    pl.bx = dot(ab, pl.e1);
    pl.by = dot(ab, pl.e2);
    pl.cx = dot(ac, pl.e1);
    pl.cy = dot(ac, pl.e2);
    return pl;
}

// derivative at x2 of the quadratic through (x1,y1),(x2,y2),(x3,y3)
inline double lagrange_dq(double x1, double y1, double x2, double y2, double x3, double y3) {
    return y1 * (x2 - x3) / ((x1 - x2) * (x1 - x3)) +
           y2 * (2 * x2 - x1 - x3) / ((x2 - x1) * (x2 - x3)) +
           y3 * (x2 - x1) / ((x3 - x1) * (x3 - x2));
}

}  // namespace detail

// Spatial parabola f(s) = p0 + s*x~ + Q(s)*y~ with Q'(q) = 0. The axis angle
// is found by bisecting the vertex residual over the arc of directions that
// keep the x-projections of a, b, c strictly ordered.
inline LocalCurve fit_parabola(const Vec& a, const Vec& b, const Vec& c) {
    auto fl = flattenable(a, b, c);
    if (!fl.ok) fail(Err::NotFlattenable, "fit_parabola: chords antiparallel");
    detail::Planar pl = detail::to_plane(a, b, c);  // throws Collinear

    // chord angles in the plane; admissible axis angles keep both chord
    // projections positive, i.e. theta in (hi - pi/2, lo + pi/2)
    double a1 = std::atan2(pl.by, pl.bx);  // chord b - a (a at origin)
    double a2 = std::atan2(pl.cy - pl.by, pl.cx - pl.bx);
    double diff = a2 - a1;
    while (diff > kPi) diff -= 2 * kPi;
    while (diff < -kPi) diff += 2 * kPi;
    double lo = std::min(a1, a1 + diff) - kPi / 2;
    double hi = std::max(a1, a1 + diff) + kPi / 2;

    auto project = [&](double th, double& xA, double& xB, double& xC, double& yA, double& yB,
                       double& yC) {
        double ct = std::cos(th), st = std::sin(th);
        xA = 0;
        yA = 0;
        xB = pl.bx * ct + pl.by * st;
        yB = -pl.bx * st + pl.by * ct;
        xC = pl.cx * ct + pl.cy * st;
        yC = -pl.cx * st + pl.cy * ct;
    };
    auto g = [&](double th) {
        double xA, xB, xC, yA, yB, yC;
        project(th, xA, xB, xC, yA, yB, yC);
        return detail::lagrange_dq(xA, yA, xB, yB, xC, yC);
    };

    // sample the open bracket for a sign change; g blows up with opposite
    // signs toward the two ends where the projection ordering degenerates
    const int nscan = 256;
    double theta = 0.0;
    bool found = false;
    double prev_t = 0, prev_g = 0;
    for (int k = 1; k <= nscan; ++k) {
        double th = lo + (hi - lo) * double(k) / (nscan + 1);
        double xA, xB, xC, yA, yB, yC;
        project(th, xA, xB, xC, yA, yB, yC);
        if (!(xA < xB && xB < xC)) continue;
        double gv = g(th);
        if (gv == 0.0) {
            theta = th;
            found = true;
            break;
        }
        if (prev_g != 0.0 && (gv > 0) != (prev_g > 0)) {
            theta = bisect(g, prev_t, th, 1e-12);
            found = true;
            break;
        }
        prev_t = th;
        prev_g = gv;
    }
    if (!found) fail(Err::NoSolution, "fit_parabola: no vertex angle found");

    double xA, xB, xC, yA, yB, yC;
    project(theta, xA, xB, xC, yA, yB, yC);

    LocalCurve f;
    f.kind = LocalKind::Parabola;
    f.dim = a.dim();
    f.origin = a;
    double ct = std::cos(theta), st = std::sin(theta);
    f.ax = ct * pl.e1 + st * pl.e2;
    f.ay = -st * pl.e1 + ct * pl.e2;
    // monomial coefficients of the Lagrange quadratic through the projections
    double d1 = (xA - xB) * (xA - xC), d2 = (xB - xA) * (xB - xC), d3 = (xC - xA) * (xC - xB);
    f.qa = yA / d1 + yB / d2 + yC / d3;
    f.qb = -(yA * (xB + xC) / d1 + yB * (xA + xC) / d2 + yC * (xA + xB) / d3);
    f.qc = yA * xB * xC / d1 + yB * xA * xC / d2 + yC * xA * xB / d3;
    f.p = xA;
    f.q = xB;
    f.r = xC;
    return f;
}

namespace detail {

// common arc assembly: f(s) = O + cos(s) X + sin(s) Y with points a, b, c at
// in-frame angles ta, tb, tc; reparametrized so the knots increase and the
// arc a -> b -> c is monotone with total sweep < 2 pi
inline LocalCurve arc_from_angles(LocalKind kind, const Vec& O, const Vec& X, const Vec& Y,
                                  double ta, double tb, double tc) {
    auto mod2pi = [](double x) {
        x = std::fmod(x, 2 * kPi);
        return x < 0 ? x + 2 * kPi : x;
    };
    double sigma = 1.0;
    double u1 = mod2pi(tb - ta), u2 = mod2pi(tc - ta);
    if (!(u1 > 0 && u1 < u2)) {
        sigma = -1.0;
        u1 = mod2pi(ta - tb);
        u2 = mod2pi(ta - tc);
        if (!(u1 > 0 && u1 < u2))
            fail(Err::NoSolution, "arc: middle point not between endpoints");
    }
    LocalCurve f;
    f.kind = kind;
    f.dim = O.dim();
    f.origin = O;
    // fold the start angle and direction into the axes:
    // cos(ta + sigma s) X + sin(ta + sigma s) Y = cos(s) X' + sin(s) Y'
    f.ax = std::cos(ta) * X + std::sin(ta) * Y;
    f.ay = sigma * (-std::sin(ta) * X + std::cos(ta) * Y);
    f.p = 0;
    f.q = u1;
    f.r = u2;
    return f;
}

}  // namespace detail

// Circle through three points in their common plane, parametrized by angle.
inline LocalCurve fit_circle_arc(const Vec& a, const Vec& b, const Vec& c) {
    auto fl = flattenable(a, b, c);
    if (!fl.ok) fail(Err::NotFlattenable, "fit_circle_arc: chords antiparallel");
    detail::Planar pl = detail::to_plane(a, b, c);

    // circumcenter from the two perpendicular-bisector equations
    // 2 ox bx + 2 oy by = bx^2 + by^2 ; same for c
    double det = 2.0 * (pl.bx * pl.cy - pl.by * pl.cx);
    double nb = pl.bx * pl.bx + pl.by * pl.by;
    double nc = pl.cx * pl.cx + pl.cy * pl.cy;
    double ox = (pl.cy * nb - pl.by * nc) / det;
    double oy = (pl.bx * nc - pl.cx * nb) / det;
    double R = std::sqrt(ox * ox + oy * oy);

    Vec O = a + ox * pl.e1 + oy * pl.e2;
    Vec X = R * pl.e1, Y = R * pl.e2;
    double ta = std::atan2(0 - oy, 0 - ox);
    double tb = std::atan2(pl.by - oy, pl.bx - ox);
    double tc = std::atan2(pl.cy - oy, pl.cx - ox);
    return detail::arc_from_angles(LocalKind::CircleArc, O, X, Y, ta, tb, tc);
}

// In-plane ellipse with b at one axis endpoint and the farther of {a, c} at
// an endpoint of the other axis, through the remaining point. The center
// lies on the circle with diameter b-e (the axes are orthogonal at the
// center); a 1-D root-find over the center angle enforces the third point.
inline LocalCurve fit_ellipse_arc(const Vec& a, const Vec& b, const Vec& c) {
    auto fl = flattenable(a, b, c);
    if (!fl.ok) fail(Err::NotFlattenable, "fit_ellipse_arc: chords antiparallel");
    detail::Planar pl = detail::to_plane(a, b, c);

    // work in plane coordinates (a at origin)
    double Px[3] = {0, pl.bx, pl.cx};
    double Py[3] = {0, pl.by, pl.cy};
    const int ib = 1;
    const int ie = (pl.cx - pl.bx) * (pl.cx - pl.bx) + (pl.cy - pl.by) * (pl.cy - pl.by) >
                           pl.bx * pl.bx + pl.by * pl.by
                       ? 2
                       : 0;
    const int iw = 2 - ie;  // remaining point: 0 or 2
    double mx = 0.5 * (Px[ib] + Px[ie]), my = 0.5 * (Py[ib] + Py[ie]);
    double rho = 0.5 * std::hypot(Px[ib] - Px[ie], Py[ib] - Py[ie]);
    double scale = rho;

    auto residual = [&](double phi, double& alpha, double& beta, double& ox, double& oy) {
        ox = mx + rho * std::cos(phi);
        oy = my + rho * std::sin(phi);
        double a1x = Px[ib] - ox, a1y = Py[ib] - oy;
        double a2x = Px[ie] - ox, a2y = Py[ie] - oy;
        alpha = std::hypot(a1x, a1y);
        beta = std::hypot(a2x, a2y);
        if (alpha <= 1e-9 * scale || beta <= 1e-9 * scale) return 1e30;
        double wx = Px[iw] - ox, wy = Py[iw] - oy;
        double u = (wx * a1x + wy * a1y) / (alpha * alpha);
        double v = (wx * a2x + wy * a2y) / (beta * beta);
        return u * u + v * v - 1.0;
    };

    // scan for sign changes, refine each root, keep the axes ratio nearest 1
    const int nscan = 720;
    LocalCurve best;
    double best_ratio = 1e30;
    double prev_phi = 0, prev_res = 1e30;
    for (int k = 0; k <= nscan; ++k) {
        double phi = 2 * kPi * double(k) / nscan;
        double al, be, ox, oy;
        double res = residual(phi, al, be, ox, oy);
        bool have_root = false;
        double root = 0;
        if (std::abs(res) <= 1e-10) {
            have_root = true;
            root = phi;
        } else if (prev_res < 1e29 && res < 1e29 && (res > 0) != (prev_res > 0)) {
            double lo = prev_phi, hi = phi;
            double flo = prev_res;
            for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = residual(mid, al, be, ox, oy);
                if (std::abs(fm) <= 1e-10) break;
                if ((fm > 0) == (flo > 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            root = 0.5 * (lo + hi);
            if (std::abs(residual(root, al, be, ox, oy)) <= 1e-10) have_root = true;
        }
        prev_phi = phi;
        prev_res = res;
        if (!have_root) continue;
        residual(root, al, be, ox, oy);
        double ratio = std::max(al, be) / std::min(al, be);
        if (ratio >= best_ratio) continue;
        // assemble the candidate; reject it if the arc cannot traverse
        // a -> b -> c monotonically
        double a1x = (Px[ib] - ox) / al, a1y = (Py[ib] - oy) / al;
        double a2x = (Px[ie] - ox) / be, a2y = (Py[ie] - oy) / be;
        auto angle_of = [&](int j) {
            double wx = Px[j] - ox, wy = Py[j] - oy;
            return std::atan2((wx * a2x + wy * a2y) / be, (wx * a1x + wy * a1y) / al);
        };
        Vec O = a + ox * pl.e1 + oy * pl.e2;
        Vec A1 = al * (a1x * pl.e1 + a1y * pl.e2);
        Vec A2 = be * (a2x * pl.e1 + a2y * pl.e2);
        try {
            LocalCurve f = detail::arc_from_angles(LocalKind::EllipseArc, O, A1, A2, angle_of(0),
                                                   angle_of(1), angle_of(2));
            best = f;
            best_ratio = ratio;
        } catch (const Error&) {
        }
    }
    if (best.dim == 0) fail(Err::NoSolution, "fit_ellipse_arc: no valid axis orientation");
    return best;
}

// Chord segment f(t) = a + t (b - a) on [0,1]. The knot sits at the start
// (p = q = 0) or, with knot_at_end, at the end (q = r = 1).
inline LocalCurve linear_local(const Vec& a, const Vec& b, bool knot_at_end = false) {
    if (dist(a, b) == 0.0) fail(Err::DegenerateChord, "linear_local: coincident points");
    LocalCurve f;
    f.kind = LocalKind::Linear;
    f.dim = a.dim();
    f.origin = a;
    f.ax = b - a;
    f.p = 0;
    f.q = knot_at_end ? 1 : 0;
    f.r = 1;
    return f;
}

// collinear interior triple: single segment with the knot at b
inline LocalCurve collinear_local(const Vec& a, const Vec& b, const Vec& c) {
    LocalCurve f;
    f.kind = LocalKind::Linear;
    f.dim = a.dim();
    f.origin = b;
    f.ax = normalize(c - a);
    f.p = dot(a - b, f.ax);
    f.q = 0;
    f.r = dot(c - b, f.ax);
    if (!(f.p < 0 && 0 < f.r)) fail(Err::NotFlattenable, "collinear points out of order");
    return f;
}

// corner local: piecewise-linear chain a -> b -> c, chord-length knots
inline LocalCurve polyline_local(const Vec& a, const Vec& b, const Vec& c) {
    LocalCurve f;
    f.kind = LocalKind::Polyline;
    f.dim = a.dim();
    f.pts = {a, b, c};
    f.knots = {-dist(a, b), 0.0, dist(b, c)};
    f.p = f.knots[0];
    f.q = 0;
    f.r = f.knots[2];
    return f;
}

// Convexity-preserving chord line at v3 (2-D): direction is the bisector of
// the adjacent unit chords; endpoints P, Q are the intersections with the
// analogous lines at v2 and v4 (chord-midpoint fallback when parallel).
inline LocalCurve convexity_local_line(const Vec& v1, const Vec& v2, const Vec& v3, const Vec& v4,
                                       const Vec& v5) {
    if (v3.dim() != 2) fail(Err::UnsupportedDimension, "convex chord locals are planar");
    VertexClass cls = classify_vertex(v1, v2, v3, v4, v5);
    if (cls.tag != VertexTag::LocalConvex) fail(Err::NotConvex, "vertex is not locally convex");

    auto bisector = [](const Vec& a, const Vec& b, const Vec& c) {
        return normalize(normalize(b - a) + normalize(c - b));
    };
    Vec d3 = bisector(v2, v3, v4);
    Vec d2 = bisector(v1, v2, v3);
    Vec d4 = bisector(v3, v4, v5);

    // s-parameter along the line through v3 of the intersection with the
    // line through o with direction d; midpoint fallback when parallel
    auto endpoint = [&](const Vec& o, const Vec& d, const Vec& chord_mid) {
        double denom = cross2(d3, d);
        if (std::abs(denom) <= 1e-12) return dot(chord_mid - v3, d3);
        return cross2(o - v3, d) / denom;
    };
    double sP = endpoint(v2, d2, 0.5 * (v2 + v3));
    double sQ = endpoint(v4, d4, 0.5 * (v3 + v4));
    if (!(sP < 0 && 0 < sQ)) fail(Err::NotConvex, "chord line endpoints out of order");

    LocalCurve f;
    f.kind = LocalKind::ConvexChord;
    f.dim = 2;
    f.origin = v3;
    f.ax = d3;
    f.p = sP;
    f.q = 0;
    f.r = sQ;
    return f;
}

enum class LocalMode { Parabola, Arc, Auto, Linear, ConvexChord };
enum class BoundaryRuleTag { Linear, Natural, Closed };

struct LocalOptions {
    LocalMode mode = LocalMode::Parabola;
    BoundaryRuleTag boundary = BoundaryRuleTag::Linear;
    bool corner_detect = false;
    double corner_eps = 0.1;
    double det_tol = 1e-9;
    std::vector<std::string>* log = nullptr;  // optional warning sink
};

namespace detail {

inline void log_msg(const LocalOptions& o, const std::string& m) {
    if (o.log) o.log->push_back(m);
}

inline LocalCurve interior_local(int i, const PointCloud& cloud, const LocalOptions& o) {
    const int N = cloud.span_count();
    const Vec& a = cloud.at_wrapped(i - 1);
    const Vec& b = cloud.at_wrapped(i);
    const Vec& c = cloud.at_wrapped(i + 1);

    bool window5 = cloud.closed ? int(cloud.points.size()) >= 5 : (i >= 2 && i + 2 <= N);
    if (o.corner_detect && window5) {
        VertexClass cls =
            classify_vertex(cloud.at_wrapped(i - 2), a, b, c, cloud.at_wrapped(i + 2),
                            o.corner_eps, o.det_tol);
        if (cls.tag == VertexTag::Corner) return polyline_local(a, b, c);
    }

    switch (o.mode) {
        case LocalMode::Linear:
            return polyline_local(a, b, c);
        case LocalMode::ConvexChord: {
            if (window5 && b.dim() == 2) {
                try {
                    return convexity_local_line(cloud.at_wrapped(i - 2), a, b, c,
                                                cloud.at_wrapped(i + 2));
                } catch (const Error& e) {
                    log_msg(o, "vertex " + std::to_string(i) +
                                   ": convex chord unavailable (" + e.what() +
                                   "), using piecewise linear");
                }
            }
            return polyline_local(a, b, c);
        }
        case LocalMode::Parabola:
            try {
                return fit_parabola(a, b, c);
            } catch (const Error& e) {
                if (e.code() != Err::Collinear) throw;
                return collinear_local(a, b, c);
            }
        case LocalMode::Arc:
        case LocalMode::Auto: {
            LocalCurve f;
            try {
                f = fit_circle_arc(a, b, c);
            } catch (const Error& e) {
                if (e.code() != Err::Collinear) throw;
                return collinear_local(a, b, c);
            }
            if (o.mode == LocalMode::Auto && (f.q - f.p > kPi / 2 || f.r - f.q > kPi / 2)) {
                try {
                    return fit_ellipse_arc(a, b, c);
                } catch (const Error&) {
                    log_msg(o, "vertex " + std::to_string(i) +
                                   ": ellipse fit failed, keeping circle arc");
                }
            }
            return f;
        }
    }
    return polyline_local(a, b, c);
}

}  // namespace detail

// Local curve for index i of the cloud (i in 0..N), honoring the boundary
// rule at the open ends.
inline LocalCurve local_for(int i, const PointCloud& cloud, const LocalOptions& o) {
    cloud.validate();
    const int N = cloud.span_count();
    if (i < 0 || i > N) fail(Err::BadParams, "local_for: index out of range");
    if (o.boundary == BoundaryRuleTag::Closed && !cloud.closed)
        fail(Err::BadParams, "closed boundary rule requires a closed cloud");

    if (cloud.closed) return detail::interior_local(i, cloud, o);
    if (i > 0 && i < N) return detail::interior_local(i, cloud, o);

    bool at_start = (i == 0);
    if (o.boundary == BoundaryRuleTag::Natural && int(cloud.points.size()) >= 3) {
        // reuse the neighbor's local curve when it passes the endpoint
        int j = at_start ? 1 : N - 1;
        LocalCurve g = detail::interior_local(j, cloud, o);
        const Vec& endpoint = cloud.points[at_start ? 0 : N];
        double end_param = at_start ? g.p : g.r;
        double scale = std::max(cloud.chord_scale(), 1e-300);
        if (dist(to_double(g.eval(end_param)), endpoint) <= 1e-8 * scale) {
            if (at_start) {
                g.r = g.q;
                g.q = g.p;
            } else {
                g.p = g.q;
                g.q = g.r;
            }
            return g;
        }
        detail::log_msg(o, std::string("natural boundary: neighbor local misses v_") +
                               (at_start ? "0" : std::to_string(N)) + ", using linear");
    }
    return at_start ? linear_local(cloud.points[0], cloud.points[1], false)
                    : linear_local(cloud.points[N - 1], cloud.points[N], true);
}

}  // namespace gcurve

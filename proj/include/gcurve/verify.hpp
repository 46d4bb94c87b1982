#pragma once

// Numerical certification of the glued curve: interpolation, regularity,
// span positive definiteness, knot smoothness via the pullback oracle, and
// curvature continuity.
//
// The knot oracle differentiates the pullback g_i = Gamma o S_i with
// one-sided finite-difference stencils. For third derivatives at h = 1e-4
// the rounding noise of double evaluation (~eps / h^3) swamps a 1e-6
// relative target, so the oracle evaluates positions in extended precision
// (__float128 when available).

#include "gcurve/glue.hpp"

namespace gcurve {

struct KnotCheck {
    int knot = 0;
    bool expected_corner = false;  // excluded from pass aggregation
    std::vector<double> mismatch;  // relative, per order 1..r
    double guard_ratio = 0;        // FD convergence check, expected near 2
    double curvature_left = 0, curvature_right = 0;
    double curvature_jump = 0;  // relative
};

struct VerifyThresholds {
    double interpolation = 1e-10;
    double speed_rel = 1e-8;        // min speed vs chord scale
    double knot_mismatch = 1e-6;    // relative, orders 1..r
    double curvature_jump = 1e-3;   // relative
    double guard_lo = 1.5, guard_hi = 8.0;
};

struct SmoothnessReport {
    int r = 1;
    double interpolation_err = 0;
    double min_speed = 0;
    double min_speed_at = 0;
    double span_pd_margin = 0;  // min over spans of <Gamma', chord> / |chord|^2
    std::vector<KnotCheck> knots;
    double max_knot_mismatch = 0;
    double max_curvature_jump = 0;
    double chord_scale = 0;
    VerifyThresholds thresholds;

    bool pass_interpolation = false;
    bool pass_regularity = false;
    bool pass_pd = false;
    bool pass_knots = false;
    bool pass_curvature = false;
    bool pass_guard = false;

    bool pass() const {
        return pass_interpolation && pass_regularity && pass_pd && pass_knots &&
               pass_curvature && pass_guard;
    }
};

namespace detail {

// one-sided derivatives 1..m of pos() at x0, order-4 stencils
template <class T, class F>
std::vector<VecT<T>> onesided_derivs(F pos, T x0, T h, int m, int dir) {
    const int npts = m + 4;
    std::vector<T> nodes(npts);
    for (int k = 0; k < npts; ++k) nodes[k] = x0 + T(dir) * T(k) * h;
    auto w = fd_weights<T>(x0, nodes, m);
    std::vector<VecT<T>> vals;
    vals.reserve(npts);
    for (int k = 0; k < npts; ++k) vals.push_back(pos(nodes[k]));
    std::vector<VecT<T>> out;
    for (int d = 1; d <= m; ++d) {
        VecT<T> acc(vals[0].dim());
        for (int k = 0; k < npts; ++k) acc += w[d][k] * vals[k];
        out.push_back(acc);
    }
    return out;
}

}  // namespace detail

// Full certificate for a glued curve over its data. Deterministic: fixed
// grids, no randomness.
inline SmoothnessReport verify(const GluedCurve& curve, const PointCloud& cloud, int r,
                               VerifyThresholds th = {},
                               const std::vector<int>* corner_knots = nullptr) {
    SmoothnessReport rep;
    rep.r = r;
    rep.thresholds = th;
    const int N = curve.spans();
    rep.chord_scale = std::max(cloud.chord_scale(), 1e-300);

    // (a) interpolation residuals at the knots
    for (int i = 0; i <= N; ++i) {
        const Vec& v = cloud.at_wrapped(i);
        double e = dist(to_double(curve.eval(double(i), 0, i == N ? -1 : 1)), v);
        rep.interpolation_err = std::max(rep.interpolation_err, e);
    }
    rep.pass_interpolation = rep.interpolation_err <= th.interpolation;

    // (b) min speed and (c) positive-definiteness margin on a dense grid
    const int grid = 2048;
    rep.min_speed = 1e300;
    rep.span_pd_margin = 1e300;
    for (int i = 0; i < N; ++i) {
        Vec chord = cloud.at_wrapped(i + 1) - cloud.at_wrapped(i);
        double c2 = norm2(chord);
        for (int k = 0; k <= grid; ++k) {
            double t = i + double(k) / grid;
            int side = (k == 0) ? 1 : (k == grid ? -1 : 0);
            Vec d1 = to_double(curve.eval(t, 1, side));
            double sp = norm(d1);
            if (sp < rep.min_speed) {
                rep.min_speed = sp;
                rep.min_speed_at = t;
            }
            // positive definiteness is an open-span property
            if (k > 0 && k < grid)
                rep.span_pd_margin = std::min(rep.span_pd_margin, dot(d1, chord) / c2);
        }
    }
    rep.pass_regularity = rep.min_speed > th.speed_rel * rep.chord_scale;
    rep.pass_pd = rep.span_pd_margin > 0;

    // (d) knot pullback derivative matching + FD guard, (e) curvature jumps
    bool guard_ok = true;
    int k_lo = curve.closed ? 0 : 1;
    int k_hi = curve.closed ? N - 1 : N - 1;
    for (int i = k_lo; i <= k_hi; ++i) {
        KnotCheck kc;
        kc.knot = i;
        if (corner_knots)
            for (int c : *corner_knots)
                if (c == i) kc.expected_corner = true;
        const Redistributor& S = curve.qr[i].S;
        if (S.left && S.right) {
            auto pull = [&](quad s) {
                // piecewise-linear S_i in extended precision
                quad t = quad(S.i) + (s - quad(S.q)) / (double(s) <= S.q ? quad(S.q - S.p)
                                                                         : quad(S.r - S.q));
                int side = double(s) <= S.q ? -1 : 1;
                return curve.eval(t, 0, side);
            };
            double half_l = S.q - S.p, half_r = S.r - S.q;
            quad h_l = quad(1e-4) * quad(half_l);
            quad h_r = quad(1e-4) * quad(half_r);
            auto dl = detail::onesided_derivs(pull, quad(S.q), h_l, r, -1);
            auto dr = detail::onesided_derivs(pull, quad(S.q), h_r, r, +1);
            double speed = std::max(norm(to_double(dl[0])), norm(to_double(dr[0])));
            double H = std::max(half_l, half_r);
            for (int d = 1; d <= r; ++d) {
                Vec L = to_double(dl[d - 1]), R = to_double(dr[d - 1]);
                double denom = std::max({norm(L), norm(R), speed / std::pow(H, d - 1)});
                kc.mismatch.push_back(norm(L - R) / std::max(denom, 1e-300));
                if (!kc.expected_corner)
                    rep.max_knot_mismatch = std::max(rep.max_knot_mismatch, kc.mismatch.back());
            }
            // guard: first-order forward difference error halves like h
            {
                VecT<quad> g0 = pull(quad(S.q));
                VecT<quad> ref = dr[0];
                auto fwd_err = [&](quad h) {
                    VecT<quad> d = (pull(quad(S.q) + h) - g0) * (quad(1) / h);
                    return norm(to_double(d - ref));
                };
                double e1 = fwd_err(h_r * quad(16));
                double e2 = fwd_err(h_r * quad(8));
                // on locally affine pieces both errors sit at rounding level
                // and the ratio is noise; treat that as converged
                if (e1 <= 1e-18 * std::max(1.0, speed))
                    kc.guard_ratio = 2.0;
                else
                    kc.guard_ratio = e1 / std::max(e2, 1e-300);
                if (!kc.expected_corner &&
                    (kc.guard_ratio < th.guard_lo || kc.guard_ratio > th.guard_hi))
                    guard_ok = false;
            }
        }
        // curvature from one-sided first/second derivatives of Gamma
        {
            Vec d1l = to_double(curve.eval(double(i), 1, -1));
            Vec d2l = to_double(curve.eval(double(i), 2, -1));
            Vec d1r = to_double(curve.eval(double(i), 1, +1));
            Vec d2r = to_double(curve.eval(double(i), 2, +1));
            kc.curvature_left = curvature(d1l, d2l);
            kc.curvature_right = curvature(d1r, d2r);
            kc.curvature_jump = std::abs(kc.curvature_left - kc.curvature_right) /
                                std::max({kc.curvature_left, kc.curvature_right, 1e-9});
            if (!kc.expected_corner)
                rep.max_curvature_jump = std::max(rep.max_curvature_jump, kc.curvature_jump);
        }
        rep.knots.push_back(kc);
    }
    rep.pass_knots = rep.max_knot_mismatch <= th.knot_mismatch;
    rep.pass_curvature = rep.max_curvature_jump <= th.curvature_jump;
    rep.pass_guard = guard_ok;
    return rep;
}

struct SamplePoint {
    double t = 0;
    Vec pos, d1, d2;
    double curvature = 0;
};

// Uniform per-span sampling with curvature; shared knots deduplicated, so an
// open curve yields N*(per_span - 1) + 1 points.
inline std::vector<SamplePoint> sample(const GluedCurve& curve, int per_span) {
    if (per_span < 2) fail(Err::BadParams, "sample: need at least 2 samples per span");
    const int N = curve.spans();
    std::vector<SamplePoint> out;
    for (int i = 0; i < N; ++i) {
        int k0 = (i == 0) ? 0 : 1;
        for (int k = k0; k < per_span; ++k) {
            SamplePoint s;
            s.t = i + double(k) / (per_span - 1);
            int side = (k == 0) ? 1 : (k == per_span - 1 ? -1 : 0);
            s.pos = to_double(curve.eval(s.t, 0, side));
            s.d1 = to_double(curve.eval(s.t, 1, side));
            s.d2 = to_double(curve.eval(s.t, 2, side));
            double sp = norm(s.d1);
            s.curvature = sp > 0 ? curvature(s.d1, s.d2) : 0.0;
            out.push_back(s);
        }
    }
    return out;
}

}  // namespace gcurve

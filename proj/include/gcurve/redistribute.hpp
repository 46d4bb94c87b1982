#pragma once

// Piecewise-linear redistribution S_i: (p,q,r) -> (i-1, i, i+1) and the
// resulting quasi-regular curves, with numeric certification of
// contractedness and positive definiteness.

#include "gcurve/local_curve.hpp"

namespace gcurve {

// Two affine pieces; boundary curves carry only one of them.
struct Redistributor {
    int i = 0;
    double p = 0, q = 0, r = 1;
    bool left = true, right = true;  // which half-spans exist

    double S(double s) const {
        if (s <= q) return left ? i + (s - q) / (q - p) : i;
        return right ? i + (s - q) / (r - q) : i;
    }
    // side < 0 resolves t == i to the left piece
    double Sinv(double t, int side = 0) const {
        if (t < i || (t == i && side < 0 && left)) return q + (t - i) * (q - p);
        return q + (t - i) * (r - q);
    }
    // ds/dt of the active piece
    double slope(double t, int side = 0) const {
        if (t < i || (t == i && side < 0 && left)) return q - p;
        return r - q;
    }
};

inline Redistributor make_redistributor(const LocalCurve& f, int i) {
    Redistributor S;
    S.i = i;
    S.p = f.p;
    S.q = f.q;
    S.r = f.r;
    S.left = f.has_left();
    S.right = f.has_right();
    if (!S.left && !S.right) fail(Err::InvalidDomain, "degenerate local domain");
    return S;
}

// F_i = f_i o S_i^{-1} on [i-1, i+1], with the true data points recorded for
// certification (the local curve need not pass its neighbors).
struct QRCurve {
    LocalCurve local;
    Redistributor S;
    int index = 0;
    Vec vm, v0, vp;  // v_{i-1}, v_i, v_{i+1}; vm/vp empty on one-sided curves

    bool has_left() const { return S.left; }
    bool has_right() const { return S.right; }

    // k-th derivative at t in [i-1, i+1]; chain rule with the constant slope
    // of the active affine piece
    template <class T>
    VecT<T> eval(T t, int order = 0, int side = 0) const {
        double td = double(t);
        bool use_left = td < S.i || (td == S.i && side < 0 && S.left);
        if (use_left && !S.left) fail(Err::OutOfDomain, "no left half-span");
        if (!use_left && !S.right && td > S.i) fail(Err::OutOfDomain, "no right half-span");
        T sl = T(use_left ? S.q - S.p : S.r - S.q);
        T s = T(S.q) + (t - T(S.i)) * sl;
        VecT<T> d = local.eval(s, order, use_left ? -1 : 1);
        T scale = T(1);
        for (int k = 0; k < order; ++k) scale *= sl;
        return d * scale;
    }
};

inline QRCurve make_qr(const LocalCurve& local, int i, const Vec& vm, const Vec& v0,
                       const Vec& vp) {
    QRCurve F;
    F.local = local;
    F.S = make_redistributor(local, i);
    F.index = i;
    F.vm = vm;
    F.v0 = v0;
    F.vp = vp;
    return F;
}

enum class CertProperty { Contracted, PositiveDefinite };

struct CertReport {
    CertProperty property = CertProperty::Contracted;
    bool pass = false;
    bool equality = false;  // margin identically zero (linear locals)
    double worst_margin = 0;
    double worst_location = 0;
};

// Contracted: <F(t) - L(t), v_i - v_{i -/+ 1}> >= 0 on each open half-span,
// where L is the chord polyline through the data points.
inline CertReport certify_contracted(const QRCurve& F, int nsamples = 512) {
    CertReport rep;
    rep.property = CertProperty::Contracted;
    double worst = 1e300, worst_t = F.index, largest = 0;
    auto scan = [&](double t0, double t1, const Vec& other) {
        Vec dir = F.v0 - other;
        double slack_scale = norm2(dir);
        for (int k = 1; k < nsamples; ++k) {
            double t = t0 + (t1 - t0) * double(k) / nsamples;
            Vec L = other + (F.v0 - other) * ((t - t0) / (t1 - t0));
            double m = dot(to_double(F.eval(t)) - L, dir);
            largest = std::max(largest, std::abs(m));
            if (m < worst) {
                worst = m;
                worst_t = t;
            }
        }
        return slack_scale;
    };
    double slack_scale = 0;
    if (F.has_left()) slack_scale = std::max(slack_scale, scan(F.index - 1, F.index, F.vm));
    if (F.has_right()) slack_scale = std::max(slack_scale, scan(F.index + 1, F.index, F.vp));
    rep.worst_margin = worst;
    rep.worst_location = worst_t;
    double slack = 1e-12 * std::max(slack_scale, 1e-300);
    rep.pass = worst >= -slack;
    rep.equality = rep.pass && largest <= slack;
    return rep;
}

// Positive definite: <F'(t), F(beta) - F(alpha)> > 0 on each open half-span
// (alpha, beta), taken against the true data points so that a reversed
// parametrization is detected.
inline CertReport certify_positive_definite(const QRCurve& F, int nsamples = 512) {
    CertReport rep;
    rep.property = CertProperty::PositiveDefinite;
    double worst = 1e300, worst_t = F.index;
    auto scan = [&](double t0, double t1, const Vec& from, const Vec& to) {
        Vec dir = to - from;
        for (int k = 1; k < nsamples; ++k) {
            double t = t0 + (t1 - t0) * double(k) / nsamples;
            double m = dot(to_double(F.eval(t, 1)), dir);
            if (m < worst) {
                worst = m;
                worst_t = t;
            }
        }
        return norm(dir);
    };
    double scale = 0;
    if (F.has_left()) scale = std::max(scale, scan(F.index - 1, F.index, F.vm, F.v0));
    if (F.has_right()) scale = std::max(scale, scan(F.index, F.index + 1, F.v0, F.vp));
    rep.worst_margin = worst;
    rep.worst_location = worst_t;
    double slack = 1e-12 * std::max(scale * scale, 1e-300);
    rep.pass = worst > -slack;
    rep.equality = false;
    return rep;
}

}  // namespace gcurve

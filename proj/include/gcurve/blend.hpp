#pragma once

// r-blending function families: polynomial (Bernstein sum), trigonometric,
// and the exp-based infinitely smooth pair, plus an axiom validator.

#include <climits>
#include <functional>

#include "gcurve/math.hpp"

namespace gcurve {

enum class BlendFamily { Poly, Trig, SmoothExp, Custom };

constexpr int kInfOrder = INT_MAX;  // sentinel for the C^inf family

struct Blend {
    BlendFamily family = BlendFamily::Poly;
    int order = 1;                // r; kInfOrder for SmoothExp
    std::vector<double> coef;     // monomial coefficients of B_1 (Poly)
    std::function<double(double)> custom;  // B_1 value for Custom
    bool analytic_derivatives = true;

    template <class T>
    T b1(T t, int k = 0) const {
        switch (family) {
            case BlendFamily::Poly: {
                // k-th derivative of sum coef[m] t^m via Horner
                T acc = T(0);
                for (int m = int(coef.size()) - 1; m >= k; --m) {
                    double fall = 1.0;
                    for (int j = 0; j < k; ++j) fall *= double(m - j);
                    acc = acc * t + T(coef[m] * fall);
                }
                return acc;
            }
            case BlendFamily::Trig: {
                // B_1 = (1 + cos(pi t)) / 2, so the k-th derivative is
                // (pi^k / 2) cos(pi t + k pi/2)
                T arg = T(kPi) * t + T(k) * T(kPi) / T(2);
                T scale = T(0.5);
                for (int j = 0; j < k; ++j) scale *= T(kPi);
                T val = scale * t_cos(arg);
                if (k == 0) val += T(0.5);
                return val;
            }
            case BlendFamily::SmoothExp: {
                if (k == 0) return smooth_b1(t);
                // every derivative vanishes identically at the flat ends
                if (t <= T(0) || t >= T(1)) return T(0);
                return fd_deriv([this](T x) { return smooth_b1(x); }, t, k);
            }
            case BlendFamily::Custom: {
                if (k == 0) return T(custom(double(t)));
                return fd_deriv([this](T x) { return T(custom(double(x))); }, t, k);
            }
        }
        return T(0);
    }

    template <class T>
    T b2(T t, int k = 0) const {
        T v = b1(t, k);
        return k == 0 ? T(1) - v : -v;
    }

private:
    template <class T>
    static T smooth_b1(T t) {
        if (t <= T(0)) return T(1);
        if (t >= T(1)) return T(0);
        T fa = t_exp(T(-1) / t);
        T fb = t_exp(T(-1) / (T(1) - t));
        return fb / (fa + fb);
    }

    // central (clipped to [0,1]) finite-difference derivative, order-4 stencil
    template <class T, class F>
    static T fd_deriv(F f, T t, int k) {
        const int npts = k + 4;
        const T h = T(1e-2);
        T lo = t - T(npts - 1) / T(2) * h;
        if (lo < T(0)) lo = T(0);
        if (lo + T(npts - 1) * h > T(1)) lo = T(1) - T(npts - 1) * h;
        std::vector<T> nodes(npts);
        for (int i = 0; i < npts; ++i) nodes[i] = lo + T(i) * h;
        auto w = fd_weights<T>(t, nodes, k);
        T acc = T(0);
        for (int i = 0; i < npts; ++i) acc += w[k][i] * f(nodes[i]);
        return acc;
    }
};

// B_1(x) = sum_{i=0..r} b_{i,2r+1}(x), expanded exactly into monomials with
// integer binomials: b_{i,n} = C(n,i) sum_j C(n-i,j) (-1)^j x^{i+j}.
inline Blend make_polynomial_blend(int r) {
    if (r < 0) fail(Err::BadParams, "polynomial blend needs r >= 0");
    if (r > 14) fail(Err::BadParams, "polynomial blend order too large for exact coefficients");
    const int n = 2 * r + 1;
    Blend b;
    b.family = BlendFamily::Poly;
    b.order = r;
    b.coef.assign(n + 1, 0.0);
    for (int i = 0; i <= r; ++i) {
        std::int64_t cni = binomial_i(n, i);
        for (int j = 0; j <= n - i; ++j) {
            std::int64_t term = cni * binomial_i(n - i, j);
            b.coef[i + j] += (j % 2 == 0) ? double(term) : -double(term);
        }
    }
    return b;
}

inline Blend make_trig_blend() {
    Blend b;
    b.family = BlendFamily::Trig;
    b.order = 1;
    return b;
}

inline Blend make_smooth_blend() {
    Blend b;
    b.family = BlendFamily::SmoothExp;
    b.order = kInfOrder;
    b.analytic_derivatives = false;
    return b;
}

inline Blend make_custom_blend(std::function<double(double)> b1_value, int order) {
    Blend b;
    b.family = BlendFamily::Custom;
    b.order = order;
    b.custom = std::move(b1_value);
    b.analytic_derivatives = false;
    return b;
}

struct BlendReport {
    bool pass = true;
    std::vector<std::string> failures;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            failures.push_back(what);
        }
    }
};

// Checks the r-blending axioms on a 1001-point grid: range, partition of
// unity, monotonicity, endpoint values, and endpoint derivatives vanishing
// up to order r (analytic where available, else finite differences).
inline BlendReport validate_blend(const Blend& b, int r) {
    BlendReport rep;
    const int grid = 1001;
    // rounding slack for the range/monotonicity checks: summed Horner
    // cancellation near the endpoints grows with the coefficient magnitudes
    double csum = 1.0;
    for (double c : b.coef) csum += std::abs(c);
    const double rtol = 1e-15 * csum;
    double prev = 2.0;
    for (int i = 0; i < grid; ++i) {
        double t = double(i) / (grid - 1);
        double v1 = b.b1(t);
        double v2 = b.b2(t);
        if (std::abs(v1 + v2 - 1.0) > 1e-12) {
            rep.check(false, "partition of unity violated at t=" + std::to_string(t));
            break;
        }
        if (i > 0 && i < grid - 1 && (v1 < -rtol || v1 > 1.0 + rtol)) {
            rep.check(false, "B1 out of (0,1) at t=" + std::to_string(t));
            break;
        }
        if (prev < 1.5 && v1 > prev + rtol + 1e-12) {
            rep.check(false, "B1 not nonincreasing at t=" + std::to_string(t));
            break;
        }
        prev = v1;
    }
    rep.check(std::abs(b.b1(0.0) - 1.0) <= 1e-12, "B1(0) != 1");
    rep.check(std::abs(b.b1(1.0)) <= 1e-12, "B1(1) != 0");
    double dtol = b.analytic_derivatives ? 1e-9 : 1e-6;
    int kmax = (r == kInfOrder) ? 4 : r;  // FD checks up to order 4 for C^inf
    for (int k = 1; k <= kmax; ++k) {
        rep.check(std::abs(b.b1(0.0, k)) <= dtol,
                  "B1^(" + std::to_string(k) + ")(0) != 0");
        rep.check(std::abs(b.b1(1.0, k)) <= dtol,
                  "B1^(" + std::to_string(k) + ")(1) != 0");
    }
    return rep;
}

}  // namespace gcurve

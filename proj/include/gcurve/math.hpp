#pragma once

// Scalar-generic math helpers. Curve evaluation is templated on the scalar
// type so the verifier can run its finite-difference oracle in extended
// precision; everything here must work for double, long double, and (when
// available) __float128.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#if defined(GCURVE_HAVE_QUADMATH)
#include <quadmath.h>
#endif

namespace gcurve {

enum class Err {
    ZeroSpeed,
    DegenerateChord,
    Collinear,
    NotFlattenable,
    NotConvex,
    InvalidDomain,
    SpanMismatch,
    EndpointMismatch,
    OffSphereData,
    AntipodalChord,
    OutOfDomain,
    ParseError,
    DimensionMismatch,
    DuplicateConsecutivePoints,
    UnsupportedDimension,
    BadParams,
    NoSolution,
    InvalidCloud,
};

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

template <class T> inline T t_cos(T x) { return std::cos(x); }
template <class T> inline T t_sin(T x) { return std::sin(x); }
template <class T> inline T t_exp(T x) { return std::exp(x); }
template <class T> inline T t_sqrt(T x) { return std::sqrt(x); }
template <class T> inline T t_abs(T x) { return x < T(0) ? -x : x; }
template <class T> inline T t_atan2(T y, T x) { return std::atan2(y, x); }

#if defined(GCURVE_HAVE_QUADMATH)
template <> inline __float128 t_cos(__float128 x) { return cosq(x); }
template <> inline __float128 t_sin(__float128 x) { return sinq(x); }
template <> inline __float128 t_exp(__float128 x) { return expq(x); }
template <> inline __float128 t_sqrt(__float128 x) { return sqrtq(x); }
template <> inline __float128 t_atan2(__float128 y, __float128 x) { return atan2q(y, x); }
using quad = __float128;
#else
using quad = long double;
#endif

constexpr double kPi = 3.14159265358979323846264338327950288;

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double acc = 1.0;
    for (int j = 1; j <= k; ++j) acc = acc * double(n - k + j) / double(j);
    return acc;
}

inline std::int64_t binomial_i(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t acc = 1;
    for (int j = 1; j <= k; ++j) acc = acc * (n - k + j) / j;
    return acc;
}

// Fornberg's algorithm: weights of nodes x[] for derivatives 0..m at x0.
// Result w[d][k] is the weight of node k for the d-th derivative.
template <class T>
std::vector<std::vector<T>> fd_weights(T x0, const std::vector<T>& x, int m) {
    const int n = int(x.size());
    std::vector<std::vector<std::vector<T>>> c(
        n, std::vector<std::vector<T>>(n, std::vector<T>(m + 1, T(0))));
    c[0][0][0] = T(1);
    T c1 = T(1);
    for (int i = 1; i < n; ++i) {
        T c2 = T(1);
        for (int j = 0; j < i; ++j) {
            T c3 = x[i] - x[j];
            c2 = c2 * c3;
            for (int k = 0; k <= std::min(i, m); ++k) {
                T prev = (k > 0) ? c[i - 1][j][k - 1] : T(0);
                c[i][j][k] = ((x[i] - x0) * c[i - 1][j][k] - T(k) * prev) / c3;
            }
        }
        for (int k = 0; k <= std::min(i, m); ++k) {
            T prev = (k > 0) ? c[i - 1][i - 1][k - 1] : T(0);
            c[i][i][k] = c1 / c2 * (T(k) * prev - (x[i - 1] - x0) * c[i - 1][i - 1][k]);
        }
        c1 = c2;
    }
    std::vector<std::vector<T>> w(m + 1, std::vector<T>(n, T(0)));
    for (int d = 0; d <= m; ++d)
        for (int k = 0; k < n; ++k) w[d][k] = c[n - 1][k][d];
    return w;
}

// Bisection on a bracketing interval; f(lo) and f(hi) must have opposite signs.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double xtol, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) fail(Err::NoSolution, "bisect: endpoints do not bracket a root");
    for (int it = 0; it < max_iter && (hi - lo) > xtol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Jacobi eigensolver for small symmetric matrices (row-major n*n).
// Returns eigenvalues descending; V columns are the matching eigenvectors.
inline void jacobi_eigen_sym(int n, std::vector<double> a, std::vector<double>& eval,
                             std::vector<double>& evec) {
    std::vector<double> v(n * n, 0.0);
    for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a[i * n + i] > a[j * n + j]; });
    eval.assign(n, 0.0);
    evec.assign(n * n, 0.0);
    for (int j = 0; j < n; ++j) {
        eval[j] = a[order[j] * n + order[j]];
        for (int i = 0; i < n; ++i) evec[i * n + j] = v[i * n + order[j]];
    }
}

}  // namespace gcurve

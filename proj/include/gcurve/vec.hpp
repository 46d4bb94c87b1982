#pragma once

// Dimension-generic points and vectors. Dimension is a runtime property so
// the same kernel serves planar, spatial, and higher-dimensional data.

#include <cmath>
#include <initializer_list>
#include <vector>

#include "gcurve/math.hpp"

namespace gcurve {

template <class T>
struct VecT {
    std::vector<T> c;

    VecT() = default;
    explicit VecT(int dim) : c(dim, T(0)) {}
    VecT(std::initializer_list<T> init) : c(init) {}
    explicit VecT(std::vector<T> coords) : c(std::move(coords)) {}

    int dim() const { return int(c.size()); }
    T& operator[](int i) { return c[i]; }
    const T& operator[](int i) const { return c[i]; }

    VecT& operator+=(const VecT& o) {
        for (int i = 0; i < dim(); ++i) c[i] += o.c[i];
        return *this;
    }
    VecT& operator-=(const VecT& o) {
        for (int i = 0; i < dim(); ++i) c[i] -= o.c[i];
        return *this;
    }
    VecT& operator*=(T s) {
        for (auto& x : c) x *= s;
        return *this;
    }

    friend VecT operator+(VecT a, const VecT& b) { return a += b; }
    friend VecT operator-(VecT a, const VecT& b) { return a -= b; }
    friend VecT operator*(VecT a, T s) { return a *= s; }
    friend VecT operator*(T s, VecT a) { return a *= s; }
    friend VecT operator-(VecT a) { return a *= T(-1); }

    friend T dot(const VecT& a, const VecT& b) {
        T s = T(0);
        for (int i = 0; i < a.dim(); ++i) s += a.c[i] * b.c[i];
        return s;
    }
    friend T norm2(const VecT& a) { return dot(a, a); }
    friend T norm(const VecT& a) { return t_sqrt(norm2(a)); }
};

using Vec = VecT<double>;

inline Vec normalize(const Vec& v) {
    double n = norm(v);
    if (n <= 0.0) fail(Err::ZeroSpeed, "normalize: zero vector");
    return v * (1.0 / n);
}

inline double dist(const Vec& a, const Vec& b) { return norm(a - b); }

// z-component of the 2-D cross product
inline double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

inline Vec cross3(const Vec& a, const Vec& b) {
    return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
VecT<T> to_scalar(const Vec& v) {
    VecT<T> out(v.dim());
    for (int i = 0; i < v.dim(); ++i) out[i] = T(v[i]);
    return out;
}

template <class T>
Vec to_double(const VecT<T>& v) {
    Vec out(v.dim());
    for (int i = 0; i < v.dim(); ++i) out[i] = double(v[i]);
    return out;
}

// Ordered data points with an open/closed flag. For closed clouds the stored
// points are distinct and v_N = v_0 implicitly.
struct PointCloud {
    std::vector<Vec> points;
    bool closed = false;

    int dim() const { return points.empty() ? 0 : points.front().dim(); }
    // number of spans of the glued curve domain [0, N]
    int span_count() const { return closed ? int(points.size()) : int(points.size()) - 1; }

    const Vec& at_wrapped(int i) const {
        int n = int(points.size());
        int k = ((i % n) + n) % n;
        return points[k];
    }

    void validate() const {
        if (closed && points.size() < 3) fail(Err::InvalidCloud, "closed cloud needs >= 3 points");
        if (!closed && points.size() < 2) fail(Err::InvalidCloud, "open cloud needs >= 2 points");
        const int d = dim();
        if (d < 2) fail(Err::InvalidCloud, "points must have dimension >= 2");
        for (const auto& p : points) {
            if (p.dim() != d) fail(Err::DimensionMismatch, "inconsistent point dimensions");
            for (double x : p.c)
                if (!std::isfinite(x)) fail(Err::InvalidCloud, "non-finite coordinate");
        }
        const int n = int(points.size());
        const int last = closed ? n : n - 1;
        for (int i = 0; i < last; ++i)
            if (dist(points[i], at_wrapped(i + 1)) == 0.0)
                fail(Err::DuplicateConsecutivePoints, "consecutive points coincide");
    }

    double chord_scale() const {
        double s = 0.0;
        const int last = closed ? int(points.size()) : int(points.size()) - 1;
        for (int i = 0; i < last; ++i) s = std::max(s, dist(points[i], at_wrapped(i + 1)));
        return s;
    }
};

}  // namespace gcurve

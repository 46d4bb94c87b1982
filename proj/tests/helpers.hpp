#pragma once

// Shared test utilities: seeded random data generators.

#include <random>

#include "gcurve/gcurve.hpp"

namespace testutil {

using gcurve::PointCloud;
using gcurve::Vec;

// Direction-persistent random walk: every turn is between ~3 and ~30
// degrees, so consecutive chords are never antiparallel (flattenable) and
// never exactly collinear.
inline PointCloud random_flattenable_cloud(int n_points, int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> turn(0.05, 0.5);
    std::uniform_real_distribution<double> step(0.6, 1.4);

    Vec pos(dim);
    Vec dir(dim);
    for (int k = 0; k < dim; ++k) dir[k] = gauss(rng);
    dir = normalize(dir);

    PointCloud cloud;
    cloud.points.push_back(pos);
    for (int i = 1; i < n_points; ++i) {
        // random unit vector orthogonal to dir
        Vec u(dim);
        for (int k = 0; k < dim; ++k) u[k] = gauss(rng);
        u -= dot(u, dir) * dir;
        if (norm(u) < 1e-9) {
            u = Vec(dim);
            u[(i + 1) % dim] = 1.0;
            u -= dot(u, dir) * dir;
        }
        u = normalize(u);
        double th = turn(rng);
        dir = std::cos(th) * dir + std::sin(th) * u;
        pos += step(rng) * dir;
        cloud.points.push_back(pos);
    }
    return cloud;
}

// single flattenable, non-collinear triple
inline std::vector<Vec> random_triple(int dim, std::uint64_t seed) {
    PointCloud c = random_flattenable_cloud(3, dim, seed);
    return c.points;
}

}  // namespace testutil

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace gcurve;

namespace {

// brute-force quadrature of the regularized incomplete beta I_t(r+1, r+1),
// i.e. B_2 of the polynomial family (composite Simpson)
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

}  // namespace

TEST_CASE("polynomial blend coefficients match the stated examples") {
    Blend b0 = make_polynomial_blend(0);
    REQUIRE(b0.coef.size() == 2);
    CHECK(b0.coef[0] == 1.0);
    CHECK(b0.coef[1] == -1.0);

    Blend b1 = make_polynomial_blend(1);
    REQUIRE(b1.coef.size() == 4);
    CHECK(b1.coef[0] == 1.0);  // B1 = 2t^3 - 3t^2 + 1, exactly
    CHECK(b1.coef[1] == 0.0);
    CHECK(b1.coef[2] == -3.0);
    CHECK(b1.coef[3] == 2.0);
}

TEST_CASE("polynomial blend midpoint symmetry") {
    for (int r = 0; r <= 6; ++r)
        CHECK(make_polynomial_blend(r).b1(0.5) == Catch::Approx(0.5).margin(1e-14));
}

TEST_CASE("validate_blend on the polynomial family") {
    for (int r = 0; r <= 5; ++r) {
        auto rep = validate_blend(make_polynomial_blend(r), r);
        INFO("r=" << r);
        CHECK(rep.pass);
    }
}

TEST_CASE("partition of unity holds to 1e-14 in floating point") {
    Blend b = make_polynomial_blend(3);
    for (int k = 0; k <= 1000; ++k) {
        double t = k / 1000.0;
        CHECK(std::abs(b.b1(t) + b.b2(t) - 1.0) <= 1e-14);
    }
}

TEST_CASE("B2 equals the regularized incomplete beta function") {
    for (int r : {0, 1, 2, 4}) {
        Blend b = make_polynomial_blend(r);
        for (int k = 1; k <= 9; ++k) {
            double t = k / 10.0;
            CHECK(b.b2(t) == Catch::Approx(beta_quadrature(r, t)).margin(1e-10));
        }
    }
}

TEST_CASE("derivative identity B1' = -B2'") {
    for (const Blend& b : {make_polynomial_blend(2), make_trig_blend()}) {
        for (int k = 0; k <= 20; ++k) {
            double t = k / 20.0;
            CHECK(std::abs(b.b1(t, 1) + b.b2(t, 1)) <= 1e-12);
        }
    }
}

TEST_CASE("analytic derivatives agree with finite differences") {
    Blend b = make_polynomial_blend(2);
    const double h = 1e-6;
    for (double t : {0.2, 0.5, 0.8}) {
        double fd = (b.b1(t + h) - b.b1(t - h)) / (2 * h);
        CHECK(b.b1(t, 1) == Catch::Approx(fd).margin(1e-7));
    }
}

TEST_CASE("trig blend endpoints and order") {
    Blend b = make_trig_blend();
    CHECK(b.b1(0.0) == Catch::Approx(1.0));
    CHECK(b.b1(1.0) == Catch::Approx(0.0).margin(1e-15));
    CHECK(b.b1(0.0, 1) == Catch::Approx(0.0).margin(1e-12));
    CHECK(b.b1(1.0, 1) == Catch::Approx(0.0).margin(1e-12));
    CHECK(validate_blend(b, 1).pass);
    // fails at order 2: B1''(0) = -pi^2/2
    CHECK(b.b1(0.0, 2) == Catch::Approx(-kPi * kPi / 2));
    CHECK_FALSE(validate_blend(b, 2).pass);
}

TEST_CASE("degree-1 pair fails order-1 validation") {
    Blend lin = make_custom_blend([](double t) { return 1.0 - t; }, 1);
    auto rep = validate_blend(lin, 1);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("smooth blend behaves as an infinite-order pair") {
    Blend b = make_smooth_blend();
    CHECK(b.order == kInfOrder);
    CHECK(b.b1(0.0) == 1.0);
    CHECK(b.b1(1.0) == 0.0);
    CHECK(b.b1(0.5) == Catch::Approx(0.5));
    for (int k = 1; k <= 4; ++k) {
        CHECK(std::abs(b.b1(0.0, k)) <= 1e-6);
        CHECK(std::abs(b.b1(1.0, k)) <= 1e-6);
    }
    CHECK(validate_blend(b, kInfOrder).pass);
}

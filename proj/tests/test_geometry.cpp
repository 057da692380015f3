#include "doctest.h"

#include "lgrowth/error.hpp"
#include "lgrowth/geometry.hpp"

#include <cmath>

using namespace lgrowth;

TEST_CASE("curvature") {
    const int M = 128;
    const double r = 1.8;
    const CircleSamples k = curvature(MapState::from_coeffs({r}, 8), M);
    for (int j = 0; j < M; ++j) {
        CHECK(std::abs(k[j].real() - 1.0 / r) < 1e-14);
    }

    // Circle alpha = sqrt(2t): int kappa^2 = pi / t.
    const double t = 0.7;
    const CircleSamples kc = curvature(MapState::from_coeffs({std::sqrt(2 * t)}, 8), M);
    double acc = 0.0;
    for (int j = 0; j < M; ++j) {
        acc += std::norm(kc[j]);
    }
    CHECK(std::abs(acc * kTwoPi / M - kPi / t) < 1e-12);

    // Parametric curvature by central differences at theta = 0.
    const MapState f = MapState::from_coeffs({1.0, 0.3}, 8);
    const double h = 1e-3;
    auto z = [&](double th) { return evaluate(f.series(), std::polar(1.0, th)); };
    const cplx d1 = (z(h) - z(-h)) / (2 * h);
    const cplx d2 = (z(h) - 2.0 * z(0) + z(-h)) / (h * h);
    const double fd = (d1.real() * d2.imag() - d1.imag() * d2.real()) / std::pow(std::norm(d1), 1.5);
    CHECK(std::abs(curvature(f, M)[0].real() - fd) < 1e-6);

    CHECK_THROWS_AS(curvature(MapState::from_coeffs({1.0, 0.5}, 8), M), Error);
}

TEST_CASE("area") {
    CHECK(std::abs(area(MapState::from_coeffs({2.0}, 4)) - 4 * kPi) < 1e-14);
    const double b = 0.3;
    const MapState f = MapState::from_coeffs({1.0, b}, 8);
    CHECK(std::abs(area(f) - kPi * (1 + 2 * b * b)) < 1e-14);
    CHECK(std::abs(boundary_area(f, 64) - area(f)) < 1e-13);
    const MapState g = MapState::from_coeffs({1.0, cplx(0.1, 0.2), cplx(-0.05, 0.01)}, 8);
    CHECK(std::abs(boundary_area(g, 64) - area(g)) < 1e-13);
}

TEST_CASE("Richardson moments") {
    const int M = 128;
    for (const cplx m : richardson_moments(MapState::from_coeffs({1.5}, 8), 3, M)) {
        CHECK(std::abs(m) < 1e-14);
    }

    // Brute-force area integral of z over the image of z + b z^2, pulled back
    // to the disk with Jacobian |f'|^2 (polar midpoint rule).
    const double b = 0.3;
    const MapState f = MapState::from_coeffs({1.0, b}, 8);
    const auto moments = richardson_moments(f, 2, M);
    CHECK(std::abs(moments[0] - b) < 1e-14);
    const PowerSeries fp = derivative(f.series());
    const int nr = 400;
    const int nt = 256;
    cplx acc{};
    for (int i = 0; i < nr; ++i) {
        const double r = (i + 0.5) / nr;
        for (int j = 0; j < nt; ++j) {
            const cplx z = std::polar(r, kTwoPi * j / nt);
            acc += evaluate(f.series(), z) * std::norm(evaluate(fp, z)) * r;
        }
    }
    acc *= (1.0 / nr) * (kTwoPi / nt) / kPi;
    CHECK(std::abs(acc - moments[0]) < 1e-5);
}

TEST_CASE("complex velocity") {
    const double r = 1.4;
    const double th = 0.9;
    const cplx w = std::polar(1.0, th);
    CHECK(std::abs(complex_velocity(MapState::from_coeffs({r}, 4), w) + std::polar(1.0, -th) / r) < 1e-15);
    const MapState f = MapState::from_coeffs({1.0, 0.3}, 4);
    CHECK(std::abs(complex_velocity(f, 0.5) - (-1.0 / (0.5 * 1.3))) < 1e-15);
    const cplx z(0.2, -0.4);
    CHECK(std::abs(std::abs(complex_velocity(f, z) * evaluate(derivative(f.series()), z) * z) - 1.0) < 1e-15);
    CHECK_THROWS_AS(complex_velocity(f, 0.0), Error);

    // W(w) = -log(f^{-1}(w)) near w0 = f(0.5): invert f by Newton and difference.
    auto finv = [&](cplx target) {
        cplx zz = 0.5;
        for (int i = 0; i < 50; ++i) {
            zz -= (evaluate(f.series(), zz) - target) / evaluate(derivative(f.series()), zz);
        }
        return zz;
    };
    const cplx w0 = evaluate(f.series(), 0.5);
    const double h = 1e-5;
    const cplx dW = (-std::log(finv(w0 + h)) + std::log(finv(w0 - h))) / (2 * h);
    CHECK(std::abs(dW - complex_velocity(f, 0.5)) < 1e-8);
}

TEST_CASE("cusp indicator") {
    const int M = 64;
    CHECK(std::abs(cusp_indicator(MapState::from_coeffs({1.0}, 4), M) - 1.0) < 1e-15);
    CHECK(cusp_indicator(MapState::from_coeffs({1.0, 0.5}, 4), M) < 1e-15);
    CHECK(std::abs(cusp_indicator(MapState::from_coeffs({1.0, 0.3}, 4), M) - 0.4) < 1e-15);
}

TEST_CASE("winding numbers and self-intersection") {
    const int M = 128;
    const auto curve = boundary_curve(MapState::from_coeffs({1.0, 0.3}, 4), M);
    CHECK(winding_number(curve, 0.0) == 1);
    CHECK(winding_number(curve, 3.0) == 0);
    CHECK_FALSE(boundary_self_intersects(MapState::from_coeffs({1.0, 0.3}, 4), M));
    // |2 b| > 1 makes a small interior loop.
    CHECK(boundary_self_intersects(MapState::from_coeffs({1.0, 0.7}, 4), M));
}

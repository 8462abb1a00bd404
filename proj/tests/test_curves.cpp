#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tpe/curves.hpp"
#include "tpe/secant.hpp"

using namespace tpe;
using doctest::Approx;

TEST_CASE("circle fixture: radius, centre and length") {
  const FourierCurve c = make_circle(1.0);
  const CurveSamples s = sample(c, 64);
  for (const auto& p : s.points()) CHECK(p.norm() == Approx(1.0 / (2.0 * oracle::kPi)).epsilon(1e-14));
  for (double v : s.speeds()) CHECK(std::abs(v - 1.0) <= 1e-12);
  CHECK(std::abs(sample(make_circle(2.0), 256).length() - 2.0) <= 1e-10);
  CHECK(std::abs(curve_length(make_circle(3.0, 3)) - 3.0) <= 1e-12);
}

TEST_CASE("circle fixture: chord closed form") {
  const FourierCurve c = make_circle(1.0);
  for (int i = 0; i < 32; ++i) {
    for (int j = 1; j < 32; ++j) {
      const double u = i / 32.0;
      const double w = j / 32.0;
      const double chord = (c.position(u + w) - c.position(u)).norm();
      CHECK(std::abs(chord - std::sin(oracle::kPi * w) / oracle::kPi) <= 1e-12);
    }
  }
}

TEST_CASE("position and derivatives match a direct trigonometric sum") {
  for (const FourierCurve& c : {make_trefoil(1.3), make_perturbed_circle(1.0, 4, 0.2), make_ellipse(2.0, 1.0)}) {
    for (double u : {0.0, 0.137, 0.5, 0.91}) {
      CHECK((c.position(u) - oracle::fourier_point(c, u)).norm() <= 1e-12);
      CHECK((c.derivative(u) - oracle::fourier_point(c, u, 1)).norm() <= 1e-11);
      CHECK((c.second_derivative(u) - oracle::fourier_point(c, u, 2)).norm() <= 1e-9);
    }
  }
}

TEST_CASE("difference helpers agree with plain subtraction") {
  const FourierCurve c = make_trefoil(1.0);
  for (double du : {0.3, 1e-3, 1e-7}) {
    const Vec3 direct = c.position(0.2 + du) - c.position(0.2);
    CHECK((c.difference(0.2, du) - direct).norm() <= 1e-12 * std::max(1.0, direct.norm() / du));
    const Vec3 ddirect = c.derivative(0.2 + du) - c.derivative(0.2);
    CHECK((c.derivative_difference(0.2, du) - ddirect).norm() <= 1e-9);
  }
  // Tiny offsets: the remainder gamma(u+h) - gamma(u) - h gamma'(u) ~ h^2/2 gamma''.
  const double h = 1e-6;
  const Vec3 expected = 0.5 * h * h * c.second_derivative(0.2);
  CHECK((c.difference_remainder(0.2, h) - expected).norm() <= 1e-3 * expected.norm());
}

TEST_CASE("ellipse length against an independent quadrature") {
  const double oracle_length = oracle::length(make_ellipse(2.0, 1.0));
  CHECK(oracle_length == Approx(9.688448220547676).epsilon(1e-12));
  CHECK(std::abs(curve_length(make_ellipse(2.0, 1.0)) - oracle_length) <= 1e-5);
  CHECK(std::abs(sample(make_ellipse(2.0, 1.0), 256).length() - oracle_length) <= 1e-6);
}

TEST_CASE("ellipse with equal axes is the circle of length 2 pi") {
  const FourierCurve e = make_ellipse(1.0, 1.0);
  const FourierCurve c = make_circle(2.0 * oracle::kPi);
  for (double u : {0.0, 0.25, 0.6}) CHECK((e.position(u) - c.position(u)).norm() <= 1e-14);
}

TEST_CASE("perturbed circle: zero amplitude and convexity") {
  const FourierCurve p0 = make_perturbed_circle(1.0, 3, 0.0);
  const FourierCurve c = make_circle(1.0);
  for (double u : {0.0, 0.3, 0.77}) CHECK((p0.position(u) - c.position(u)).norm() <= 1e-14);
  CHECK(!is_convex_planar(sample(make_perturbed_circle(1.0, 3, 0.3), 256)).is_convex);
  CHECK(is_convex_planar(sample(make_perturbed_circle(1.0, 2, 0.05), 256)).is_convex);
  CHECK(std::abs(curve_length(make_perturbed_circle(1.0, 5, 0.2)) - 1.0) <= 1e-12);
}

TEST_CASE("convexity classifier agrees with the curvature-sign oracle on random perturbations") {
  std::mt19937_64 gen(20240611);
  std::uniform_real_distribution<double> eps_dist(0.0, 0.5);
  std::uniform_int_distribution<int> mode_dist(2, 6);
  int disagreements = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int mode = mode_dist(gen);
    const double eps = eps_dist(gen);
    const FourierCurve c = make_perturbed_circle(1.0, mode, eps);
    // The threshold eps = 1/(k^2 - 1) separates convex from non-convex; stay
    // clear of the knife edge where a 1024 grid cannot decide.
    if (std::abs(eps - 1.0 / (mode * mode - 1.0)) < 1e-3) continue;
    if (is_convex_planar(sample(c, 1024)).is_convex != oracle::convex_by_curvature(c)) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("convexity report fields") {
  const ConvexityReport e = is_convex_planar(sample(make_ellipse(2.0, 1.0), 256));
  CHECK(e.is_planar);
  CHECK(e.is_convex);
  CHECK(e.total_turning == Approx(2.0 * oracle::kPi).epsilon(1e-9));
  CHECK(e.min_signed_curvature > 0.0);
  const ConvexityReport t = is_convex_planar(sample(make_trefoil(1.0), 256));
  CHECK(!t.is_planar);
  CHECK(!t.is_convex);
  // A planar circle embedded in 3D is still planar and convex.
  CHECK(is_convex_planar(sample(make_circle(1.0, 3), 128)).is_convex);
}

TEST_CASE("embeddedness") {
  CHECK(is_embedded_check(sample(make_circle(1.0), 256)));
  CHECK(is_embedded_check(sample(make_ellipse(2.0, 1.0), 256)));
  CHECK(is_embedded_check(sample(make_trefoil(1.0), 512)));
  CHECK(oracle::min_pair_distance(make_trefoil(1.0)) > 0.1);
  CHECK(!is_embedded_check(sample(make_figure_eight(), 256)));
  CHECK(oracle::min_pair_distance(make_figure_eight()) < 1e-2);
}

TEST_CASE("arc-length resampling") {
  SUBCASE("circle grid is unchanged") {
    const CurveSamples a = sample(make_circle(1.0), 128);
    const CurveSamples b = resample_arclength(make_circle(1.0), 128);
    for (int i = 0; i < 128; ++i) CHECK((a.points()[i] - b.points()[i]).norm() <= 1e-12);
  }
  SUBCASE("ellipse speed is constant and length preserved") {
    const FourierCurve e = make_ellipse(2.0, 1.0);
    const CurveSamples r = resample_arclength(e, 256);
    CHECK(r.is_arclength());
    CHECK(r.is_reparametrized());
    CHECK(std::abs(r.length() - curve_length(e)) / curve_length(e) <= 1e-8);
    double worst = 0.0;
    for (int i = 0; i < r.size(); ++i) {
      worst = std::max(worst, std::abs(r.tangents()[i].norm() - r.length()));
      worst = std::max(worst, std::abs(r.speeds()[i] - r.length()));
    }
    CHECK(worst < 1e-8 * r.length());
  }
  SUBCASE("sample points sit at equal arc-length spacing") {
    const FourierCurve e = make_ellipse(2.0, 1.0);
    const CurveSamples r = resample_arclength(e, 64);
    const double total = oracle::length(e);
    for (int i = 1; i < 64; i += 7) {
      const double t = r.curve_parameters()[i];
      const double arc = oracle::integrate([&](double u) { return oracle::fourier_point(e, u, 1).norm(); }, 0.0, t);
      CHECK(std::abs(arc - total * i / 64.0) <= 1e-9 * total);
    }
  }
}

TEST_CASE("arc-length map inversion") {
  const CurveSamples r = resample_arclength(make_perturbed_circle(1.0, 3, 0.3), 64);
  const ArclengthMap* map = r.arclength_map();
  REQUIRE(map != nullptr);
  for (double u : {0.05, 0.4, 0.83}) {
    for (double ds : {0.3, -0.2, 1e-6, -1e-9}) {
      const double dt = map->parameter_offset(u, ds);
      CHECK(map->arc_between(u, dt) == Approx(ds * map->length()).epsilon(1e-10));
    }
  }
}

TEST_CASE("rescale_to_length") {
  const FourierCurve c = rescale_to_length(make_circle(2.0), 1.0);
  CHECK(c.position(0.0).norm() == Approx(1.0 / (2.0 * oracle::kPi)).epsilon(1e-14));
  CHECK(curve_length(rescale_to_length(make_trefoil(1.0), 3.0)) == Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(rescale_to_length(make_circle(1.0), 0.0), std::invalid_argument);
}

TEST_CASE("orientation of planar fixtures") {
  CHECK(orientation(sample(make_circle(1.0), 64)) == 1);
  CHECK(orientation(sample(make_ellipse(2.0, 1.0).scaled(-1.0), 64)) == 1);
  const FourierCurve mirrored(2, {make_circle(1.0).coefficients()[1], make_circle(1.0).coefficients()[0]});
  CHECK(orientation(sample(mirrored, 64)) == -1);
  CHECK_THROWS_AS(orientation(sample(make_trefoil(1.0), 64)), GeometryError);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(make_circle(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_ellipse(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_perturbed_circle(1.0, 1, 0.1), std::invalid_argument);
  CHECK_THROWS(sample(make_circle(1.0), 7));
  CHECK_THROWS_AS(FourierCurve(4, {}), std::invalid_argument);
}

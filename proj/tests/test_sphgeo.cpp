#include <doctest.h>

#include <cmath>

#include "sphsplit/dirdist.hpp"
#include "sphsplit/sphgeo.hpp"
#include "sphsplit/stats.hpp"

using namespace sphsplit;

namespace {
Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }
Vec e(int n, int i) {
  Vec x = Vec::Zero(n);
  x(i) = 1;
  return x;
}
SphericalPolytope octant() { return SphericalPolytope::from_halfspaces(3, {e(3, 0), e(3, 1), e(3, 2)}); }
SphericalPolytope north() { return SphericalPolytope::from_halfspaces(3, {e(3, 2)}); }
}  // namespace

TEST_CASE("geodesic distance") {
  CHECK(geodesic_distance(e(3, 0), e(3, 0)) == doctest::Approx(0));
  CHECK(geodesic_distance(e(3, 0), -e(3, 0)) == doctest::Approx(kPi));
  CHECK(geodesic_distance(e(3, 0), e(3, 1)) == doctest::Approx(kPi / 2));
  // nearly identical points keep full precision
  Vec y = normalized(v3(1, 1e-9, 0));
  CHECK(geodesic_distance(e(3, 0), y) == doctest::Approx(1e-9).epsilon(1e-6));
}

TEST_CASE("side of a great hypersphere") {
  GreatHypersphere S(e(3, 2));
  CHECK(side_of(S, e(3, 2)) == Side::Plus);
  CHECK(side_of(S, e(3, 0)) == Side::OnBoundary);
  CHECK(side_of(S, -e(3, 2)) == Side::Minus);
}

TEST_CASE("canonical normals") {
  Vec u = canonicalize(v3(0, -1, 0));
  CHECK(u(1) == doctest::Approx(1));
  GreatHypersphere a(v3(0, 0, 1)), b(v3(0, 0, -1));
  CHECK((a.normal - b.normal).norm() == doctest::Approx(0));
}

TEST_CASE("interior hit test") {
  GreatHypersphere eq(e(3, 2));
  // octant rotated to straddle the equator
  auto straddle = SphericalPolytope::from_halfspaces(3, {e(3, 0), e(3, 1), normalized(v3(0, 0, 1) + v3(1, 1, 0) * 0.3)});
  CHECK(hits_interior(eq, straddle) == HitResult::Hit);
  auto cap = SphericalPolytope::from_halfspaces(3, {e(3, 0), e(3, 1), normalized(v3(-1, -1, 1))});
  CHECK(hits_interior(eq, cap) == HitResult::Miss);
  // equator contains a full edge of the octant but no interior point
  CHECK(hits_interior(eq, octant()) != HitResult::Hit);
}

TEST_CASE("split of the full sphere and of a hemisphere") {
  auto r = split(SphericalPolytope::full_sphere(3), GreatHypersphere(e(3, 2)));
  CHECK(r.plus.kind2() == SphericalPolytope::Kind2::Hemisphere);
  CHECK(r.minus.kind2() == SphericalPolytope::Kind2::Hemisphere);
  CHECK(r.piece.arc().length == doctest::Approx(2 * kPi));
  CHECK(piece_measure(r.piece).value == doctest::Approx(2 * kPi));

  auto h = split(north(), GreatHypersphere(e(3, 0)));
  CHECK(h.plus.kind2() == SphericalPolytope::Kind2::Lune);
  CHECK(h.plus.area() == doctest::Approx(kPi));
  CHECK(h.minus.area() == doctest::Approx(kPi));
  CHECK(h.piece.arc().length == doctest::Approx(kPi));
}

TEST_CASE("random splits are additive") {
  Rng rng = derive_rng(11, 0);
  for (int k = 0; k < 200; ++k) {
    SphericalPolytope c = SphericalPolytope::full_sphere(3);
    for (int j = 0; j < 4; ++j) {
      GreatHypersphere S(sample_uniform_sphere(2, rng));
      if (hits_interior(S, c) != HitResult::Hit) continue;
      auto r = split(c, S);
      CHECK(std::abs(r.plus.area() + r.minus.area() - c.area()) < 1e-9);
      double len = r.piece.arc().length;
      CHECK(std::abs(r.plus.perimeter() + r.minus.perimeter() - c.perimeter() - 2 * len) < 1e-9);
      c = rng() % 2 ? r.plus : r.minus;
    }
  }
}

TEST_CASE("polygon area") {
  CHECK(polygon_area_2d(octant()) == doctest::Approx(kPi / 2));
  CHECK(polygon_area_2d(north()) == doctest::Approx(2 * kPi));
}

TEST_CASE("intrinsic volumes") {
  auto seg = intrinsic_volumes_segment(1.3);
  CHECK(seg.v0 == doctest::Approx(0.5));
  CHECK(seg.v1 == doctest::Approx(1.3 / (2 * kPi)));
  CHECK(seg.v2 == doctest::Approx(0));
  auto o = intrinsic_volumes_2d(octant());
  CHECK(o.v2 == doctest::Approx(1.0 / 8));
  CHECK(o.v1 == doctest::Approx(3.0 / 8));
  CHECK(o.v0 == doctest::Approx(3.0 / 8));
  Arc circle{e(3, 0), e(3, 1), 2 * kPi};
  auto c = intrinsic_volumes_arc(circle);
  CHECK(c.v0 == doctest::Approx(0));
  CHECK(c.v1 == doctest::Approx(1));
}

TEST_CASE("octant V0 against the external-angle definition") {
  // V0 of a cone is the probability that the metric projection of a uniform point hits a vertex;
  // for the octant that is the chance the nearest point of the cone is one of its rays.
  Rng rng = derive_rng(3, 1);
  int n = 200000, at_vertex = 0;
  for (int i = 0; i < n; ++i) {
    Vec x = sample_uniform_sphere(2, rng);
    int positive = (x.array() > 0).count();
    at_vertex += positive == 1;
  }
  double p = static_cast<double>(at_vertex) / n;
  CHECK(std::abs(p - 3.0 / 8) < 4 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("curvature measures") {
  Rng rng = derive_rng(5, 0);
  auto one = [](const Vec&) { return 1.0; };
  auto o = intrinsic_volumes_2d(octant());
  CHECK(curvature_measure_2d(octant(), 0, one, rng) == doctest::Approx(o.v0).epsilon(1e-9));
  CHECK(curvature_measure_2d(octant(), 1, one, rng) == doctest::Approx(o.v1).epsilon(1e-9));
  // hemisphere indicator against a reflection-symmetric cell
  auto lune = SphericalPolytope::from_halfspaces(3, {e(3, 0), normalized(v3(-1, 1, 0))});
  auto upper = [](const Vec& x) { return x(2) > 0 ? 1.0 : 0.0; };
  double phi2 = curvature_measure_2d(lune, 2, upper, rng, {64, 400000});
  CHECK(std::abs(phi2 - 0.5 * intrinsic_volumes_2d(lune).v2) < 3e-3);
  // node doubling for a smooth density
  auto smooth = [](const Vec& x) { return std::exp(x(0)) * (1 + x(1) * x(1)); };
  auto cell = SphericalPolytope::from_halfspaces(3, {normalized(v3(1, 0.2, 0.1)), normalized(v3(0.1, 1, -0.3)),
                                                     normalized(v3(-0.2, 0.3, 1))});
  double a = curvature_measure_2d(cell, 1, smooth, rng, {32, 1000});
  double b = curvature_measure_2d(cell, 1, smooth, rng, {64, 1000});
  CHECK(std::abs(a - b) < 1e-6);
}

TEST_CASE("piece measures") {
  auto half = split(north(), GreatHypersphere(e(3, 0))).piece;
  CHECK(piece_measure(half).value == doctest::Approx(kPi));
  // d = 3: a hemisphere of a great 2-sphere
  auto h3 = SphericalPolytope::from_halfspaces(4, {e(4, 3)});
  auto p3 = split(h3, GreatHypersphere(e(4, 0))).piece;
  CHECK(piece_measure(p3).value == doctest::Approx(2 * kPi));
}

TEST_CASE("segment hit") {
  GreatHypersphere eq(e(3, 2));
  CHECK(segment_hit(eq, GeodesicSegment(normalized(v3(1, 0, 0.5)), normalized(v3(1, 0, -0.5)))));
  CHECK_FALSE(segment_hit(eq, GeodesicSegment(normalized(v3(1, 0, 0.5)), normalized(v3(0, 1, 0.5)))));
  Rng rng = derive_rng(9, 0);
  GeodesicSegment s(e(3, 0), e(3, 1));
  int n = 100000, hits = 0;
  for (int i = 0; i < n; ++i) hits += segment_hit(GreatHypersphere(sample_uniform_sphere(2, rng)), s);
  CHECK(std::abs(hits / double(n) - 0.5) < 4 * std::sqrt(0.25 / n));
}

TEST_CASE("uniform sphere sampling moments") {
  for (int d : {2, 3, 5}) {
    Rng rng = derive_rng(13, d);
    const int n = 1000000;
    double s = 0, s2 = 0, q = 0, q2 = 0;
    for (int i = 0; i < n; ++i) {
      Vec x = sample_uniform_sphere(d, rng);
      s += x(0);
      s2 += x(0) * x(0);
      double y = x(0) * x(0);
      q += y;
      q2 += y * y;
    }
    double mean = s / n, se = std::sqrt(s2 / n - mean * mean) / std::sqrt(double(n));
    CHECK(std::abs(mean) < 4 * se);
    double qm = q / n, qse = std::sqrt(q2 / n - qm * qm) / std::sqrt(double(n));
    CHECK(std::abs(qm - 1.0 / (d + 1)) < 4 * qse);
  }
}

TEST_CASE("beta constants") {
  CHECK(beta_dim(0) == doctest::Approx(2));
  CHECK(beta_dim(1) == doctest::Approx(2 * kPi));
  CHECK(beta_dim(2) == doctest::Approx(4 * kPi));
  CHECK(beta_dim(3) == doctest::Approx(2 * kPi * kPi));
}

#include <doctest.h>

#include <cmath>

#include "sphsplit/analytics.hpp"

using namespace sphsplit;

TEST_CASE("connected capacity") {
  CHECK(capacity_connected(0, 3) == 1);
  CHECK(capacity_connected(0.5, 3) == doctest::Approx(0.22313016014842982));
  CHECK(capacity_connected(1, 0) == 1);
  CHECK_THROWS(capacity_connected(1.5, 1));
}

TEST_CASE("two-component capacity") {
  for (double t : {0.0, 0.5, 2.0, 10.0}) CHECK(capacity_two_components(0, 0, 0.7, 0.7, t) == doctest::Approx(1));
  CHECK(capacity_two_components(0.2, 0.3, 0.6, 0, 2) == doctest::Approx(std::exp(-1.2)));
  // degenerate branch k1 + k2 = k_hull is the limit of the general one
  double a = capacity_two_components(0.2, 0.3, 0.5, 0.1, 2);
  double b = capacity_two_components(0.2, 0.3, 0.5 + 1e-7, 0.1, 2);
  CHECK(a == doctest::Approx(b).epsilon(1e-6));
  CHECK(a == doctest::Approx(std::exp(-1.0) * (1 + 0.1 * 2)));
}

TEST_CASE("recursive capacity") {
  CapacityMeasures one;
  one.m = 1;
  one.hit[1] = 0.4;
  CHECK(capacity_recursive(one, 2.5) == doctest::Approx(capacity_connected(0.4, 2.5)).epsilon(1e-12));
  CapacityMeasures two;
  two.m = 2;
  two.hit = {{1, 0.2}, {2, 0.25}, {3, 0.6}};
  two.sep[{1, 2}] = 0.1;
  for (double t : {0.5, 2.0, 4.0})
    CHECK(std::abs(capacity_recursive(two, t) - capacity_two_components(0.2, 0.25, 0.6, 0.1, t)) < 1e-10);
}

TEST_CASE("expectations") {
  CHECK(expected_sigma(2, 0, 3, 4 * kPi) == doctest::Approx(4.5));
  for (double t : {0.0, 1.0, 7.0}) CHECK(expected_sigma(3, 3, t, 2.0) == doctest::Approx(2.0 / beta_dim(3)));
  CHECK(expected_surface(2, 3) == doctest::Approx(6 * kPi));
  CHECK(expected_surface(3, 2) == doctest::Approx(4 * kPi * 2));
}

TEST_CASE("isotropic surface variance") {
  CHECK(var_surface_isotropic(2, 1) == doctest::Approx(31.4485).epsilon(1e-5));
  CHECK(var_surface_isotropic(3, 1) == doctest::Approx(125.133).epsilon(1e-5));
  CHECK(var_surface_isotropic(2, 0) == 0);
  for (double t : {0.5, 1.0, 2.0, 5.0}) CHECK(std::abs(var_surface_isotropic(2, t) - var_surface_2d_closed(t)) < 1e-8);
}

TEST_CASE("d = 2 second-order closed forms") {
  CHECK(std::abs(var_sigma0_2d(0.1) - var_sigma0_2d_integral(0.1)) < 1e-8);
  for (double t : {0.5, 2.0, 6.0}) {
    CHECK(var_sigma0_2d(t) == doctest::Approx(var_sigma0_2d_integral(t)).epsilon(1e-9));
    CHECK(cov_sigma0_sigma1_2d(t) == doctest::Approx(cov_sigma0_sigma1_2d_integral(t)).epsilon(1e-9));
  }
  double t = 1e4;
  CHECK(var_sigma0_2d(t) / (t * t * std::log(t)) == doctest::Approx(1).epsilon(0.01));
}

TEST_CASE("iterated integrals") {
  auto one = [](double) { return 1.0; };
  CHECK(iterated_integral(1, one, 2) == doctest::Approx(2));
  CHECK(iterated_integral(3, one, 2) == doctest::Approx(8.0 / 6));
  CHECK(iterated_integral(2, [](double s) { return s; }, 3) == doctest::Approx(27.0 / 6));
}

TEST_CASE("covariance recursion with the d = 2 curves") {
  const double t = 2.5;
  EACurves c;
  for (int g = 0; g <= 200; ++g) c.s.push_back(t * g / 200);
  for (double s : c.s) {
    c.values[{0, 0}].push_back(s / 2);
    c.values[{1, 0}].push_back(-std::expm1(-s) / 2);
    c.values[{1, 1}].push_back(s > 0 ? -std::expm1(-s) / s : 1.0);
  }
  CHECK(covariance_recursion(2, 1, 1, t, c) == doctest::Approx(var_sigma0_2d(t)).epsilon(1e-6));
  auto w = recursion_weights(2, 0, 0, t, c.s);
  CHECK(w.size() == 1);
  CHECK(w.count({1, 1}) == 1);
  EACurves zero = c;
  for (auto& [k, v] : zero.values) std::fill(v.begin(), v.end(), 0.0);
  CHECK(covariance_recursion(2, 1, 1, t, zero) == 0);
}

TEST_CASE("pair correlation and K-functions") {
  CHECK(pcf_split(2, 2, kPi / 2) == doctest::Approx(1 + 2 * (1 - std::exp(-1.0)) / (4 * (kPi / 2))));
  for (int d : {2, 3}) {
    for (double r = 0.1; r < kPi; r += 0.3) {
      CHECK(k_function_split(d, 2, r) <= k_function_poisson(d, 2, r) + 1e-12);
      CHECK(k_function_poisson(d, 2, r) == doctest::Approx(k_function_poisson_balls(d, 2, r)).epsilon(1e-8));
    }
  }
}

TEST_CASE("typical faces") {
  CHECK(mean_segment_length_split(2, 3) == doctest::Approx(1.8944).epsilon(1e-4));
  CHECK(mean_segment_length_split(2, 1e-6) == doctest::Approx(2 * kPi).epsilon(1e-5));
  CHECK(n1_split(2, 3) == doctest::Approx(9.9502).epsilon(1e-4));
  CHECK(mean_edge_length_poisson(3) == doctest::Approx(1.0387).epsilon(1e-4));
  CHECK(mean_segment_length_split(2, 1e3) / mean_edge_length_poisson(1e3) == doctest::Approx(2).epsilon(0.01));
  CHECK(mean_cell_count_2d(3) == doctest::Approx(10.9502).epsilon(1e-4));
  for (int d : {2, 3, 4}) {
    double total = integrate([&](double s) { return birth_density(d, 2, s); }, 0, 2).value;
    CHECK(total == doctest::Approx(1).epsilon(1e-10));
  }
}

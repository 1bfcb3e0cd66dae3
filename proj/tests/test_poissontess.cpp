#include <doctest.h>

#include <cmath>

#include "sphsplit/poissontess.hpp"

using namespace sphsplit;

namespace {
const auto kUniform2 = DirectionDistribution::uniform(2);
PoissonGHT fixed(int d, int N, std::uint64_t seed) {
  Rng rng = derive_rng(seed, 0);
  PoissonGHT P;
  P.d = d;
  auto k = DirectionDistribution::uniform(d);
  do {
    P.normals.clear();
    for (int i = 0; i < N; ++i) P.normals.push_back(k.sample(rng));
  } while (!in_general_position(P.normals));
  return P;
}
}  // namespace

TEST_CASE("no hyperspheres at t = 0") {
  Rng rng = derive_rng(1, 0);
  auto P = sample_poisson(2, kUniform2, 0, rng);
  CHECK(P.normals.empty());
  CHECK(arrangement_2d(P).cells.size() == 1);
  CHECK(measured_total_edge_length(P) == 0);
  auto D = dynamic_simulate(2, kUniform2, 0, rng);
  CHECK(D.cells.size() == 1);
}

TEST_CASE("Poisson count moments") {
  Rng rng = derive_rng(2, 0);
  Sample s;
  for (int i = 0; i < 10000; ++i) s.add(double(sample_poisson(2, kUniform2, 5, rng).normals.size()));
  CHECK(std::abs(s.mean() - 5) < 4 * s.mean_se());
  CHECK(std::abs(s.variance() - 5) < 4 * s.variance_se());
}

TEST_CASE("face counts") {
  CHECK(face_counts(3, 2, 2) == 8);
  CHECK(face_counts(3, 2, 0) == 6);
  CHECK(face_counts(3, 2, 1) == 12);
  CHECK(face_counts(1, 2, 2) == 2);
  CHECK(face_counts(1, 2, 0) == 0);
  CHECK(face_counts(1, 2, 1) == 1);
  CHECK(face_counts(3, 3, 1) == 6);
  auto A = arrangement_2d(fixed(2, 3, 5));
  CHECK(A.cells.size() == 8);
  CHECK(A.vertices == 6);
  CHECK(A.edges.size() == 12);
  auto L = arrangement_2d(fixed(2, 2, 6));
  CHECK(L.cells.size() == 4);
  for (const auto& c : L.cells) CHECK(c.kind2() == SphericalPolytope::Kind2::Lune);
}

TEST_CASE("total edge length") {
  CHECK(total_edge_length(4, 2) == doctest::Approx(8 * kPi));
  CHECK(measured_total_edge_length(fixed(2, 4, 7)) == doctest::Approx(8 * kPi));
  CHECK(total_edge_length(0, 2) == 0);
  Rng rng = derive_rng(3, 0);
  Sample s;
  for (int i = 0; i < 10000; ++i) s.add(measured_total_edge_length(sample_poisson(2, kUniform2, 3, rng)));
  CHECK(std::abs(s.mean() - 6 * kPi) < 4 * s.mean_se());
}

TEST_CASE("mean edge length at t = 3") {
  Rng rng = derive_rng(4, 0);
  double length = 0, edges = 0;
  for (int i = 0; i < 10000; ++i) {
    auto A = arrangement_2d(sample_poisson(2, kUniform2, 3, rng));
    for (const auto& ed : A.edges) length += ed.length;
    edges += double(A.edges.size());
  }
  CHECK(length / edges == doctest::Approx(2 * kPi / (6 + std::exp(-3.0))).epsilon(0.02));
}

TEST_CASE("dynamic version has the static law at the final time") {
  Rng rng = derive_rng(5, 0);
  for (int i = 0; i < 20; ++i) {
    auto D = dynamic_simulate(2, kUniform2, 3, rng);
    long long N = static_cast<long long>(D.normals.size());
    CHECK(static_cast<long long>(D.cells.size()) == face_counts(N, 2, 2));
    CHECK(D.cell_counts.size() == D.arrival_times.size());
  }
}

TEST_CASE("normals export") {
  auto csv = poisson_csv(fixed(2, 2, 8));
  CHECK(csv.find("schema=") != std::string::npos);
}

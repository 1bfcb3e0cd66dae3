#pragma once

#include <string>
#include <vector>

#include "sphsplit/dirdist.hpp"

namespace sphsplit {

struct PoissonGHT {
  int d = 2;
  double t = 0;
  std::vector<GreatHypersphere> normals;
};

// N ~ Poisson(t) i.i.d. hyperspheres; draws violating general position are redrawn.
PoissonGHT sample_poisson(int d, const DirectionDistribution& kappa, double t, Rng& rng);
bool in_general_position(const std::vector<GreatHypersphere>& hs, double tol = 1e-10);

// Dynamic version: at Exp(1) arrivals one hypersphere splits every cell it hits.
struct DynamicPath {
  std::vector<double> arrival_times;
  std::vector<GreatHypersphere> normals;
  std::vector<std::size_t> cell_counts;  // after each arrival
  std::vector<SphericalPolytope> cells;  // at the final time
};
DynamicPath dynamic_simulate(int d, const DirectionDistribution& kappa, double t, Rng& rng);

// k = 0 vertices, k = 1 edges, k = d cells (cells for d = 2 only).
long long face_counts(long long N, int d, int k);
double total_edge_length(long long N, int d);

struct ArrangementEdge {
  int circle;
  double length;
};
struct Arrangement2D {
  std::vector<SphericalPolytope> cells;
  std::vector<ArrangementEdge> edges;
  int vertices = 0;
};
Arrangement2D arrangement_2d(const PoissonGHT& P);
double measured_total_edge_length(const PoissonGHT& P);

std::string poisson_csv(const PoissonGHT& P);

}  // namespace sphsplit

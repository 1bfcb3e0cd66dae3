#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphsplit/dirdist.hpp"

namespace sphsplit {

struct SplittingEvent {
  double time;
  int parent_id;
  int child_a, child_b;  // plus side, minus side
  GreatHypersphere hypersphere;
  Piece piece;
  double piece_measure;
};

struct Cell {
  int id;
  SphericalPolytope poly;
};

struct SplittingTessellation {
  int d = 2;
  double t_end = 0;
  std::vector<Cell> cells;
  std::vector<SplittingEvent> events;
  std::size_t initial_cells = 1;
  std::size_t rejected_count = 0;
  std::uint64_t seed = 0;
  int next_id = 0;

  static SplittingTessellation initial(int d);
  // Cells must partition S^d; validated for d = 2 through the area sum.
  static SplittingTessellation from_cells(int d, std::vector<SphericalPolytope> cells);
};

// Optional per-split audit hook: (parent, result) before the children are stored.
using SplitObserver = std::function<void(const SphericalPolytope&, const SplitResult&)>;

// Observer recording the worst split additivity errors (d = 2): area, and
// perimeter(c+) + perimeter(c-) - perimeter(c) - 2 * piece length.
SplitObserver additivity_audit(double* area_err, double* perimeter_err);

// Uniformization: candidates at rate |cells|, a uniformly picked cell is split iff
// the drawn hypersphere hits its interior. A cell's accepted-split rate is then
// kappa(S[c]) <= 1, which is exactly the rate of the process.
SplittingTessellation simulate(int d, const DirectionDistribution& kappa, double t, Rng& rng,
                               const SplittingTessellation* initial = nullptr, const SplitObserver& obs = {});

// Competing exponentials with rates perimeter/(2 pi) (d = 2, isotropic only).
SplittingTessellation simulate_direct_2d(double t, Rng& rng, const SplitObserver& obs = {});

// Continue a tessellation from its current time up to t (the process is Markov).
void advance(SplittingTessellation& Y, const DirectionDistribution& kappa, double t, Rng& rng,
             const SplitObserver& obs = {});

double union_measure(const SplittingTessellation& Y);
double union_measure(const SplittingTessellation& Y, const std::function<double(const Vec&)>& h, int gauss_nodes = 64);
// Sum over cells of V_j (d = 2, j in 0..2; d = 3, j in 2..3 with Monte Carlo volumes).
double sigma_j(const SplittingTessellation& Y, int j, Rng* rng = nullptr);
double sigma_j(const SplittingTessellation& Y, int j, const std::function<double(const Vec&)>& h, Rng& rng);

struct MaximalSegment {
  double birth_time;
  Arc geometry;
  double length;
};
std::vector<MaximalSegment> maximal_segments(const SplittingTessellation& Y);

bool capacity_indicator(const SplittingTessellation& Y, const SetSpec& C);

struct ArrangementGraph {
  int V = 0, E = 0, F = 0;
  std::vector<int> degree_histogram;  // index = degree
  bool all_endpoints_interior = true;  // each endpoint lies inside exactly one older arc
};
ArrangementGraph arrangement_graph_2d(const SplittingTessellation& Y);

// Audit values for one realization (d = 2).
struct StructureAudit {
  double area_sum_error = 0;
  double max_hv_violation = 0;
  bool facets_supported = true;  // every constraint is tight on >= d rays (pointed cells)
};
StructureAudit audit_structure_2d(const SplittingTessellation& Y);

std::string event_log_csv(const SplittingTessellation& Y);
std::string snapshot_json(const SplittingTessellation& Y);

}  // namespace sphsplit

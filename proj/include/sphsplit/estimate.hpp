#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "sphsplit/analytics.hpp"
#include "sphsplit/poissontess.hpp"
#include "sphsplit/splitproc.hpp"

namespace sphsplit {

struct RunOptions {
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  unsigned jobs = 0;  // 0 = hardware concurrency
};

// Runs f(i, rng_i) for i < n on a thread pool. Row i depends only on (seed, i),
// so the result does not depend on the number of jobs.
std::vector<std::vector<double>> run_replicates(
    const RunOptions& opt, const std::function<std::vector<double>(std::size_t, Rng&)>& f);

// Worst-case structural checks, accumulated over every realization a run touches.
struct StructureTally {
  std::size_t realizations = 0;
  double max_area_sum_error = 0;
  double max_split_area_error = 0;
  double max_split_perimeter_error = 0;
  double max_hv_violation = 0;
  std::size_t unsupported_facets = 0;
  std::size_t euler_failures = 0;
  std::size_t degree_failures = 0;   // vertices of degree other than 3
  std::size_t arrangements_checked = 0;
  std::size_t poisson_checked = 0;
  std::size_t poisson_count_failures = 0;

  void merge(const StructureTally& o);
  // Audit of a d = 2 splitting realization; split errors come from additivity_audit.
  void record_split(const SplittingTessellation& Y, double split_area_err, double split_perimeter_err);
  void record_poisson(const PoissonGHT& P, const Arrangement2D& A);
  bool ok() const;
  std::string summary() const;
};

// Thread-safe sink the estimators report their audits to.
class StructureSink {
 public:
  void add(const StructureTally& t) {
    std::lock_guard<std::mutex> lk(m_);
    total_.merge(t);
  }
  StructureTally total() const {
    std::lock_guard<std::mutex> lk(m_);
    return total_;
  }

 private:
  mutable std::mutex m_;
  StructureTally total_;
};

enum class Functional { CellCount, Sigma0, Sigma1, Sigma2, Surface };
std::string to_string(Functional f);

struct MomentsConfig {
  int d = 2;
  DirectionDistribution kappa = DirectionDistribution::uniform(2);
  double t = 1;
  std::vector<Functional> functionals{Functional::Surface};
  bool direct = false;  // competing-exponentials twin (d = 2, uniform)
  RunOptions run;
  StructureSink* audit = nullptr;
};

// One column of per-replicate values per requested functional.
struct MomentSamples {
  std::vector<Functional> functionals;
  std::vector<std::vector<double>> columns;
  double wall_time = 0;
  std::uint64_t seed = 0;

  const std::vector<double>& column(Functional f) const;
  EstimateReport mean(Functional f, std::optional<double> ref = std::nullopt) const;
  EstimateReport variance(Functional f, std::optional<double> ref = std::nullopt) const;
  EstimateReport covariance(Functional a, Functional b, std::optional<double> ref = std::nullopt) const;
};
MomentSamples mc_moments(const MomentsConfig& cfg);

struct CapacityConfig {
  int d = 2;
  DirectionDistribution kappa = DirectionDistribution::uniform(2);
  double t = 1;
  SetSpec C;
  const SplittingTessellation* initial = nullptr;
  RunOptions run;
  StructureSink* audit = nullptr;
};
// Frequency of {Z_t misses C}; the SE uses the Wilson-adjusted proportion.
EstimateReport mc_capacity(const CapacityConfig& cfg, std::optional<double> ref = std::nullopt);
// Same event for the Poisson great hypersphere tessellation.
EstimateReport mc_capacity_poisson(const CapacityConfig& cfg, std::optional<double> ref = std::nullopt);

struct PcfConfig {
  double t = 2;
  std::vector<double> r;        // bin centres
  double bin_width = kPi / 36;
  double delta = kPi / 720;     // arc discretization step
  bool poisson = false;
  bool audit_halving = true;    // also evaluate at delta / 2 on the same realizations
  RunOptions run;
  StructureSink* audit = nullptr;
};
struct PcfPoint {
  double r, lo, hi;
  EstimateReport K;        // K(hi) - K(lo), per replicate
  EstimateReport g;        // bin average of g
  double g_reference;      // bin-averaged closed form
  double g_half_delta;     // same bins, delta / 2 (NaN when not audited)
  std::vector<double> g_samples;
};
// d = 2 only.
std::vector<PcfPoint> mc_pcf(const PcfConfig& cfg);
// Bin average of g weighted by sin r, the H^2 density of distances.
double pcf_bin_average(const std::function<double(double)>& g, double lo, double hi);

struct TypicalSegmentResult {
  EstimateReport count;        // mean number of maximal segments
  EstimateReport mean_length;  // pooled ratio estimator
  KsResult birth_ks;
  std::size_t pooled = 0;
};
TypicalSegmentResult mc_typical_segment(double t, const RunOptions& run, StructureSink* audit = nullptr);
double birth_time_cdf(int d, double t, double s);

struct EAConfig {
  double t = 2;
  std::vector<double> s_grid;  // must cover [0, t]
  std::vector<std::pair<int, int>> pairs{{0, 0}, {1, 0}, {1, 1}};
  int draws_per_cell = 4;
  RunOptions run;
};
struct EAResult {
  EACurves mean;
  std::vector<EACurves> per_replicate;
};
// d = 2, isotropic. Curves of one replicate are read off a single path at the grid times.
EAResult mc_EA(const EAConfig& cfg);
// covariance_recursion applied replicate-wise, with its Monte Carlo SE.
EstimateReport recursion_estimate(const EAResult& ea, int d, int k, int l, double t,
                                  std::optional<double> ref = std::nullopt);

struct BPResult {
  EstimateReport lhs, rhs;
  double z;  // (lhs - rhs) / combined SE
};
using PairFunction = std::function<double(const Vec&, const Vec&)>;
BPResult mc_bp_identity(int d, const PairFunction& g, std::size_t n, Rng& rng);

struct IntensityResult {
  EstimateReport cells_split, cells_poisson;
  EstimateReport v1_split, v1_poisson;
  EstimateReport v0_split, v0_poisson;
  std::vector<double> z;  // cells, V1 sum, V0 sum
  double n1_identity_error;  // |n1_split - integral of n1_poisson(s)/s|
};
IntensityResult mc_intensity_equality(double t, const RunOptions& run, StructureSink* audit = nullptr);

// Two-sample z statistic of the difference of two means.
double two_sample_z(const EstimateReport& a, const EstimateReport& b);

std::string reports_json(const std::vector<EstimateReport>& r);
std::string reports_csv(const std::vector<EstimateReport>& r);

}  // namespace sphsplit

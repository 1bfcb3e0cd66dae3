#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sphsplit {

// Independent stream for replicate `index` of a run seeded with `master`.
std::mt19937_64 derive_rng(std::uint64_t master, std::uint64_t index);

struct EstimateReport {
  std::string name;
  std::size_t n_replicates = 0;
  double point_estimate = 0;
  double std_error = 0;
  double ci_lo = 0, ci_hi = 0;
  std::optional<double> analytic_reference;
  std::optional<double> z_score;
  std::optional<bool> pass;
  std::uint64_t seed = 0;
  double wall_time = 0;

  // Fills ci95, and z/pass when a reference is present.
  void finalize(double threshold = 4.0);
};

EstimateReport make_report(std::string name, std::size_t n, double est, double se,
                           std::optional<double> reference = std::nullopt, double threshold = 4.0);

// Moments of a sample, with the usual SEs for the mean and the variance.
struct Sample {
  std::vector<double> x;
  void add(double v) { x.push_back(v); }
  std::size_t size() const { return x.size(); }
  double mean() const;
  double variance() const;  // unbiased
  double mean_se() const;
  double variance_se() const;  // fourth central moment formula
};

double covariance(const std::vector<double>& a, const std::vector<double>& b);
// SE of the sample covariance from the fourth mixed moment.
double covariance_se(const std::vector<double>& a, const std::vector<double>& b);

// Asymptotic Kolmogorov tail P(K > lambda).
double kolmogorov_q(double lambda);
struct KsResult {
  double statistic;
  double p_value;
};
KsResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// z threshold keeping the family error of m gates at that of 20 gates at 4 SE.
double widened_threshold(std::size_t gates, double base = 4.0);

std::string format_double(double v);  // shortest round-trip

}  // namespace sphsplit

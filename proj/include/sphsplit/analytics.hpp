#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "sphsplit/dirdist.hpp"

namespace sphsplit {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 30;
};

struct QuadResult {
  double value;
  double error;
};
// Adaptive Gauss-Kronrod on [a, b]; integrands must be finite at interior nodes.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, const QuadratureConfig& q = {});

double capacity_connected(double kappa_hit, double t);
double capacity_two_components(double k1, double k2, double k_hull, double k_sep, double t);

// Measures for a configuration of m connected components, indexed by bitmask.
struct CapacityMeasures {
  int m = 0;
  std::map<unsigned, double> hit;  // single components and hulls of unions (mask -> kappa)
  std::map<std::pair<unsigned, unsigned>, double> sep;  // (P, Q) with P < Q
};
double capacity_recursive(const CapacityMeasures& M, double t, const QuadratureConfig& q = {});

double expected_sigma(int d, int j, double t, double H_h);
double expected_surface(int d, double t);
EstimateReport kappa_bar(const DirectionDistribution& kappa, const std::function<double(const Vec&)>& h,
                         std::size_t n, Rng& rng);

double var_surface_isotropic(int d, double t, const QuadratureConfig& q = {});
double var_surface_2d_closed(double t);
EstimateReport var_surface_general(const DirectionDistribution& kappa, double t, std::size_t n, Rng& rng,
                                   std::size_t kappa_samples = 20000);

double var_sigma0_2d(double t);
double var_sigma0_2d_integral(double t);
double cov_sigma0_sigma1_2d(double t);
double cov_sigma0_sigma1_2d_integral(double t);

// Tabulated curves s -> E A_{i,j}(s); (i, j) and (j, i) are interchangeable.
struct EACurves {
  std::vector<double> s;
  std::map<std::pair<int, int>, std::vector<double>> values;
};
// Cov(Sigma_{d-1-k}, Sigma_{d-1-l}) at time t as sum_g W[(i,j)][g] * EA_{i,j}(s_g).
std::map<std::pair<int, int>, std::vector<double>> recursion_weights(int d, int k, int l, double t,
                                                                      const std::vector<double>& s_grid);
double covariance_recursion(int d, int k, int l, double t, const EACurves& curves);
// (1/(n-1)!) int_0^t (t-s)^(n-1) f(s) ds
double iterated_integral(int n, const std::function<double(double)>& f, double t, const QuadratureConfig& q = {});

double pcf_split(int d, double t, double r);
double pcf_poisson(int d, double t, double r);
double k_function_split(int d, double t, double r, const QuadratureConfig& q = {});
double k_function_poisson(int d, double t, double r, const QuadratureConfig& q = {});
// Ball-volume decomposition of the Poisson K-function.
double k_function_poisson_balls(int d, double t, double r, const QuadratureConfig& q = {});

double n1_split(int d, double t);
double n1_poisson(int d, double s);
double mean_segment_length_split(int d, double t);
double mean_edge_length_poisson(double t);
double birth_density(int d, double t, double s);
double mixture_weight(int d, double t, double s);
double mean_cell_count_2d(double t);

}  // namespace sphsplit

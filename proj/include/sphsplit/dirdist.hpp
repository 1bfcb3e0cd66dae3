#pragma once

#include <string>
#include <vector>

#include "sphsplit/sphgeo.hpp"
#include "sphsplit/stats.hpp"

namespace sphsplit {

// Law of the random great hypersphere, given through its unit normal.
class DirectionDistribution {
 public:
  enum class Kind { Uniform, AxialQuadratic };

  static DirectionDistribution uniform(int d);
  // Density proportional to 1 + beta <u, axis>^2.
  static DirectionDistribution axial(int d, const Vec& axis, double beta);
  // "uniform" or "axial:beta=<v>:axis=<c0,c1,...>"
  static DirectionDistribution parse(const std::string& spec, int d);

  Kind kind() const { return kind_; }
  int dim() const { return d_; }
  const Vec& axis() const { return axis_; }
  double beta() const { return beta_; }
  std::string to_string() const;

  Vec sample_normal(Rng& rng) const;  // canonicalized
  GreatHypersphere sample(Rng& rng) const { return GreatHypersphere(sample_normal(rng)); }
  // Density relative to the uniform probability on S^d.
  double density(const Vec& u) const;

 private:
  Kind kind_ = Kind::Uniform;
  int d_ = 2;
  Vec axis_;
  double beta_ = 0;
};

inline GreatHypersphere sample_great_hypersphere(const DirectionDistribution& k, Rng& rng) { return k.sample(rng); }

// A compact set given as a union of points, segments and cells.
struct SetSpec {
  std::vector<Vec> points;
  std::vector<GeodesicSegment> segments;
  std::vector<SphericalPolytope> cells;

  bool hit_by(const GreatHypersphere& S) const;
  // Points whose conic hull is the hull of the set (segment endpoints, cell rays).
  std::vector<Vec> hull_generators() const;
};

double hitting_measure_isotropic(const SphericalPolytope& c);  // d = 2
double hitting_measure_isotropic(const GeodesicSegment& s);

EstimateReport hitting_measure_estimate(const DirectionDistribution& kappa, const SetSpec& C, std::size_t n, Rng& rng);
// S misses B1 and B2 but hits their spherically convex hull.
EstimateReport separation_measure_estimate(const DirectionDistribution& kappa, const SetSpec& B1, const SetSpec& B2,
                                           std::size_t n, Rng& rng);
// S hits the hull of the generators (sign test, exact for finite generator sets).
bool hull_hit(const GreatHypersphere& S, const std::vector<Vec>& gens);

// kappa of the hyperspheres meeting the segment xy.
double kappa_two_point(const DirectionDistribution& kappa, const Vec& x, const Vec& y, std::size_t n, Rng& rng);
// Quadrature-free value for the axial family on S^2.
double kappa_two_point_axial_2d(const DirectionDistribution& kappa, const Vec& x, const Vec& y);

// beta_dim lives in sphgeo; the remaining special functions are here.
double exp_integral_E1(double t);
double lower_incomplete_gamma(double a, double x);
double euler_gamma();

}  // namespace sphsplit

#include "sphsplit/dirdist.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <sstream>

namespace sphsplit {

DirectionDistribution DirectionDistribution::uniform(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  DirectionDistribution k;
  k.d_ = d;
  return k;
}

DirectionDistribution DirectionDistribution::axial(int d, const Vec& axis, double beta) {
  if (beta < 0) throw std::invalid_argument("axial beta must be nonnegative");
  if (axis.size() != d + 1) throw std::invalid_argument("axis has wrong dimension");
  DirectionDistribution k;
  k.kind_ = Kind::AxialQuadratic;
  k.d_ = d;
  k.axis_ = normalized(axis);
  k.beta_ = beta;
  return k;
}

DirectionDistribution DirectionDistribution::parse(const std::string& spec, int d) {
  if (spec == "uniform") return uniform(d);
  if (spec.rfind("axial", 0) != 0) throw std::invalid_argument("unknown direction distribution '" + spec + "'");
  double beta = -1;
  Vec axis;
  std::stringstream ss(spec);
  std::string part;
  std::getline(ss, part, ':');
  while (std::getline(ss, part, ':')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad axial field '" + part + "'");
    std::string key = part.substr(0, eq), val = part.substr(eq + 1);
    if (key == "beta") {
      beta = std::stod(val);
    } else if (key == "axis") {
      std::vector<double> c;
      std::stringstream vs(val);
      std::string x;
      while (std::getline(vs, x, ',')) c.push_back(std::stod(x));
      axis = Eigen::Map<Vec>(c.data(), static_cast<Eigen::Index>(c.size()));
    } else {
      throw std::invalid_argument("unknown axial field '" + key + "'");
    }
  }
  if (beta < 0 || axis.size() == 0) throw std::invalid_argument("axial spec needs beta=<v> and axis=<coords>");
  return axial(d, axis, beta);
}

std::string DirectionDistribution::to_string() const {
  if (kind_ == Kind::Uniform) return "uniform";
  std::string s = "axial:beta=" + format_double(beta_) + ":axis=";
  for (Eigen::Index i = 0; i < axis_.size(); ++i) s += (i ? "," : "") + format_double(axis_[i]);
  return s;
}

Vec DirectionDistribution::sample_normal(Rng& rng) const {
  if (kind_ == Kind::Uniform) return canonicalize(sample_uniform_sphere(d_, rng));
  std::uniform_real_distribution<double> U(0.0, 1.0 + beta_);
  for (;;) {
    Vec u = sample_uniform_sphere(d_, rng);
    double c = u.dot(axis_);
    if (U(rng) <= 1.0 + beta_ * c * c) return canonicalize(u);
  }
}

double DirectionDistribution::density(const Vec& u) const {
  if (kind_ == Kind::Uniform) return 1.0;
  double c = u.dot(axis_);
  return (1.0 + beta_ * c * c) / (1.0 + beta_ / (d_ + 1));
}

bool SetSpec::hit_by(const GreatHypersphere& S) const {
  for (const Vec& p : points)
    if (side_of(S, p) == Side::OnBoundary) return true;
  for (const auto& s : segments)
    if (segment_hit(S, s)) return true;
  for (const auto& c : cells)
    if (c.hits_interior(S.normal) != HitResult::Miss) return true;
  return false;
}

std::vector<Vec> SetSpec::hull_generators() const {
  std::vector<Vec> g = points;
  for (const auto& s : segments) {
    g.push_back(s.a);
    g.push_back(s.b);
  }
  for (const auto& c : cells) {
    if (c.lineality_dim() > 0) throw std::invalid_argument("cell is not contained in an open hemisphere");
    for (const auto& r : c.rays()) g.push_back(r.dir);
  }
  return g;
}

bool hull_hit(const GreatHypersphere& S, const std::vector<Vec>& gens) {
  bool plus = false, minus = false;
  for (const Vec& g : gens) {
    switch (side_of(S, g)) {
      case Side::OnBoundary: return true;
      case Side::Plus: plus = true; break;
      case Side::Minus: minus = true; break;
    }
  }
  return plus && minus;
}

double hitting_measure_isotropic(const SphericalPolytope& c) {
  if (c.kind2() == SphericalPolytope::Kind2::Full) return 1.0;
  return c.perimeter() / (2 * kPi);
}
double hitting_measure_isotropic(const GeodesicSegment& s) { return s.length / kPi; }

namespace {

EstimateReport frequency_report(std::string name, std::size_t hits, std::size_t n) {
  double p = static_cast<double>(hits) / static_cast<double>(n);
  return make_report(std::move(name), n, p, std::sqrt(p * (1 - p) / static_cast<double>(n)));
}

// Conic hull of the generators lies in an open hemisphere iff its polar cone has interior.
void require_pointed_hull(const std::vector<Vec>& gens, int n) {
  SphericalPolytope polar = SphericalPolytope::from_halfspaces(n, gens);
  if (!polar.full_dimensional()) throw std::invalid_argument("sets are not contained in an open hemisphere");
}

}  // namespace

EstimateReport hitting_measure_estimate(const DirectionDistribution& kappa, const SetSpec& C, std::size_t n, Rng& rng) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (C.hit_by(kappa.sample(rng))) ++hits;
  return frequency_report("hitting_measure", hits, n);
}

EstimateReport separation_measure_estimate(const DirectionDistribution& kappa, const SetSpec& B1, const SetSpec& B2,
                                           std::size_t n, Rng& rng) {
  std::vector<Vec> gens = B1.hull_generators();
  for (const Vec& v : B2.hull_generators()) gens.push_back(v);
  bool polytopal = B1.points.empty() && B2.points.empty() && B1.segments.empty() && B2.segments.empty();
  if (!polytopal) require_pointed_hull(gens, kappa.dim() + 1);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    GreatHypersphere S = kappa.sample(rng);
    if (!B1.hit_by(S) && !B2.hit_by(S) && hull_hit(S, gens)) ++hits;
  }
  return frequency_report("separation_measure", hits, n);
}

double kappa_two_point_axial_2d(const DirectionDistribution& kappa, const Vec& x, const Vec& y) {
  // u = cos(th) m + sin(th)(cos(psi) e1 + sin(psi) e2) with e1 = x; the segment is met
  // iff psi lies in (pi/2, pi/2 + l) or its antipode.
  const double l = angle_between(x, y);
  if (l == 0) return 0.0;
  Eigen::Vector3d e1 = normalized(x), yy = normalized(y);
  Eigen::Vector3d e2 = normalized(yy - yy.dot(e1) * e1);
  Eigen::Vector3d m = e1.cross(e2);
  Eigen::Vector3d a = kappa.axis();
  double am = a.dot(m), a1 = a.dot(e1), a2 = a.dot(e2);
  auto F = [&](double p) {
    double c2 = p / 2 + std::sin(2 * p) / 4, s2 = p / 2 - std::sin(2 * p) / 4, cs = std::sin(p) * std::sin(p) / 2;
    return a1 * a1 * c2 + a2 * a2 * s2 + 2 * a1 * a2 * cs;
  };
  double inplane = 2 * (F(kPi / 2 + l) - F(kPi / 2));
  double quad = (am * am * (2.0 / 3.0) * 2 * l + (4.0 / 3.0) * inplane) / (4 * kPi);
  double b = kappa.beta();
  return (l / kPi + b * quad) / (1 + b / 3);
}

double kappa_two_point(const DirectionDistribution& kappa, const Vec& x, const Vec& y, std::size_t n, Rng& rng) {
  if (kappa.kind() == DirectionDistribution::Kind::Uniform) return angle_between(x, y) / kPi;
  if (kappa.dim() == 2) return kappa_two_point_axial_2d(kappa, x, y);
  GeodesicSegment s(x, y);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (segment_hit(kappa.sample(rng), s)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(n);
}

double exp_integral_E1(double t) {
  if (!(t > 0)) throw std::domain_error("E1 needs t > 0");
  return boost::math::expint(1, t);
}

double lower_incomplete_gamma(double a, double x) {
  if (!(a > 0) || x < 0) throw std::domain_error("lower incomplete gamma needs a > 0, x >= 0");
  if (x == 0) return 0.0;
  return boost::math::tgamma_lower(a, x);
}

double euler_gamma() { return boost::math::constants::euler<double>(); }

}  // namespace sphsplit

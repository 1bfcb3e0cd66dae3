#include "sphsplit/analytics.hpp"

#include <bit>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>

namespace sphsplit {

QuadResult integrate(const std::function<double(double)>& f, double a, double b, const QuadratureConfig& q) {
  if (a == b) return {0.0, 0.0};
  double err = 0;
  double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, q.max_depth, q.rel_tol, &err);
  return {v, err};
}

double capacity_connected(double kappa_hit, double t) {
  if (kappa_hit < 0 || kappa_hit > 1 || t < 0) throw std::invalid_argument("capacity: kappa in [0,1], t >= 0");
  return std::exp(-kappa_hit * t);
}

double capacity_two_components(double k1, double k2, double k_hull, double k_sep, double t) {
  if (t < 0) throw std::invalid_argument("capacity: t >= 0");
  double gap = k1 + k2 - k_hull;
  double base = std::exp(-t * k_hull);
  if (std::abs(gap) <= 1e-12) return base + t * k_sep * std::exp(-t * (k1 + k2));
  return base + k_sep * (base - std::exp(-t * (k1 + k2))) / gap;
}

namespace {

// Chebyshev interpolant on [0, T] (first-kind nodes, barycentric evaluation).
struct Cheb {
  double T = 0;
  std::vector<double> x, f, w;
  double operator()(double s) const {
    double num = 0, den = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      double dx = s - x[k];
      if (dx == 0) return f[k];
      double c = w[k] / dx;
      num += c * f[k];
      den += c;
    }
    return num / den;
  }
};

class CapacitySolver {
 public:
  CapacitySolver(const CapacityMeasures& M, double T, const QuadratureConfig& q) : M_(M), T_(T), q_(q) {}

  double U(unsigned mask, double t) {
    if (std::popcount(mask) == 1) return std::exp(-t * measure(mask));
    double kh = measure(mask);
    double v = std::exp(-t * kh);
    unsigned low = mask & (~mask + 1);
    for (unsigned P = (mask - 1) & mask; P; P = (P - 1) & mask) {
      if (!(P & low)) continue;
      unsigned Q = mask ^ P;
      auto it = M_.sep.find({std::min(P, Q), std::max(P, Q)});
      if (it == M_.sep.end()) throw std::invalid_argument("capacity_recursive: missing separation measure");
      if (it->second == 0) continue;
      auto f = [&](double s) { return std::exp(-s * kh) * table(P, t - s) * table(Q, t - s); };
      v += it->second * integrate(f, 0.0, t, q_).value;
    }
    return v;
  }

 private:
  const CapacityMeasures& M_;
  double T_;
  QuadratureConfig q_;
  std::map<unsigned, Cheb> memo_;

  double measure(unsigned mask) const {
    auto it = M_.hit.find(mask);
    if (it == M_.hit.end()) throw std::invalid_argument("capacity_recursive: missing hitting measure");
    return it->second;
  }

  double table(unsigned mask, double s) {
    if (std::popcount(mask) == 1) return std::exp(-s * measure(mask));
    auto it = memo_.find(mask);
    if (it == memo_.end()) {
      const int n = 40;
      Cheb c;
      c.T = T_;
      for (int k = 0; k < n; ++k) {
        double th = kPi * (k + 0.5) / n;
        c.x.push_back(0.5 * T_ * (1 - std::cos(th)));
        c.w.push_back((k % 2 ? -1.0 : 1.0) * std::sin(th));
      }
      for (double x : c.x) c.f.push_back(U(mask, x));
      it = memo_.emplace(mask, std::move(c)).first;
    }
    return it->second(s);
  }
};

}  // namespace

double capacity_recursive(const CapacityMeasures& M, double t, const QuadratureConfig& q) {
  if (M.m < 1 || M.m > 6) throw std::invalid_argument("capacity_recursive supports 1..6 components");
  if (t < 0) throw std::invalid_argument("capacity: t >= 0");
  CapacitySolver solver(M, t, q);
  return solver.U((1u << M.m) - 1, t);
}

double expected_sigma(int d, int j, double t, double H_h) {
  if (j < 0 || j > d) throw std::invalid_argument("expected_sigma: 0 <= j <= d");
  return std::pow(t, d - j) / std::tgamma(d - j + 1.0) * H_h / beta_dim(d);
}

double expected_surface(int d, double t) { return beta_dim(d - 1) * t; }

EstimateReport kappa_bar(const DirectionDistribution& kappa, const std::function<double(const Vec&)>& h,
                         std::size_t n, Rng& rng) {
  Sample s;
  for (std::size_t i = 0; i < n; ++i) s.add(h(sample_uniform_on_subsphere(kappa.sample(rng), rng)));
  return make_report("kappa_bar", n, s.mean(), s.mean_se());
}

double var_surface_isotropic(int d, double t, const QuadratureConfig& q) {
  if (d < 2 || t < 0) throw std::invalid_argument("var_surface_isotropic: d >= 2, t >= 0");
  if (t == 0) return 0.0;
  auto f = [=](double z) {
    double g = z > 0 ? -std::expm1(-z * t) / z : t;
    return std::pow(std::sin(kPi * z), d - 2) * g;
  };
  return std::pow(2 * kPi, d) / std::tgamma(d - 1.0) * integrate(f, 0.0, 1.0, q).value;
}

double var_surface_2d_closed(double t) {
  if (!(t > 0)) throw std::invalid_argument("closed form needs t > 0");
  return 4 * kPi * kPi * (euler_gamma() + std::log(t) + exp_integral_E1(t));
}

EstimateReport var_surface_general(const DirectionDistribution& kappa, double t, std::size_t n, Rng& rng,
                                   std::size_t kappa_samples) {
  const int d = kappa.dim();
  Sample s;
  for (std::size_t i = 0; i < n; ++i) {
    GreatHypersphere S = kappa.sample(rng);
    Vec x = sample_uniform_on_subsphere(S, rng), y = sample_uniform_on_subsphere(S, rng);
    double k = kappa_two_point(kappa, x, y, kappa_samples, rng);
    s.add(k > 0 ? -std::expm1(-k * t) / k : t);
  }
  double b2 = std::pow(beta_dim(d - 1), 2);
  return make_report("var_surface_general", n, b2 * s.mean(), b2 * s.mean_se());
}

double var_sigma0_2d(double t) {
  if (!(t > 0)) throw std::invalid_argument("var_sigma0_2d needs t > 0");
  return t * t * std::log(t) + t * t * (euler_gamma() - 0.75 + exp_integral_E1(t)) + t * (1 - std::exp(-t));
}

double var_sigma0_2d_integral(double t) {
  auto f = [=](double z) { return (1 - z) * (1 - z) * (-std::expm1(-t * z)) / z; };
  return t * t * integrate(f, 0.0, 1.0).value + 1 - t + 0.75 * t * t - std::exp(-t);
}

double cov_sigma0_sigma1_2d(double t) {
  if (!(t > 0)) throw std::invalid_argument("cov_sigma0_sigma1_2d needs t > 0");
  return t * std::log(t) + t * (euler_gamma() - 0.5 + exp_integral_E1(t)) + 0.5 * (1 - std::exp(-t));
}

double cov_sigma0_sigma1_2d_integral(double t) {
  auto f = [=](double z) { return (1 - z) * (-std::expm1(-t * z)) / z; };
  return t * integrate(f, 0.0, 1.0).value + 0.5 * (t - 1 + std::exp(-t));
}

double iterated_integral(int n, const std::function<double(double)>& f, double t, const QuadratureConfig& q) {
  if (n < 1) throw std::invalid_argument("iterated integral order must be >= 1");
  auto g = [&](double s) { return std::pow(t - s, n - 1) * f(s); };
  return integrate(g, 0.0, t, q).value / boost::math::factorial<double>(n - 1);
}

namespace {

// Weights of the functional f -> I^N(f, t) for f given on the grid by local cubic interpolation.
std::vector<double> iterated_weights(int N, double t, const std::vector<double>& s) {
  const std::size_t G = s.size();
  if (G < 4) throw std::invalid_argument("curve grid needs at least 4 points");
  if (s.front() > 1e-12 || s.back() < t - 1e-12) throw std::invalid_argument("curve grid does not cover [0, t]");
  std::vector<double> w(G, 0.0);
  const GaussRule& gr = gauss_legendre(6);
  const double fact = boost::math::factorial<double>(N - 1);
  for (std::size_t i = 0; i + 1 < G && s[i] < t; ++i) {
    double a = s[i], b = std::min(s[i + 1], t);
    std::size_t lo = i == 0 ? 0 : std::min(i - 1, G - 4);
    for (std::size_t g = 0; g < gr.x.size(); ++g) {
      double x = 0.5 * (a + b) + 0.5 * (b - a) * gr.x[g];
      double kernel = 0.5 * (b - a) * gr.w[g] * std::pow(t - x, N - 1) / fact;
      for (std::size_t j = lo; j < lo + 4; ++j) {
        double L = 1;
        for (std::size_t m = lo; m < lo + 4; ++m)
          if (m != j) L *= (x - s[m]) / (s[j] - s[m]);
        w[j] += kernel * L;
      }
    }
  }
  return w;
}

}  // namespace

std::map<std::pair<int, int>, std::vector<double>> recursion_weights(int d, int k, int l, double t,
                                                                      const std::vector<double>& s_grid) {
  if (k < 0 || l < 0 || k > d - 1 || l > d - 1) throw std::invalid_argument("recursion indices out of range");
  std::map<std::pair<int, int>, std::vector<double>> out;
  for (int m = 0; m <= k; ++m) {
    for (int n = 0; n <= l; ++n) {
      int N = k + l - m - n + 1;
      double c = boost::math::binomial_coefficient<double>(k + l - m - n, k - m);
      int i = d - 1 - m, j = d - 1 - n;
      std::pair<int, int> key{std::max(i, j), std::min(i, j)};
      auto w = iterated_weights(N, t, s_grid);
      auto& acc = out[key];
      acc.resize(s_grid.size(), 0.0);
      for (std::size_t g = 0; g < w.size(); ++g) acc[g] += c * w[g];
    }
  }
  return out;
}

double covariance_recursion(int d, int k, int l, double t, const EACurves& curves) {
  double v = 0;
  for (const auto& [key, w] : recursion_weights(d, k, l, t, curves.s)) {
    auto it = curves.values.find(key);
    if (it == curves.values.end()) it = curves.values.find({key.second, key.first});
    if (it == curves.values.end()) throw std::invalid_argument("covariance_recursion: missing curve");
    if (it->second.size() != curves.s.size()) throw std::invalid_argument("curve length does not match grid");
    for (std::size_t g = 0; g < w.size(); ++g) v += w[g] * it->second[g];
  }
  return v;
}

namespace {

double pcf_constant(int d) {
  double b1 = beta_dim(d - 1);
  return beta_dim(d - 2) * beta_dim(d) / (b1 * b1);
}

void check_r(double t, double r) {
  if (!(t > 0)) throw std::invalid_argument("t must be positive");
  if (!(r > 0 && r < kPi)) throw std::invalid_argument("r must lie in (0, pi)");
}

// int_0^r sin^m
double sin_power_integral(int m, double r) {
  double full = boost::math::beta((m + 1) / 2.0, 0.5);
  auto half = [&](double x) { return 0.5 * boost::math::beta((m + 1) / 2.0, 0.5, std::pow(std::sin(x), 2)); };
  return r <= kPi / 2 ? half(r) : full - half(kPi - r);
}

}  // namespace

double pcf_split(int d, double t, double r) {
  check_r(t, r);
  return 1 + kPi * pcf_constant(d) * (-std::expm1(-t * r / kPi)) / (t * t * r * std::sin(r));
}

double pcf_poisson(int d, double t, double r) {
  check_r(t, r);
  return 1 + pcf_constant(d) / (t * std::sin(r));
}

double k_function_split(int d, double t, double r, const QuadratureConfig& q) {
  check_r(t, r);
  double c = kPi * pcf_constant(d) / (t * t);
  auto f = [=](double p) {
    return std::pow(std::sin(p), d - 1) + c * (-std::expm1(-t * p / kPi)) / p * std::pow(std::sin(p), d - 2);
  };
  return beta_dim(d - 1) / beta_dim(d) * integrate(f, 0.0, r, q).value;
}

double k_function_poisson(int d, double t, double r, const QuadratureConfig& q) {
  check_r(t, r);
  auto f1 = [=](double p) { return std::pow(std::sin(p), d - 1); };
  auto f2 = [=](double p) { return std::pow(std::sin(p), d - 2); };
  return beta_dim(d - 1) / beta_dim(d) * integrate(f1, 0.0, r, q).value +
         beta_dim(d - 2) / (t * beta_dim(d - 1)) * integrate(f2, 0.0, r, q).value;
}

double k_function_poisson_balls(int d, double t, double r, const QuadratureConfig&) {
  check_r(t, r);
  double ball = beta_dim(d - 1) * sin_power_integral(d - 1, r);
  double section = beta_dim(d - 2) * sin_power_integral(d - 2, r);
  return ball / beta_dim(d) + section / (t * beta_dim(d - 1));
}

double n1_split(int d, double t) {
  if (d < 2 || !(t > 0)) throw std::invalid_argument("n1_split: d >= 2, t > 0");
  return std::pow(2.0, d - 2) / std::tgamma(d - 1.0) * (2 * std::pow(t, d) / d + lower_incomplete_gamma(d - 1, t));
}

double n1_poisson(int d, double s) {
  if (d < 2 || s < 0) throw std::invalid_argument("n1_poisson: d >= 2, s >= 0");
  return std::pow(s, d - 1) / std::tgamma(static_cast<double>(d)) * (2 * s + std::exp(-s));
}

double mean_segment_length_split(int d, double t) {
  if (d < 2 || !(t > 0)) throw std::invalid_argument("mean_segment_length_split: d >= 2, t > 0");
  return static_cast<double>(d) / (d - 1) * 2 * kPi * std::pow(t, d - 1) /
         (2 * std::pow(t, d) + d * lower_incomplete_gamma(d - 1, t));
}

double mean_edge_length_poisson(double t) {
  if (t < 0) throw std::invalid_argument("t >= 0");
  return 2 * kPi / (2 * t + std::exp(-t));
}

double mixture_weight(int d, double t, double s) {
  if (!(s > 0 && s < t)) throw std::invalid_argument("mixture_weight: 0 < s < t");
  return std::pow(s, d - 2) * (2 * s + std::exp(-s));
}

double birth_density(int d, double t, double s) {
  return d * mixture_weight(d, t, s) / (2 * std::pow(t, d) + d * lower_incomplete_gamma(d - 1, t));
}

double mean_cell_count_2d(double t) { return t * t + 2 - std::exp(-t); }

}  // namespace sphsplit

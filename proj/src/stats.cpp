#include "sphsplit/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace sphsplit {

std::mt19937_64 derive_rng(std::uint64_t master, std::uint64_t index) {
  // splitmix64 over (master, index)
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t a = mix(master), b = mix(a ^ mix(index + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

void EstimateReport::finalize(double threshold) {
  ci_lo = point_estimate - 1.96 * std_error;
  ci_hi = point_estimate + 1.96 * std_error;
  if (analytic_reference) {
    double diff = point_estimate - *analytic_reference;
    z_score = std_error > 0 ? diff / std_error : (diff == 0 ? 0.0 : std::copysign(INFINITY, diff));
    pass = std::abs(*z_score) <= threshold;
  }
}

EstimateReport make_report(std::string name, std::size_t n, double est, double se, std::optional<double> reference,
                           double threshold) {
  EstimateReport r;
  r.name = std::move(name);
  r.n_replicates = n;
  r.point_estimate = est;
  r.std_error = se;
  r.analytic_reference = reference;
  r.finalize(threshold);
  return r;
}

namespace {

double pairwise_sum(const double* p, std::size_t n) {
  if (n <= 16) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += p[i];
    return s;
  }
  return pairwise_sum(p, n / 2) + pairwise_sum(p + n / 2, n - n / 2);
}

double mean_of(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("empty sample");
  return pairwise_sum(x.data(), x.size()) / static_cast<double>(x.size());
}

double central_moment(const std::vector<double>& x, double m, int k) {
  std::vector<double> t(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) t[i] = std::pow(x[i] - m, k);
  return mean_of(t);
}

}  // namespace

double Sample::mean() const { return mean_of(x); }

double Sample::variance() const {
  double n = static_cast<double>(x.size());
  return central_moment(x, mean(), 2) * n / (n - 1);
}

double Sample::mean_se() const { return std::sqrt(variance() / static_cast<double>(x.size())); }

double Sample::variance_se() const {
  double n = static_cast<double>(x.size()), m = mean();
  double m2 = central_moment(x, m, 2), m4 = central_moment(x, m, 4);
  double s2 = m2 * n / (n - 1);
  double v = (m4 - (n - 3) / (n - 1) * s2 * s2) / n;
  return std::sqrt(std::max(v, 0.0));
}

double covariance(const std::vector<double>& a, const std::vector<double>& b) {
  double ma = mean_of(a), mb = mean_of(b), n = static_cast<double>(a.size());
  std::vector<double> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) t[i] = (a[i] - ma) * (b[i] - mb);
  return mean_of(t) * n / (n - 1);
}

double covariance_se(const std::vector<double>& a, const std::vector<double>& b) {
  double ma = mean_of(a), mb = mean_of(b), n = static_cast<double>(a.size());
  std::vector<double> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) t[i] = (a[i] - ma) * (b[i] - mb);
  double c = mean_of(t);
  for (double& v : t) v = (v - c) * (v - c);
  return std::sqrt(mean_of(t) / n);
}

double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double s = 0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

KsResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) throw std::invalid_argument("empty sample");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double D = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double F = cdf(x[i]);
    D = std::max({D, (i + 1) / n - F, F - i / n});
  }
  double sn = std::sqrt(n);
  return {D, kolmogorov_q((sn + 0.12 + 0.11 / sn) * D)};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double D = 0;
  while (i < a.size() && j < b.size()) {
    double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    D = std::max(D, std::abs(i / na - j / nb));
  }
  double ne = std::sqrt(na * nb / (na + nb));
  return {D, kolmogorov_q((ne + 0.12 + 0.11 / ne) * D)};
}

double widened_threshold(std::size_t gates, double base) {
  if (gates <= 20) return base;
  boost::math::normal_distribution<double> N;
  double p = 2 * boost::math::cdf(boost::math::complement(N, base));
  double pg = p * 20.0 / static_cast<double>(gates);
  return boost::math::quantile(boost::math::complement(N, pg / 2));
}

std::string format_double(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace sphsplit

#include "sphsplit/poissontess.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sphsplit {

bool in_general_position(const std::vector<GreatHypersphere>& hs, double tol) {
  if (hs.empty()) return true;
  const int n = static_cast<int>(hs.front().normal.size());
  const int N = static_cast<int>(hs.size());
  const int k = std::min(N, n);
  std::vector<int> idx(k);
  bool ok = true;
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (!ok) return;
    if (pos == k) {
      Mat M(n, k);
      for (int i = 0; i < k; ++i) M.col(i) = hs[idx[i]].normal;
      Eigen::JacobiSVD<Mat> svd(M);
      if (svd.singularValues()(k - 1) <= tol) ok = false;
      return;
    }
    for (int i = start; i < N; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return ok;
}

PoissonGHT sample_poisson(int d, const DirectionDistribution& kappa, double t, Rng& rng) {
  if (t < 0) throw std::invalid_argument("intensity must be nonnegative");
  PoissonGHT P;
  P.d = d;
  P.t = t;
  if (t == 0) return P;
  std::poisson_distribution<long long> pois(t);
  long long N = pois(rng);
  do {
    P.normals.clear();
    for (long long i = 0; i < N; ++i) P.normals.push_back(kappa.sample(rng));
  } while (!in_general_position(P.normals));
  return P;
}

namespace {

// Splits every cell whose interior S meets; returns false on a degenerate draw.
bool cut_all(std::vector<SphericalPolytope>& cells, const GreatHypersphere& S) {
  for (const auto& c : cells)
    if (c.hits_interior(S.normal) == HitResult::Degenerate) return false;
  std::vector<SphericalPolytope> out;
  out.reserve(cells.size() * 2);
  for (const auto& c : cells) {
    if (c.hits_interior(S.normal) == HitResult::Miss) {
      out.push_back(c);
      continue;
    }
    SplitResult r = split(c, S);
    out.push_back(std::move(r.plus));
    out.push_back(std::move(r.minus));
  }
  cells = std::move(out);
  return true;
}

}  // namespace

DynamicPath dynamic_simulate(int d, const DirectionDistribution& kappa, double t, Rng& rng) {
  if (t < 0) throw std::invalid_argument("time must be nonnegative");
  DynamicPath path;
  path.cells.push_back(SphericalPolytope::full_sphere(d + 1));
  std::exponential_distribution<double> E(1.0);
  double time = 0;
  for (;;) {
    time += E(rng);
    if (time > t) break;
    for (;;) {
      GreatHypersphere S = kappa.sample(rng);
      std::vector<GreatHypersphere> trial = path.normals;
      trial.push_back(S);
      if (!in_general_position(trial)) continue;
      try {
        if (!cut_all(path.cells, S)) continue;
      } catch (const DegenerateGeometry&) {
        continue;
      }
      path.normals.push_back(S);
      break;
    }
    path.arrival_times.push_back(time);
    path.cell_counts.push_back(path.cells.size());
  }
  return path;
}

namespace {

long long binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

long long face_counts(long long N, int d, int k) {
  if (N < 0) throw std::invalid_argument("negative hypersphere count");
  if (k == 0) return N >= d ? 2 * binom(N, d) : 0;
  if (k == 1) {
    if (N == d - 1) return 1;
    return N >= d ? 2LL * d * binom(N, d) : 0;
  }
  if (k == d && d == 2) return N == 0 ? 1 : N * N - N + 2;
  throw std::invalid_argument("face_counts supports k = 0, 1, and k = d = 2");
}

double total_edge_length(long long N, int d) { return 2 * kPi * static_cast<double>(binom(N, d - 1)); }

Arrangement2D arrangement_2d(const PoissonGHT& P) {
  if (P.d != 2) throw std::invalid_argument("arrangement needs d = 2");
  Arrangement2D A;
  A.cells.push_back(SphericalPolytope::full_sphere(3));
  for (const auto& S : P.normals)
    if (!cut_all(A.cells, S)) throw DegenerateGeometry("arrangement input is not in general position");
  const int N = static_cast<int>(P.normals.size());
  int incidences = 0;  // each vertex lies on exactly two circles
  for (int i = 0; i < N; ++i) {
    Eigen::Vector3d u = P.normals[i].normal;
    if (N == 1) {
      A.edges.push_back({i, 2 * kPi});
      continue;
    }
    Mat F = orthonormal_frame(P.normals[i].normal);
    std::vector<double> ang;
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      Eigen::Vector3d w = u.cross(Eigen::Vector3d(P.normals[j].normal)).normalized();
      for (const Eigen::Vector3d& v : {w, Eigen::Vector3d(-w)}) {
        double a = std::atan2(v.dot(F.col(1)), v.dot(F.col(0)));
        ang.push_back(a < 0 ? a + 2 * kPi : a);
      }
    }
    std::sort(ang.begin(), ang.end());
    incidences += static_cast<int>(ang.size());
    for (std::size_t k = 0; k < ang.size(); ++k) {
      double next = k + 1 < ang.size() ? ang[k + 1] : ang[0] + 2 * kPi;
      A.edges.push_back({i, next - ang[k]});
    }
  }
  A.vertices = incidences / 2;
  return A;
}

double measured_total_edge_length(const PoissonGHT& P) {
  double s = 0;
  for (const auto& e : arrangement_2d(P).edges) s += e.length;
  return s;
}

std::string poisson_csv(const PoissonGHT& P) {
  std::ostringstream os;
  os << "# sphere-split v" << SPHSPLIT_VERSION << " schema=poisson_normals\n";
  os << "index,normal_coords\n";
  for (std::size_t i = 0; i < P.normals.size(); ++i) {
    os << i << ',';
    const Vec& u = P.normals[i].normal;
    for (Eigen::Index k = 0; k < u.size(); ++k) os << (k ? ";" : "") << format_double(u[k]);
    os << '\n';
  }
  return os.str();
}

}  // namespace sphsplit

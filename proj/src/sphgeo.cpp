#include "sphsplit/sphgeo.hpp"

#include <algorithm>
#include <boost/math/special_functions/legendre.hpp>
#include <map>
#include <mutex>
#include <numeric>

namespace sphsplit {

Vec normalized(const Vec& v) {
  double nv = v.norm();
  if (!(nv > 0)) throw std::invalid_argument("cannot normalize a zero vector");
  return v / nv;
}

Vec canonicalize(const Vec& u) {
  Vec v = normalized(u);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] > 0) return v;
    if (v[i] < 0) return -v;
  }
  return v;
}

double angle_between(const Vec& a, const Vec& b) {
  Vec ua = normalized(a), ub = normalized(b);
  return 2.0 * std::atan2((ua - ub).norm(), (ua + ub).norm());
}

double geodesic_distance(const Vec& x, const Vec& y) {
  double c = std::clamp(x.dot(y), -1.0, 1.0);
  return std::acos(c);
}

Side side_of(const GreatHypersphere& S, const Vec& x, double eps) {
  double s = S.normal.dot(x);
  if (s > eps) return Side::Plus;
  if (s < -eps) return Side::Minus;
  return Side::OnBoundary;
}

GeodesicSegment::GeodesicSegment(const Vec& a_, const Vec& b_) : a(normalized(a_)), b(normalized(b_)) {
  if (a.size() != b.size()) throw std::invalid_argument("segment endpoints differ in dimension");
  length = angle_between(a, b);
  if (length > kPi - 1e-12) throw std::invalid_argument("segment of length pi has no unique geodesic");
}

Vec GeodesicSegment::point(double theta) const {
  if (length == 0) return a;
  Vec q = normalized(b - a.dot(b) * a);
  return std::cos(theta) * a + std::sin(theta) * q;
}

bool segment_hit(const GreatHypersphere& S, const GeodesicSegment& seg, double eps) {
  double sa = S.normal.dot(seg.a), sb = S.normal.dot(seg.b);
  if (std::abs(sa) <= eps || std::abs(sb) <= eps) return true;
  return (sa > 0) != (sb > 0);
}

Vec sample_uniform_sphere(int d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(d + 1);
  for (;;) {
    for (int i = 0; i <= d; ++i) v[i] = g(rng);
    double nv = v.norm();
    if (nv > 1e-100) return v / nv;
  }
}

Mat orthonormal_frame(const Vec& u) {
  const Eigen::Index n = u.size();
  Eigen::HouseholderQR<Mat> qr{Mat(u)};
  Mat Q = qr.householderQ() * Mat::Identity(n, n);
  return Q.rightCols(n - 1);
}

Vec sample_uniform_on_subsphere(const GreatHypersphere& S, Rng& rng) {
  Mat F = orthonormal_frame(S.normal);
  return F * sample_uniform_sphere(S.dim() - 1, rng);
}

double beta_dim(int j) {
  return 2.0 * std::pow(kPi, 0.5 * (j + 1)) / std::tgamma(0.5 * (j + 1));
}

namespace {

int matrix_rank(const Mat& M) {
  if (M.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<Mat> qr(M);
  qr.setThreshold(1e-9);
  return static_cast<int>(qr.rank());
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool includes(const std::vector<int>& super, const std::vector<int>& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace

SphericalPolytope SphericalPolytope::full_sphere(int n) {
  SphericalPolytope c;
  c.n_ = n;
  c.lin_ = Mat::Identity(n, n);
  return c;
}

SphericalPolytope SphericalPolytope::from_halfspaces(int n, const std::vector<Vec>& normals) {
  SphericalPolytope c = full_sphere(n);
  for (const Vec& v : normals) {
    if (v.size() != n) throw std::invalid_argument("normal has wrong dimension");
    c = c.intersect(normalized(v));
  }
  return c;
}

bool SphericalPolytope::full_dimensional() const {
  Mat M(n_, lin_.cols() + static_cast<Eigen::Index>(rays_.size()));
  M.leftCols(lin_.cols()) = lin_;
  for (std::size_t i = 0; i < rays_.size(); ++i) M.col(lin_.cols() + static_cast<Eigen::Index>(i)) = rays_[i].dir;
  return matrix_rank(M) == n_;
}

bool SphericalPolytope::contains(const Vec& x, double eps) const {
  for (const Vec& nv : normals_)
    if (nv.dot(x) < -eps) return false;
  return true;
}

HitResult SphericalPolytope::hits_interior(const Vec& u, double eps) const {
  if (lin_.cols() > 0) {
    Vec pu = lin_.transpose() * u;
    return pu.norm() > eps ? HitResult::Hit : HitResult::Degenerate;
  }
  bool plus = false, minus = false;
  for (const Ray& r : rays_) {
    double s = u.dot(r.dir);
    if (std::abs(s) <= eps) return HitResult::Degenerate;
    (s > 0 ? plus : minus) = true;
  }
  return (plus && minus) ? HitResult::Hit : HitResult::Miss;
}

SphericalPolytope SphericalPolytope::intersect(const Vec& u) const {
  SphericalPolytope out;
  out.n_ = n_;
  out.normals_ = normals_;
  out.normals_.push_back(u);
  const int idx = static_cast<int>(normals_.size());
  const Eigen::Index k = lin_.cols();

  Vec pu = lin_.transpose() * u;
  double nu = k > 0 ? pu.norm() : 0.0;
  if (nu > kEps) {
    Vec lstar = lin_ * pu / nu;
    Mat P = lin_ - lstar * (lstar.transpose() * lin_);
    if (k > 1) {
      Eigen::ColPivHouseholderQR<Mat> qr(P);
      Mat Q = qr.householderQ() * Mat::Identity(n_, k - 1);
      out.lin_ = Q;
    } else {
      out.lin_ = Mat(n_, 0);
    }
    for (const Ray& r : rays_) {
      Vec rp = r.dir - (u.dot(r.dir) / nu) * lstar;
      if (out.lin_.cols() > 0) rp -= out.lin_ * (out.lin_.transpose() * rp);
      Ray nr{normalized(rp), r.tight};
      nr.tight.push_back(idx);
      out.rays_.push_back(std::move(nr));
    }
    Ray lr{lstar, {}};
    lr.tight.resize(idx);
    std::iota(lr.tight.begin(), lr.tight.end(), 0);
    out.rays_.push_back(std::move(lr));
    out.prune();
    return out;
  }

  std::vector<double> s(rays_.size());
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    s[i] = u.dot(rays_[i].dir);
    if (std::abs(s[i]) <= kEps) s[i] = 0.0;
  }
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (s[i] > 0) out.rays_.push_back(rays_[i]);
    if (s[i] == 0) {
      Ray r = rays_[i];
      r.tight.push_back(idx);
      out.rays_.push_back(std::move(r));
    }
  }
  for (std::size_t p = 0; p < rays_.size(); ++p) {
    if (!(s[p] > 0)) continue;
    for (std::size_t q = 0; q < rays_.size(); ++q) {
      if (!(s[q] < 0)) continue;
      std::vector<int> common = sorted_intersection(rays_[p].tight, rays_[q].tight);
      if (static_cast<int>(common.size()) < n_ - k - 2) continue;
      bool adjacent = true;
      for (std::size_t r = 0; r < rays_.size() && adjacent; ++r)
        if (r != p && r != q && includes(rays_[r].tight, common)) adjacent = false;
      if (!adjacent) continue;
      Ray nr{normalized(s[p] * rays_[q].dir - s[q] * rays_[p].dir), common};
      nr.tight.push_back(idx);
      out.rays_.push_back(std::move(nr));
    }
  }
  // lineality orthogonal to u survives unchanged
  out.lin_ = lin_;
  out.prune();
  return out;
}

void SphericalPolytope::prune() {
  const int m = static_cast<int>(normals_.size());
  std::vector<int> remap(m, -1);
  std::vector<Vec> kept;
  for (int i = 0; i < m; ++i) {
    std::vector<const Vec*> cols;
    for (const Ray& r : rays_)
      if (std::binary_search(r.tight.begin(), r.tight.end(), i)) cols.push_back(&r.dir);
    Mat M(n_, lin_.cols() + static_cast<Eigen::Index>(cols.size()));
    M.leftCols(lin_.cols()) = lin_;
    for (std::size_t j = 0; j < cols.size(); ++j) M.col(lin_.cols() + static_cast<Eigen::Index>(j)) = *cols[j];
    if (matrix_rank(M) == n_ - 1) {
      remap[i] = static_cast<int>(kept.size());
      kept.push_back(normals_[i]);
    }
  }
  if (static_cast<int>(kept.size()) == m) return;
  normals_ = std::move(kept);
  for (Ray& r : rays_) {
    std::vector<int> t;
    for (int i : r.tight)
      if (remap[i] >= 0) t.push_back(remap[i]);
    r.tight = std::move(t);
  }
}

HitResult hits_interior(const GreatHypersphere& S, const SphericalPolytope& c) {
  return c.hits_interior(S.normal);
}

SphericalPolytope::Kind2 SphericalPolytope::kind2() const {
  if (n_ != 3) throw std::invalid_argument("two-dimensional measure requested for d != 2");
  switch (lin_.cols()) {
    case 3: return Kind2::Full;
    case 2: return Kind2::Hemisphere;
    case 1: return Kind2::Lune;
    default: return Kind2::Polygon;
  }
}

std::vector<Vec> SphericalPolytope::vertex_cycle() const {
  Kind2 k = kind2();
  if (k == Kind2::Full || k == Kind2::Hemisphere) return {};
  if (k == Kind2::Lune) return {Vec(lin_.col(0)), Vec(-lin_.col(0))};
  Vec c = Vec::Zero(3);
  for (const Ray& r : rays_) c += r.dir;
  c = normalized(c);
  Eigen::Vector3d c3 = c;
  Eigen::Vector3d e1 = normalized(rays_[0].dir - rays_[0].dir.dot(c) * c);
  Eigen::Vector3d e2 = c3.cross(e1);
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < rays_.size(); ++i)
    order.emplace_back(std::atan2(rays_[i].dir.dot(e2), rays_[i].dir.dot(e1)), i);
  std::sort(order.begin(), order.end());
  std::vector<Vec> out;
  for (auto& [a, i] : order) out.push_back(rays_[i].dir);
  return out;
}

namespace {

double tangent_angle(const Vec& v, const Vec& a, const Vec& b) {
  Eigen::Vector3d ta = a - a.dot(v) * v;
  Eigen::Vector3d tb = b - b.dot(v) * v;
  return std::atan2(ta.cross(tb).norm(), ta.dot(tb));
}

}  // namespace

std::vector<double> SphericalPolytope::interior_angles() const {
  Kind2 k = kind2();
  if (k == Kind2::Full || k == Kind2::Hemisphere) return {};
  if (k == Kind2::Lune) {
    double a = angle_between(rays_[0].dir, rays_[1].dir);
    return {a, a};
  }
  std::vector<Vec> v = vertex_cycle();
  const std::size_t m = v.size();
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = tangent_angle(v[i], v[(i + m - 1) % m], v[(i + 1) % m]);
  return out;
}

double SphericalPolytope::area() const {
  switch (kind2()) {
    case Kind2::Full: return 4 * kPi;
    case Kind2::Hemisphere: return 2 * kPi;
    case Kind2::Lune: return 2 * angle_between(rays_[0].dir, rays_[1].dir);
    case Kind2::Polygon: break;
  }
  std::vector<double> a = interior_angles();
  double sum = std::accumulate(a.begin(), a.end(), 0.0);
  return sum - (static_cast<double>(a.size()) - 2) * kPi;
}

double SphericalPolytope::perimeter() const {
  switch (kind2()) {
    case Kind2::Full: return 0.0;
    case Kind2::Hemisphere:
    case Kind2::Lune: return 2 * kPi;
    case Kind2::Polygon: break;
  }
  std::vector<Vec> v = vertex_cycle();
  double p = 0;
  for (std::size_t i = 0; i < v.size(); ++i) p += angle_between(v[i], v[(i + 1) % v.size()]);
  return p;
}

double polygon_area_2d(const SphericalPolytope& c) { return c.area(); }

bool Piece::contains(const Vec& x, double eps) const {
  if (std::abs(normal.dot(x)) > eps) return false;
  for (const Vec& nv : parent_normals)
    if (nv.dot(x) < -eps) return false;
  return true;
}

Arc Piece::arc() const {
  if (local.ambient() != 2) throw std::invalid_argument("arc() needs d = 2");
  Vec f0 = frame.col(0), f1 = frame.col(1);
  switch (local.lineality_dim()) {
    case 2: return {f0, f1, 2 * kPi};
    case 1: return {frame * local.lineality().col(0), frame * local.rays()[0].dir, kPi};
    default: break;
  }
  const auto& r = local.rays();
  if (r.size() != 2) throw std::logic_error("pointed arc needs two rays");
  Vec p = frame * r[0].dir, b = frame * r[1].dir;
  return {p, normalized(b - p.dot(b) * p), angle_between(r[0].dir, r[1].dir)};
}

SplitResult split(const SphericalPolytope& c, const GreatHypersphere& S) {
  const Vec& u = S.normal;
  HitResult h = c.hits_interior(u);
  if (h == HitResult::Degenerate) throw DegenerateGeometry("hypersphere touches a boundary generator");
  if (h == HitResult::Miss) throw std::invalid_argument("split: hypersphere misses the cell interior");
  SplitResult out{c.intersect(u), c.intersect(-u), {}};
  Piece& pc = out.piece;
  pc.normal = u;
  pc.frame = orthonormal_frame(u);
  pc.parent_normals = c.normals();
  std::vector<Vec> loc;
  for (const Vec& nv : c.normals()) {
    Vec m = pc.frame.transpose() * nv;
    if (m.norm() <= kEps) throw DegenerateGeometry("hypersphere coincides with a facet");
    loc.push_back(m / m.norm());
  }
  pc.local = SphericalPolytope::from_halfspaces(c.ambient() - 1, loc);
  return out;
}

IntrinsicVolumes2 intrinsic_volumes_2d(const SphericalPolytope& c) {
  using K = SphericalPolytope::Kind2;
  const double f = 1.0 / (4 * kPi);
  switch (c.kind2()) {
    case K::Full: return {0, 0, 1};
    case K::Hemisphere: return {0, 0.5, 0.5};
    default: break;
  }
  double ext = 0;
  for (double a : c.interior_angles()) ext += kPi - a;
  return {ext * f, c.perimeter() * f, c.area() * f};
}

IntrinsicVolumes2 intrinsic_volumes_segment(double length) { return {0.5, length / (2 * kPi), 0.0}; }

IntrinsicVolumes2 intrinsic_volumes_arc(const Arc& a) {
  if (a.full()) return {0.0, 1.0, 0.0};
  return intrinsic_volumes_segment(a.length);
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule g;
  for (double z : boost::math::legendre_p_zeros<double>(n)) {
    double dp = boost::math::legendre_p_prime<double>(n, z);
    double w = 2.0 / ((1 - z * z) * dp * dp);
    g.x.push_back(z);
    g.w.push_back(w);
    if (z != 0.0) {
      g.x.push_back(-z);
      g.w.push_back(w);
    }
  }
  return cache.emplace(n, std::move(g)).first->second;
}

namespace {

std::vector<Arc> boundary_arcs(const SphericalPolytope& c) {
  using K = SphericalPolytope::Kind2;
  std::vector<Arc> out;
  switch (c.kind2()) {
    case K::Full: break;
    case K::Hemisphere: {
      Mat L = c.lineality();
      out.push_back({L.col(0), L.col(1), 2 * kPi});
      break;
    }
    case K::Lune: {
      Vec l = c.lineality().col(0);
      for (const auto& r : c.rays()) out.push_back({l, r.dir, kPi});
      break;
    }
    case K::Polygon: {
      std::vector<Vec> v = c.vertex_cycle();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec& a = v[i];
        const Vec& b = v[(i + 1) % v.size()];
        out.push_back({a, normalized(b - a.dot(b) * a), angle_between(a, b)});
      }
      break;
    }
  }
  return out;
}

}  // namespace

double curvature_measure_2d(const SphericalPolytope& c, int j, const std::function<double(const Vec&)>& h, Rng& rng,
                            const CurvatureOptions& opt) {
  using K = SphericalPolytope::Kind2;
  const double f = 1.0 / (4 * kPi);
  if (j == 0) {
    std::vector<Vec> v = c.vertex_cycle();
    std::vector<double> a = c.interior_angles();
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += h(v[i]) * (kPi - a[i]);
    return s * f;
  }
  if (j == 1) {
    double s = 0;
    for (const Arc& a : boundary_arcs(c)) s += arc_integral(a, h, opt.gauss_nodes);
    return s * f;
  }
  if (j != 2) throw std::invalid_argument("curvature measure index must be 0, 1 or 2");
  // Uniform draws from a cap around the cell (the whole sphere when no cap fits).
  Vec center = Vec::Unit(3, 2);
  double cosr = -1.0;
  if (c.kind2() == K::Polygon) {
    center.setZero();
    for (const auto& r : c.rays()) center += r.dir;
    center = normalized(center);
    cosr = 1.0;
    for (const auto& r : c.rays()) cosr = std::min(cosr, r.dir.dot(center));
  }
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Mat F = orthonormal_frame(center);
  double cap = 2 * kPi * (1 - cosr), sum = 0;
  for (int i = 0; i < opt.mc_samples; ++i) {
    double z = cosr + (1 - cosr) * U(rng);
    double phi = 2 * kPi * U(rng), rho = std::sqrt(std::max(0.0, 1 - z * z));
    Vec x = z * center + rho * (std::cos(phi) * F.col(0) + std::sin(phi) * F.col(1));
    if (c.contains(x, 0.0)) sum += h(x);
  }
  return cap * sum / opt.mc_samples * f;
}

double arc_integral(const Arc& a, const std::function<double(const Vec&)>& h, int nodes) {
  const GaussRule& g = gauss_legendre(nodes);
  double half = 0.5 * a.length, s = 0;
  for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * h(a.point(half * (g.x[i] + 1)));
  return s * half;
}

MeasureEstimate volume_mc(const SphericalPolytope& c, int samples, Rng& rng) {
  int d = c.ambient() - 1, hit = 0;
  for (int i = 0; i < samples; ++i)
    if (c.contains(sample_uniform_sphere(d, rng), 0.0)) ++hit;
  double p = static_cast<double>(hit) / samples, b = beta_dim(d);
  return {b * p, b * std::sqrt(p * (1 - p) / samples)};
}

MeasureEstimate piece_measure(const Piece& piece, Rng* rng, int samples) {
  const SphericalPolytope& L = piece.local;
  if (L.ambient() == 2) {
    if (L.lineality_dim() == 2) return {2 * kPi, 0};
    if (L.lineality_dim() == 1) return {kPi, 0};
    return {angle_between(L.rays()[0].dir, L.rays()[1].dir), 0};
  }
  if (L.ambient() == 3) return {L.area(), 0};
  if (!rng) throw std::invalid_argument("piece_measure for d >= 4 needs a random source");
  return volume_mc(L, samples, *rng);
}

}  // namespace sphsplit

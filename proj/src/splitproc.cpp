#include "sphsplit/splitproc.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

namespace sphsplit {

SplittingTessellation SplittingTessellation::initial(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  SplittingTessellation Y;
  Y.d = d;
  Y.cells.push_back({0, SphericalPolytope::full_sphere(d + 1)});
  Y.next_id = 1;
  return Y;
}

SplittingTessellation SplittingTessellation::from_cells(int d, std::vector<SphericalPolytope> cells) {
  if (cells.empty()) throw std::invalid_argument("initial tessellation needs at least one cell");
  SplittingTessellation Y;
  Y.d = d;
  double area = 0;
  for (auto& c : cells) {
    if (c.ambient() != d + 1 || !c.full_dimensional()) throw std::invalid_argument("initial cell is not a valid cell");
    if (d == 2) area += c.area();
    Y.cells.push_back({Y.next_id++, std::move(c)});
  }
  if (d == 2 && std::abs(area - 4 * kPi) > 1e-8) throw std::invalid_argument("initial cells do not partition the sphere");
  Y.initial_cells = Y.cells.size();
  return Y;
}

SplitObserver additivity_audit(double* area_err, double* perimeter_err) {
  return [=](const SphericalPolytope& c, const SplitResult& r) {
    if (c.ambient() != 3) return;
    double a = std::abs(c.area() - r.plus.area() - r.minus.area());
    double len = piece_measure(r.piece).value;
    double p = std::abs(r.plus.perimeter() + r.minus.perimeter() - c.perimeter() - 2 * len);
    *area_err = std::max(*area_err, a);
    *perimeter_err = std::max(*perimeter_err, p);
  };
}

namespace {

void record_split(SplittingTessellation& Y, std::size_t idx, const GreatHypersphere& S, SplitResult&& r, double time,
                  Rng& rng, const SplitObserver& obs) {
  if (obs) obs(Y.cells[idx].poly, r);
  double m;
  if (Y.d <= 3) {
    m = piece_measure(r.piece).value;
  } else {
    Rng local(rng());
    m = piece_measure(r.piece, &local).value;
  }
  int parent = Y.cells[idx].id, a = Y.next_id++, b = Y.next_id++;
  Y.events.push_back({time, parent, a, b, S, std::move(r.piece), m});
  Y.cells[idx] = {a, std::move(r.plus)};
  Y.cells.push_back({b, std::move(r.minus)});
}

}  // namespace

void advance(SplittingTessellation& Y, const DirectionDistribution& kappa, double t, Rng& rng,
             const SplitObserver& obs) {
  if (t < Y.t_end) throw std::invalid_argument("cannot advance backwards in time");
  if (kappa.dim() != Y.d) throw std::invalid_argument("direction distribution has the wrong dimension");
  std::exponential_distribution<double> E(1.0);
  double time = Y.t_end;
  for (;;) {
    time += E(rng) / static_cast<double>(Y.cells.size());
    if (time > t) break;
    std::uniform_int_distribution<std::size_t> pick(0, Y.cells.size() - 1);
    std::size_t idx = pick(rng);
    for (;;) {
      GreatHypersphere S = kappa.sample(rng);
      HitResult h = Y.cells[idx].poly.hits_interior(S.normal);
      if (h == HitResult::Degenerate) continue;
      if (h == HitResult::Miss) {
        ++Y.rejected_count;
        break;
      }
      try {
        record_split(Y, idx, S, split(Y.cells[idx].poly, S), time, rng, obs);
      } catch (const DegenerateGeometry&) {
        continue;
      }
      break;
    }
  }
  Y.t_end = t;
}

SplittingTessellation simulate(int d, const DirectionDistribution& kappa, double t, Rng& rng,
                               const SplittingTessellation* initial, const SplitObserver& obs) {
  if (t < 0) throw std::invalid_argument("time must be nonnegative");
  SplittingTessellation Y = initial ? *initial : SplittingTessellation::initial(d);
  if (Y.d != d) throw std::invalid_argument("initial tessellation has the wrong dimension");
  advance(Y, kappa, t, rng, obs);
  return Y;
}

SplittingTessellation simulate_direct_2d(double t, Rng& rng, const SplitObserver& obs) {
  if (t < 0) throw std::invalid_argument("time must be nonnegative");
  SplittingTessellation Y = SplittingTessellation::initial(2);
  std::vector<double> rate{1.0};
  std::exponential_distribution<double> E(1.0);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double time = 0;
  for (;;) {
    double total = 0;
    for (double r : rate) total += r;
    time += E(rng) / total;
    if (time > t) break;
    double x = U(rng) * total;
    std::size_t idx = 0;
    while (idx + 1 < rate.size() && x >= rate[idx]) x -= rate[idx++];
    for (;;) {
      Vec u = canonicalize(sample_uniform_sphere(2, rng));
      GreatHypersphere S(u);
      if (Y.cells[idx].poly.hits_interior(S.normal) != HitResult::Hit) continue;
      try {
        record_split(Y, idx, S, split(Y.cells[idx].poly, S), time, rng, obs);
      } catch (const DegenerateGeometry&) {
        continue;
      }
      break;
    }
    rate[idx] = Y.cells[idx].poly.perimeter() / (2 * kPi);
    rate.push_back(Y.cells.back().poly.perimeter() / (2 * kPi));
  }
  Y.t_end = t;
  return Y;
}

double union_measure(const SplittingTessellation& Y) {
  double s = 0;
  for (const auto& e : Y.events) s += e.piece_measure;
  return s;
}

double union_measure(const SplittingTessellation& Y, const std::function<double(const Vec&)>& h, int gauss_nodes) {
  if (Y.d != 2) throw std::invalid_argument("weighted union measure is implemented for d = 2");
  double s = 0;
  for (const auto& e : Y.events) s += arc_integral(e.piece.arc(), h, gauss_nodes);
  return s;
}

double sigma_j(const SplittingTessellation& Y, int j, Rng* rng) {
  if (Y.d == 2) {
    if (j < 0 || j > 2) throw std::invalid_argument("j must be 0, 1 or 2");
    double s = 0;
    for (const auto& c : Y.cells) {
      IntrinsicVolumes2 v = intrinsic_volumes_2d(c.poly);
      s += j == 0 ? v.v0 : j == 1 ? v.v1 : v.v2;
    }
    return s;
  }
  if (Y.d == 3 && j == 2) return union_measure(Y) / beta_dim(2);
  if (Y.d == 3 && j == 3) {
    if (!rng) throw std::invalid_argument("volume sums for d = 3 need a random source");
    double s = 0;
    for (const auto& c : Y.cells) s += volume_mc(c.poly, 20000, *rng).value / beta_dim(3);
    return s;
  }
  throw std::invalid_argument("unsupported (d, j) for sigma_j");
}

double sigma_j(const SplittingTessellation& Y, int j, const std::function<double(const Vec&)>& h, Rng& rng) {
  if (Y.d != 2) throw std::invalid_argument("weighted curvature sums are implemented for d = 2");
  double s = 0;
  for (const auto& c : Y.cells) s += curvature_measure_2d(c.poly, j, h, rng);
  return s;
}

std::vector<MaximalSegment> maximal_segments(const SplittingTessellation& Y) {
  if (Y.d != 2) throw std::invalid_argument("maximal segments are defined for d = 2");
  std::vector<MaximalSegment> out;
  for (const auto& e : Y.events) out.push_back({e.time, e.piece.arc(), e.piece_measure});
  return out;
}

namespace {

// Does the cone K meet the great hypersphere u-perp?
bool cone_meets(const SphericalPolytope& K, const Vec& u) {
  if (K.lineality_dim() > 0 && (K.lineality().transpose() * u).norm() > kEps) return true;
  bool plus = false, minus = false;
  for (const auto& r : K.rays()) {
    double s = u.dot(r.dir);
    if (std::abs(s) <= kEps) return true;
    (s > 0 ? plus : minus) = true;
  }
  return plus && minus;
}

}  // namespace

bool capacity_indicator(const SplittingTessellation& Y, const SetSpec& C) {
  for (const auto& e : Y.events) {
    const Vec& u = e.piece.normal;
    for (const Vec& p : C.points)
      if (e.piece.contains(p, kEps)) return false;
    for (const auto& s : C.segments) {
      double sa = u.dot(s.a), sb = u.dot(s.b);
      if ((sa > 0) == (sb > 0) && std::abs(sa) > kEps && std::abs(sb) > kEps) continue;
      Vec x = std::abs(sa - sb) > 0 ? normalized(sa * s.b - sb * s.a) : s.a;
      if (x.dot(s.a + s.b) < 0) x = -x;
      if (e.piece.contains(x)) return false;
    }
    for (const auto& c : C.cells) {
      std::vector<Vec> hs = c.normals();
      for (const Vec& nv : e.piece.parent_normals) hs.push_back(nv);
      if (cone_meets(SphericalPolytope::from_halfspaces(c.ambient(), hs), u)) return false;
    }
  }
  return true;
}

ArrangementGraph arrangement_graph_2d(const SplittingTessellation& Y) {
  if (Y.d != 2) throw std::invalid_argument("arrangement graph needs d = 2");
  ArrangementGraph g;
  g.F = static_cast<int>(Y.cells.size());
  std::vector<Arc> arcs;
  for (const auto& e : Y.events) arcs.push_back(e.piece.arc());
  std::vector<int> interior_count(arcs.size(), 0);
  std::vector<int> degree;
  for (std::size_t j = 0; j < arcs.size(); ++j) {
    if (arcs[j].full()) continue;
    for (const Vec& v : {arcs[j].p, arcs[j].point(arcs[j].length)}) {
      int m = 0;
      for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (i == j) continue;
        const Vec& u = Y.events[i].piece.normal;
        if (std::abs(u.dot(v)) > 1e-9) continue;
        double th = std::atan2(v.dot(arcs[i].q), v.dot(arcs[i].p));
        if (th < 0) th += 2 * kPi;
        bool inside = arcs[i].full() || (th > 1e-9 && th < arcs[i].length - 1e-9);
        if (inside) {
          ++m;
          ++interior_count[i];
        }
      }
      if (m != 1) g.all_endpoints_interior = false;
      degree.push_back(1 + 2 * m);
      ++g.V;
    }
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].full())
      g.E += std::max(interior_count[i], 1);
    else
      g.E += interior_count[i] + 1;
  }
  for (int dg : degree) {
    if (static_cast<int>(g.degree_histogram.size()) <= dg) g.degree_histogram.resize(dg + 1, 0);
    ++g.degree_histogram[dg];
  }
  return g;
}

StructureAudit audit_structure_2d(const SplittingTessellation& Y) {
  StructureAudit a;
  double area = 0;
  for (const auto& c : Y.cells) {
    area += c.poly.area();
    for (const auto& r : c.poly.rays())
      for (const Vec& nv : c.poly.normals()) a.max_hv_violation = std::max(a.max_hv_violation, -nv.dot(r.dir));
    if (c.poly.lineality_dim() == 0) {
      for (const Vec& nv : c.poly.normals()) {
        int support = 0;
        for (const auto& r : c.poly.rays())
          if (std::abs(nv.dot(r.dir)) < 1e-10) ++support;
        if (support < Y.d) a.facets_supported = false;
      }
    }
  }
  a.area_sum_error = std::abs(area - 4 * kPi);
  return a;
}

std::string event_log_csv(const SplittingTessellation& Y) {
  std::ostringstream os;
  os << "# sphere-split v" << SPHSPLIT_VERSION << " schema=events\n";
  os << "time,parent_id,child_id_a,child_id_b,normal_coords,piece_measure\n";
  for (const auto& e : Y.events) {
    os << format_double(e.time) << ',' << e.parent_id << ',' << e.child_a << ',' << e.child_b << ',';
    for (Eigen::Index i = 0; i < e.hypersphere.normal.size(); ++i)
      os << (i ? ";" : "") << format_double(e.hypersphere.normal[i]);
    os << ',' << format_double(e.piece_measure) << '\n';
  }
  return os.str();
}

std::string snapshot_json(const SplittingTessellation& Y) {
  using nlohmann::json;
  auto vec = [](const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  json j;
  j["schema"] = "snapshot";
  j["version"] = SPHSPLIT_VERSION;
  j["d"] = Y.d;
  j["t"] = Y.t_end;
  j["seed"] = Y.seed;
  j["rejected"] = Y.rejected_count;
  j["cells"] = json::array();
  for (const auto& c : Y.cells) {
    json jc;
    jc["id"] = c.id;
    jc["normals"] = json::array();
    for (const Vec& nv : c.poly.normals()) jc["normals"].push_back(vec(nv));
    if (Y.d == 2) {
      jc["vertex_cycle"] = json::array();
      for (const Vec& v : c.poly.vertex_cycle()) jc["vertex_cycle"].push_back(vec(v));
    }
    j["cells"].push_back(std::move(jc));
  }
  return j.dump(1) + "\n";
}

}  // namespace sphsplit

#include "sphsplit/estimate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <json.hpp>
#include <sstream>
#include <thread>

namespace sphsplit {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void require_n(std::size_t n, std::size_t min) {
  if (n < min) throw std::invalid_argument("too few replicates (need at least " + std::to_string(min) + ")");
}

}  // namespace

std::vector<std::vector<double>> run_replicates(
    const RunOptions& opt, const std::function<std::vector<double>(std::size_t, Rng&)>& f) {
  std::vector<std::vector<double>> rows(opt.n);
  unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(opt.n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex fail_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= opt.n) return;
      try {
        Rng rng = derive_rng(opt.seed, i);
        rows[i] = f(i, rng);
      } catch (...) {
        std::lock_guard<std::mutex> lk(fail_mu);
        if (!failure) failure = std::current_exception();
        next = opt.n;
        return;
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void StructureTally::merge(const StructureTally& o) {
  realizations += o.realizations;
  max_area_sum_error = std::max(max_area_sum_error, o.max_area_sum_error);
  max_split_area_error = std::max(max_split_area_error, o.max_split_area_error);
  max_split_perimeter_error = std::max(max_split_perimeter_error, o.max_split_perimeter_error);
  max_hv_violation = std::max(max_hv_violation, o.max_hv_violation);
  unsupported_facets += o.unsupported_facets;
  euler_failures += o.euler_failures;
  degree_failures += o.degree_failures;
  arrangements_checked += o.arrangements_checked;
  poisson_checked += o.poisson_checked;
  poisson_count_failures += o.poisson_count_failures;
}

void StructureTally::record_split(const SplittingTessellation& Y, double split_area_err, double split_perimeter_err) {
  if (Y.d != 2) return;
  ++realizations;
  StructureAudit a = audit_structure_2d(Y);
  max_area_sum_error = std::max(max_area_sum_error, a.area_sum_error);
  max_hv_violation = std::max(max_hv_violation, a.max_hv_violation);
  if (!a.facets_supported) ++unsupported_facets;
  max_split_area_error = std::max(max_split_area_error, split_area_err);
  max_split_perimeter_error = std::max(max_split_perimeter_error, split_perimeter_err);
  if (Y.events.empty() || Y.initial_cells != 1) return;
  ArrangementGraph g = arrangement_graph_2d(Y);
  ++arrangements_checked;
  if (Y.events.size() == 1) {
    if (g.V != 0 || g.E != 1 || g.F != 2) ++euler_failures;
    return;
  }
  if (g.V - g.E + g.F != 2 || g.V != 2 * (static_cast<int>(Y.events.size()) - 1)) ++euler_failures;
  for (std::size_t k = 0; k < g.degree_histogram.size(); ++k)
    if (k != 3 && g.degree_histogram[k] != 0) ++degree_failures;
  if (!g.all_endpoints_interior) ++degree_failures;
}

void StructureTally::record_poisson(const PoissonGHT& P, const Arrangement2D& A) {
  ++poisson_checked;
  const long long N = static_cast<long long>(P.normals.size());
  double area = 0;
  for (const auto& c : A.cells) area += c.area();
  max_area_sum_error = std::max(max_area_sum_error, std::abs(area - 4 * kPi));
  bool ok = static_cast<long long>(A.cells.size()) == face_counts(N, 2, 2) &&
            A.vertices == face_counts(N, 2, 0) && static_cast<long long>(A.edges.size()) == face_counts(N, 2, 1);
  if (!ok) ++poisson_count_failures;
}

bool StructureTally::ok() const {
  return max_area_sum_error <= 1e-8 && max_split_area_error <= 1e-9 && max_split_perimeter_error <= 1e-9 &&
         max_hv_violation <= 1e-10 && unsupported_facets == 0 && euler_failures == 0 && degree_failures == 0 &&
         poisson_count_failures == 0;
}

std::string StructureTally::summary() const {
  std::ostringstream os;
  os << "realizations=" << realizations << " arrangements=" << arrangements_checked
     << " poisson=" << poisson_checked << " area_sum_err=" << max_area_sum_error
     << " split_area_err=" << max_split_area_error << " split_perim_err=" << max_split_perimeter_error
     << " hv=" << max_hv_violation << " unsupported=" << unsupported_facets << " euler_fail=" << euler_failures
     << " degree_fail=" << degree_failures << " poisson_count_fail=" << poisson_count_failures;
  return os.str();
}

std::string to_string(Functional f) {
  switch (f) {
    case Functional::CellCount: return "cell_count";
    case Functional::Sigma0: return "sigma0";
    case Functional::Sigma1: return "sigma1";
    case Functional::Sigma2: return "sigma2";
    case Functional::Surface: return "surface";
  }
  return "?";
}

const std::vector<double>& MomentSamples::column(Functional f) const {
  for (std::size_t i = 0; i < functionals.size(); ++i)
    if (functionals[i] == f) return columns[i];
  throw std::invalid_argument("functional " + to_string(f) + " was not sampled");
}

EstimateReport MomentSamples::mean(Functional f, std::optional<double> ref) const {
  Sample s{column(f)};
  auto r = make_report("mean_" + to_string(f), s.size(), s.mean(), s.mean_se(), ref);
  r.seed = seed;
  r.wall_time = wall_time;
  return r;
}

EstimateReport MomentSamples::variance(Functional f, std::optional<double> ref) const {
  Sample s{column(f)};
  auto r = make_report("var_" + to_string(f), s.size(), s.variance(), s.variance_se(), ref);
  r.seed = seed;
  r.wall_time = wall_time;
  return r;
}

EstimateReport MomentSamples::covariance(Functional a, Functional b, std::optional<double> ref) const {
  const auto& x = column(a);
  const auto& y = column(b);
  auto r = make_report("cov_" + to_string(a) + "_" + to_string(b), x.size(), sphsplit::covariance(x, y),
                       covariance_se(x, y), ref);
  r.seed = seed;
  r.wall_time = wall_time;
  return r;
}

namespace {

// Runs one splitting realization with optional d = 2 auditing.
SplittingTessellation audited_simulation(int d, const DirectionDistribution& kappa, double t, Rng& rng,
                                         const SplittingTessellation* initial, bool direct, StructureSink* sink) {
  double ae = 0, pe = 0;
  SplitObserver obs = sink && d == 2 ? additivity_audit(&ae, &pe) : SplitObserver{};
  SplittingTessellation Y = direct ? simulate_direct_2d(t, rng, obs) : simulate(d, kappa, t, rng, initial, obs);
  if (sink && d == 2) {
    StructureTally tl;
    tl.record_split(Y, ae, pe);
    sink->add(tl);
  }
  return Y;
}

}  // namespace

MomentSamples mc_moments(const MomentsConfig& cfg) {
  require_n(cfg.run.n, 100);
  if (cfg.direct && (cfg.d != 2 || cfg.kappa.kind() != DirectionDistribution::Kind::Uniform))
    throw std::invalid_argument("the direct construction needs d = 2 and the uniform law");
  auto t0 = std::chrono::steady_clock::now();
  auto rows = run_replicates(cfg.run, [&](std::size_t, Rng& rng) {
    SplittingTessellation Y = audited_simulation(cfg.d, cfg.kappa, cfg.t, rng, nullptr, cfg.direct, cfg.audit);
    std::vector<double> row;
    for (Functional f : cfg.functionals) {
      switch (f) {
        case Functional::CellCount: row.push_back(static_cast<double>(Y.cells.size())); break;
        case Functional::Sigma0: row.push_back(sigma_j(Y, 0, &rng)); break;
        case Functional::Sigma1: row.push_back(sigma_j(Y, 1, &rng)); break;
        case Functional::Sigma2: row.push_back(sigma_j(Y, 2, &rng)); break;
        case Functional::Surface: row.push_back(union_measure(Y)); break;
      }
    }
    return row;
  });
  MomentSamples out;
  out.functionals = cfg.functionals;
  out.columns.assign(cfg.functionals.size(), std::vector<double>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < cfg.functionals.size(); ++k) out.columns[k][i] = rows[i][k];
  out.wall_time = seconds_since(t0);
  out.seed = cfg.run.seed;
  return out;
}

namespace {

EstimateReport wilson_report(std::string name, std::size_t hits, std::size_t n, std::optional<double> ref) {
  const double z = 1.96, nn = static_cast<double>(n);
  double p = hits / nn;
  double pt = (hits + z * z / 2) / (nn + z * z);
  return make_report(std::move(name), n, p, std::sqrt(pt * (1 - pt) / (nn + z * z)), ref);
}

}  // namespace

EstimateReport mc_capacity(const CapacityConfig& cfg, std::optional<double> ref) {
  require_n(cfg.run.n, 1);
  auto t0 = std::chrono::steady_clock::now();
  auto rows = run_replicates(cfg.run, [&](std::size_t, Rng& rng) {
    SplittingTessellation Y = audited_simulation(cfg.d, cfg.kappa, cfg.t, rng, cfg.initial, false, cfg.audit);
    return std::vector<double>{capacity_indicator(Y, cfg.C) ? 1.0 : 0.0};
  });
  std::size_t hits = 0;
  for (const auto& r : rows) hits += r[0] > 0.5;
  auto rep = wilson_report("capacity", hits, rows.size(), ref);
  rep.seed = cfg.run.seed;
  rep.wall_time = seconds_since(t0);
  return rep;
}

EstimateReport mc_capacity_poisson(const CapacityConfig& cfg, std::optional<double> ref) {
  require_n(cfg.run.n, 1);
  auto t0 = std::chrono::steady_clock::now();
  auto rows = run_replicates(cfg.run, [&](std::size_t, Rng& rng) {
    PoissonGHT P = sample_poisson(cfg.d, cfg.kappa, cfg.t, rng);
    for (const auto& S : P.normals)
      if (cfg.C.hit_by(S)) return std::vector<double>{0.0};
    return std::vector<double>{1.0};
  });
  std::size_t hits = 0;
  for (const auto& r : rows) hits += r[0] > 0.5;
  auto rep = wilson_report("capacity_poisson", hits, rows.size(), ref);
  rep.seed = cfg.run.seed;
  rep.wall_time = seconds_since(t0);
  return rep;
}

double pcf_bin_average(const std::function<double(double)>& g, double lo, double hi) {
  auto f = [&](double r) { return g(r) * std::sin(r); };
  return integrate(f, lo, hi).value / (std::cos(lo) - std::cos(hi));
}

namespace {

struct Node {
  Eigen::Vector3d x;
  double w;
};

std::vector<Node> discretize(const std::vector<Arc>& arcs, double delta) {
  std::vector<Node> nodes;
  for (const Arc& a : arcs) {
    int m = std::max(1, static_cast<int>(std::ceil(a.length / delta)));
    double h = a.length / m;
    for (int k = 0; k < m; ++k) nodes.push_back({Eigen::Vector3d(a.point((k + 0.5) * h)), h});
  }
  return nodes;
}

// Ordered-pair weight sums per distance bin [lo_b, hi_b].
std::vector<double> pair_sums(const std::vector<Node>& nodes, const std::vector<double>& clo,
                              const std::vector<double>& chi) {
  std::vector<double> s(clo.size(), 0.0);
  const std::size_t N = nodes.size();
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      double c = nodes[i].x.dot(nodes[j].x);
      for (std::size_t b = 0; b < clo.size(); ++b)
        if (c <= clo[b] && c >= chi[b]) s[b] += 2 * nodes[i].w * nodes[j].w;
    }
  }
  return s;
}

}  // namespace

std::vector<PcfPoint> mc_pcf(const PcfConfig& cfg) {
  require_n(cfg.run.n, 2);
  if (!(cfg.t > 0)) throw std::invalid_argument("pcf estimation needs t > 0");
  const std::size_t B = cfg.r.size();
  std::vector<double> lo(B), hi(B), clo(B), chi(B);
  for (std::size_t b = 0; b < B; ++b) {
    lo[b] = cfg.r[b] - cfg.bin_width / 2;
    hi[b] = cfg.r[b] + cfg.bin_width / 2;
    if (lo[b] <= 0 || hi[b] >= kPi) throw std::invalid_argument("pcf bin leaves (0, pi)");
    clo[b] = std::cos(lo[b]);
    chi[b] = std::cos(hi[b]);
  }
  const double mu2 = std::pow(beta_dim(1) * cfg.t, 2);
  auto t0 = std::chrono::steady_clock::now();
  auto rows = run_replicates(cfg.run, [&](std::size_t, Rng& rng) {
    std::vector<Arc> arcs;
    if (cfg.poisson) {
      PoissonGHT P = sample_poisson(2, DirectionDistribution::uniform(2), cfg.t, rng);
      for (const auto& S : P.normals) {
        Mat F = orthonormal_frame(S.normal);
        arcs.push_back({F.col(0), F.col(1), 2 * kPi});
      }
      if (cfg.audit) {
        StructureTally tl;
        tl.record_poisson(P, arrangement_2d(P));
        cfg.audit->add(tl);
      }
    } else {
      SplittingTessellation Y = audited_simulation(2, DirectionDistribution::uniform(2), cfg.t, rng, nullptr, false,
                                                   cfg.audit);
      for (const auto& s : maximal_segments(Y)) arcs.push_back(s.geometry);
    }
    std::vector<double> row = pair_sums(discretize(arcs, cfg.delta), clo, chi);
    if (cfg.audit_halving) {
      auto half = pair_sums(discretize(arcs, cfg.delta / 2), clo, chi);
      row.insert(row.end(), half.begin(), half.end());
    }
    return row;
  });
  const double wall = seconds_since(t0);
  std::vector<PcfPoint> out;
  for (std::size_t b = 0; b < B; ++b) {
    const double shell = (clo[b] - chi[b]) / 2;  // H^2 of the distance shell over beta_2
    Sample K, g, gh;
    for (const auto& row : rows) {
      K.add(row[b] / mu2);
      g.add(row[b] / mu2 / shell);
      if (cfg.audit_halving) gh.add(row[B + b] / mu2 / shell);
    }
    double t = cfg.t;
    auto closed = [&](double r) { return cfg.poisson ? pcf_poisson(2, t, r) : pcf_split(2, t, r); };
    PcfPoint p{cfg.r[b], lo[b], hi[b], {}, {}, pcf_bin_average(closed, lo[b], hi[b]),
               cfg.audit_halving ? gh.mean() : std::nan(""), g.x};
    p.K = make_report("K_increment", K.size(), K.mean(), K.mean_se());
    p.g = make_report(cfg.poisson ? "g_poisson" : "g_split", g.size(), g.mean(), g.mean_se(), p.g_reference);
    p.K.seed = p.g.seed = cfg.run.seed;
    p.K.wall_time = p.g.wall_time = wall;
    out.push_back(std::move(p));
  }
  return out;
}

double birth_time_cdf(int d, double t, double s) {
  if (s <= 0) return 0.0;
  if (s >= t) return 1.0;
  return (2 * std::pow(s, d) + d * lower_incomplete_gamma(d - 1, s)) /
         (2 * std::pow(t, d) + d * lower_incomplete_gamma(d - 1, t));
}

TypicalSegmentResult mc_typical_segment(double t, const RunOptions& run, StructureSink* audit) {
  require_n(run.n, 100);
  auto t0 = std::chrono::steady_clock::now();
  auto rows = run_replicates(run, [&](std::size_t, Rng& rng) {
    SplittingTessellation Y = audited_simulation(2, DirectionDistribution::uniform(2), t, rng, nullptr, false, audit);
    std::vector<double> row{0.0, 0.0};
    for (const auto& s : maximal_segments(Y)) {
      row[0] += 1;
      row[1] += s.length;
      row.push_back(s.birth_time);
    }
    return row;
  });
  Sample count, length;
  std::vector<double> births;
  for (const auto& r : rows) {
    count.add(r[0]);
    length.add(r[1]);
    births.insert(births.end(), r.begin() + 2, r.end());
  }
  TypicalSegmentResult out;
  out.pooled = births.size();
  out.count = make_report("segment_count", count.size(), count.mean(), count.mean_se(), n1_split(2, t));
  // Ratio of means; delta-method SE from the residuals L_i - R N_i.
  double R = length.mean() / count.mean();
  Sample resid;
  for (std::size_t i = 0; i < count.size(); ++i) resid.add(length.x[i] - R * count.x[i]);
  out.mean_length = make_report("segment_mean_length", count.size(), R, resid.mean_se() / count.mean(),
                                mean_segment_length_split(2, t));
  out.birth_ks = ks_one_sample(births, [&](double s) { return birth_time_cdf(2, t, s); });
  const double wall = seconds_since(t0);
  for (auto* r : {&out.count, &out.mean_length}) {
    r->seed = run.seed;
    r->wall_time = wall;
  }
  return out;
}

EAResult mc_EA(const EAConfig& cfg) {
  require_n(cfg.run.n, 2);
  const auto& grid = cfg.s_grid;
  if (grid.size() < 4 || !std::is_sorted(grid.begin(), grid.end()) || grid.front() < 0)
    throw std::invalid_argument("s grid must be sorted, nonnegative and have at least 4 points");
  for (auto [i, j] : cfg.pairs)
    if (i < 0 || i > 1 || j < 0 || j > 1) throw std::invalid_argument("EA pairs need indices in {0, 1} for d = 2");
  const std::size_t G = grid.size(), P = cfg.pairs.size();
  const auto kappa = DirectionDistribution::uniform(2);
  auto rows = run_replicates(cfg.run, [&](std::size_t, Rng& rng) {
    std::vector<double> row(P * G, 0.0);
    SplittingTessellation Y = SplittingTessellation::initial(2);
    for (std::size_t g = 0; g < G; ++g) {
      advance(Y, kappa, grid[g], rng);
      for (const auto& c : Y.cells) {
        const double rate = hitting_measure_isotropic(c.poly);
        std::vector<double> acc(P, 0.0);
        for (int m = 0; m < cfg.draws_per_cell;) {
          GreatHypersphere S(sample_uniform_sphere(2, rng));
          if (c.poly.hits_interior(S.normal) != HitResult::Hit) continue;
          IntrinsicVolumes2 v;
          try {
            v = intrinsic_volumes_arc(split(c.poly, S).piece.arc());
          } catch (const DegenerateGeometry&) {
            continue;
          }
          const double phi[2] = {v.v0, v.v1};
          for (std::size_t p = 0; p < P; ++p) acc[p] += phi[cfg.pairs[p].first] * phi[cfg.pairs[p].second];
          ++m;
        }
        for (std::size_t p = 0; p < P; ++p) row[p * G + g] += rate * acc[p] / cfg.draws_per_cell;
      }
    }
    return row;
  });
  EAResult out;
  out.mean.s = grid;
  for (std::size_t p = 0; p < P; ++p) out.mean.values[cfg.pairs[p]].assign(G, 0.0);
  for (const auto& row : rows) {
    EACurves c;
    c.s = grid;
    for (std::size_t p = 0; p < P; ++p) {
      auto& v = c.values[cfg.pairs[p]];
      v.assign(row.begin() + p * G, row.begin() + (p + 1) * G);
      for (std::size_t g = 0; g < G; ++g) out.mean.values[cfg.pairs[p]][g] += v[g] / rows.size();
    }
    out.per_replicate.push_back(std::move(c));
  }
  return out;
}

EstimateReport recursion_estimate(const EAResult& ea, int d, int k, int l, double t, std::optional<double> ref) {
  Sample s;
  for (const auto& c : ea.per_replicate) s.add(covariance_recursion(d, k, l, t, c));
  return make_report("covariance_recursion", s.size(), s.mean(), s.mean_se(), ref);
}

BPResult mc_bp_identity(int d, const PairFunction& g, std::size_t n, Rng& rng) {
  require_n(n, 100);
  Sample L, R;
  for (std::size_t i = 0; i < n; ++i) {
    GreatHypersphere S(sample_uniform_sphere(d, rng));
    Vec x = sample_uniform_on_subsphere(S, rng), y = sample_uniform_on_subsphere(S, rng);
    L.add(g(x, y));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vec x = sample_uniform_sphere(d, rng), y = sample_uniform_sphere(d, rng);
    R.add(g(x, y) / std::sin(angle_between(x, y)));
  }
  const double cl = std::pow(beta_dim(d - 1), 2), cr = beta_dim(d) * beta_dim(d - 2);
  BPResult out;
  out.lhs = make_report("bp_lhs", n, cl * L.mean(), cl * L.mean_se());
  out.rhs = make_report("bp_rhs", n, cr * R.mean(), cr * R.mean_se());
  out.z = two_sample_z(out.lhs, out.rhs);
  return out;
}

IntensityResult mc_intensity_equality(double t, const RunOptions& run, StructureSink* audit) {
  require_n(run.n, 100);
  const auto kappa = DirectionDistribution::uniform(2);
  auto rows = run_replicates(run, [&](std::size_t, Rng& rng) {
    SplittingTessellation Y = audited_simulation(2, kappa, t, rng, nullptr, false, audit);
    PoissonGHT P = sample_poisson(2, kappa, t, rng);
    Arrangement2D A = arrangement_2d(P);
    if (audit) {
      StructureTally tl;
      tl.record_poisson(P, A);
      audit->add(tl);
    }
    double v1 = 0, v0 = 0;
    for (const auto& c : A.cells) {
      IntrinsicVolumes2 v = intrinsic_volumes_2d(c);
      v1 += v.v1;
      v0 += v.v0;
    }
    return std::vector<double>{static_cast<double>(Y.cells.size()), sigma_j(Y, 1), sigma_j(Y, 0),
                               static_cast<double>(A.cells.size()), v1, v0};
  });
  std::vector<Sample> col(6);
  for (const auto& r : rows)
    for (std::size_t k = 0; k < 6; ++k) col[k].add(r[k]);
  auto rep = [&](const char* name, std::size_t k) { return make_report(name, col[k].size(), col[k].mean(), col[k].mean_se()); };
  IntensityResult out;
  out.cells_split = rep("cells_split", 0);
  out.v1_split = rep("v1_split", 1);
  out.v0_split = rep("v0_split", 2);
  out.cells_poisson = rep("cells_poisson", 3);
  out.v1_poisson = rep("v1_poisson", 4);
  out.v0_poisson = rep("v0_poisson", 5);
  out.z = {two_sample_z(out.cells_split, out.cells_poisson), two_sample_z(out.v1_split, out.v1_poisson),
           two_sample_z(out.v0_split, out.v0_poisson)};
  double integral = integrate([](double s) { return s > 0 ? n1_poisson(2, s) / s : 1.0; }, 0.0, t).value;
  out.n1_identity_error = std::abs(n1_split(2, t) - integral);
  return out;
}

double two_sample_z(const EstimateReport& a, const EstimateReport& b) {
  double se = std::hypot(a.std_error, b.std_error);
  double diff = a.point_estimate - b.point_estimate;
  if (se == 0) return diff == 0 ? 0.0 : std::copysign(INFINITY, diff);
  return diff / se;
}

namespace {

nlohmann::json report_json(const EstimateReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["n_replicates"] = r.n_replicates;
  j["point_estimate"] = r.point_estimate;
  j["std_error"] = r.std_error;
  j["ci95"] = {r.ci_lo, r.ci_hi};
  j["analytic_reference"] = r.analytic_reference ? nlohmann::json(*r.analytic_reference) : nlohmann::json();
  j["z_score"] = r.z_score ? nlohmann::json(*r.z_score) : nlohmann::json();
  j["pass"] = r.pass ? nlohmann::json(*r.pass) : nlohmann::json();
  j["seed"] = r.seed;
  j["metadata"] = {{"wall_time", r.wall_time}};
  return j;
}

}  // namespace

std::string reports_json(const std::vector<EstimateReport>& r) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : r) j.push_back(report_json(x));
  return j.dump(1) + "\n";
}

std::string reports_csv(const std::vector<EstimateReport>& r) {
  std::ostringstream os;
  os << "# sphere-split v" << SPHSPLIT_VERSION << " schema=reports\n";
  os << "name,n_replicates,point_estimate,std_error,ci_lo,ci_hi,analytic_reference,z_score,pass,seed\n";
  for (const auto& x : r) {
    os << x.name << ',' << x.n_replicates << ',' << format_double(x.point_estimate) << ','
       << format_double(x.std_error) << ',' << format_double(x.ci_lo) << ',' << format_double(x.ci_hi) << ','
       << (x.analytic_reference ? format_double(*x.analytic_reference) : "") << ','
       << (x.z_score ? format_double(*x.z_score) : "") << ',' << (x.pass ? (*x.pass ? "true" : "false") : "") << ','
       << x.seed << '\n';
  }
  return os.str();
}

}  // namespace sphsplit

#include "sphsplit/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "sphsplit/analytics.hpp"
#include "sphsplit/poissontess.hpp"
#include "sphsplit/splitproc.hpp"
#include "sphsplit/suite.hpp"

namespace sphsplit {

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> g;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(trim(p));
    if (parts.size() != 3) throw ConfigError("grid must look like a:b:step");
    double a = to_double(parts[0]), b = to_double(parts[1]), h = to_double(parts[2]);
    if (!(h > 0) || b < a) throw ConfigError("grid needs step > 0 and a <= b");
    std::size_t m = static_cast<std::size_t>(std::floor((b - a) / h + 1e-9));
    for (std::size_t k = 0; k <= m; ++k) g.push_back(a + static_cast<double>(k) * h);
    return g;
  }
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ',');)
    if (!trim(p).empty()) g.push_back(to_double(trim(p)));
  if (g.empty()) throw ConfigError("empty grid");
  return g;
}

std::vector<int> parse_dims(const std::string& spec) {
  auto dots = spec.find("..");
  auto to_int = [](const std::string& s) {
    double v = to_double(trim(s));
    if (v != std::floor(v) || v < 2 || v > 64) throw ConfigError("dimension must be an integer in [2, 64]");
    return static_cast<int>(v);
  };
  if (dots == std::string::npos) return {to_int(spec)};
  int a = to_int(spec.substr(0, dots)), b = to_int(spec.substr(dots + 2));
  if (b < a) throw ConfigError("empty dimension range");
  std::vector<int> out;
  for (int d = a; d <= b; ++d) out.push_back(d);
  return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::vector<std::pair<std::string, std::string>> kv;
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

namespace {

struct Formula {
  std::string name;
  std::string help;
};

const std::vector<Formula>& formulas() {
  static const std::vector<Formula> f = {
      {"var_surface", "Var H^(d-1)(Z_t), isotropic; --d accepts a range"},
      {"pcf", "r,K_split,g_split,K_poisson,g_poisson over --grid"},
      {"mean_segment_length", "mean length of the typical maximal segment"},
      {"mean_edge_length_poisson", "mean edge length of the Poisson arrangement (d = 2)"},
      {"n1_split", "mean number of maximal (d-1)-faces... counted as N_1 for d = 2"},
      {"n1_poisson", "mean number of Poisson edges at intensity t"},
      {"birth_density", "birth-time density of the typical maximal segment over --grid in (0, t)"},
      {"var_sigma0", "Var Sigma_0(t), d = 2"},
      {"cov_sigma0_sigma1", "Cov(Sigma_0, Sigma_1)(t), d = 2"},
      {"mean_cell_count", "E |Y_t|, d = 2"},
      {"expected_surface", "E H^(d-1)(Z_t)"},
      {"capacity_segment", "avoidance probability of a segment; --grid lists lengths"},
  };
  return f;
}

std::string header(const std::string& schema) {
  return std::string("# sphere-split v") + SPHSPLIT_VERSION + " schema=" + schema + "\n";
}

void emit(const RunConfig& c, const std::string& name, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::string path = c.out + name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
}

std::uint64_t resolve_seed(const RunConfig& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("SPHERE_SPLIT_SEED")) {
    try {
      std::size_t pos = 0;
      unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("SPHERE_SPLIT_SEED is not an unsigned integer");
  }
  return 1;
}

int single_dim(const RunConfig& c) {
  auto ds = parse_dims(c.d);
  if (ds.size() != 1) throw ConfigError("this command needs a single --d");
  return ds[0];
}

void validate(const RunConfig& c) {
  parse_dims(c.d);
  if (!(c.t >= 0)) throw ConfigError("--t must be >= 0");
  if (c.n < 1) throw ConfigError("--n must be >= 1");
}

std::string poisson_snapshot(const PoissonGHT& P, std::uint64_t seed) {
  nlohmann::json j;
  j["schema"] = "poisson_snapshot";
  j["version"] = SPHSPLIT_VERSION;
  j["d"] = P.d;
  j["t"] = P.t;
  j["seed"] = seed;
  auto vec = [](const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  j["normals"] = nlohmann::json::array();
  for (const auto& S : P.normals) j["normals"].push_back(vec(S.normal));
  if (P.d == 2) {
    j["cells"] = nlohmann::json::array();
    for (const auto& c : arrangement_2d(P).cells) {
      nlohmann::json jc;
      jc["normals"] = nlohmann::json::array();
      for (const Vec& nv : c.normals()) jc["normals"].push_back(vec(nv));
      jc["vertex_cycle"] = nlohmann::json::array();
      for (const Vec& v : c.vertex_cycle()) jc["vertex_cycle"].push_back(vec(v));
      j["cells"].push_back(std::move(jc));
    }
  }
  return j.dump(1) + "\n";
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const int d = single_dim(c);
  const std::uint64_t seed = resolve_seed(c);
  DirectionDistribution kappa = DirectionDistribution::parse(c.kappa, d);
  if (c.model != "split" && c.model != "poisson") throw ConfigError("--model must be split or poisson");
  // Replicate i uses stream i of the master seed, so realization 0 does not depend on --n.
  for (std::size_t i = 0; i < c.n; ++i) {
    Rng rng = derive_rng(seed, i);
    std::string tag = c.n > 1 ? "." + std::to_string(i) : "";
    if (c.model == "split") {
      SplittingTessellation Y = simulate(d, kappa, c.t, rng);
      Y.seed = seed;
      emit(c, tag + ".events.csv", event_log_csv(Y), out);
      emit(c, tag + ".snapshot.json", snapshot_json(Y), out);
    } else {
      PoissonGHT P = sample_poisson(d, kappa, c.t, rng);
      emit(c, tag + ".normals.csv", poisson_csv(P), out);
      emit(c, tag + ".snapshot.json", poisson_snapshot(P, seed), out);
    }
  }
  return kExitOk;
}

std::string suggest(const std::string& name) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& f : formulas()) {
    // Levenshtein distance
    const std::string& a = name;
    const std::string& b = f.name;
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
      cur[0] = i;
      for (std::size_t j = 1; j <= b.size(); ++j)
        cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
      std::swap(prev, cur);
    }
    if (prev[b.size()] < best_d) {
      best_d = prev[b.size()];
      best = b;
    }
  }
  return best;
}

int cmd_analytic(const RunConfig& c, std::ostream& out) {
  std::ostringstream os;
  const std::string& f = c.formula;
  auto need_grid = [&] {
    if (c.grid.empty()) throw ConfigError("formula " + f + " needs --grid");
    return parse_grid(c.grid);
  };
  auto row = [&](std::initializer_list<double> v) {
    bool first = true;
    for (double x : v) {
      os << (first ? "" : ",") << format_double(x);
      first = false;
    }
    os << '\n';
  };
  if (f == "var_surface") {
    os << header("var_surface") << "d,t,variance\n";
    for (int d : parse_dims(c.d)) row({static_cast<double>(d), c.t, var_surface_isotropic(d, c.t)});
  } else if (f == "pcf") {
    const int d = single_dim(c);
    os << header("pcf") << "r,K_split,g_split,K_poisson,g_poisson\n";
    for (double r : need_grid())
      row({r, k_function_split(d, c.t, r), pcf_split(d, c.t, r), k_function_poisson(d, c.t, r), pcf_poisson(d, c.t, r)});
  } else if (f == "mean_segment_length") {
    os << header(f) << "d,t,value\n";
    for (int d : parse_dims(c.d)) row({static_cast<double>(d), c.t, mean_segment_length_split(d, c.t)});
  } else if (f == "mean_edge_length_poisson") {
    os << header(f) << "t,value\n";
    row({c.t, mean_edge_length_poisson(c.t)});
  } else if (f == "n1_split" || f == "n1_poisson") {
    os << header(f) << "d,t,value\n";
    for (int d : parse_dims(c.d))
      row({static_cast<double>(d), c.t, f == "n1_split" ? n1_split(d, c.t) : n1_poisson(d, c.t)});
  } else if (f == "birth_density") {
    const int d = single_dim(c);
    std::vector<double> g = c.grid.empty() ? std::vector<double>{} : parse_grid(c.grid);
    if (g.empty())
      for (int k = 1; k < 100; ++k) g.push_back(c.t * k / 100.0);
    os << header(f) << "s,density\n";
    for (double s : g) row({s, birth_density(d, c.t, s)});
    double total = integrate([&](double s) { return s > 0 && s < c.t ? birth_density(d, c.t, s) : 0.0; }, 0.0, c.t).value;
    os << "# integral_over_(0,t)=" << format_double(total) << '\n';
  } else if (f == "var_sigma0" || f == "cov_sigma0_sigma1" || f == "mean_cell_count") {
    os << header(f) << "t,value\n";
    double v = f == "var_sigma0" ? var_sigma0_2d(c.t) : f == "cov_sigma0_sigma1" ? cov_sigma0_sigma1_2d(c.t)
                                                                                  : mean_cell_count_2d(c.t);
    row({c.t, v});
  } else if (f == "expected_surface") {
    os << header(f) << "d,t,value\n";
    for (int d : parse_dims(c.d)) row({static_cast<double>(d), c.t, expected_surface(d, c.t)});
  } else if (f == "capacity_segment") {
    os << header(f) << "length,t,value\n";
    for (double l : need_grid()) row({l, c.t, capacity_connected(l / kPi, c.t)});
  } else {
    std::string msg = "unknown formula '" + f + "'";
    if (!f.empty()) msg += " (did you mean '" + suggest(f) + "'?)";
    msg += "; available:";
    for (const auto& x : formulas()) msg += " " + x.name;
    throw ConfigError(msg);
  }
  emit(c, ".csv", os.str(), out);
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  if (c.list) {
    out << manifest_text();
    return kExitOk;
  }
  SuiteConfig sc;
  if (c.scale == "quick")
    sc.scale = Scale::Quick;
  else if (c.scale == "full")
    sc.scale = Scale::Full;
  else
    throw ConfigError("--scale must be quick or full");
  if (c.seed || std::getenv("SPHERE_SPLIT_SEED")) sc.seed = resolve_seed(c);
  sc.jobs = c.jobs;
  sc.threshold = c.threshold;
  std::vector<int> ids;
  if (c.criteria.empty()) {
    for (int i = 1; i <= 14; ++i) ids.push_back(i);
  } else {
    for (double v : parse_grid(c.criteria)) {
      if (v != std::floor(v) || v < 1 || v > 14) throw ConfigError("criteria are integers 1..14");
      ids.push_back(static_cast<int>(v));
    }
  }
  Suite suite(sc);
  std::vector<CriterionResult> results;
  bool ok = true;
  for (int id : ids) {
    results.push_back(suite.run(id));
    out << format_result(results.back()) << std::endl;
    ok = ok && results.back().pass();
  }
  if (!c.out.empty()) emit(c, ".suite.json", suite_json(results, sc, suite.threshold()), out);
  return ok ? kExitOk : kExitGateFailure;
}

void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--d", c.d, "dimension of the sphere (or a..b range where supported)");
  app->add_option("--t", c.t, "time / intensity parameter");
  app->add_option("--kappa", c.kappa, "direction law: uniform | axial:beta=<v>:axis=<c0,c1,...>");
  app->add_option("--n", c.n, "replicates");
  app->add_option("--seed", c.seed, "master seed (fallback: SPHERE_SPLIT_SEED)");
  app->add_option("--jobs", c.jobs, "worker threads (0 = available parallelism)");
  app->add_option("--out", c.out, "output path prefix (default: stdout)");
}

}  // namespace

std::vector<std::string> formula_names() {
  std::vector<std::string> n;
  for (const auto& f : formulas()) n.push_back(f.name);
  return n;
}

int run_cli(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Splitting and Poisson great hypersphere tessellations: simulation, formulas, verification"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value file; command-line flags take precedence");
  app.set_version_flag("--version", SPHSPLIT_VERSION);

  auto* sim = app.add_subcommand("simulate", "simulate one realization and write the event log and snapshot");
  add_common(sim, c);
  sim->add_option("--model", c.model, "split | poisson")->check(CLI::IsMember({"split", "poisson"}));

  auto* ana = app.add_subcommand("analytic", "tabulate a closed-form reference formula as CSV");
  add_common(ana, c);
  ana->add_option("--formula", c.formula, "formula name");
  ana->add_option("--grid,--r", c.grid, "grid a:b:step or a comma list");

  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  add_common(ver, c);
  ver->add_option("--scale", c.scale, "quick | full");
  ver->add_option("--threshold", c.threshold, "z threshold override for every Monte Carlo gate");
  ver->add_option("--criteria", c.criteria, "comma list of criteria to run");
  ver->add_flag("--list", c.list, "print every gate with the formula it checks");

  try {
    // Config entries go first so that later command-line flags override them.
    std::vector<std::string> args;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args_in.size(); ++i) {
      if (args_in[i] == "--config" && i + 1 < args_in.size()) {
        config_path = args_in[++i];
      } else if (args_in[i].rfind("--config=", 0) == 0) {
        config_path = args_in[i].substr(9);
      } else {
        rest.push_back(args_in[i]);
      }
    }
    std::size_t sub = 0;
    while (sub < rest.size() && rest[sub].rfind("-", 0) == 0) ++sub;
    for (std::size_t i = 0; i <= sub && i < rest.size(); ++i) args.push_back(rest[i]);
    if (!config_path.empty()) {
      static const std::set<std::string> keys = {"model", "d",     "t",         "kappa",    "n",    "seed",
                                                 "jobs",  "out",   "formula",   "grid",     "r",    "scale",
                                                 "threshold", "criteria", "list"};
      for (const auto& [k, v] : read_config_file(config_path)) {
        if (!keys.count(k)) throw ConfigError("unknown config key '" + k + "'");
        if (k == "list") {
          if (v == "true" || v == "1") args.push_back("--list");
          continue;
        }
        args.push_back("--" + k);
        args.push_back(v);
      }
    }
    for (std::size_t i = sub + 1; i < rest.size(); ++i) args.push_back(rest[i]);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << SPHSPLIT_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    validate(c);
    if (*sim) return cmd_simulate(c, out);
    if (*ana) return cmd_analytic(c, out);
    return cmd_verify(c, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace sphsplit

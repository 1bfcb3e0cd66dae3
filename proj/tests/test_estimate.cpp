#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "sphsplit/analytics.hpp"
#include "sphsplit/estimate.hpp"

using namespace sphsplit;

TEST_CASE("replicates do not depend on the worker count") {
  auto f = [](std::size_t i, Rng& rng) { return std::vector<double>{double(i), double(rng() % 1000)}; };
  auto a = run_replicates({64, 5, 1}, f);
  auto b = run_replicates({64, 5, 4}, f);
  CHECK(a == b);
  CHECK_THROWS(run_replicates({8, 5, 2}, [](std::size_t i, Rng&) -> std::vector<double> {
    if (i == 3) throw std::runtime_error("boom");
    return {0.0};
  }));
}

TEST_CASE("reports") {
  auto r = make_report("x", 100, 1.1, 0.05, 1.0);
  CHECK(*r.z_score == doctest::Approx(2));
  CHECK(*r.pass);
  CHECK(r.ci_lo < 1.1);
  CHECK(r.ci_hi > 1.1);
  auto j = nlohmann::json::parse(reports_json({r}));
  REQUIRE(j.size() == 1);
  CHECK(j[0]["metadata"].contains("wall_time"));
  CHECK(reports_csv({r}).rfind("# sphere-split v", 0) == 0);
  auto a = make_report("a", 10, 1.0, 0.3), b = make_report("b", 10, 1.0, 0.4);
  b.point_estimate = 2.0;
  CHECK(two_sample_z(a, b) == doctest::Approx(-2));
}

TEST_CASE("Kolmogorov-Smirnov") {
  Rng rng = derive_rng(1, 0);
  std::vector<double> x;
  std::exponential_distribution<double> ex(1.0);
  for (int i = 0; i < 5000; ++i) x.push_back(ex(rng));
  auto good = ks_one_sample(x, [](double s) { return 1 - std::exp(-s); });
  auto bad = ks_one_sample(x, [](double s) { return 1 - std::exp(-1.3 * s); });
  CHECK(good.p_value > 0.001);
  CHECK(bad.p_value < 1e-6);
  CHECK(kolmogorov_q(0.0) == doctest::Approx(1));
  CHECK(kolmogorov_q(1.36) == doctest::Approx(0.049).epsilon(0.02));
}

TEST_CASE("widened threshold") {
  CHECK(widened_threshold(20) == doctest::Approx(4));
  CHECK(widened_threshold(26) > 4);
  CHECK(widened_threshold(10) == 4);
}

TEST_CASE("birth time law of the typical segment") {
  CHECK(birth_time_cdf(2, 3, 0) == 0);
  CHECK(birth_time_cdf(2, 3, 3) == doctest::Approx(1));
  double s = 1.2, h = 1e-5;
  CHECK((birth_time_cdf(2, 3, s + h) - birth_time_cdf(2, 3, s - h)) / (2 * h) ==
        doctest::Approx(birth_density(2, 3, s)).epsilon(1e-6));
}

TEST_CASE("bin averages") {
  CHECK(pcf_bin_average([](double) { return 2.0; }, 0.3, 0.5) == doctest::Approx(2));
}

TEST_CASE("EA curves at small scale") {
  EAConfig cfg;
  cfg.t = 1.5;
  for (int g = 0; g <= 15; ++g) cfg.s_grid.push_back(0.1 * g);
  cfg.run = {400, 9, 0};
  auto ea = mc_EA(cfg);
  const auto& a10 = ea.mean.values.at({1, 0});
  // A_{1,0} is 1/2 once any split happened
  CHECK(std::abs(a10.back() + std::expm1(-1.5) / 2) < 0.03);
  auto r = recursion_estimate(ea, 2, 1, 1, 1.5, var_sigma0_2d(1.5));
  CHECK(std::abs(*r.z_score) < 4.5);
}

TEST_CASE("structure tally on audited runs") {
  StructureSink sink;
  MomentsConfig cfg;
  cfg.t = 2;
  cfg.functionals = {Functional::CellCount};
  cfg.run = {200, 3, 0};
  cfg.audit = &sink;
  auto m = mc_moments(cfg);
  CHECK(m.column(Functional::CellCount).size() == 200);
  auto total = sink.total();
  CHECK(total.realizations == 200);
  CHECK(total.ok());
}

TEST_CASE("doubling the replicate count shrinks the SE by about 1/sqrt(2)") {
  MomentsConfig cfg;
  cfg.t = 3;
  cfg.functionals = {Functional::Surface};
  cfg.run = {2000, 17, 0};
  double se1 = mc_moments(cfg).mean(Functional::Surface).std_error;
  cfg.run.n = 4000;
  cfg.run.seed = 18;
  double se2 = mc_moments(cfg).mean(Functional::Surface).std_error;
  CHECK(se2 / se1 == doctest::Approx(1 / std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("reports are reproducible from the master seed") {
  MomentsConfig cfg;
  cfg.t = 2;
  cfg.functionals = {Functional::Sigma0};
  cfg.run = {300, 23, 0};
  auto a = mc_moments(cfg).mean(Functional::Sigma0);
  cfg.run.jobs = 1;
  auto b = mc_moments(cfg).mean(Functional::Sigma0);
  CHECK(a.point_estimate == b.point_estimate);
  CHECK(a.std_error == b.std_error);
}

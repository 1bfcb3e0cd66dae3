#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphsplit/estimate.hpp"

namespace sphsplit {

enum class Scale { Quick, Full };

struct SuiteConfig {
  Scale scale = Scale::Full;
  std::uint64_t seed = 20240601;
  unsigned jobs = 0;
  // Replaces the z threshold of every Monte Carlo gate (default: widened 4 SE).
  std::optional<double> threshold;
};

struct Gate {
  std::string name;
  bool pass = false;
  std::string detail;
  std::optional<EstimateReport> report;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Gate> gates;
  double wall_time = 0;
  bool pass() const;
};

struct GateInfo {
  std::string name;
  std::string reference;  // the closed form or identity the gate checks
};
struct CriterionInfo {
  int id;
  std::string title;
  std::vector<GateInfo> gates;
};
const std::vector<CriterionInfo>& suite_manifest();
// Number of simultaneous z-gates; drives the widened threshold.
std::size_t suite_z_gate_count();
std::string manifest_text();

// Reference table: (d, printed variance at t = 1), three decimals.
const std::vector<std::pair<int, double>>& variance_table_t1();

class Suite {
 public:
  explicit Suite(SuiteConfig cfg);
  double threshold() const { return threshold_; }
  CriterionResult run(int id);
  // Runs 1..14 in order (12 last sees every audited realization).
  std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_done = {});

 private:
  SuiteConfig cfg_;
  double threshold_;
  StructureSink sink_;
  std::optional<MomentSamples> t3_;  // shared by criteria 2-4

  std::size_t n(std::size_t full, std::size_t quick) const { return cfg_.scale == Scale::Full ? full : quick; }
  RunOptions run_opts(int id, int k, std::size_t full, std::size_t quick) const;
  Gate z_gate(std::string name, const EstimateReport& r) const;
  Gate z_gate(std::string name, double z, std::string detail) const;
  const MomentSamples& t3_samples();

  CriterionResult c1();
  CriterionResult c2();
  CriterionResult c3();
  CriterionResult c4();
  CriterionResult c5();
  CriterionResult c6();
  CriterionResult c7();
  CriterionResult c8();
  CriterionResult c9();
  CriterionResult c10();
  CriterionResult c11();
  CriterionResult c12();
  CriterionResult c13();
  CriterionResult c14();
};

std::string format_result(const CriterionResult& r);
std::string suite_json(const std::vector<CriterionResult>& rs, const SuiteConfig& cfg, double threshold);

}  // namespace sphsplit

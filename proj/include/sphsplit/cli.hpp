#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sphsplit {

struct RunConfig {
  std::string command;
  std::string model = "split";
  std::string d = "2";  // single value, or a range "a..b" for tabulations
  double t = 1;
  std::string kappa = "uniform";
  std::size_t n = 1;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 0;
  std::string out;
  std::string formula;
  std::string grid;
  std::string scale = "quick";
  std::optional<double> threshold;
  std::string criteria;  // comma list, empty = all
  bool list = false;
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitGateFailure = 1;
inline constexpr int kExitConfigError = 2;

// "a:b:step" or "v1,v2,...".
std::vector<double> parse_grid(const std::string& spec);
// "d" or "a..b".
std::vector<int> parse_dims(const std::string& spec);
// key=value lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

std::vector<std::string> formula_names();

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace sphsplit

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace wpe::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kParseError = 3,
  kComputeError = 4,
};

/// Everything a command needs; validated before any computation and
/// embedded in every output file.
struct RunConfig {
  std::string command;
  std::string dataset;
  std::string manifest;
  std::string format = "edgelist";
  std::string merge = "sum";
  bool keep_lcc = true;
  bool drop_self_loops = true;
  std::vector<std::string> indices{"WPE"};
  double alpha = 0.0;
  double alpha_min = -2.0;
  double alpha_max = 2.0;
  double alpha_step = 0.1;
  int l = 2;
  double epsilon = 0.01;
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  double probe_frac = 0.1;
  std::size_t top_l = 100;
  std::string auc = "auto";
  std::uint64_t auc_samples = 1'000'000;
  double exact_auc_limit = 1e9;
  std::size_t top_k = 100;
  unsigned threads = 0;
  std::string out;
  std::string out_format = "csv";

  void validate() const;
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wpe::cli

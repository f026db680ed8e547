#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "textclf/corpus.hpp"
#include "textclf/eval.hpp"
#include "textclf/pipeline.hpp"

namespace textclf {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

struct RunConfig {
  std::string method = "single";  // single | combined | fusion | stack | dummy
  std::string space = "char4";
  std::string fusion = "mean";
  std::string meta = "rbf";
  int k = 10;
  int inner_k = 5;
  std::uint64_t seed = 42;
  int jobs = 1;
  std::string out = "out";
  bool oracle_combined = true;
};

// Parsed configuration.  Section/key grammar:
//   version = 1                          (required, before any section)
//   [data]    path, text_column, label_column, label_map, delimiter
//   [brown]   path
//   [svm]     c, tolerance, max_epochs, prob_map
//   [features] binary
//   [rbf]     c, gamma, tolerance, max_iterations, cache_mb
//   [run]     method, space, fusion, meta, k, inner_k, seed, jobs, out,
//             oracle_combined
//   [curve]   sizes
// '#' starts a comment; unknown sections or keys are errors.
struct Config {
  int version = 0;
  ColumnMapping data;        // label_map defaults to 0/1/2 -> hate/offensive/ok
  std::string data_path;
  std::string brown_path;
  LinearTrainOptions svm;
  ProbMap prob_map = ProbMap::Softmax;
  bool binary_features = false;
  KernelTrainOptions rbf;  // gamma 0 means 1/dimension at train time
  RunConfig run;
  std::vector<double> curve_sizes = {0.1, 0.2, 0.4, 0.6, 0.8, 1.0};
};

Config default_config();
Config parse_config(std::istream& in, const std::string& origin);
Config load_config(const std::string& path);

// Applies one "section.key=value" assignment, validating like the parser.
void apply_override(Config& config, const std::string& assignment);

// The evaluation method the [run] section describes.
Method method_from_config(const Config& config);

PipelineOptions pipeline_options(const Config& config);

}  // namespace textclf

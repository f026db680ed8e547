#include "textclf/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace textclf {

namespace {

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin])) != 0) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1])) != 0) --end;
  return std::string(s.substr(begin, end - begin));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void fail(const std::string& context, const std::string& message) {
  throw ConfigError(context + ": " + message);
}

double parse_double(const std::string& value, const std::string& context) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return parsed;
  } catch (const std::exception&) {
    fail(context, "'" + value + "' is not a number");
  }
}

long long parse_int(const std::string& value, const std::string& context) {
  try {
    std::size_t used = 0;
    const long long parsed = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return parsed;
  } catch (const std::exception&) {
    fail(context, "'" + value + "' is not an integer");
  }
}

std::uint64_t parse_uint64(const std::string& value, const std::string& context) {
  try {
    std::size_t used = 0;
    const auto parsed = std::stoull(value, &used);
    if (used != value.size() || value[0] == '-') throw std::invalid_argument("");
    return parsed;
  } catch (const std::exception&) {
    fail(context, "'" + value + "' is not an unsigned integer");
  }
}

bool parse_bool(const std::string& value, const std::string& context) {
  const std::string v = lower(value);
  if (v == "true") return true;
  if (v == "false") return false;
  fail(context, "'" + value + "' is not true or false");
}

void parse_label_map(Config& config, const std::string& value, const std::string& context) {
  std::map<std::string, Label> map;
  std::array<bool, kNumClasses> seen{};
  std::stringstream stream(value);
  std::string entry;
  while (std::getline(stream, entry, ',')) {
    entry = trim(entry);
    const auto colon = entry.find(':');
    if (colon == std::string::npos) {
      fail(context, "label_map entries must look like class:value");
    }
    const std::string cls = trim(entry.substr(0, colon));
    const std::string file_value = trim(entry.substr(colon + 1));
    if (file_value.empty()) fail(context, "empty file value in label_map");
    Label label;
    try {
      label = label_from_name(cls);
    } catch (const std::exception&) {
      fail(context, "'" + cls + "' is not a class name (hate, offensive, ok)");
    }
    if (seen[label_index(label)]) fail(context, "class '" + cls + "' mapped twice");
    seen[label_index(label)] = true;
    if (!map.emplace(file_value, label).second) {
      fail(context, "file value '" + file_value + "' mapped twice");
    }
  }
  if (map.size() != 3) fail(context, "label_map must map all three classes");
  config.data.label_map = std::move(map);
}

void parse_curve_sizes(Config& config, const std::string& value, const std::string& context) {
  std::vector<double> sizes;
  std::stringstream stream(value);
  std::string entry;
  while (std::getline(stream, entry, ',')) {
    const double f = parse_double(trim(entry), context);
    if (!(f > 0.0) || f > 1.0) fail(context, "curve sizes must lie in (0, 1]");
    sizes.push_back(f);
  }
  if (sizes.empty()) fail(context, "no curve sizes given");
  config.curve_sizes = std::move(sizes);
}

void set_value(Config& config, const std::string& section, const std::string& key,
               const std::string& value, const std::string& context) {
  if (section.empty()) {
    if (key == "version") {
      const auto v = parse_int(value, context);
      if (v != 1) fail(context, "unsupported config version " + value);
      config.version = 1;
      return;
    }
    fail(context, "unknown top-level key '" + key + "'");
  }

  if (section == "data") {
    if (key == "path") {
      config.data_path = value;
    } else if (key == "text_column") {
      config.data.text_column = value;
    } else if (key == "label_column") {
      config.data.label_column = value;
    } else if (key == "label_map") {
      parse_label_map(config, value, context);
    } else if (key == "delimiter") {
      const std::string v = lower(value);
      if (v == "auto") {
        config.data.delimiter = 0;
      } else if (v == "comma") {
        config.data.delimiter = ',';
      } else if (v == "tab") {
        config.data.delimiter = '\t';
      } else {
        fail(context, "delimiter must be auto, comma, or tab");
      }
    } else {
      fail(context, "unknown key '" + key + "' in section [data]");
    }
    return;
  }

  if (section == "brown") {
    if (key == "path") {
      config.brown_path = value;
    } else {
      fail(context, "unknown key '" + key + "' in section [brown]");
    }
    return;
  }

  if (section == "svm") {
    if (key == "c") {
      config.svm.C = parse_double(value, context);
      if (!(config.svm.C > 0.0)) fail(context, "c must be positive");
    } else if (key == "tolerance") {
      config.svm.tolerance = parse_double(value, context);
      if (!(config.svm.tolerance > 0.0)) fail(context, "tolerance must be positive");
    } else if (key == "max_epochs") {
      const auto v = parse_int(value, context);
      if (v < 1 || v > 1'000'000'000) fail(context, "max_epochs out of range");
      config.svm.max_epochs = static_cast<int>(v);
    } else if (key == "prob_map") {
      const std::string v = lower(value);
      if (v == "softmax") {
        config.prob_map = ProbMap::Softmax;
      } else if (v == "minmax") {
        config.prob_map = ProbMap::MinMax;
      } else {
        fail(context, "prob_map must be softmax or minmax");
      }
    } else {
      fail(context, "unknown key '" + key + "' in section [svm]");
    }
    return;
  }

  if (section == "features") {
    if (key == "binary") {
      config.binary_features = parse_bool(value, context);
    } else {
      fail(context, "unknown key '" + key + "' in section [features]");
    }
    return;
  }

  if (section == "rbf") {
    if (key == "c") {
      config.rbf.C = parse_double(value, context);
      if (!(config.rbf.C > 0.0)) fail(context, "c must be positive");
    } else if (key == "gamma") {
      if (lower(value) == "auto") {
        config.rbf.gamma = 0.0;
      } else {
        config.rbf.gamma = parse_double(value, context);
        if (!(config.rbf.gamma > 0.0)) fail(context, "gamma must be positive or auto");
      }
    } else if (key == "tolerance") {
      config.rbf.tolerance = parse_double(value, context);
      if (!(config.rbf.tolerance > 0.0)) fail(context, "tolerance must be positive");
    } else if (key == "max_iterations") {
      const auto v = parse_int(value, context);
      if (v < 1) fail(context, "max_iterations must be positive");
      config.rbf.max_iterations = v;
    } else if (key == "cache_mb") {
      const auto v = parse_int(value, context);
      if (v < 1 || v > 1'000'000) fail(context, "cache_mb out of range");
      config.rbf.cache_mb = static_cast<std::size_t>(v);
    } else {
      fail(context, "unknown key '" + key + "' in section [rbf]");
    }
    return;
  }

  if (section == "run") {
    if (key == "method") {
      const std::string v = lower(value);
      if (v != "single" && v != "combined" && v != "fusion" && v != "stack" &&
          v != "dummy") {
        fail(context, "method must be single, combined, fusion, stack, or dummy");
      }
      config.run.method = v;
    } else if (key == "space") {
      if (!FeatureSpaceSpec::from_name(value)) {
        fail(context, "'" + value + "' is not a feature space name");
      }
      config.run.space = value;
    } else if (key == "fusion") {
      if (!fusion_rule_from_name(value)) {
        fail(context, "fusion must be vote, mean, median, or borda");
      }
      config.run.fusion = value;
    } else if (key == "meta") {
      if (!meta_kind_from_name(value)) {
        fail(context, "meta must be linear or rbf");
      }
      config.run.meta = value;
    } else if (key == "k") {
      const auto v = parse_int(value, context);
      if (v < 2 || v > 1000) fail(context, "k must be between 2 and 1000");
      config.run.k = static_cast<int>(v);
    } else if (key == "inner_k") {
      const auto v = parse_int(value, context);
      if (v < 2 || v > 1000) fail(context, "inner_k must be between 2 and 1000");
      config.run.inner_k = static_cast<int>(v);
    } else if (key == "seed") {
      config.run.seed = parse_uint64(value, context);
    } else if (key == "jobs") {
      const auto v = parse_int(value, context);
      if (v < 1 || v > 1024) fail(context, "jobs must be between 1 and 1024");
      config.run.jobs = static_cast<int>(v);
    } else if (key == "out") {
      if (value.empty()) fail(context, "out must not be empty");
      config.run.out = value;
    } else if (key == "oracle_combined") {
      config.run.oracle_combined = parse_bool(value, context);
    } else {
      fail(context, "unknown key '" + key + "' in section [run]");
    }
    return;
  }

  if (section == "curve") {
    if (key == "sizes") {
      parse_curve_sizes(config, value, context);
    } else {
      fail(context, "unknown key '" + key + "' in section [curve]");
    }
    return;
  }

  fail(context, "unknown section [" + section + "]");
}

}  // namespace

Config default_config() {
  Config config;
  config.data.text_column = "tweet";
  config.data.label_column = "class";
  config.data.label_map = {{"0", Label::Hate}, {"1", Label::Offensive}, {"2", Label::Ok}};
  return config;
}

Config parse_config(std::istream& in, const std::string& origin) {
  Config config = default_config();
  std::string line;
  std::string section;
  std::size_t line_number = 0;
  bool version_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::string context = origin + ":" + std::to_string(line_number);

    if (stripped.front() == '[') {
      if (stripped.back() != ']') fail(context, "unterminated section header");
      section = trim(std::string_view(stripped).substr(1, stripped.size() - 2));
      if (section.empty()) fail(context, "empty section name");
      continue;
    }

    const auto eq = stripped.find('=');
    if (eq == std::string::npos) fail(context, "expected key = value");
    const std::string key = lower(trim(std::string_view(stripped).substr(0, eq)));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) fail(context, "empty key");
    if (key == "version" && section.empty()) version_seen = true;
    if (!version_seen) {
      fail(context, "config must start with 'version = 1'");
    }
    set_value(config, section, key, value, context);
  }
  if (!version_seen) throw ConfigError(origin + ": config must declare 'version = 1'");
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in, path);
}

void apply_override(Config& config, const std::string& assignment) {
  const std::string context = "--set " + assignment;
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) fail(context, "expected section.key=value");
  const std::string target = trim(std::string_view(assignment).substr(0, eq));
  const std::string value = trim(std::string_view(assignment).substr(eq + 1));
  const auto dot = target.find('.');
  const std::string section = dot == std::string::npos ? "" : lower(trim(std::string_view(target).substr(0, dot)));
  const std::string key =
      lower(trim(std::string_view(target).substr(dot == std::string::npos ? 0 : dot + 1)));
  if (key.empty()) fail(context, "empty key");
  set_value(config, section, key, value, context);
}

Method method_from_config(const Config& config) {
  const std::string& method = config.run.method;
  if (method == "single") {
    return SingleSpace{*FeatureSpaceSpec::from_name(config.run.space)};
  }
  if (method == "combined") return CombinedSpaces{};
  if (method == "fusion") {
    return FusionMethod{*fusion_rule_from_name(config.run.fusion)};
  }
  if (method == "stack") {
    return StackedMethod{*meta_kind_from_name(config.run.meta), config.run.inner_k};
  }
  return MajorityDummy{};
}

PipelineOptions pipeline_options(const Config& config) {
  PipelineOptions options;
  options.svm = config.svm;
  options.svm.seed = config.run.seed;
  options.rbf = config.rbf;
  options.prob_map = config.prob_map;
  options.binary_features = config.binary_features;
  return options;
}

}  // namespace textclf

// Command-line front end: three-class text classification over an ensemble
// of character, word, skip-gram, and cluster feature spaces.
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "textclf/runner.hpp"

namespace {

struct CliState {
  std::string config_path;
  std::vector<std::string> overrides;  // section.key=value
  textclf::CommandOptions options;
};

// Config file first, then --set overrides, then dedicated flags — each
// flag is applied only when the user passed it.
void resolve_config(CliState& state, const CLI::App& cmd) {
  if (!state.config_path.empty()) {
    state.options.config = textclf::load_config(state.config_path);
  } else {
    state.options.config = textclf::default_config();
  }
  for (const std::string& assignment : state.overrides) {
    textclf::apply_override(state.options.config, assignment);
  }
  const auto flag = [&cmd](const std::string& name) {
    const CLI::Option* opt = cmd.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  auto& config = state.options.config;
  if (flag("--data")) {
    textclf::apply_override(config, "data.path=" + cmd.get_option("--data")->as<std::string>());
  }
  if (flag("--brown")) {
    textclf::apply_override(config, "brown.path=" + cmd.get_option("--brown")->as<std::string>());
  }
  if (flag("--out")) {
    textclf::apply_override(config, "run.out=" + cmd.get_option("--out")->as<std::string>());
  }
  if (flag("--seed")) {
    textclf::apply_override(config, "run.seed=" + cmd.get_option("--seed")->as<std::string>());
  }
  if (flag("--k")) {
    textclf::apply_override(config, "run.k=" + cmd.get_option("--k")->as<std::string>());
  }
  if (flag("--jobs")) {
    textclf::apply_override(config, "run.jobs=" + cmd.get_option("--jobs")->as<std::string>());
  }
  if (flag("--method")) {
    textclf::apply_override(config, "run.method=" + cmd.get_option("--method")->as<std::string>());
  }
  if (flag("--space")) {
    const auto value = cmd.get_option("--space")->as<std::string>();
    state.options.vocab_space = value;
    if (value != "combined") {
      textclf::apply_override(config, "run.space=" + value);
    }
  }
  if (flag("--fusion")) {
    textclf::apply_override(config, "run.fusion=" + cmd.get_option("--fusion")->as<std::string>());
  }
  if (flag("--meta")) {
    textclf::apply_override(config, "run.meta=" + cmd.get_option("--meta")->as<std::string>());
  }
}

// Flags shared by every subcommand.
void add_common_options(CLI::App& cmd, CliState& state) {
  cmd.add_option("--config", state.config_path, "Configuration file (INI-style)")
      ->check(CLI::ExistingFile);
  cmd.add_option("--set", state.overrides,
                 "Override one config entry as section.key=value (repeatable)");
  cmd.add_option("--data", "Dataset file (CSV/TSV); same as --set data.path=...");
  cmd.add_option("--brown", "Cluster file; same as --set brown.path=...");
  cmd.add_option("--out", "Output directory; same as --set run.out=...");
  cmd.add_option("--seed", "Random seed; same as --set run.seed=...");
  cmd.add_option("--k", "Number of cross-validation folds; same as --set run.k=...");
  cmd.add_option("--jobs", "Folds to evaluate concurrently; same as --set run.jobs=...");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-class text classifier: hate / offensive / ok"};
  app.require_subcommand(1);

  CliState state;

  CLI::App* preprocess =
      app.add_subcommand("preprocess", "Normalize the corpus and write it out");
  add_common_options(*preprocess, state);
  preprocess->add_option("--show", state.options.show,
                         "Print the first N preprocessed documents");

  CLI::App* run = app.add_subcommand("run", "Cross-validate one configuration");
  add_common_options(*run, state);
  run->add_option("--method", "single | combined | fusion | stack | dummy");
  run->add_option("--space", "Feature space for single runs, e.g. char4");
  run->add_option("--fusion", "Fusion rule: vote | mean | median | borda");
  run->add_option("--meta", "Meta-classifier: linear | rbf");
  run->add_flag("--plot", state.options.plot, "Also write SVG plots");

  CLI::App* run_all = app.add_subcommand(
      "run-all", "Cross-validate every configuration and write the results table");
  add_common_options(*run_all, state);
  run_all->add_flag("--plot", state.options.plot, "Also write SVG plots");

  CLI::App* curve = app.add_subcommand(
      "learning-curve", "Accuracy as a function of training-set size");
  add_common_options(*curve, state);
  curve->add_option("--method", "single | combined | fusion | stack | dummy");
  curve->add_option("--space", "Feature space for single runs, e.g. char4");
  curve->add_option("--fusion", "Fusion rule: vote | mean | median | borda");
  curve->add_option("--meta", "Meta-classifier: linear | rbf");
  curve->add_flag("--plot", state.options.plot, "Also write SVG plots");

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Rank the strongest features of one class's separator");
  add_common_options(*analyze, state);
  analyze->add_option("--space", "Feature space to analyze, e.g. word1 or combined");
  analyze->add_option("--class", state.options.analyze_class,
                      "Class to analyze: hate | offensive | ok");
  analyze->add_option("--top", state.options.top, "How many features to list");
  analyze->add_flag("--negative", state.options.most_negative,
                    "Rank the most negative weights instead");

  CLI::App* dump_vocab =
      app.add_subcommand("dump-vocab", "Build and write the vocabulary of a space");
  add_common_options(*dump_vocab, state);
  dump_vocab->add_option("--space", "Feature space to dump, e.g. char4 or combined");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* active = app.get_subcommands().at(0);
    resolve_config(state, *active);
    if (active == preprocess) {
      textclf::cmd_preprocess(state.options, std::cout);
    } else if (active == run) {
      textclf::cmd_run(state.options, std::cout);
    } else if (active == run_all) {
      textclf::cmd_run_all(state.options, std::cout);
    } else if (active == curve) {
      textclf::cmd_learning_curve(state.options, std::cout);
    } else if (active == analyze) {
      textclf::cmd_analyze(state.options, std::cout);
    } else {
      textclf::cmd_dump_vocab(state.options, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

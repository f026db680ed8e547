#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include "textclf/config.hpp"

namespace textclf {

// Everything a subcommand needs, resolved from the config file plus
// command-line flags. `config` drives data loading and evaluation; the
// remaining fields are per-command extras.
struct CommandOptions {
  Config config;
  bool plot = false;               // also write SVG plots next to the TSV output
  std::size_t show = 0;            // preprocess: number of documents to print
  std::string analyze_class = "ok";  // analyze: class whose weights to rank
  std::size_t top = 20;            // analyze: how many features to list
  bool most_negative = false;      // analyze: rank most negative instead
  std::string vocab_space;         // analyze / dump-vocab: feature-space name
};

// Each command writes its artifacts under config.run.out and reports progress
// on `status`. All throw on invalid input or missing files.
void cmd_preprocess(const CommandOptions& options, std::ostream& status);
void cmd_run(const CommandOptions& options, std::ostream& status);
void cmd_run_all(const CommandOptions& options, std::ostream& status);
void cmd_learning_curve(const CommandOptions& options, std::ostream& status);
void cmd_analyze(const CommandOptions& options, std::ostream& status);
void cmd_dump_vocab(const CommandOptions& options, std::ostream& status);

}  // namespace textclf

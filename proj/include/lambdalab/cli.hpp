#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lambdalab/derivation.hpp"

namespace lambdalab::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,     // invalid derivation step or rule refusal
  kParseError = 2,  // parse, config or I/O error
  kStepLimit = 3,
};

enum class Format { Text, Json };

/// What a command printed and how it ended.
struct CommandResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

struct CommonOptions {
  /// Explicit config file; otherwise `lambda-lab.cfg` is used when present.
  std::optional<std::string> config_path;
  Format format = Format::Text;
};

/// The configuration in effect: `config_path`, else `lambda-lab.cfg` in the
/// working directory, else the defaults. Problems are appended to `err`.
std::optional<SyntaxConfig> load_config(const CommonOptions& common, std::string& err);

CommandResult cmd_check(const std::vector<std::string>& files, const CommonOptions& common);

struct ReduceOptions {
  std::string term;
  Strategy strategy = Strategy::NormalOrder;
  std::size_t max_steps = 1000;
  std::optional<std::string> env_file;
};
CommandResult cmd_reduce(const ReduceOptions& options, const CommonOptions& common);

CommandResult cmd_redexes(const std::string& term, const std::optional<std::string>& env_file,
                          const CommonOptions& common);

/// Prints the canonical form of each file, or rewrites the files in place
/// when `write` is set. Nothing is written unless every file parses.
CommandResult cmd_fmt(const std::vector<std::string>& files, bool write, const CommonOptions& common);

/// Canonical text of a document: items in canonical print, comments kept
/// (comments inside an item move in front of it).
std::string format_document(std::string_view text, const DocumentAst& doc, const SyntaxConfig& config);

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::string> root;
  bool stdio = false;
};

/// Runs the protocol service until interrupted. Blocks.
int cmd_serve(const ServeOptions& options, const CommonOptions& common);

}  // namespace lambdalab::cli

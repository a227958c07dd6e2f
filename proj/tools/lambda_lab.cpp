// lambda-lab: check, reduce and format lambda-calculus derivation files, or
// serve the editor protocol.

#include <CLI11.hpp>
#include <iostream>

#include "lambdalab/cli.hpp"

using namespace lambdalab;
using namespace lambdalab::cli;

namespace {

int emit(const CommandResult& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Untyped lambda calculus workbench"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string config_path;
  std::string format = "text";
  auto add_common = [&](CLI::App* cmd, bool with_format) {
    cmd->add_option("--config", config_path, "Syntax configuration file (default: lambda-lab.cfg)");
    if (with_format)
      cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  std::vector<std::string> files;
  auto* check = app.add_subcommand("check", "Validate every derivation step in .lam files");
  check->add_option("files", files, "Files to check")->required();
  add_common(check, true);

  ReduceOptions reduce_opts;
  std::string strategy = "normal-order";
  std::string env_file;
  auto* reduce = app.add_subcommand("reduce", "Reduce a term and print the trace");
  reduce->add_option("term", reduce_opts.term, "Term to reduce")->required();
  reduce->add_option("--strategy", strategy, "Reduction strategy")
      ->check(CLI::IsMember({"normal-order", "applicative-order"}));
  reduce->add_option("--max-steps", reduce_opts.max_steps, "Step budget");
  reduce->add_option("--env", env_file, "File whose named items define references");
  add_common(reduce, true);

  std::string redex_term;
  auto* redexes = app.add_subcommand("redexes", "List the redexes of a term in order");
  redexes->add_option("term", redex_term, "Term to inspect")->required();
  redexes->add_option("--env", env_file, "File whose named items define references");
  add_common(redexes, true);

  bool write = false;
  auto* fmt = app.add_subcommand("fmt", "Print files in canonical form");
  fmt->add_option("files", files, "Files to format")->required();
  fmt->add_flag("--write,-w", write, "Rewrite the files in place");
  add_common(fmt, false);

  ServeOptions serve_opts;
  auto* serve = app.add_subcommand("serve", "Serve the editor protocol");
  serve->add_option("--port", serve_opts.port, "HTTP port");
  serve->add_option("--host", serve_opts.host, "Address to bind");
  serve->add_option("--root", serve_opts.root, "Directory of static files to serve at /");
  serve->add_flag("--stdio", serve_opts.stdio, "Read requests from stdin, one per line");
  add_common(serve, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  if (!config_path.empty()) common.config_path = config_path;
  common.format = format == "json" ? Format::Json : Format::Text;
  const std::optional<std::string> env =
      env_file.empty() ? std::nullopt : std::optional<std::string>(env_file);

  if (*check) return emit(cmd_check(files, common));
  if (*reduce) {
    reduce_opts.strategy = strategy == "applicative-order" ? Strategy::ApplicativeOrder : Strategy::NormalOrder;
    reduce_opts.env_file = env;
    return emit(cmd_reduce(reduce_opts, common));
  }
  if (*redexes) return emit(cmd_redexes(redex_term, env, common));
  if (*fmt) return emit(cmd_fmt(files, write, common));
  return cmd_serve(serve_opts, common);
}

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "lambdalab/cli.hpp"
#include "lambdalab/lexer.hpp"
#include "lambdalab/workspace.hpp"

namespace lambdalab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kDefaultConfig = "lambda-lab.cfg";

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string plural(std::size_t n, const char* word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

std::string location(const std::string& file, const SourceSpan& span) {
  return file + ":" + std::to_string(span.start_line) + ":" + std::to_string(span.start_col);
}

std::string format_diagnostic(const std::string& file, const Diagnostic& d) {
  return location(file, d.span) + ": " + (d.severity == Severity::Error ? "error" : "warning") +
         ": " + d.message + " [" + d.code + "]\n";
}

json span_json(const SourceSpan& s) {
  return {{"startLine", s.start_line}, {"startCol", s.start_col}, {"endLine", s.end_line},
          {"endCol", s.end_col}};
}

json path_json(const TermPath& p) {
  json out = json::array();
  for (Step s : p.steps) out.push_back(std::string(to_string(s)));
  return out;
}

json diagnostic_json(const Diagnostic& d) {
  return {{"severity", d.severity == Severity::Error ? "error" : "warning"},
          {"code", d.code},
          {"message", d.message},
          {"span", span_json(d.span)}};
}

std::string dump(const json& j) { return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n"; }

bool has_errors(const Diagnostics& diagnostics) {
  for (const auto& d : diagnostics)
    if (d.severity == Severity::Error) return true;
  return false;
}

}  // namespace

std::optional<SyntaxConfig> load_config(const CommonOptions& common, std::string& err) {
  std::string path;
  if (common.config_path) {
    path = *common.config_path;
  } else if (fs::exists(kDefaultConfig)) {
    path = kDefaultConfig;
  } else {
    return SyntaxConfig{};
  }
  auto text = read_file(path);
  if (!text) {
    err += path + ": cannot read config file\n";
    return std::nullopt;
  }
  auto parsed = parse_config(*text);
  if (!parsed) {
    for (const auto& d : parsed.error()) err += format_diagnostic(path, d);
    return std::nullopt;
  }
  return parsed.value();
}

namespace {

// Definitions from an optional environment file.
std::optional<Environment> load_env(const std::optional<std::string>& env_file,
                                    const SyntaxConfig& config, std::string& err) {
  if (!env_file) return Environment{};
  auto text = read_file(*env_file);
  if (!text) {
    err += *env_file + ": cannot read file\n";
    return std::nullopt;
  }
  auto parsed = parse_document(*text, config);
  auto built = build_environment(parsed.doc);
  Diagnostics all = parsed.diagnostics;
  all.insert(all.end(), built.diagnostics.begin(), built.diagnostics.end());
  for (const auto& d : all) err += format_diagnostic(*env_file, d);
  if (has_errors(all)) return std::nullopt;
  return std::move(built.env);
}

std::optional<Term> load_term(const std::string& text, const SyntaxConfig& config, std::string& err) {
  auto parsed = parse_term(text, config);
  if (!parsed) {
    for (const auto& d : parsed.error()) err += format_diagnostic("<term>", d);
    return std::nullopt;
  }
  return parsed.value();
}

std::string describe_capture(const CaptureReport& c) {
  std::string names;
  for (const auto& n : c.captured_names) names += (names.empty() ? "" : ", ") + n;
  return "capture of " + names + " at " + to_string(c.site);
}

void comments_in(std::string_view text, const SyntaxConfig& config, std::vector<std::string>& out) {
  for (const auto& token : tokenize(text, config)) {
    if (token.kind != TokenKind::Comment) continue;
    std::string_view c = token.text;
    while (!c.empty() && (c.back() == '\r' || c.back() == ' ' || c.back() == '\t')) c.remove_suffix(1);
    out.emplace_back(c);
  }
}

bool write_atomically(const std::string& path, const std::string& content, std::string& err) {
  const std::string tmp = path + ".lambda-lab.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out.flush()) {
      err += tmp + ": cannot write\n";
      return false;
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    err += path + ": " + ec.message() + "\n";
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

}  // namespace

CommandResult cmd_check(const std::vector<std::string>& files, const CommonOptions& common) {
  CommandResult r;
  auto config = load_config(common, r.err);
  if (!config) {
    r.exit_code = kParseError;
    return r;
  }
  bool parse_error = false, invalid = false;
  json report = json::array();

  for (const auto& file : files) {
    auto text = read_file(file);
    if (!text) {
      r.err += file + ": cannot read file\n";
      parse_error = true;
      report.push_back({{"file", file}, {"error", "cannot read file"}});
      continue;
    }
    const Session s = open_session(*text, *config);
    json file_json{{"file", file}, {"diagnostics", json::array()}, {"items", json::array()}};
    std::string lines;
    for (const auto& d : s.diagnostics) {
      lines += format_diagnostic(file, d);
      file_json["diagnostics"].push_back(diagnostic_json(d));
    }
    const std::size_t errors = s.diagnostics.size();

    std::size_t steps = 0, bad = 0;
    const auto entries = outline(s);
    for (std::size_t i = 0; i < s.doc.items.size(); ++i) {
      const auto& item = s.doc.items[i];
      const auto verdicts = validate_derivation(from_ast(item), s.env);
      json item_json{{"id", entries[i].id}, {"span", span_json(item.span)}, {"steps", json::array()}};
      std::size_t item_bad = 0;
      for (const auto& v : verdicts) {
        const Rule rule = item.arrows[v.index - 1];
        const SourceSpan& at = item.term_spans[v.index];
        std::string line = location(file, at) + ": " + entries[i].id + " step " +
                           std::to_string(v.index) + " ->" + std::string(rule_symbol(rule));
        json step{{"index", v.index},
                  {"rule", std::string(rule_name(rule))},
                  {"status", v.valid() ? "valid" : "invalid"},
                  {"span", span_json(at)}};
        if (v.valid()) {
          line += " valid";
          if (v.witness) {
            line += " at " + to_string(*v.witness);
            step["witness"] = path_json(*v.witness);
          }
        } else {
          ++item_bad;
          line += " invalid: " + *v.reason;
          step["reason"] = *v.reason;
        }
        lines += line + "\n";
        item_json["steps"].push_back(std::move(step));
      }
      lines += location(file, item.span) + ": " + entries[i].id + ": " +
               plural(verdicts.size(), "step") +
               (item_bad ? ", " + std::to_string(item_bad) + " invalid" : ", OK") + "\n";
      item_json["valid"] = item_bad == 0;
      file_json["items"].push_back(std::move(item_json));
      steps += verdicts.size();
      bad += item_bad;
    }

    std::string summary = file + ": " + plural(s.doc.items.size(), "item") + ", " + plural(steps, "step");
    if (errors) summary += ", " + plural(errors, "error");
    if (bad) summary += ", " + std::to_string(bad) + " invalid";
    if (!errors && !bad) summary += ", OK";
    lines += summary + "\n";

    parse_error |= has_errors(s.diagnostics);
    invalid |= bad > 0;
    file_json["ok"] = errors == 0 && bad == 0;
    report.push_back(std::move(file_json));
    if (common.format == Format::Text) r.out += lines;
  }

  r.exit_code = parse_error ? kParseError : invalid ? kInvalid : kOk;
  if (common.format == Format::Json) r.out = dump({{"files", report}, {"exitCode", r.exit_code}});
  return r;
}

CommandResult cmd_reduce(const ReduceOptions& options, const CommonOptions& common) {
  CommandResult r;
  auto config = load_config(common, r.err);
  std::optional<Environment> env;
  std::optional<Term> term;
  if (config) env = load_env(options.env_file, *config, r.err);
  if (env) term = load_term(options.term, *config, r.err);
  if (!term) {
    r.exit_code = kParseError;
    return r;
  }

  const NormalizeResult result = normalize(*term, *env, options.strategy, options.max_steps);
  const Derivation& trace = result.trace;
  const std::size_t n = trace.rules.size();
  r.exit_code = result.outcome == Outcome::NormalForm ? kOk
                : result.outcome == Outcome::StepLimit ? kStepLimit
                                                       : kInvalid;

  if (common.format == Format::Json) {
    json steps = json::array();
    for (std::size_t i = 0; i < n; ++i)
      steps.push_back({{"rule", std::string(rule_name(trace.rules[i]))},
                       {"term", print_term(trace.steps[i + 1], *config)}});
    json out{{"initial", print_term(trace.steps.front(), *config)},
             {"steps", std::move(steps)},
             {"final", print_term(trace.last(), *config)},
             {"outcome", std::string(outcome_name(result.outcome))},
             {"stepCount", n},
             {"exitCode", r.exit_code}};
    out["capture"] = result.capture ? json{{"capturedNames", result.capture->captured_names},
                                           {"site", path_json(result.capture->site)}}
                                    : json(nullptr);
    r.out = dump(out);
    return r;
  }

  r.out += print_term(trace.steps.front(), *config) + "\n";
  for (std::size_t i = 0; i < n; ++i) r.out += print_step(trace.rules[i], trace.steps[i + 1], *config) + "\n";
  std::string status = "-- " + std::string(outcome_name(result.outcome));
  if (result.capture) status += ": " + describe_capture(*result.capture);
  r.out += status + " after " + plural(n, "step") + "\n";
  return r;
}

CommandResult cmd_redexes(const std::string& term_text, const std::optional<std::string>& env_file,
                          const CommonOptions& common) {
  CommandResult r;
  auto config = load_config(common, r.err);
  std::optional<Environment> env;
  std::optional<Term> term;
  if (config) env = load_env(env_file, *config, r.err);
  if (env) term = load_term(term_text, *config, r.err);
  if (!term) {
    r.exit_code = kParseError;
    return r;
  }

  const auto redexes = enumerate_redexes(*term, *env);
  json list = json::array();
  for (std::size_t i = 0; i < redexes.size(); ++i) {
    const auto& info = redexes[i];
    const std::string printed = print_term(*find_subterm(*term, info.path), *config);
    std::string kind = info.kind == RedexKind::Direct ? "direct" : "via-expansion";
    std::string chain;
    for (const auto& name : info.ref_chain) chain += (chain.empty() ? "" : " ") + name;
    r.out += std::to_string(i + 1) + " " + kind + (chain.empty() ? "" : " (" + chain + ")") + " at " +
             to_string(info.path) + ": " + printed + "\n";
    list.push_back({{"ordinal", i + 1},
                    {"kind", kind},
                    {"refChain", info.ref_chain},
                    {"path", path_json(info.path)},
                    {"redex", printed}});
  }
  if (redexes.empty()) r.out = "0 redexes\n";
  if (common.format == Format::Json) r.out = dump({{"count", redexes.size()}, {"redexes", list}});
  return r;
}

std::string format_document(std::string_view text, const DocumentAst& doc, const SyntaxConfig& config) {
  std::vector<std::string> blocks;
  std::size_t prev = 0;
  for (const auto& item : doc.items) {
    std::vector<std::string> comments;
    comments_in(text.substr(prev, item.begin_offset - prev), config, comments);
    comments_in(text.substr(item.begin_offset, item.end_offset - item.begin_offset), config, comments);
    std::string block;
    for (const auto& c : comments) block += c + "\n";
    blocks.push_back(block + print_item(item, config));
    prev = item.end_offset;
  }
  std::vector<std::string> trailing;
  comments_in(text.substr(std::min(prev, text.size())), config, trailing);
  if (!trailing.empty()) {
    std::string block;
    for (const auto& c : trailing) block += (block.empty() ? "" : "\n") + c;
    blocks.push_back(block);
  }
  std::string out;
  for (const auto& b : blocks) out += (out.empty() ? "" : "\n\n") + b;
  return out.empty() ? out : out + "\n";
}

CommandResult cmd_fmt(const std::vector<std::string>& files, bool write, const CommonOptions& common) {
  CommandResult r;
  auto config = load_config(common, r.err);
  if (!config) {
    r.exit_code = kParseError;
    return r;
  }
  std::vector<std::pair<std::string, std::string>> formatted;
  for (const auto& file : files) {
    auto text = read_file(file);
    if (!text) {
      r.err += file + ": cannot read file\n";
      r.exit_code = kParseError;
      continue;
    }
    const auto parsed = parse_document(*text, *config);
    if (has_errors(parsed.diagnostics)) {
      for (const auto& d : parsed.diagnostics) r.err += format_diagnostic(file, d);
      r.exit_code = kParseError;
      continue;
    }
    formatted.emplace_back(file, format_document(*text, parsed.doc, *config));
    if (formatted.back().second == *text) formatted.back().first.clear();  // unchanged
    if (!write) {
      if (files.size() > 1) r.out += "==> " + file + " <==\n";
      r.out += format_document(*text, parsed.doc, *config);
    }
  }
  if (r.exit_code != kOk || !write) return r;
  for (const auto& [file, content] : formatted) {
    if (file.empty()) continue;
    if (!write_atomically(file, content, r.err)) r.exit_code = kParseError;
  }
  return r;
}

}  // namespace lambdalab::cli

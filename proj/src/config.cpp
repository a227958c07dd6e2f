#include <algorithm>
#include <set>

#include "lambdalab/syntax.hpp"

namespace lambdalab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return std::string(s.substr(1, s.size() - 2));
  return std::string(s);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  bool quoted = false;
  for (char c : s) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) {
      out.push_back(unquote(current));
      current.clear();
    } else {
      current += c;
    }
  }
  out.push_back(unquote(current));
  return out;
}

std::string quote_if_needed(const std::string& s) {
  const bool needs = s.empty() || s.find_first_of(" \t,\"#") != std::string::npos;
  return needs ? "\"" + s + "\"" : s;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += quote_if_needed(s);
  }
  return out;
}

bool starts_like_identifier(std::string_view s) {
  const char c = s.front();
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '\'';
}

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

}  // namespace

std::vector<std::string> validate_config(const SyntaxConfig& config) {
  std::vector<std::string> problems;
  std::set<std::string> seen;

  auto check_token = [&](const std::string& s, const std::string& what) {
    if (s.empty()) {
      problems.push_back(what + " must not be empty");
      return;
    }
    if (starts_like_identifier(s))
      problems.push_back(what + " '" + s + "' would be read as part of an identifier");
    if (has_whitespace(s)) problems.push_back(what + " '" + s + "' contains whitespace");
    if (s.starts_with("--")) problems.push_back(what + " '" + s + "' starts a comment");
    for (const char* fixed : {"(", ")", "{", "}", ":="})
      if (s == fixed) problems.push_back(what + " '" + s + "' clashes with a reserved symbol");
    if (!seen.insert(s).second) problems.push_back(what + " '" + s + "' is used twice");
  };

  if (config.lambda_spellings.empty()) problems.push_back("lambdaSpellings must not be empty");
  for (const auto& s : config.lambda_spellings) check_token(s, "λ spelling");
  check_token(config.binding_delimiter, "bindingDelimiter");
  if (config.multi_binding_delimiter.empty()) {
    problems.push_back("multiBindingDelimiter must not be empty");
  } else if (!config.whitespace_multi_binding()) {
    check_token(config.multi_binding_delimiter, "multiBindingDelimiter");
  }
  check_token(config.arrow_prefix, "arrowPrefix");
  std::set<std::string> rule_seen;
  for (Rule rule : {Rule::Alpha, Rule::Beta, Rule::Equiv}) {
    auto it = config.arrow_spellings.find(rule);
    if (it == config.arrow_spellings.end() || it->second.empty()) {
      problems.push_back(std::string(rule_name(rule)) + "Spellings must not be empty");
      continue;
    }
    for (const auto& s : it->second) {
      if (s.empty()) {
        problems.push_back(std::string(rule_name(rule)) + " spelling must not be empty");
        continue;
      }
      if (has_whitespace(s)) problems.push_back("rule spelling '" + s + "' contains whitespace");
      if (!rule_seen.insert(s).second)
        problems.push_back("rule spelling '" + s + "' is used for two rules");
    }
  }
  return problems;
}

Result<SyntaxConfig, Diagnostics> parse_config(std::string_view text) {
  SyntaxConfig config;
  Diagnostics diags;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;

    auto bad = [&](std::string msg, std::string code) {
      diags.push_back(Diagnostic{Severity::Error,
                                 SourceSpan{line_no, 1, line_no, 1 + line.size()},
                                 std::move(msg), std::move(code)});
    };
    auto eq = content.find('=');
    if (eq == std::string_view::npos) {
      bad("expected 'key = value'", "config_syntax");
      continue;
    }
    const auto key = trim(content.substr(0, eq));
    const auto value = content.substr(eq + 1);
    if (key == "lambdaSpellings") {
      config.lambda_spellings = split_list(value);
    } else if (key == "bindingDelimiter") {
      config.binding_delimiter = unquote(value);
    } else if (key == "multiBindingDelimiter") {
      config.multi_binding_delimiter = unquote(value);
    } else if (key == "alphaSpellings") {
      config.arrow_spellings[Rule::Alpha] = split_list(value);
    } else if (key == "betaSpellings") {
      config.arrow_spellings[Rule::Beta] = split_list(value);
    } else if (key == "equivSpellings") {
      config.arrow_spellings[Rule::Equiv] = split_list(value);
    } else if (key == "arrowPrefix") {
      config.arrow_prefix = unquote(value);
    } else {
      bad("unknown configuration key '" + std::string(key) + "'", "config_unknown_key");
    }
  }
  for (auto& problem : validate_config(config))
    diags.push_back(Diagnostic{Severity::Error, SourceSpan{}, std::move(problem), "config_invalid"});
  if (!diags.empty()) return diags;
  return config;
}

std::string print_config(const SyntaxConfig& config) {
  std::string out;
  out += "lambdaSpellings = " + join_list(config.lambda_spellings) + "\n";
  out += "bindingDelimiter = " + quote_if_needed(config.binding_delimiter) + "\n";
  out += "multiBindingDelimiter = " + quote_if_needed(config.multi_binding_delimiter) + "\n";
  out += "alphaSpellings = " + join_list(config.arrow_spellings.at(Rule::Alpha)) + "\n";
  out += "betaSpellings = " + join_list(config.arrow_spellings.at(Rule::Beta)) + "\n";
  out += "equivSpellings = " + join_list(config.arrow_spellings.at(Rule::Equiv)) + "\n";
  out += "arrowPrefix = " + quote_if_needed(config.arrow_prefix) + "\n";
  return out;
}

}  // namespace lambdalab

#include "lambdalab/term.hpp"

#include <algorithm>
#include <sstream>

#include "lambdalab/environment.hpp"
#include "lambdalab/result.hpp"
#include "lambdalab/rules.hpp"

namespace lambdalab {

namespace {

bool is_ident_tail(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '\'';
}

bool ident_with_initial(std::string_view name, char lo, char hi) {
  if (name.empty() || name.front() < lo || name.front() > hi) return false;
  return std::all_of(name.begin() + 1, name.end(), is_ident_tail);
}

}  // namespace

Term Term::bound(std::size_t index, std::string name_hint) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::BoundVar;
  n->index = index;
  n->name = std::move(name_hint);
  return Term(std::move(n));
}

Term Term::free(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::FreeVar;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::abs(std::string binder, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Abs;
  n->name = std::move(binder);
  n->size = 1 + body.size();
  n->left = std::move(body);
  return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->size = 1 + fun.size() + arg.size();
  n->left = std::move(fun);
  n->right = std::move(arg);
  return Term(std::move(n));
}

Term Term::ref(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Ref;
  n->name = std::move(name);
  return Term(std::move(n));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case TermKind::BoundVar:
      return a.index() == b.index() && a.name() == b.name();
    case TermKind::FreeVar:
    case TermKind::Ref:
      return a.name() == b.name();
    case TermKind::Abs:
      return a.name() == b.name() && a.body() == b.body();
    case TermKind::App:
      return a.fun() == b.fun() && a.arg() == b.arg();
  }
  return false;
}

TermPath TermPath::child(Step s) const {
  TermPath out = *this;
  out.steps.push_back(s);
  return out;
}

bool TermPath::is_prefix_of(const TermPath& other) const {
  return steps.size() <= other.steps.size() &&
         std::equal(steps.begin(), steps.end(), other.steps.begin());
}

std::string_view to_string(Step step) {
  switch (step) {
    case Step::FunSide:
      return "FunSide";
    case Step::ArgSide:
      return "ArgSide";
    case Step::Body:
      return "Body";
  }
  return "?";
}

std::optional<Step> parse_step(std::string_view text) {
  if (text == "FunSide") return Step::FunSide;
  if (text == "ArgSide") return Step::ArgSide;
  if (text == "Body") return Step::Body;
  return std::nullopt;
}

std::string to_string(const TermPath& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    if (i) out += ", ";
    out += to_string(path.steps[i]);
  }
  out += "]";
  return out;
}

std::optional<TermPath> parse_path(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') return std::nullopt;
  text = trim(text.substr(1, text.size() - 2));
  TermPath path;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto part = trim(text.substr(0, comma));
    auto step = parse_step(part);
    if (!step) return std::nullopt;
    path.steps.push_back(*step);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
    if (trim(text).empty()) return std::nullopt;
  }
  return path;
}

std::string_view rule_symbol(Rule rule) {
  switch (rule) {
    case Rule::Alpha:
      return "α";
    case Rule::Beta:
      return "β";
    case Rule::Equiv:
      return "≡";
  }
  return "?";
}

std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::Alpha:
      return "alpha";
    case Rule::Beta:
      return "beta";
    case Rule::Equiv:
      return "equiv";
  }
  return "?";
}

bool is_variable_name(std::string_view name) { return ident_with_initial(name, 'a', 'z'); }
bool is_definition_name(std::string_view name) { return ident_with_initial(name, 'A', 'Z'); }

namespace {

struct WellFormedChecker {
  std::vector<std::string> binders;  // innermost last
  std::optional<std::string> error;

  void fail(std::string msg) {
    if (!error) error = std::move(msg);
  }

  void visit(const Term& t) {
    if (error) return;
    switch (t.kind()) {
      case TermKind::BoundVar: {
        if (t.index() >= binders.size()) {
          fail("bound index " + std::to_string(t.index()) + " out of range");
          return;
        }
        const auto pos = binders.size() - 1 - t.index();
        if (binders[pos] != t.name()) {
          fail("hint '" + t.name() + "' differs from binder '" + binders[pos] + "'");
          return;
        }
        for (std::size_t i = pos + 1; i < binders.size(); ++i) {
          if (binders[i] == t.name()) {
            fail("occurrence of '" + t.name() + "' is shadowed by a nearer binder");
            return;
          }
        }
        return;
      }
      case TermKind::FreeVar:
        if (!is_variable_name(t.name())) fail("illegal variable name '" + t.name() + "'");
        if (std::find(binders.begin(), binders.end(), t.name()) != binders.end())
          fail("free variable '" + t.name() + "' is under a binder of the same name");
        return;
      case TermKind::Ref:
        if (!is_definition_name(t.name())) fail("illegal definition name '" + t.name() + "'");
        return;
      case TermKind::Abs:
        if (!is_variable_name(t.name())) fail("illegal binder name '" + t.name() + "'");
        binders.push_back(t.name());
        visit(t.body());
        binders.pop_back();
        return;
      case TermKind::App:
        visit(t.fun());
        visit(t.arg());
        return;
    }
  }
};

}  // namespace

std::optional<std::string> check_well_formed(const Term& t) {
  WellFormedChecker checker;
  checker.visit(t);
  return checker.error;
}

std::string_view code_id(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPath:
      return "invalid_path";
    case ErrorCode::NotARedex:
      return "not_a_redex";
    case ErrorCode::NotAnAbstraction:
      return "not_an_abstraction";
    case ErrorCode::NotARef:
      return "not_a_ref";
    case ErrorCode::UndefinedRef:
      return "undefined_ref";
    case ErrorCode::InvalidName:
      return "invalid_name";
    case ErrorCode::WouldBindFree:
      return "would_bind_free";
    case ErrorCode::WouldShadow:
      return "would_shadow";
    case ErrorCode::Capture:
      return "capture";
  }
  return "unknown";
}

std::string describe(const RuleError& error) {
  switch (error.code) {
    case ErrorCode::InvalidPath:
      return "the path does not address a subterm";
    case ErrorCode::NotARedex:
      return "no reducible application at this position";
    case ErrorCode::NotAnAbstraction:
      return "α-conversion needs an abstraction";
    case ErrorCode::NotARef:
      return "≡-expansion needs a named term";
    case ErrorCode::UndefinedRef:
      return "'" + error.name + "' is not defined";
    case ErrorCode::InvalidName:
      return "'" + error.name + "' is not a valid variable name (lower-case initial required)";
    case ErrorCode::WouldBindFree:
      return "renaming to '" + error.name + "' would bind a free variable";
    case ErrorCode::WouldShadow:
      return "renaming to '" + error.name + "' would be caught by another binder";
    case ErrorCode::Capture: {
      std::string names;
      for (const auto& n : error.capture.captured_names) {
        if (!names.empty()) names += ", ";
        names += n;
      }
      return "free variable(s) " + names + " would become bound";
    }
  }
  return "rule refused";
}

bool Environment::define(std::string name, Term body) {
  if (defs_.count(name)) return false;
  const auto n = arity(body);
  defs_.emplace(std::move(name), Definition{std::move(body), n});
  return true;
}

bool Environment::remove(std::string_view name) {
  auto it = defs_.find(name);
  if (it == defs_.end()) return false;
  defs_.erase(it);
  return true;
}

const Definition* Environment::find(std::string_view name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? nullptr : &it->second;
}

std::vector<std::string> Environment::names() const {
  std::vector<std::string> out;
  out.reserve(defs_.size());
  for (const auto& [name, def] : defs_) out.push_back(name);
  return out;
}

}  // namespace lambdalab

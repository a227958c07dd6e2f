#include "lambdalab/rules.hpp"

#include <algorithm>

namespace lambdalab {

namespace {

void collect_free(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::FreeVar:
      out.insert(t.name());
      return;
    case TermKind::Abs:
      collect_free(t.body(), out);
      return;
    case TermKind::App:
      collect_free(t.fun(), out);
      collect_free(t.arg(), out);
      return;
    default:
      return;
  }
}

// Names that are free relative to `t` itself: FreeVar names plus the hints of
// bound variables whose binder lies outside `t`.
void collect_escaping(const Term& t, std::size_t depth, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::FreeVar:
      out.insert(t.name());
      return;
    case TermKind::BoundVar:
      if (t.index() >= depth) out.insert(t.name());
      return;
    case TermKind::Abs:
      collect_escaping(t.body(), depth + 1, out);
      return;
    case TermKind::App:
      collect_escaping(t.fun(), depth, out);
      collect_escaping(t.arg(), depth, out);
      return;
    case TermKind::Ref:
      return;
  }
}

std::set<std::string> escaping_names(const Term& t) {
  std::set<std::string> out;
  collect_escaping(t, 0, out);
  return out;
}

// Substitutes `arg` for the variable bound `depth` levels above the current
// position and closes the gap left by the removed binder.
Term instantiate(const Term& t, const Term& arg, std::size_t depth) {
  switch (t.kind()) {
    case TermKind::BoundVar:
      if (t.index() == depth) return shift(arg, static_cast<long>(depth), 0);
      if (t.index() > depth) return Term::bound(t.index() - 1, t.name());
      return t;
    case TermKind::Abs:
      return Term::abs(t.name(), instantiate(t.body(), arg, depth + 1));
    case TermKind::App:
      return Term::app(instantiate(t.fun(), arg, depth), instantiate(t.arg(), arg, depth));
    default:
      return t;
  }
}

// Binders inside the function body that enclose an occurrence of the redex
// variable and share a name with a free name of the argument.
void find_captures(const Term& t, std::size_t depth, const std::set<std::string>& arg_names,
                   std::vector<const std::string*>& binders, std::set<std::string>& captured) {
  switch (t.kind()) {
    case TermKind::BoundVar:
      if (t.index() == depth) {
        for (const auto* b : binders)
          if (arg_names.count(*b)) captured.insert(*b);
      }
      return;
    case TermKind::Abs:
      binders.push_back(&t.name());
      find_captures(t.body(), depth + 1, arg_names, binders, captured);
      binders.pop_back();
      return;
    case TermKind::App:
      find_captures(t.fun(), depth, arg_names, binders, captured);
      find_captures(t.arg(), depth, arg_names, binders, captured);
      return;
    default:
      return;
  }
}

std::set<std::string> beta_captures(const Term& redex) {
  std::set<std::string> captured;
  const auto arg_names = escaping_names(redex.arg());
  if (arg_names.empty()) return captured;
  std::vector<const std::string*> binders;
  find_captures(redex.fun().body(), 0, arg_names, binders, captured);
  return captured;
}

std::set<std::string> expansion_captures(const Term& def, const std::vector<std::string>& binders) {
  std::set<std::string> captured;
  const auto names = escaping_names(def);
  for (const auto& b : binders)
    if (names.count(b)) captured.insert(b);
  return captured;
}

Term replace_rec(const Term& t, const std::vector<Step>& steps, std::size_t i, Term& replacement) {
  if (i == steps.size()) return std::move(replacement);
  switch (steps[i]) {
    case Step::Body:
      return Term::abs(t.name(), replace_rec(t.body(), steps, i + 1, replacement));
    case Step::FunSide:
      return Term::app(replace_rec(t.fun(), steps, i + 1, replacement), t.arg());
    case Step::ArgSide:
      return Term::app(t.fun(), replace_rec(t.arg(), steps, i + 1, replacement));
  }
  return t;
}

void enumerate_rec(const Term& t, const Environment& env, TermPath& path,
                   std::vector<RedexInfo>& out) {
  switch (t.kind()) {
    case TermKind::Abs:
      path.steps.push_back(Step::Body);
      enumerate_rec(t.body(), env, path, out);
      path.steps.pop_back();
      return;
    case TermKind::App: {
      if (t.fun().is_abs()) {
        out.push_back(RedexInfo{path, RedexKind::Direct, {}});
      } else if (t.fun().is_ref()) {
        if (auto chain = resolve_ref_chain(t.fun().name(), env))
          out.push_back(RedexInfo{path, RedexKind::ViaExpansion, std::move(*chain)});
      }
      path.steps.push_back(Step::FunSide);
      enumerate_rec(t.fun(), env, path, out);
      path.steps.back() = Step::ArgSide;
      enumerate_rec(t.arg(), env, path, out);
      path.steps.pop_back();
      return;
    }
    default:
      return;
  }
}

bool has_redex(const Term& t, const Environment& env) {
  switch (t.kind()) {
    case TermKind::Abs:
      return has_redex(t.body(), env);
    case TermKind::App:
      if (t.fun().is_abs()) return true;
      if (t.fun().is_ref() && resolve_ref_chain(t.fun().name(), env)) return true;
      return has_redex(t.fun(), env) || has_redex(t.arg(), env);
    default:
      return false;
  }
}

bool alpha_eq_rec(const Term& a, const Term& b) {
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case TermKind::BoundVar:
      return a.index() == b.index();
    case TermKind::FreeVar:
    case TermKind::Ref:
      return a.name() == b.name();
    case TermKind::Abs:
      return alpha_eq_rec(a.body(), b.body());
    case TermKind::App:
      return alpha_eq_rec(a.fun(), b.fun()) && alpha_eq_rec(a.arg(), b.arg());
  }
  return false;
}

struct RenameCheck {
  const std::string& new_name;
  bool binds_free = false;
  bool shadows = false;
  std::vector<const std::string*> inner;

  void visit(const Term& t, std::size_t depth) {
    switch (t.kind()) {
      case TermKind::FreeVar:
        if (t.name() == new_name) binds_free = true;
        return;
      case TermKind::BoundVar:
        if (t.index() > depth && t.name() == new_name) binds_free = true;
        if (t.index() == depth &&
            std::any_of(inner.begin(), inner.end(), [&](auto* b) { return *b == new_name; }))
          shadows = true;
        return;
      case TermKind::Abs:
        inner.push_back(&t.name());
        visit(t.body(), depth + 1);
        inner.pop_back();
        return;
      case TermKind::App:
        visit(t.fun(), depth);
        visit(t.arg(), depth);
        return;
      case TermKind::Ref:
        return;
    }
  }
};

Term rename_occurrences(const Term& t, std::size_t depth, const std::string& new_name) {
  switch (t.kind()) {
    case TermKind::BoundVar:
      return t.index() == depth ? Term::bound(depth, new_name) : t;
    case TermKind::Abs:
      return Term::abs(t.name(), rename_occurrences(t.body(), depth + 1, new_name));
    case TermKind::App:
      return Term::app(rename_occurrences(t.fun(), depth, new_name),
                       rename_occurrences(t.arg(), depth, new_name));
    default:
      return t;
  }
}

// Expands the reference at `site` without validating anything but capture.
Result<Term> expand_checked(const Term& t, const TermPath& site, const Definition& def,
                            const TermPath& report_site) {
  const auto binders = enclosing_binders(t, site);
  auto captured = expansion_captures(def.body, binders);
  if (!captured.empty()) return RuleError::captured({std::move(captured), report_site});
  return replace_at(t, site, shift(def.body, static_cast<long>(binders.size()), 0));
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

bool alpha_eq(const Term& a, const Term& b) { return alpha_eq_rec(a, b); }

const Term* find_subterm(const Term& t, const TermPath& p) {
  const Term* cur = &t;
  for (Step s : p.steps) {
    switch (s) {
      case Step::Body:
        if (!cur->is_abs()) return nullptr;
        cur = &cur->body();
        break;
      case Step::FunSide:
        if (!cur->is_app()) return nullptr;
        cur = &cur->fun();
        break;
      case Step::ArgSide:
        if (!cur->is_app()) return nullptr;
        cur = &cur->arg();
        break;
    }
  }
  return cur;
}

Result<Term> subterm_at(const Term& t, const TermPath& p) {
  if (const Term* sub = find_subterm(t, p)) return *sub;
  return RuleError{ErrorCode::InvalidPath, {}, {}};
}

Result<Term> replace_at(const Term& t, const TermPath& p, Term replacement) {
  if (!find_subterm(t, p)) return RuleError{ErrorCode::InvalidPath, {}, {}};
  return replace_rec(t, p.steps, 0, replacement);
}

Term shift(const Term& t, long amount, std::size_t cutoff) {
  if (amount == 0) return t;
  switch (t.kind()) {
    case TermKind::BoundVar:
      if (t.index() >= cutoff)
        return Term::bound(static_cast<std::size_t>(static_cast<long>(t.index()) + amount),
                           t.name());
      return t;
    case TermKind::Abs:
      return Term::abs(t.name(), shift(t.body(), amount, cutoff + 1));
    case TermKind::App:
      return Term::app(shift(t.fun(), amount, cutoff), shift(t.arg(), amount, cutoff));
    default:
      return t;
  }
}

std::vector<std::string> enclosing_binders(const Term& t, const TermPath& p) {
  std::vector<std::string> out;
  const Term* cur = &t;
  for (Step s : p.steps) {
    if (!cur) break;
    if (s == Step::Body && cur->is_abs()) {
      out.push_back(cur->name());
      cur = &cur->body();
    } else if (s == Step::FunSide && cur->is_app()) {
      cur = &cur->fun();
    } else if (s == Step::ArgSide && cur->is_app()) {
      cur = &cur->arg();
    } else {
      cur = nullptr;
    }
  }
  return out;
}

std::optional<std::vector<std::string>> resolve_ref_chain(const std::string& name,
                                                          const Environment& env) {
  std::vector<std::string> chain;
  const std::string* cur = &name;
  while (chain.size() <= env.size()) {
    const Definition* def = env.find(*cur);
    if (!def) return std::nullopt;
    chain.push_back(*cur);
    if (def->body.is_abs()) return chain;
    if (!def->body.is_ref()) return std::nullopt;
    cur = &def->body.name();
  }
  return std::nullopt;  // cyclic environment
}

std::vector<RedexInfo> enumerate_redexes(const Term& t, const Environment& env) {
  std::vector<RedexInfo> out;
  TermPath path;
  path.steps.reserve(t.size());
  enumerate_rec(t, env, path, out);
  return out;
}

std::optional<RedexInfo> redex_at(const Term& t, const TermPath& p, const Environment& env) {
  const Term* node = find_subterm(t, p);
  if (!node || !node->is_app()) return std::nullopt;
  if (node->fun().is_abs()) return RedexInfo{p, RedexKind::Direct, {}};
  if (node->fun().is_ref()) {
    if (auto chain = resolve_ref_chain(node->fun().name(), env))
      return RedexInfo{p, RedexKind::ViaExpansion, std::move(*chain)};
  }
  return std::nullopt;
}

Result<std::optional<CaptureReport>> would_capture_beta(const Term& t, const TermPath& p,
                                                        const Environment& env) {
  auto reduced = beta_reduce_at(t, p, env);
  if (reduced) return std::optional<CaptureReport>{};
  if (reduced.error().code == ErrorCode::Capture)
    return std::optional<CaptureReport>{reduced.error().capture};
  return reduced.error();
}

Result<Term> beta_reduce_at(const Term& t, const TermPath& p, const Environment& env) {
  auto info = redex_at(t, p, env);
  if (!info) return RuleError{ErrorCode::NotARedex, {}, {}};

  Term cur = t;
  const TermPath head = p.child(Step::FunSide);
  for (const auto& name : info->ref_chain) {
    auto expanded = expand_checked(cur, head, *env.find(name), p);
    if (!expanded) return expanded.error();
    cur = std::move(expanded).value();
  }

  const Term& redex = *find_subterm(cur, p);
  auto captured = beta_captures(redex);
  if (!captured.empty()) return RuleError::captured({std::move(captured), p});
  return replace_at(cur, p, instantiate(redex.fun().body(), redex.arg(), 0));
}

Result<Term> alpha_convert_at(const Term& t, const TermPath& p, const std::string& new_name) {
  const Term* node = find_subterm(t, p);
  if (!node) return RuleError{ErrorCode::InvalidPath, {}, {}};
  if (!node->is_abs()) return RuleError{ErrorCode::NotAnAbstraction, {}, {}};
  if (!is_variable_name(new_name)) return RuleError{ErrorCode::InvalidName, new_name, {}};
  if (node->name() == new_name) return t;

  RenameCheck check{new_name, false, false, {}};
  check.visit(node->body(), 0);
  if (check.binds_free) return RuleError{ErrorCode::WouldBindFree, new_name, {}};
  if (check.shadows) return RuleError{ErrorCode::WouldShadow, new_name, {}};

  return replace_at(t, p, Term::abs(new_name, rename_occurrences(node->body(), 0, new_name)));
}

Result<Term> expand_at(const Term& t, const TermPath& p, const Environment& env) {
  const Term* node = find_subterm(t, p);
  if (!node) return RuleError{ErrorCode::InvalidPath, {}, {}};
  if (!node->is_ref()) return RuleError{ErrorCode::NotARef, {}, {}};
  const Definition* def = env.find(node->name());
  if (!def) return RuleError{ErrorCode::UndefinedRef, node->name(), {}};
  return expand_checked(t, p, *def, p);
}

bool is_normal_form(const Term& t, const Environment& env) { return !has_redex(t, env); }

std::size_t arity(const Term& def) {
  std::size_t n = 0;
  for (const Term* cur = &def; cur->is_abs(); cur = &cur->body()) ++n;
  return n;
}

}  // namespace lambdalab

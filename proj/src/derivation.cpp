#include "lambdalab/derivation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace lambdalab {

namespace {

void collect_paths(const Term& t, TermKind kind, TermPath& path, std::vector<TermPath>& out) {
  if (t.kind() == kind) out.push_back(path);
  if (t.is_abs()) {
    path.steps.push_back(Step::Body);
    collect_paths(t.body(), kind, path, out);
    path.steps.pop_back();
  } else if (t.is_app()) {
    path.steps.push_back(Step::FunSide);
    collect_paths(t.fun(), kind, path, out);
    path.steps.back() = Step::ArgSide;
    collect_paths(t.arg(), kind, path, out);
    path.steps.pop_back();
  }
}

std::vector<TermPath> paths_of(const Term& t, TermKind kind) {
  std::vector<TermPath> out;
  TermPath path;
  collect_paths(t, kind, path, out);
  return out;
}

void collect_refs(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Ref:
      out.insert(t.name());
      return;
    case TermKind::Abs:
      collect_refs(t.body(), out);
      return;
    case TermKind::App:
      collect_refs(t.fun(), out);
      collect_refs(t.arg(), out);
      return;
    default:
      return;
  }
}

struct NewStep {
  Rule rule;
  Term term;
};

// The steps a β on `path` appends: one ≡ per reference in the head chain,
// then the β step. Either all succeed or nothing is produced.
Result<std::vector<NewStep>> beta_steps(const Term& last, const TermPath& path,
                                        const Environment& env) {
  if (!find_subterm(last, path)) return RuleError{ErrorCode::InvalidPath, {}, {}};
  auto info = redex_at(last, path, env);
  if (!info) return RuleError{ErrorCode::NotARedex, {}, {}};
  auto reduced = beta_reduce_at(last, path, env);
  if (!reduced) return reduced.error();

  std::vector<NewStep> out;
  Term cur = last;
  const TermPath head = path.child(Step::FunSide);
  for (std::size_t i = 0; i < info->ref_chain.size(); ++i) {
    auto expanded = expand_at(cur, head, env);
    if (!expanded) return expanded.error();
    cur = std::move(expanded).value();
    out.push_back({Rule::Equiv, cur});
  }
  out.push_back({Rule::Beta, std::move(reduced).value()});
  return out;
}

}  // namespace

Derivation from_ast(const DerivationAst& item) {
  return Derivation{item.name, item.terms, item.arrows};
}

DerivationAst to_ast(const Derivation& d) {
  DerivationAst item;
  item.name = d.name;
  item.terms = d.steps;
  item.arrows = d.rules;
  return item;
}

Result<Derivation> apply_action(const Derivation& d, const Action& action, const Environment& env) {
  const Term& last = d.last();
  std::vector<NewStep> added;
  if (const auto* alpha = std::get_if<AlphaRename>(&action)) {
    auto r = alpha_convert_at(last, alpha->path, alpha->new_name);
    if (!r) return r.error();
    added.push_back({Rule::Alpha, std::move(r).value()});
  } else if (const auto* expand = std::get_if<ExpandAt>(&action)) {
    auto r = expand_at(last, expand->path, env);
    if (!r) return r.error();
    added.push_back({Rule::Equiv, std::move(r).value()});
  } else {
    auto r = beta_steps(last, std::get<BetaAt>(action).path, env);
    if (!r) return r.error();
    added = std::move(r).value();
  }
  Derivation out = d;
  for (auto& step : added) {
    out.rules.push_back(step.rule);
    out.steps.push_back(std::move(step.term));
  }
  return out;
}

StepVerdict validate_step(const Term& from, Rule rule, const Term& to, const Environment& env) {
  StepVerdict v;
  switch (rule) {
    case Rule::Beta:
      for (const auto& redex : enumerate_redexes(from, env)) {
        if (redex.kind != RedexKind::Direct) continue;
        auto r = beta_reduce_at(from, redex.path, env);
        if (r && r.value() == to) {
          v.witness = redex.path;
          return v;
        }
      }
      v.reason = "no β-redex produces this term";
      break;
    case Rule::Alpha:
      for (const auto& path : paths_of(from, TermKind::Abs)) {
        const Term* target = find_subterm(to, path);
        if (!target || !target->is_abs()) continue;
        if (target->name() == find_subterm(from, path)->name()) continue;
        auto r = alpha_convert_at(from, path, target->name());
        if (r && r.value() == to) {
          v.witness = path;
          return v;
        }
      }
      v.reason = "no single binder rename produces this term";
      break;
    case Rule::Equiv:
      for (const auto& path : paths_of(from, TermKind::Ref)) {
        auto r = expand_at(from, path, env);
        if (r && r.value() == to) {
          v.witness = path;
          return v;
        }
      }
      v.reason = "no ≡-expansion produces this term";
      break;
  }
  v.status = VerdictStatus::Invalid;
  return v;
}

std::vector<StepVerdict> validate_derivation(const Derivation& d, const Environment& env) {
  std::vector<StepVerdict> out;
  for (std::size_t i = 0; i < d.rules.size() && i + 1 < d.steps.size(); ++i) {
    StepVerdict v = validate_step(d.steps[i], d.rules[i], d.steps[i + 1], env);
    v.index = i + 1;
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<RedexInfo> select_redex(const Term& t, const Environment& env, Strategy strategy) {
  auto redexes = enumerate_redexes(t, env);
  if (redexes.empty()) return std::nullopt;
  if (strategy == Strategy::NormalOrder) return redexes.front();
  // Pre-order puts every redex nested in r directly after r, so r is
  // innermost iff its successor is outside its subterm.
  for (std::size_t i = redexes.size(); i-- > 0;) {
    const bool innermost =
        i + 1 == redexes.size() || !redexes[i].path.is_prefix_of(redexes[i + 1].path);
    if (innermost) return redexes[i];
  }
  return std::nullopt;
}

NormalizeResult normalize(const Term& t, const Environment& env, Strategy strategy,
                          std::size_t max_steps) {
  NormalizeResult result;
  result.trace.steps.push_back(t);
  for (;;) {
    const Term& cur = result.trace.last();
    auto redex = select_redex(cur, env, strategy);
    if (!redex) {
      result.outcome = Outcome::NormalForm;
      return result;
    }
    const std::size_t taken = result.trace.rules.size();
    if (taken + redex->ref_chain.size() + 1 > max_steps) {
      result.outcome = Outcome::StepLimit;
      return result;
    }
    auto steps = beta_steps(cur, redex->path, env);
    if (!steps) {
      result.outcome = Outcome::Stuck;
      result.capture = steps.error().capture;
      return result;
    }
    for (auto& s : std::move(steps).value()) {
      result.trace.rules.push_back(s.rule);
      result.trace.steps.push_back(std::move(s.term));
    }
  }
}

std::string_view outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::NormalForm:
      return "NormalForm";
    case Outcome::StepLimit:
      return "StepLimit";
    case Outcome::Stuck:
      return "Stuck";
  }
  return "?";
}

EnvironmentBuild build_environment(const DocumentAst& doc) {
  EnvironmentBuild out;
  std::map<std::string, SourceSpan> spans;
  std::vector<std::string> order;
  for (const auto& item : doc.items) {
    if (!item.name) continue;
    if (!out.env.define(*item.name, item.terms.front())) {
      out.diagnostics.push_back(Diagnostic{Severity::Error, item.span,
                                           "redefinition of '" + *item.name + "'",
                                           "redefinition"});
      continue;
    }
    spans.emplace(*item.name, item.span);
    order.push_back(*item.name);
  }

  // Tarjan's strongly connected components over the reference graph.
  std::map<std::string, std::vector<std::string>> edges;
  for (const auto& name : order) {
    std::set<std::string> refs;
    collect_refs(out.env.find(name)->body, refs);
    for (const auto& r : refs)
      if (out.env.contains(r)) edges[name].push_back(r);
  }
  std::map<std::string, std::size_t> index, low;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> cycles;
  std::size_t counter = 0;
  std::function<void(const std::string&)> connect = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : edges[v]) {
      if (!index.count(w)) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] != index[v]) return;
    std::vector<std::string> component;
    std::string w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack.erase(w);
      component.push_back(w);
    } while (w != v);
    const auto& self = edges[v];
    const bool self_loop = std::find(self.begin(), self.end(), v) != self.end();
    if (component.size() > 1 || self_loop) cycles.push_back(std::move(component));
  };
  for (const auto& name : order)
    if (!index.count(name)) connect(name);

  for (auto& component : cycles) {
    std::sort(component.begin(), component.end(), [&](const auto& a, const auto& b) {
      return std::find(order.begin(), order.end(), a) < std::find(order.begin(), order.end(), b);
    });
    std::string names;
    for (const auto& n : component) {
      if (!names.empty()) names += ", ";
      names += n;
      out.env.remove(n);
    }
    out.diagnostics.push_back(Diagnostic{Severity::Error, spans.at(component.front()),
                                         "cyclic definitions: " + names, "cyclic_definition"});
  }
  std::sort(out.diagnostics.begin(), out.diagnostics.end(), [](const auto& a, const auto& b) {
    return std::tie(a.span.start_line, a.span.start_col) < std::tie(b.span.start_line, b.span.start_col);
  });
  return out;
}

}  // namespace lambdalab

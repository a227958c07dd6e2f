#include "oracles.hpp"

#include <algorithm>

namespace lambdalab::testing {

NamedPtr nvar(std::string name) {
  return std::make_shared<Named>(Named{Named::Kind::Var, std::move(name), nullptr, nullptr});
}
NamedPtr nlam(std::string name, NamedPtr body) {
  return std::make_shared<Named>(Named{Named::Kind::Lam, std::move(name), std::move(body), nullptr});
}
NamedPtr napp(NamedPtr f, NamedPtr x) {
  return std::make_shared<Named>(Named{Named::Kind::App, {}, std::move(f), std::move(x)});
}
NamedPtr nref(std::string name) {
  return std::make_shared<Named>(Named{Named::Kind::Ref, std::move(name), nullptr, nullptr});
}

NamedPtr to_named(const Term& t) {
  switch (t.kind()) {
    case TermKind::BoundVar:
    case TermKind::FreeVar:
      return nvar(t.name());
    case TermKind::Ref:
      return nref(t.name());
    case TermKind::Abs:
      return nlam(t.name(), to_named(t.body()));
    case TermKind::App:
      return napp(to_named(t.fun()), to_named(t.arg()));
  }
  return nullptr;
}

namespace {

void free_rec(const NamedPtr& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case Named::Kind::Var:
      if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) out.insert(t->name);
      return;
    case Named::Kind::Lam:
      bound.push_back(t->name);
      free_rec(t->a, bound, out);
      bound.pop_back();
      return;
    case Named::Kind::App:
      free_rec(t->a, bound, out);
      free_rec(t->b, bound, out);
      return;
    case Named::Kind::Ref:
      return;
  }
}

NamedPtr rename_free(const NamedPtr& t, const std::string& from, const std::string& to) {
  switch (t->kind) {
    case Named::Kind::Var:
      return t->name == from ? nvar(to) : t;
    case Named::Kind::Lam:
      return t->name == from ? t : nlam(t->name, rename_free(t->a, from, to));
    case Named::Kind::App:
      return napp(rename_free(t->a, from, to), rename_free(t->b, from, to));
    case Named::Kind::Ref:
      return t;
  }
  return t;
}

bool alpha_rec(const NamedPtr& a, const NamedPtr& b, std::vector<std::string>& sa,
               std::vector<std::string>& sb) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Named::Kind::Var: {
      auto ia = std::find(sa.rbegin(), sa.rend(), a->name);
      auto ib = std::find(sb.rbegin(), sb.rend(), b->name);
      const bool fa = ia == sa.rend(), fb = ib == sb.rend();
      if (fa || fb) return fa && fb && a->name == b->name;
      return std::distance(sa.rbegin(), ia) == std::distance(sb.rbegin(), ib);
    }
    case Named::Kind::Ref:
      return a->name == b->name;
    case Named::Kind::Lam: {
      sa.push_back(a->name);
      sb.push_back(b->name);
      const bool eq = alpha_rec(a->a, b->a, sa, sb);
      sa.pop_back();
      sb.pop_back();
      return eq;
    }
    case Named::Kind::App:
      return alpha_rec(a->a, b->a, sa, sb) && alpha_rec(a->b, b->b, sa, sb);
  }
  return false;
}

bool resolves_to_abs(const std::string& name, const Environment& env, std::size_t fuel) {
  if (fuel == 0) return false;
  const Definition* def = env.find(name);
  if (!def) return false;
  if (def->body.kind() == TermKind::Abs) return true;
  if (def->body.kind() == TermKind::Ref) return resolves_to_abs(def->body.name(), env, fuel - 1);
  return false;
}

}  // namespace

std::set<std::string> named_free_vars(const NamedPtr& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  free_rec(t, bound, out);
  return out;
}

NamedPtr naive_subst(const NamedPtr& body, const std::string& x, const NamedPtr& s) {
  switch (body->kind) {
    case Named::Kind::Var:
      return body->name == x ? s : body;
    case Named::Kind::Lam:
      return body->name == x ? body : nlam(body->name, naive_subst(body->a, x, s));
    case Named::Kind::App:
      return napp(naive_subst(body->a, x, s), naive_subst(body->b, x, s));
    case Named::Kind::Ref:
      return body;
  }
  return body;
}

NamedPtr freshen_binders(const NamedPtr& t, int& counter) {
  switch (t->kind) {
    case Named::Kind::Lam: {
      const std::string fresh = "fresh_" + std::to_string(counter++);
      return nlam(fresh, freshen_binders(rename_free(t->a, t->name, fresh), counter));
    }
    case Named::Kind::App:
      return napp(freshen_binders(t->a, counter), freshen_binders(t->b, counter));
    default:
      return t;
  }
}

bool named_alpha_eq(const NamedPtr& a, const NamedPtr& b) {
  std::vector<std::string> sa, sb;
  return alpha_rec(a, b, sa, sb);
}

std::string show(const NamedPtr& t) {
  switch (t->kind) {
    case Named::Kind::Var:
    case Named::Kind::Ref:
      return t->name;
    case Named::Kind::Lam:
      return "(\\" + t->name + ". " + show(t->a) + ")";
    case Named::Kind::App:
      return "(" + show(t->a) + " " + show(t->b) + ")";
  }
  return "?";
}

std::vector<TermPath> brute_force_redexes(const Term& t, const Environment& env) {
  // Breadth-first over every node, then sorted into pre-order; deliberately
  // unlike the library's depth-first walk. Nodes keep a parent link and paths
  // are rebuilt only for the redexes found.
  struct Visit {
    const Term* node;
    std::size_t parent;
    Step step;
  };
  std::vector<Visit> queue;
  queue.reserve(t.size());
  queue.push_back({&t, 0, Step::Body});
  std::vector<std::size_t> found;
  for (std::size_t next = 0; next < queue.size(); ++next) {
    const Term& node = *queue[next].node;
    if (node.kind() == TermKind::Abs) {
      queue.push_back({&node.body(), next, Step::Body});
    } else if (node.kind() == TermKind::App) {
      const Term& head = node.fun();
      if (head.kind() == TermKind::Abs ||
          (head.kind() == TermKind::Ref && resolves_to_abs(head.name(), env, env.size() + 1)))
        found.push_back(next);
      queue.push_back({&node.fun(), next, Step::FunSide});
      queue.push_back({&node.arg(), next, Step::ArgSide});
    }
  }
  std::vector<TermPath> out;
  for (std::size_t i : found) {
    TermPath path;
    for (; i != 0; i = queue[i].parent) path.steps.push_back(queue[i].step);
    std::reverse(path.steps.begin(), path.steps.end());
    out.push_back(std::move(path));
  }
  std::sort(out.begin(), out.end(), [](const TermPath& a, const TermPath& b) {
    return std::lexicographical_compare(a.steps.begin(), a.steps.end(), b.steps.begin(),
                                        b.steps.end());
  });
  return out;
}

}  // namespace lambdalab::testing

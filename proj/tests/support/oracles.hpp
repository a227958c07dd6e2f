#pragma once

// Reference implementations used only by tests. They work on plainly named
// terms (no indices) so they share no code path with the library.

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lambdalab/environment.hpp"
#include "lambdalab/term.hpp"

namespace lambdalab::testing {

struct Named {
  enum class Kind { Var, Lam, App, Ref } kind;
  std::string name;
  std::shared_ptr<const Named> a, b;
};
using NamedPtr = std::shared_ptr<const Named>;

NamedPtr nvar(std::string name);
NamedPtr nlam(std::string name, NamedPtr body);
NamedPtr napp(NamedPtr f, NamedPtr x);
NamedPtr nref(std::string name);

/// Reads a term through its surface names only.
NamedPtr to_named(const Term& t);

std::set<std::string> named_free_vars(const NamedPtr& t);
/// body[x := s] by textual replacement of free occurrences; no renaming.
NamedPtr naive_subst(const NamedPtr& body, const std::string& x, const NamedPtr& s);
/// Renames every binder of `t` to a globally fresh name.
NamedPtr freshen_binders(const NamedPtr& t, int& counter);
/// Alpha-equivalence by binder-position matching.
bool named_alpha_eq(const NamedPtr& a, const NamedPtr& b);
std::string show(const NamedPtr& t);

/// Brute-force redex scan: every App node whose head is an abstraction or a
/// reference resolving (through references) to one. Sorted in pre-order.
std::vector<TermPath> brute_force_redexes(const Term& t, const Environment& env);

}  // namespace lambdalab::testing

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lambdalab/environment.hpp"
#include "lambdalab/result.hpp"
#include "lambdalab/term.hpp"

namespace lambdalab {

enum class RedexKind : std::uint8_t { Direct, ViaExpansion };

struct RedexInfo {
  TermPath path;
  RedexKind kind = RedexKind::Direct;
  /// For ViaExpansion: the reference names expanded in order, head first.
  std::vector<std::string> ref_chain;

  friend bool operator==(const RedexInfo&, const RedexInfo&) = default;
};

/// Names of the FreeVar nodes in `t`. References are not chased.
std::set<std::string> free_vars(const Term& t);

/// Equality up to binder names and name hints.
bool alpha_eq(const Term& a, const Term& b);

Result<Term> subterm_at(const Term& t, const TermPath& p);
/// Same as subterm_at but returns nullptr for an invalid path.
const Term* find_subterm(const Term& t, const TermPath& p);
/// Replaces the subterm at `p`. `replacement` must already be expressed
/// relative to the binders enclosing `p`.
Result<Term> replace_at(const Term& t, const TermPath& p, Term replacement);

/// Adds `amount` to every bound index >= `cutoff`.
Term shift(const Term& t, long amount, std::size_t cutoff = 0);

/// Binder names of the abstractions strictly enclosing `p`, outermost first.
std::vector<std::string> enclosing_binders(const Term& t, const TermPath& p);

/// Follows a reference through definitions that are themselves references.
/// Returns the chain of names if it ends in an abstraction.
std::optional<std::vector<std::string>> resolve_ref_chain(const std::string& name,
                                                          const Environment& env);

/// Every reducible application in pre-order (leftmost-outermost first).
/// Applications headed by a reference count when the reference resolves to
/// an abstraction; unresolved heads are skipped.
std::vector<RedexInfo> enumerate_redexes(const Term& t, const Environment& env);
std::optional<RedexInfo> redex_at(const Term& t, const TermPath& p, const Environment& env);

/// Capture that β-reducing the redex at `p` would cause, if any. For redexes
/// headed by references the expansions are checked as well.
Result<std::optional<CaptureReport>> would_capture_beta(const Term& t, const TermPath& p,
                                                        const Environment& env);

/// β-reduces the redex at `p`. Reference heads are expanded first. Any
/// capture is refused with ErrorCode::Capture; nothing is ever renamed.
Result<Term> beta_reduce_at(const Term& t, const TermPath& p, const Environment& env);

/// Renames the binder of the abstraction at `p` together with its bound
/// occurrences.
Result<Term> alpha_convert_at(const Term& t, const TermPath& p, const std::string& new_name);

/// Replaces the reference at `p` by its definition.
Result<Term> expand_at(const Term& t, const TermPath& p, const Environment& env);

bool is_normal_form(const Term& t, const Environment& env);

/// Number of leading abstractions.
std::size_t arity(const Term& def);

}  // namespace lambdalab

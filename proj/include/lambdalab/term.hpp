#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lambdalab {

enum class TermKind : std::uint8_t { BoundVar, FreeVar, Abs, App, Ref };

/// Immutable lambda term.
///
/// Bound variables are stored as De Bruijn indices (distance to the binding
/// abstraction) and additionally carry the surface name they were written
/// with. The index decides binding; the name is only ever used for display.
/// Copies are cheap: nodes are shared and never mutated.
class Term {
 public:
  static Term bound(std::size_t index, std::string name_hint);
  static Term free(std::string name);
  static Term abs(std::string binder, Term body);
  static Term app(Term fun, Term arg);
  static Term ref(std::string name);

  TermKind kind() const noexcept;
  bool is_bound() const noexcept { return kind() == TermKind::BoundVar; }
  bool is_free() const noexcept { return kind() == TermKind::FreeVar; }
  bool is_abs() const noexcept { return kind() == TermKind::Abs; }
  bool is_app() const noexcept { return kind() == TermKind::App; }
  bool is_ref() const noexcept { return kind() == TermKind::Ref; }

  /// De Bruijn index of a BoundVar.
  std::size_t index() const noexcept;
  /// Name hint, free variable name, binder name or reference name,
  /// depending on the kind.
  const std::string& name() const noexcept;
  const Term& body() const noexcept;
  const Term& fun() const noexcept;
  const Term& arg() const noexcept;

  /// Number of nodes.
  std::size_t size() const noexcept;

  /// Literal equality: indices, binder names and hints all compared.
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  Term() = default;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  TermKind kind = TermKind::FreeVar;
  std::size_t index = 0;
  std::string name;
  Term left;
  Term right;
  std::size_t size = 1;
};

inline TermKind Term::kind() const noexcept { return node_->kind; }
inline std::size_t Term::index() const noexcept { return node_->index; }
inline const std::string& Term::name() const noexcept { return node_->name; }
inline const Term& Term::body() const noexcept { return node_->left; }
inline const Term& Term::fun() const noexcept { return node_->left; }
inline const Term& Term::arg() const noexcept { return node_->right; }
inline std::size_t Term::size() const noexcept { return node_->size; }

enum class Step : std::uint8_t { FunSide, ArgSide, Body };

/// Address of a subterm: the sequence of child selections from the root.
struct TermPath {
  std::vector<Step> steps;

  TermPath() = default;
  TermPath(std::initializer_list<Step> s) : steps(s) {}

  bool empty() const noexcept { return steps.empty(); }
  std::size_t size() const noexcept { return steps.size(); }
  TermPath child(Step s) const;
  /// True if this path is a (non-strict) prefix of `other`.
  bool is_prefix_of(const TermPath& other) const;

  friend bool operator==(const TermPath&, const TermPath&) = default;
  friend auto operator<=>(const TermPath&, const TermPath&) = default;
};

/// "[]", "[Body, ArgSide]".
std::string to_string(const TermPath& path);
std::optional<TermPath> parse_path(std::string_view text);
std::string_view to_string(Step step);
std::optional<Step> parse_step(std::string_view text);

enum class Rule : std::uint8_t { Alpha, Beta, Equiv };

/// "α", "β", "≡".
std::string_view rule_symbol(Rule rule);
std::string_view rule_name(Rule rule);

/// Lexical rules for identifiers.
bool is_variable_name(std::string_view name);
bool is_definition_name(std::string_view name);

/// Checks every structural invariant of a term: indices in range, each hint
/// equal to the name of the binder it resolves to, lexically valid names, and
/// name faithfulness (no occurrence's name is shadowed by a nearer binder, so
/// the printed form reads back to the same term). Returns a description of
/// the first violation.
std::optional<std::string> check_well_formed(const Term& t);

}  // namespace lambdalab

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "lambdalab/derivation.hpp"
#include "lambdalab/environment.hpp"
#include "lambdalab/syntax.hpp"

namespace lambdalab {

enum class SpanTag {
  BinderSite,  // id: binder id
  BoundOcc,    // id: binder id
  FreeOcc,     // id: variable name
  ParenOpen,   // id: pair id
  ParenClose,  // id: pair id
  RefSite,     // id: definition name; `defined` says whether it resolves
  RedexFun,    // id: redex index
  RedexArg,    // id: redex index
};

std::string_view tag_name(SpanTag tag);

/// A tagged range of the rendered text, in 0-based code points, end exclusive.
struct RenderSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  SpanTag tag = SpanTag::FreeOcc;
  std::string id;
  /// Path of the tagged node in the term.
  TermPath path;
  bool defined = false;

  friend bool operator==(const RenderSpan&, const RenderSpan&) = default;
};

struct RenderModel {
  std::string text;
  std::vector<RenderSpan> spans;  // ordered by start, outer before inner
  std::size_t redex_count = 0;
  std::size_t focused_redex = 0;
  bool normal_form = true;

  friend bool operator==(const RenderModel&, const RenderModel&) = default;
};

/// Builds the render model of a single term. Binder ids are the paths of the
/// abstractions, so they are only stable within one render.
RenderModel render_term(const Term& t, const Environment& env, std::size_t focused_redex = 0,
                        const SyntaxConfig& config = default_config());

/// Term nodes visited by render_term on this thread since start-up.
std::size_t render_visit_count();

struct SessionSnapshot {
  std::string source_text;
  std::optional<std::string> selection;
  std::size_t focused_redex = 0;

  friend bool operator==(const SessionSnapshot&, const SessionSnapshot&) = default;
};

struct OutlineEntry {
  std::string id;  // the definition name, or "#k" for the k-th item
  SourceSpan span;
  /// Byte offset just past the item's closing brace.
  std::size_t end_offset = 0;
};

/// Editor state. Sessions are values: every operation returns a new one.
struct Session {
  std::string source_text;
  SyntaxConfig config;
  DocumentAst doc;
  Environment env;
  Diagnostics diagnostics;
  std::optional<std::string> selection;
  std::size_t focused_redex = 0;
  std::vector<SessionSnapshot> undo_stack;
  std::vector<SessionSnapshot> redo_stack;
  /// Last parse without errors, used by hover and completion.
  std::optional<DocumentAst> last_good_doc;
  std::optional<Environment> last_good_env;

  SessionSnapshot snapshot() const { return {source_text, selection, focused_redex}; }
};

Session open_session(std::string text, SyntaxConfig config = {});

std::vector<OutlineEntry> outline(const Session& s);

/// Index of the item with this outline id in `s.doc`.
std::optional<std::size_t> find_item(const Session& s, std::string_view id);

struct Warning {
  std::string code;
  std::string message;
  std::set<std::string> captured_names;
  std::optional<SourceSpan> span;

  friend bool operator==(const Warning&, const Warning&) = default;
};

Warning to_warning(const RuleError& error);

/// Renders the last term of an item.
Result<RenderModel, Warning> render(const Session& s, std::string_view item_id);

struct FocusRedex {
  int delta = 1;
};
struct Undo {};
struct Redo {};
using UiCommand = std::variant<AlphaRename, BetaAt, ExpandAt, FocusRedex, Undo, Redo>;

/// Replacement of source bytes [begin_offset, end_offset), also given as a
/// line/column span of the text before the edit.
struct SourceEdit {
  SourceSpan span;
  std::size_t begin_offset = 0;
  std::size_t end_offset = 0;
  std::string new_text;

  friend bool operator==(const SourceEdit&, const SourceEdit&) = default;
};

struct UiResult {
  Session session;
  std::optional<RenderModel> changed;
  std::optional<SourceEdit> edit;
  /// Set when the command was refused; the session is then unchanged.
  std::optional<Warning> warning;
};

UiResult ui_action(const Session& s, std::string_view item_id, const UiCommand& command);

/// Replaces `span` with `new_text` and reparses. Always pushes a snapshot.
Session edit_text(const Session& s, const SourceSpan& span, std::string_view new_text);

struct HoverInfo {
  std::string name;
  std::string definition_text;
  std::size_t arity = 0;

  friend bool operator==(const HoverInfo&, const HoverInfo&) = default;
};

/// Hover over the rendered last term of an item; `position` is a code point
/// offset into the render text.
std::optional<HoverInfo> hover_info(const Session& s, std::string_view item_id,
                                    std::size_t position);
/// Hover over the source text at a 1-based line and column.
std::optional<HoverInfo> hover_at(const Session& s, std::size_t line, std::size_t col);

enum class CompletionKind { NamedTerm, RuleArrow };

struct Completion {
  std::string label;
  CompletionKind kind = CompletionKind::NamedTerm;

  friend bool operator==(const Completion&, const Completion&) = default;
};

std::vector<Completion> completions(const Session& s, std::string_view prefix);

}  // namespace lambdalab

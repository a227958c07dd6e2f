#include "lambdalab/workspace.hpp"

#include <algorithm>
#include <set>

#include "lambdalab/lexer.hpp"
#include "lambdalab/rules.hpp"

namespace lambdalab {

namespace {

bool has_errors(const Diagnostics& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

// Outline ids: the definition name, or "#k" (1-based position) for unnamed
// items and for redefinitions, which would otherwise share an id.
std::vector<std::string> item_ids(const DocumentAst& doc) {
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc.items.size(); ++i) {
    const auto& name = doc.items[i].name;
    if (name && seen.insert(*name).second)
      ids.push_back(*name);
    else
      ids.push_back("#" + std::to_string(i + 1));
  }
  return ids;
}

std::optional<std::size_t> find_in(const DocumentAst& doc, std::string_view id) {
  const auto ids = item_ids(doc);
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ids.begin());
}

void reparse(Session& s) {
  auto parsed = parse_document(s.source_text, s.config);
  auto built = build_environment(parsed.doc);
  s.doc = std::move(parsed.doc);
  s.env = std::move(built.env);
  s.diagnostics = std::move(parsed.diagnostics);
  s.diagnostics.insert(s.diagnostics.end(), built.diagnostics.begin(), built.diagnostics.end());
  std::stable_sort(s.diagnostics.begin(), s.diagnostics.end(), [](const auto& a, const auto& b) {
    return std::tie(a.span.start_line, a.span.start_col) <
           std::tie(b.span.start_line, b.span.start_col);
  });
  if (!has_errors(s.diagnostics)) {
    s.last_good_doc = s.doc;
    s.last_good_env = s.env;
  }
}

void fix_selection(Session& s) {
  if (s.selection && find_item(s, *s.selection)) return;
  const auto ids = item_ids(s.doc);
  s.selection = ids.empty() ? std::nullopt : std::optional<std::string>(ids.front());
  s.focused_redex = 0;
}

void restore(Session& s, const SessionSnapshot& snap) {
  s.source_text = snap.source_text;
  reparse(s);
  s.selection = snap.selection;
  s.focused_redex = snap.focused_redex;
}

SourceSpan span_of(std::string_view text, std::size_t begin, std::size_t end) {
  SourceSpan span;
  position_of(text, begin, span.start_line, span.start_col);
  position_of(text, end, span.end_line, span.end_col);
  return span;
}

Warning simple_warning(std::string code, std::string message) {
  return Warning{std::move(code), std::move(message), {}, std::nullopt};
}

// Where the new step lines go: the blank gap between the last term and the
// closing brace is replaced, so other bytes stay as they were. A trailing
// comment in the gap is kept ahead of the new lines.
SourceEdit step_edit(const Session& s, const DerivationAst& item, const Derivation& before,
                     const Derivation& after) {
  std::string lines;
  for (std::size_t i = before.rules.size(); i < after.rules.size(); ++i)
    lines += "\n  " + print_step(after.rules[i], after.steps[i + 1], s.config);
  lines += "\n";

  std::size_t begin = item.last_term_end_offset;
  const std::size_t end = item.close_brace_offset;
  const std::string_view gap = std::string_view(s.source_text).substr(begin, end - begin);
  if (gap.find_first_not_of(" \t\r\n") != std::string_view::npos) {
    begin += gap.rfind('\n');
  }
  return SourceEdit{span_of(s.source_text, begin, end), begin, end, std::move(lines)};
}

SourceEdit whole_text_edit(const std::string& old_text, const std::string& new_text) {
  return SourceEdit{span_of(old_text, 0, old_text.size()), 0, old_text.size(), new_text};
}

std::optional<HoverInfo> describe_ref(const Environment& env, const std::string& name,
                                      const SyntaxConfig& config) {
  const Definition* def = env.find(name);
  if (!def) return std::nullopt;
  return HoverInfo{name, print_term(def->body, config), def->arity};
}

// Hover and completion fall back to the last clean parse while the text has
// errors.
const DocumentAst& view_doc(const Session& s) {
  return has_errors(s.diagnostics) && s.last_good_doc ? *s.last_good_doc : s.doc;
}
const Environment& view_env(const Session& s) {
  return has_errors(s.diagnostics) && s.last_good_env ? *s.last_good_env : s.env;
}

}  // namespace

Session open_session(std::string text, SyntaxConfig config) {
  Session s;
  s.source_text = std::move(text);
  s.config = std::move(config);
  reparse(s);
  fix_selection(s);
  return s;
}

std::vector<OutlineEntry> outline(const Session& s) {
  std::vector<OutlineEntry> out;
  const auto ids = item_ids(s.doc);
  for (std::size_t i = 0; i < ids.size(); ++i)
    out.push_back({ids[i], s.doc.items[i].span, s.doc.items[i].end_offset});
  return out;
}

std::optional<std::size_t> find_item(const Session& s, std::string_view id) {
  return find_in(s.doc, id);
}

Warning to_warning(const RuleError& error) {
  Warning w = simple_warning(std::string(code_id(error.code)), describe(error));
  if (error.code == ErrorCode::Capture) w.captured_names = error.capture.captured_names;
  return w;
}

Result<RenderModel, Warning> render(const Session& s, std::string_view item_id) {
  const auto index = find_item(s, item_id);
  if (!index) return simple_warning("unknown_item", "no item '" + std::string(item_id) + "'");
  const std::size_t focus = s.selection && *s.selection == item_id ? s.focused_redex : 0;
  return render_term(s.doc.items[*index].terms.back(), s.env, focus, s.config);
}

UiResult ui_action(const Session& s, std::string_view item_id, const UiCommand& command) {
  UiResult out{s, std::nullopt, std::nullopt, std::nullopt};
  Session& next = out.session;

  auto rendered_selection = [&] {
    if (!next.selection) return;
    auto model = render(next, *next.selection);
    if (model) out.changed = model.value();
  };

  if (std::holds_alternative<Undo>(command) || std::holds_alternative<Redo>(command)) {
    const bool undo = std::holds_alternative<Undo>(command);
    auto& from = undo ? next.undo_stack : next.redo_stack;
    auto& to = undo ? next.redo_stack : next.undo_stack;
    if (from.empty()) {
      out.warning = simple_warning(undo ? "nothing_to_undo" : "nothing_to_redo",
                                   undo ? "nothing to undo" : "nothing to redo");
      return out;
    }
    const SessionSnapshot snap = from.back();
    from.pop_back();
    to.push_back(next.snapshot());
    out.edit = whole_text_edit(next.source_text, snap.source_text);
    restore(next, snap);
    rendered_selection();
    return out;
  }

  const auto index = find_item(s, item_id);
  if (!index) {
    out.warning = simple_warning("unknown_item", "no item '" + std::string(item_id) + "'");
    return out;
  }

  if (const auto* focus = std::get_if<FocusRedex>(&command)) {
    const std::size_t count = enumerate_redexes(s.doc.items[*index].terms.back(), s.env).size();
    long current = s.selection && *s.selection == item_id ? static_cast<long>(s.focused_redex) : 0;
    if (count > 0) {
      const long n = static_cast<long>(count);
      current = ((current + focus->delta) % n + n) % n;
    } else {
      current = 0;
    }
    next.selection = std::string(item_id);
    next.focused_redex = static_cast<std::size_t>(current);
    rendered_selection();
    return out;
  }

  const DerivationAst& item = s.doc.items[*index];
  const Derivation before = from_ast(item);
  Action action;
  if (const auto* a = std::get_if<AlphaRename>(&command)) action = *a;
  else if (const auto* b = std::get_if<BetaAt>(&command)) action = *b;
  else action = std::get<ExpandAt>(command);

  auto applied = apply_action(before, action, s.env);
  if (!applied) {
    out.warning = to_warning(applied.error());
    return out;
  }

  const SourceEdit edit = step_edit(s, item, before, applied.value());
  next.undo_stack.push_back(s.snapshot());
  next.redo_stack.clear();
  next.source_text.replace(edit.begin_offset, edit.end_offset - edit.begin_offset, edit.new_text);
  reparse(next);
  next.selection = std::string(item_id);
  next.focused_redex = 0;
  fix_selection(next);
  out.edit = edit;
  rendered_selection();
  return out;
}

Session edit_text(const Session& s, const SourceSpan& span, std::string_view new_text) {
  Session next = s;
  const std::size_t begin = offset_of(s.source_text, span.start_line, span.start_col);
  const std::size_t end = std::max(begin, offset_of(s.source_text, span.end_line, span.end_col));
  next.undo_stack.push_back(s.snapshot());
  next.redo_stack.clear();
  next.source_text.replace(begin, end - begin, new_text);
  reparse(next);
  fix_selection(next);
  return next;
}

std::optional<HoverInfo> hover_info(const Session& s, std::string_view item_id,
                                    std::size_t position) {
  const DocumentAst& doc = view_doc(s);
  const auto index = find_in(doc, item_id);
  if (!index) return std::nullopt;
  const Term& t = doc.items[*index].terms.back();
  const TermLayout layout = layout_term(t, s.config);
  for (const auto& node : layout.nodes) {
    if (position < node.begin || position >= node.end) continue;
    const Term* sub = find_subterm(t, node.path);
    if (sub && sub->kind() == TermKind::Ref) return describe_ref(view_env(s), sub->name(), s.config);
  }
  return std::nullopt;
}

std::optional<HoverInfo> hover_at(const Session& s, std::size_t line, std::size_t col) {
  const std::size_t offset = offset_of(s.source_text, line, col);
  for (const auto& token : tokenize(s.source_text, s.config)) {
    if (token.kind != TokenKind::UpperIdent) continue;
    if (offset >= token.begin && offset < token.end)
      return describe_ref(view_env(s), std::string(token.text), s.config);
  }
  return std::nullopt;
}

std::vector<Completion> completions(const Session& s, std::string_view prefix) {
  std::set<std::string> names;
  for (const auto& [name, def] : s.env) names.insert(name);
  if (has_errors(s.diagnostics) && s.last_good_env)
    for (const auto& [name, def] : *s.last_good_env) names.insert(name);

  std::vector<Completion> out;
  for (const auto& name : names)
    if (name.starts_with(prefix))
      out.push_back({name, CompletionKind::NamedTerm});

  if (prefix.empty()) return out;
  for (const auto& [rule, spellings] : s.config.arrow_spellings) {
    for (const auto& spelling : spellings) {
      const std::string arrow = s.config.arrow_prefix + spelling;
      const bool starts_arrow = std::string_view(arrow).starts_with(prefix);
      if (starts_arrow) {
        out.push_back({arrow, CompletionKind::RuleArrow});
        break;
      }
    }
  }
  return out;
}

}  // namespace lambdalab

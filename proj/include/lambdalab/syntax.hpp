#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lambdalab/result.hpp"
#include "lambdalab/term.hpp"

namespace lambdalab {

/// Surface syntax options. The first spelling of every list is the one the
/// printer emits.
struct SyntaxConfig {
  std::vector<std::string> lambda_spellings{"λ", "\\", "\\lambda"};
  std::string binding_delimiter = ".";
  /// "," by default; a whitespace string enables `λx y z. t`.
  std::string multi_binding_delimiter = ",";
  std::map<Rule, std::vector<std::string>> arrow_spellings{
      {Rule::Alpha, {"α", "\\alpha"}},
      {Rule::Beta, {"β", "\\beta"}},
      {Rule::Equiv, {"≡", "\\equiv"}},
  };
  std::string arrow_prefix = "->";

  bool whitespace_multi_binding() const;

  friend bool operator==(const SyntaxConfig&, const SyntaxConfig&) = default;
};

/// Shared default configuration.
const SyntaxConfig& default_config();

/// 1-based line/column positions; columns count code points. `end` points one
/// past the last code point.
struct SourceSpan {
  std::size_t start_line = 1;
  std::size_t start_col = 1;
  std::size_t end_line = 1;
  std::size_t end_col = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  SourceSpan span;
  std::string message;
  std::string code;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using Diagnostics = std::vector<Diagnostic>;

/// Checks the configuration invariants; returns one message per problem.
std::vector<std::string> validate_config(const SyntaxConfig& config);

/// Reads the flat `key = value` configuration format. Unknown keys and
/// invalid configurations are reported as diagnostics.
Result<SyntaxConfig, Diagnostics> parse_config(std::string_view text);
std::string print_config(const SyntaxConfig& config);

struct DerivationAst {
  std::optional<std::string> name;
  std::vector<Term> terms;
  std::vector<SourceSpan> term_spans;
  std::vector<Rule> arrows;
  SourceSpan span;
  /// Byte offsets of the item in the source: [begin, end) and the closing
  /// brace.
  std::size_t begin_offset = 0;
  std::size_t end_offset = 0;
  std::size_t close_brace_offset = 0;
  std::size_t last_term_end_offset = 0;
};

struct DocumentAst {
  std::vector<DerivationAst> items;
};

/// Structural equality of documents: names, terms and arrows. Source
/// positions are ignored.
bool same_content(const DocumentAst& a, const DocumentAst& b);
bool same_content(const DerivationAst& a, const DerivationAst& b);

Result<Term, Diagnostics> parse_term(std::string_view text, const SyntaxConfig& config = default_config());

struct ParsedDocument {
  DocumentAst doc;
  Diagnostics diagnostics;
};

/// Parses a `.lam` document. Items that fail are reported and skipped; the
/// parser resynchronizes at the next `}` or `Name :=`.
ParsedDocument parse_document(std::string_view text, const SyntaxConfig& config = default_config());

std::string print_term(const Term& t, const SyntaxConfig& config = default_config());
std::string print_item(const DerivationAst& item, const SyntaxConfig& config = default_config());
std::string print_document(const DocumentAst& doc, const SyntaxConfig& config = default_config());
/// A single `->β term` line without indentation.
std::string print_step(Rule rule, const Term& t, const SyntaxConfig& config = default_config());

struct KeywordRewrite {
  SourceSpan span;
  std::string replacement;

  friend bool operator==(const KeywordRewrite&, const KeywordRewrite&) = default;
};

/// Display-only substitutions for ASCII spellings of λ and the rule tags.
std::vector<KeywordRewrite> rewrite_keywords(std::string_view text, const SyntaxConfig& config = default_config());

/// Layout of a printed term: code point extents of every node, binder names
/// and parentheses. Offsets are 0-based and half-open.
struct TermLayout {
  struct NodeExtent {
    TermPath path;
    std::size_t begin = 0;
    std::size_t end = 0;
  };
  struct ParenPair {
    TermPath path;  // the parenthesized node
    std::size_t open = 0;
    std::size_t close = 0;
  };
  std::string text;
  std::vector<NodeExtent> nodes;  // pre-order
  std::vector<ParenPair> parens;
  std::vector<NodeExtent> binder_names;  // path of the abstraction
};

TermLayout layout_term(const Term& t, const SyntaxConfig& config = default_config());

}  // namespace lambdalab

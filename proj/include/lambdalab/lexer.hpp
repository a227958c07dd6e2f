#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lambdalab/syntax.hpp"

namespace lambdalab {

enum class TokenKind {
  Lambda,
  BindingDelimiter,
  MultiDelimiter,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Assign,
  Arrow,
  LowerIdent,
  UpperIdent,
  Comment,
  Invalid,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string_view text;
  SourceSpan span;
  std::size_t begin = 0;  // byte offsets into the source
  std::size_t end = 0;

  // Arrow tokens: the rule and the part of the token spelling it.
  Rule rule = Rule::Beta;
  std::string_view rule_text;
  SourceSpan rule_span;

  // Invalid tokens.
  std::string message;
};

/// Splits `text` into tokens. Never fails: unrecognized input becomes
/// Invalid tokens. The last token is always End.
std::vector<Token> tokenize(std::string_view text, const SyntaxConfig& config);

/// Number of code points in a UTF-8 string.
std::size_t count_code_points(std::string_view text);

/// Maps 1-based line/column positions to byte offsets in `text`. Positions
/// past the end of a line clamp to the line end.
std::size_t offset_of(std::string_view text, std::size_t line, std::size_t col);

/// The line/column position of a byte offset.
void position_of(std::string_view text, std::size_t offset, std::size_t& line, std::size_t& col);

}  // namespace lambdalab

#include <algorithm>

#include "lambdalab/lexer.hpp"
#include "lambdalab/syntax.hpp"

namespace lambdalab {

namespace {

SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
  return SourceSpan{a.start_line, a.start_col, b.end_line, b.end_col};
}

struct ParseFailure {
  Diagnostic diagnostic;
};

bool ends_term(TokenKind k) {
  return k == TokenKind::End || k == TokenKind::RBrace || k == TokenKind::RParen ||
         k == TokenKind::Arrow;
}

class Parser {
 public:
  Parser(std::string_view text, const SyntaxConfig& config)
      : config_(config), tokens_(tokenize(text, config)) {
    std::erase_if(tokens_, [](const Token& t) { return t.kind == TokenKind::Comment; });
  }

  Result<Term, Diagnostics> single_term() {
    try {
      std::vector<std::string> scope;
      Term t = expression(scope);
      const Token& next = peek();
      if (next.kind != TokenKind::End) {
        if (next.kind == TokenKind::RParen) fail(next.span, "unmatched ')'", "unbalanced_paren");
        unexpected(next, "expected end of input");
      }
      return t;
    } catch (const ParseFailure& f) {
      return Diagnostics{f.diagnostic};
    }
  }

  ParsedDocument document() {
    ParsedDocument out;
    while (peek().kind != TokenKind::End) {
      const Token& first = peek();
      std::optional<std::string> name;
      if (first.kind == TokenKind::UpperIdent && peek(1).kind == TokenKind::Assign) {
        name = std::string(first.text);
        pos_ += 2;
      } else if (first.kind == TokenKind::LowerIdent && peek(1).kind == TokenKind::Assign) {
        out.diagnostics.push_back(error(
            first.span, "definition names must start with an upper-case letter: '" +
                            std::string(first.text) + "'",
            "illegal_definition_name"));
        pos_ += 2;
        if (peek().kind == TokenKind::LBrace) resync_item();
        continue;
      } else if (first.kind != TokenKind::LBrace) {
        out.diagnostics.push_back(
            error(first.span, describe_unexpected(first, "expected '{' or 'Name :='"),
                  first.kind == TokenKind::Invalid ? "unexpected_character" : "unexpected_token"));
        resync_top();
        continue;
      }
      try {
        out.doc.items.push_back(item(first, std::move(name)));
      } catch (const ParseFailure& f) {
        out.diagnostics.push_back(f.diagnostic);
        resync_item();
      }
    }
    return out;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& take() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  const Token& previous() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }

  static Diagnostic error(SourceSpan span, std::string message, std::string code) {
    return Diagnostic{Severity::Error, span, std::move(message), std::move(code)};
  }

  [[noreturn]] static void fail(SourceSpan span, std::string message, std::string code) {
    throw ParseFailure{error(span, std::move(message), std::move(code))};
  }

  static std::string describe_unexpected(const Token& t, const std::string& expectation) {
    if (t.kind == TokenKind::Invalid) return t.message;
    if (t.kind == TokenKind::End) return expectation + ", found end of input";
    return expectation + ", found '" + std::string(t.text) + "'";
  }

  [[noreturn]] static void unexpected(const Token& t, const std::string& expectation) {
    fail(t.span, describe_unexpected(t, expectation),
         t.kind == TokenKind::Invalid ? "unexpected_character" : "unexpected_token");
  }

  // Skips a failed item: up to and including the next '}', or up to the next
  // `Name :=`.
  void resync_item() {
    while (peek().kind != TokenKind::End) {
      if (peek().kind == TokenKind::RBrace) {
        take();
        return;
      }
      if (peek().kind == TokenKind::UpperIdent && peek(1).kind == TokenKind::Assign) return;
      take();
    }
  }

  void resync_top() {
    take();
    while (peek().kind != TokenKind::End) {
      if (peek().kind == TokenKind::LBrace) return;
      if ((peek().kind == TokenKind::UpperIdent || peek().kind == TokenKind::LowerIdent) &&
          peek(1).kind == TokenKind::Assign)
        return;
      take();
    }
  }

  DerivationAst item(const Token& first, std::optional<std::string> name) {
    DerivationAst d;
    d.name = std::move(name);
    d.begin_offset = first.begin;
    if (peek().kind != TokenKind::LBrace) unexpected(peek(), "expected '{'");
    const Token& open = take();

    auto term = [&] {
      const Token& start = peek();
      std::vector<std::string> scope;
      d.terms.push_back(expression(scope));
      d.term_spans.push_back(join(start.span, previous().span));
      d.last_term_end_offset = previous().end;
    };
    term();
    while (peek().kind == TokenKind::Arrow) {
      d.arrows.push_back(take().rule);
      term();
    }
    const Token& close = peek();
    if (close.kind != TokenKind::RBrace) {
      if (close.kind == TokenKind::RParen) fail(close.span, "unmatched ')'", "unbalanced_paren");
      if (close.kind == TokenKind::End)
        fail(open.span, "'{' is never closed", "unclosed_brace");
      unexpected(close, "expected '" + config_.arrow_prefix + "' or '}'");
    }
    take();
    d.close_brace_offset = close.begin;
    d.end_offset = close.end;
    d.span = join(first.span, close.span);
    return d;
  }

  Term expression(std::vector<std::string>& scope) {
    if (peek().kind == TokenKind::Lambda) return abstraction(scope);
    std::vector<Term> parts;
    for (;;) {
      const auto k = peek().kind;
      if (k == TokenKind::LowerIdent || k == TokenKind::UpperIdent || k == TokenKind::LParen) {
        parts.push_back(atom(scope));
      } else if (k == TokenKind::Lambda) {
        parts.push_back(abstraction(scope));
        break;
      } else {
        break;
      }
    }
    if (parts.empty()) expected_term(peek());
    Term t = std::move(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) t = Term::app(std::move(t), std::move(parts[i]));
    return t;
  }

  [[noreturn]] void expected_term(const Token& t) {
    switch (t.kind) {
      case TokenKind::RParen:
        fail(t.span, "unmatched ')'", "unbalanced_paren");
      case TokenKind::BindingDelimiter:
      case TokenKind::MultiDelimiter:
        fail(t.span, "dangling delimiter '" + std::string(t.text) + "'", "dangling_delimiter");
      case TokenKind::End:
      case TokenKind::RBrace:
      case TokenKind::Arrow:
        fail(t.span, describe_unexpected(t, "expected a term"), "expected_term");
      default:
        unexpected(t, "expected a term");
    }
  }

  Term atom(std::vector<std::string>& scope) {
    const Token& t = take();
    switch (t.kind) {
      case TokenKind::LowerIdent: {
        const std::string name(t.text);
        for (std::size_t i = scope.size(); i-- > 0;) {
          if (scope[i] == name) return Term::bound(scope.size() - 1 - i, name);
        }
        return Term::free(name);
      }
      case TokenKind::UpperIdent:
        return Term::ref(std::string(t.text));
      case TokenKind::LParen: {
        Term inner = expression(scope);
        const Token& close = peek();
        if (close.kind == TokenKind::RParen) {
          take();
          return inner;
        }
        if (ends_term(close.kind)) fail(t.span, "'(' is never closed", "unbalanced_paren");
        unexpected(close, "expected ')'");
      }
      default:
        unexpected(t, "expected a term");
    }
  }

  Term abstraction(std::vector<std::string>& scope) {
    const Token& lambda = take();
    std::vector<std::string> binders;
    const bool whitespace = config_.whitespace_multi_binding();
    for (;;) {
      const Token& t = peek();
      if (t.kind == TokenKind::LowerIdent) {
        binders.emplace_back(t.text);
        take();
        if (!whitespace && peek().kind == TokenKind::MultiDelimiter) {
          const Token& comma = take();
          if (peek().kind != TokenKind::LowerIdent && peek().kind != TokenKind::UpperIdent)
            fail(comma.span, "dangling delimiter '" + std::string(comma.text) + "'",
                 "dangling_delimiter");
          continue;
        }
        if (whitespace && peek().kind == TokenKind::LowerIdent) continue;
        break;
      }
      if (t.kind == TokenKind::UpperIdent)
        fail(t.span,
             "variable names must start with a lower-case letter: '" + std::string(t.text) + "'",
             "illegal_variable_name");
      if (binders.empty() && (t.kind == TokenKind::BindingDelimiter || ends_term(t.kind)))
        fail(join(lambda.span, t.kind == TokenKind::BindingDelimiter ? t.span : lambda.span),
             "abstraction without a bound variable", "empty_binder_list");
      unexpected(t, "expected a variable name");
    }

    const Token& after = peek();
    if (after.kind != TokenKind::BindingDelimiter) {
      if (ends_term(after.kind))
        fail(join(lambda.span, previous().span), "abstraction has an empty body", "empty_body");
      unexpected(after, "expected '" + config_.binding_delimiter + "'");
    }
    const Token& dot = take();
    if (ends_term(peek().kind) || peek().kind == TokenKind::BindingDelimiter)
      fail(dot.span, "dangling delimiter '" + std::string(dot.text) + "': abstraction has no body",
           "dangling_delimiter");

    for (const auto& b : binders) scope.push_back(b);
    Term body = expression(scope);
    scope.resize(scope.size() - binders.size());
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = Term::abs(*it, std::move(body));
    return body;
  }

  const SyntaxConfig& config_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

const SyntaxConfig& default_config() {
  static const SyntaxConfig config;
  return config;
}

bool SyntaxConfig::whitespace_multi_binding() const {
  return !multi_binding_delimiter.empty() &&
         std::all_of(multi_binding_delimiter.begin(), multi_binding_delimiter.end(),
                     [](char c) { return c == ' ' || c == '\t'; });
}

Result<Term, Diagnostics> parse_term(std::string_view text, const SyntaxConfig& config) {
  return Parser(text, config).single_term();
}

ParsedDocument parse_document(std::string_view text, const SyntaxConfig& config) {
  return Parser(text, config).document();
}

bool same_content(const DerivationAst& a, const DerivationAst& b) {
  return a.name == b.name && a.terms == b.terms && a.arrows == b.arrows;
}

bool same_content(const DocumentAst& a, const DocumentAst& b) {
  return a.items.size() == b.items.size() &&
         std::equal(a.items.begin(), a.items.end(), b.items.begin(),
                    [](const auto& x, const auto& y) { return same_content(x, y); });
}

}  // namespace lambdalab

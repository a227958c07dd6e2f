#include "lambdalab/lexer.hpp"

#include <algorithm>

namespace lambdalab {

namespace {

std::size_t code_point_length(std::string_view text, std::size_t pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  std::size_t len = 1;
  if (lead >= 0xF0 && lead <= 0xF7)
    len = 4;
  else if (lead >= 0xE0)
    len = lead <= 0xEF ? 3 : 1;
  else if (lead >= 0xC0)
    len = 2;
  if (pos + len > text.size()) return 1;
  for (std::size_t i = 1; i < len; ++i) {
    if ((static_cast<unsigned char>(text[pos + i]) & 0xC0) != 0x80) return 1;
  }
  return len;
}

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '_' || c == '\'';
}

struct Literal {
  std::string_view spelling;
  TokenKind kind;
};

class Lexer {
 public:
  Lexer(std::string_view text, const SyntaxConfig& config) : text_(text), config_(config) {
    for (const auto& s : config.lambda_spellings) add(s, TokenKind::Lambda);
    add(config.binding_delimiter, TokenKind::BindingDelimiter);
    if (!config.whitespace_multi_binding())
      add(config.multi_binding_delimiter, TokenKind::MultiDelimiter);
    add("(", TokenKind::LParen);
    add(")", TokenKind::RParen);
    add("{", TokenKind::LBrace);
    add("}", TokenKind::RBrace);
    add(":=", TokenKind::Assign);
    add(config.arrow_prefix, TokenKind::Arrow);
    // Longest spelling wins.
    std::stable_sort(literals_.begin(), literals_.end(), [](const Literal& a, const Literal& b) {
      return a.spelling.size() > b.spelling.size();
    });
    for (const auto& [rule, spellings] : config.arrow_spellings)
      for (const auto& s : spellings)
        if (!s.empty()) rule_spellings_.emplace_back(s, rule);
    std::stable_sort(rule_spellings_.begin(), rule_spellings_.end(),
                     [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    out.reserve(text_.size() / 3 + 2);
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
        continue;
      }
      if (text_.substr(pos_).starts_with("--")) {
        const auto start = mark();
        auto nl = text_.find('\n', pos_);
        advance((nl == std::string_view::npos ? text_.size() : nl) - pos_);
        out.push_back(finish(TokenKind::Comment, start));
        continue;
      }
      if (const Literal* lit = match_literal()) {
        const auto start = mark();
        advance(lit->spelling.size());
        if (lit->kind == TokenKind::Arrow) {
          out.push_back(arrow(start));
        } else {
          out.push_back(finish(lit->kind, start));
        }
        continue;
      }
      if (is_ident_start(c)) {
        const auto start = mark();
        std::size_t n = 1;
        while (pos_ + n < text_.size() && is_ident_char(text_[pos_ + n])) ++n;
        advance(n);
        out.push_back(finish(c >= 'a' && c <= 'z' ? TokenKind::LowerIdent : TokenKind::UpperIdent,
                             start));
        continue;
      }
      const auto start = mark();
      advance(code_point_length(text_, pos_));
      Token t = finish(TokenKind::Invalid, start);
      t.message = "unexpected character '" + std::string(t.text) + "'";
      out.push_back(std::move(t));
    }
    out.push_back(finish(TokenKind::End, mark()));
    return out;
  }

 private:
  struct Mark {
    std::size_t pos, line, col;
  };

  void add(std::string_view s, TokenKind kind) {
    if (!s.empty()) literals_.push_back({s, kind});
  }

  Mark mark() const { return {pos_, line_, col_}; }

  void advance(std::size_t bytes) {
    const auto stop = std::min(text_.size(), pos_ + bytes);
    while (pos_ < stop) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else {
        pos_ += code_point_length(text_, pos_);
        ++col_;
      }
    }
  }

  Token finish(TokenKind kind, const Mark& start) const {
    Token t;
    t.kind = kind;
    t.begin = start.pos;
    t.end = pos_;
    t.text = text_.substr(start.pos, pos_ - start.pos);
    t.span = SourceSpan{start.line, start.col, line_, col_};
    return t;
  }

  const Literal* match_literal() const {
    const auto rest = text_.substr(pos_);
    for (const auto& lit : literals_)
      if (lit.spelling[0] == rest[0] && rest.starts_with(lit.spelling)) return &lit;
    return nullptr;
  }

  Token arrow(const Mark& start) {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) advance(1);
    const auto rest = text_.substr(pos_);
    for (const auto& [spelling, rule] : rule_spellings_) {
      if (!rest.starts_with(spelling)) continue;
      const auto rule_start = mark();
      advance(spelling.size());
      Token t = finish(TokenKind::Arrow, start);
      t.rule = rule;
      t.rule_text = text_.substr(rule_start.pos, spelling.size());
      t.rule_span = SourceSpan{rule_start.line, rule_start.col, line_, col_};
      return t;
    }
    Token t = finish(TokenKind::Invalid, start);
    t.message = "expected a rule (α, β or ≡) after '" + config_.arrow_prefix + "'";
    return t;
  }

  std::string_view text_;
  const SyntaxConfig& config_;
  std::vector<Literal> literals_;
  std::vector<std::pair<std::string_view, Rule>> rule_spellings_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text, const SyntaxConfig& config) {
  return Lexer(text, config).run();
}

std::size_t count_code_points(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < text.size(); pos += code_point_length(text, pos)) ++n;
  return n;
}

std::size_t offset_of(std::string_view text, std::size_t line, std::size_t col) {
  std::size_t pos = 0;
  for (std::size_t l = 1; l < line; ++l) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) return text.size();
    pos = nl + 1;
  }
  for (std::size_t c = 1; c < col && pos < text.size() && text[pos] != '\n'; ++c)
    pos += code_point_length(text, pos);
  return pos;
}

void position_of(std::string_view text, std::size_t offset, std::size_t& line, std::size_t& col) {
  line = 1;
  col = 1;
  offset = std::min(offset, text.size());
  for (std::size_t pos = 0; pos < offset;) {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
      ++pos;
    } else {
      pos += code_point_length(text, pos);
      ++col;
    }
  }
}

}  // namespace lambdalab

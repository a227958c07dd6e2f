#include "lambdalab/lexer.hpp"
#include "lambdalab/syntax.hpp"

namespace lambdalab {

namespace {

class Printer {
 public:
  Printer(const SyntaxConfig& config, TermLayout* layout) : config_(config), layout_(layout) {
    lambda_ = config.lambda_spellings.empty() ? "λ" : config.lambda_spellings.front();
  }

  void term(const Term& t, TermPath& path) {
    const std::size_t begin = cursor_;
    std::size_t slot = 0;
    if (layout_) {
      slot = layout_->nodes.size();
      layout_->nodes.push_back({path, begin, begin});
    }
    switch (t.kind()) {
      case TermKind::BoundVar:
      case TermKind::FreeVar:
      case TermKind::Ref:
        emit(t.name());
        break;
      case TermKind::Abs: {
        emit(lambda_);
        if (needs_space_after_lambda(t.name())) emit(" ");
        const std::size_t name_begin = cursor_;
        emit(t.name());
        if (layout_) layout_->binder_names.push_back({path, name_begin, cursor_});
        emit(config_.binding_delimiter);
        emit(" ");
        path.steps.push_back(Step::Body);
        term(t.body(), path);
        path.steps.pop_back();
        break;
      }
      case TermKind::App:
        path.steps.push_back(Step::FunSide);
        operand(t.fun(), path, t.fun().is_abs());
        emit(" ");
        path.steps.back() = Step::ArgSide;
        operand(t.arg(), path, t.arg().is_abs() || t.arg().is_app());
        path.steps.pop_back();
        break;
    }
    if (layout_) layout_->nodes[slot].end = cursor_;
  }

  std::string take() { return std::move(out_); }

 private:
  void operand(const Term& t, TermPath& path, bool parens) {
    if (!parens) {
      term(t, path);
      return;
    }
    const std::size_t open = cursor_;
    emit("(");
    term(t, path);
    const std::size_t close = cursor_;
    emit(")");
    if (layout_) layout_->parens.push_back({path, open, close});
  }

  // `λ` followed directly by the binder must not read back as a longer λ
  // spelling (e.g. "\" + "lambda").
  bool needs_space_after_lambda(const std::string& binder) const {
    const std::string joined = lambda_ + binder;
    for (const auto& s : config_.lambda_spellings)
      if (s.size() > lambda_.size() && std::string_view(joined).starts_with(s)) return true;
    return false;
  }

  void emit(std::string_view s) {
    out_ += s;
    if (layout_) {
      cursor_ += count_code_points(s);
    }
  }

  const SyntaxConfig& config_;
  TermLayout* layout_;
  std::string lambda_;
  std::string out_;
  std::size_t cursor_ = 0;
};

std::string_view first_spelling(const SyntaxConfig& config, Rule rule) {
  auto it = config.arrow_spellings.find(rule);
  if (it == config.arrow_spellings.end() || it->second.empty()) return rule_symbol(rule);
  return it->second.front();
}

bool is_ascii(std::string_view s) {
  for (char c : s)
    if (static_cast<unsigned char>(c) >= 0x80) return false;
  return true;
}

}  // namespace

std::string print_term(const Term& t, const SyntaxConfig& config) {
  Printer p(config, nullptr);
  TermPath path;
  p.term(t, path);
  return p.take();
}

TermLayout layout_term(const Term& t, const SyntaxConfig& config) {
  TermLayout layout;
  Printer p(config, &layout);
  TermPath path;
  p.term(t, path);
  layout.text = p.take();
  return layout;
}

std::string print_step(Rule rule, const Term& t, const SyntaxConfig& config) {
  std::string out = config.arrow_prefix;
  out += first_spelling(config, rule);
  out += ' ';
  out += print_term(t, config);
  return out;
}

std::string print_item(const DerivationAst& item, const SyntaxConfig& config) {
  std::string out;
  if (item.name) out += *item.name + " := ";
  out += "{\n";
  for (std::size_t i = 0; i < item.terms.size(); ++i) {
    out += "  ";
    out += i == 0 ? print_term(item.terms[0], config)
                  : print_step(item.arrows[i - 1], item.terms[i], config);
    out += '\n';
  }
  out += '}';
  return out;
}

std::string print_document(const DocumentAst& doc, const SyntaxConfig& config) {
  std::string out;
  for (const auto& item : doc.items) {
    if (!out.empty()) out += "\n\n";
    out += print_item(item, config);
  }
  return out;
}

std::vector<KeywordRewrite> rewrite_keywords(std::string_view text, const SyntaxConfig& config) {
  std::vector<KeywordRewrite> out;
  for (const auto& tok : tokenize(text, config)) {
    if (tok.kind == TokenKind::Lambda && is_ascii(tok.text)) {
      out.push_back({tok.span, "λ"});
    } else if (tok.kind == TokenKind::Arrow && is_ascii(tok.rule_text)) {
      out.push_back({tok.rule_span, std::string(rule_symbol(tok.rule))});
    }
  }
  return out;
}

}  // namespace lambdalab

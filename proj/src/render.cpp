#include <algorithm>
#include <map>

#include "lambdalab/rules.hpp"
#include "lambdalab/workspace.hpp"

namespace lambdalab {

namespace {

thread_local std::size_t visits = 0;

using Extent = std::pair<std::size_t, std::size_t>;

class Renderer {
 public:
  Renderer(const TermLayout& layout, const Environment& env, RenderModel& out)
      : layout_(layout), env_(env), out_(out) {}

  void walk(const Term& t, TermPath& path) {
    ++visits;
    const auto& node = layout_.nodes[next_node_++];
    extents_.emplace(path, Extent{node.begin, node.end});
    switch (t.kind()) {
      case TermKind::BoundVar:
        add(node.begin, node.end, SpanTag::BoundOcc, scope_[scope_.size() - 1 - t.index()], path);
        break;
      case TermKind::FreeVar:
        add(node.begin, node.end, SpanTag::FreeOcc, t.name(), path);
        break;
      case TermKind::Ref:
        add(node.begin, node.end, SpanTag::RefSite, t.name(), path).defined = env_.contains(t.name());
        break;
      case TermKind::Abs: {
        const auto& binder = layout_.binder_names[next_binder_++];
        scope_.push_back(to_string(path));
        add(binder.begin, binder.end, SpanTag::BinderSite, scope_.back(), path);
        path.steps.push_back(Step::Body);
        walk(t.body(), path);
        path.steps.pop_back();
        scope_.pop_back();
        break;
      }
      case TermKind::App:
        path.steps.push_back(Step::FunSide);
        walk(t.fun(), path);
        path.steps.back() = Step::ArgSide;
        walk(t.arg(), path);
        path.steps.pop_back();
        break;
    }
  }

  // Extent of the node at `path` including its parentheses, if any.
  Extent outer_extent(const TermPath& path) const {
    auto it = parens_.find(path);
    if (it != parens_.end()) return it->second;
    return extents_.at(path);
  }

  void add_parens() {
    auto pairs = layout_.parens;
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.open < b.open; });
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string id = std::to_string(i);
      add(pairs[i].open, pairs[i].open + 1, SpanTag::ParenOpen, id, pairs[i].path);
      add(pairs[i].close, pairs[i].close + 1, SpanTag::ParenClose, id, pairs[i].path);
      parens_.emplace(pairs[i].path, Extent{pairs[i].open, pairs[i].close + 1});
    }
  }

  RenderSpan& add(std::size_t start, std::size_t end, SpanTag tag, std::string id,
                  const TermPath& path) {
    out_.spans.push_back(RenderSpan{start, end, tag, std::move(id), path, false});
    return out_.spans.back();
  }

 private:
  const TermLayout& layout_;
  const Environment& env_;
  RenderModel& out_;
  std::size_t next_node_ = 0;
  std::size_t next_binder_ = 0;
  std::vector<std::string> scope_;
  std::map<TermPath, Extent> extents_;
  std::map<TermPath, Extent> parens_;
};

}  // namespace

std::string_view tag_name(SpanTag tag) {
  switch (tag) {
    case SpanTag::BinderSite:
      return "binder_site";
    case SpanTag::BoundOcc:
      return "bound_occ";
    case SpanTag::FreeOcc:
      return "free_occ";
    case SpanTag::ParenOpen:
      return "paren_open";
    case SpanTag::ParenClose:
      return "paren_close";
    case SpanTag::RefSite:
      return "ref_site";
    case SpanTag::RedexFun:
      return "redex_fun";
    case SpanTag::RedexArg:
      return "redex_arg";
  }
  return "?";
}

std::size_t render_visit_count() { return visits; }

RenderModel render_term(const Term& t, const Environment& env, std::size_t focused_redex,
                        const SyntaxConfig& config) {
  const TermLayout layout = layout_term(t, config);
  RenderModel out;
  out.text = layout.text;

  Renderer r(layout, env, out);
  TermPath root;
  r.walk(t, root);
  r.add_parens();

  const auto redexes = enumerate_redexes(t, env);
  for (std::size_t i = 0; i < redexes.size(); ++i) {
    const TermPath& p = redexes[i].path;
    const std::string id = std::to_string(i);
    const auto [fb, fe] = r.outer_extent(p.child(Step::FunSide));
    const auto [ab, ae] = r.outer_extent(p.child(Step::ArgSide));
    r.add(fb, fe, SpanTag::RedexFun, id, p);
    r.add(ab, ae, SpanTag::RedexArg, id, p);
  }
  out.redex_count = redexes.size();
  out.normal_form = redexes.empty();
  out.focused_redex = redexes.empty() ? 0 : focused_redex % redexes.size();

  std::stable_sort(out.spans.begin(), out.spans.end(), [](const auto& a, const auto& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end > b.end;
    return a.tag < b.tag;
  });
  return out;
}

}  // namespace lambdalab

#include "lambdalab/protocol.hpp"

#include <json.hpp>

namespace lambdalab {

using nlohmann::json;

namespace {

// Raised while decoding a request; becomes a warning response.
struct RequestError {
  std::string code;
  std::string message;
};

json span_json(const SourceSpan& s) {
  return {{"startLine", s.start_line}, {"startCol", s.start_col}, {"endLine", s.end_line},
          {"endCol", s.end_col}};
}

json path_json(const TermPath& p) {
  json out = json::array();
  for (Step s : p.steps) out.push_back(std::string(to_string(s)));
  return out;
}

json diagnostics_json(const Diagnostics& diagnostics) {
  json out = json::array();
  for (const auto& d : diagnostics)
    out.push_back({{"severity", d.severity == Severity::Error ? "error" : "warning"},
                   {"code", d.code},
                   {"message", d.message},
                   {"span", span_json(d.span)}});
  return out;
}

json outline_json(const Session& s) {
  json out = json::array();
  for (const auto& e : outline(s))
    out.push_back({{"id", e.id}, {"span", span_json(e.span)}});
  return out;
}

json render_json(const RenderModel& m) {
  json spans = json::array();
  for (const auto& s : m.spans) {
    json j{{"start", s.start},
           {"end", s.end},
           {"tag", std::string(tag_name(s.tag))},
           {"id", s.id},
           {"path", path_json(s.path)}};
    if (s.tag == SpanTag::RefSite) j["defined"] = s.defined;
    spans.push_back(std::move(j));
  }
  return {{"text", m.text},
          {"spans", std::move(spans)},
          {"redexCount", m.redex_count},
          {"focusedRedex", m.focused_redex},
          {"normalForm", m.normal_form}};
}

json warning_json(const Warning& w) {
  json out{{"code", w.code}, {"message", w.message}};
  if (!w.captured_names.empty()) out["capturedNames"] = w.captured_names;
  if (w.span) out["span"] = span_json(*w.span);
  return out;
}

json state_json(const Session& s) {
  json out{{"outline", outline_json(s)},
           {"diagnostics", diagnostics_json(s.diagnostics)},
           {"canUndo", !s.undo_stack.empty()},
           {"canRedo", !s.redo_stack.empty()}};
  out["selection"] = s.selection ? json(*s.selection) : json(nullptr);
  return out;
}

const json& field(const json& req, const char* key) {
  auto it = req.find(key);
  if (it == req.end()) throw RequestError{"bad_request", std::string("missing field '") + key + "'"};
  return *it;
}

std::string string_field(const json& req, const char* key) {
  const json& v = field(req, key);
  if (!v.is_string()) throw RequestError{"bad_request", std::string("'") + key + "' must be a string"};
  return v.get<std::string>();
}

std::size_t count_field(const json& req, const char* key) {
  const json& v = field(req, key);
  if (!v.is_number_unsigned())
    throw RequestError{"bad_request", std::string("'") + key + "' must be a natural number"};
  return v.get<std::size_t>();
}

TermPath path_field(const json& req) {
  auto it = req.find("path");
  if (it == req.end()) return {};
  TermPath out;
  if (!it->is_array()) throw RequestError{"bad_request", "'path' must be an array of steps"};
  for (const auto& step : *it) {
    auto s = step.is_string() ? parse_step(step.get<std::string>()) : std::nullopt;
    if (!s) throw RequestError{"bad_request", "unknown path step " + step.dump()};
    out.steps.push_back(*s);
  }
  return out;
}

SourceSpan span_field(const json& req) {
  const json& s = field(req, "span");
  if (!s.is_object()) throw RequestError{"bad_request", "'span' must be an object"};
  return SourceSpan{count_field(s, "startLine"), count_field(s, "startCol"),
                    count_field(s, "endLine"), count_field(s, "endCol")};
}

UiCommand command_field(const json& req) {
  const json& a = field(req, "action");
  if (!a.is_object()) throw RequestError{"bad_request", "'action' must be an object"};
  const std::string kind = string_field(a, "kind");
  if (kind == "alpha") return AlphaRename{path_field(a), string_field(a, "newName")};
  if (kind == "beta") return BetaAt{path_field(a)};
  if (kind == "expand") return ExpandAt{path_field(a)};
  if (kind == "focus") {
    const json& d = field(a, "delta");
    if (!d.is_number_integer()) throw RequestError{"bad_request", "'delta' must be an integer"};
    return FocusRedex{d.get<int>()};
  }
  if (kind == "undo") return Undo{};
  if (kind == "redo") return Redo{};
  throw RequestError{"bad_request", "unknown action kind '" + kind + "'"};
}

json ok(json result) { return {{"v", kProtocolVersion}, {"ok", true}, {"result", std::move(result)}}; }

json refused(const Warning& w) {
  return {{"v", kProtocolVersion}, {"ok", false}, {"warning", warning_json(w)}};
}

}  // namespace

std::size_t ProtocolServer::session_count() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::string ProtocolServer::handle(std::string_view request) {
  std::lock_guard lock(mutex_);
  json req;
  json response;
  try {
    req = json::parse(request);
  } catch (const json::parse_error& e) {
    return refused(Warning{"bad_request", std::string("invalid JSON: ") + e.what(), {}, {}})
        .dump(-1, ' ', false, json::error_handler_t::replace);
  }

  try {
    if (!req.is_object()) throw RequestError{"bad_request", "request must be a JSON object"};
    auto v = req.find("v");
    if (v == req.end() || *v != kProtocolVersion)
      throw RequestError{"unsupported_version", "protocol version must be 1"};
    const std::string op = string_field(req, "op");

    auto session = [&]() -> Session& {
      auto it = sessions_.find(string_field(req, "sessionId"));
      if (it == sessions_.end()) throw RequestError{"unknown_session", "no such session"};
      return it->second;
    };

    if (op == "open") {
      SyntaxConfig config = config_;
      if (auto c = req.find("config"); c != req.end()) {
        if (!c->is_string()) throw RequestError{"bad_request", "'config' must be a string"};
        auto parsed = parse_config(c->get<std::string>());
        if (!parsed) throw RequestError{"invalid_config", parsed.error().front().message};
        config = parsed.value();
      }
      const std::string id = "s" + std::to_string(next_session_++);
      auto& s = sessions_[id] = open_session(string_field(req, "text"), config);
      json result = state_json(s);
      result["sessionId"] = id;
      response = ok(std::move(result));
    } else if (op == "outline") {
      response = ok(state_json(session()));
    } else if (op == "source") {
      response = ok({{"text", session().source_text}});
    } else if (op == "render") {
      auto r = render(session(), string_field(req, "itemId"));
      response = r ? ok(render_json(r.value())) : refused(r.error());
    } else if (op == "action") {
      Session& s = session();
      const UiResult r = ui_action(s, string_field(req, "itemId"), command_field(req));
      if (r.warning) {
        response = refused(*r.warning);
      } else {
        s = r.session;
        json result = state_json(s);
        result["render"] = r.changed ? render_json(*r.changed) : json(nullptr);
        result["sourceEdit"] = r.edit ? json{{"span", span_json(r.edit->span)},
                                             {"text", r.edit->new_text}}
                                      : json(nullptr);
        response = ok(std::move(result));
      }
    } else if (op == "edit") {
      Session& s = session();
      s = edit_text(s, span_field(req), string_field(req, "text"));
      response = ok(state_json(s));
    } else if (op == "hover") {
      const Session& s = session();
      std::optional<HoverInfo> info;
      if (req.contains("itemId"))
        info = hover_info(s, string_field(req, "itemId"), count_field(req, "position"));
      else
        info = hover_at(s, count_field(req, "line"), count_field(req, "col"));
      response = ok(info ? json{{"name", info->name},
                                {"definition", info->definition_text},
                                {"arity", info->arity}}
                         : json(nullptr));
    } else if (op == "completions") {
      json items = json::array();
      for (const auto& c : completions(session(), string_field(req, "prefix")))
        items.push_back({{"label", c.label},
                         {"kind", c.kind == CompletionKind::NamedTerm ? "namedTerm" : "ruleArrow"}});
      response = ok({{"items", std::move(items)}});
    } else if (op == "keywords") {
      const SyntaxConfig config = req.contains("sessionId") ? session().config : config_;
      json items = json::array();
      for (const auto& k : rewrite_keywords(string_field(req, "text"), config))
        items.push_back({{"span", span_json(k.span)}, {"replacement", k.replacement}});
      response = ok({{"rewrites", std::move(items)}});
    } else if (op == "close") {
      session();
      sessions_.erase(string_field(req, "sessionId"));
      response = ok(json::object());
    } else {
      throw RequestError{"unknown_op", "unknown op '" + op + "'"};
    }
  } catch (const RequestError& e) {
    response = refused(Warning{e.code, e.message, {}, {}});
  } catch (const json::exception& e) {
    response = refused(Warning{"bad_request", e.what(), {}, {}});
  }

  if (req.is_object() && req.contains("id")) response["id"] = req["id"];
  return response.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace lambdalab

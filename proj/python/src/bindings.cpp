#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lambdalab/cli.hpp"
#include "lambdalab/derivation.hpp"
#include "lambdalab/protocol.hpp"

namespace py = pybind11;
using namespace lambdalab;

namespace {

SyntaxConfig config_from(const std::optional<std::string>& text) {
  if (!text) return default_config();
  auto r = parse_config(*text);
  if (!r) {
    std::string message = "invalid config:";
    for (const auto& d : r.error()) message += " " + d.message + ";";
    throw py::value_error(message);
  }
  return r.value();
}

[[noreturn]] void raise_diagnostics(const Diagnostics& diagnostics) {
  std::string message;
  for (const auto& d : diagnostics) {
    if (!message.empty()) message += "\n";
    message += std::to_string(d.span.start_line) + ":" + std::to_string(d.span.start_col) + ": " +
               d.message + " [" + d.code + "]";
  }
  throw py::value_error(message);
}

Term parse_or_raise(const std::string& text, const SyntaxConfig& config) {
  auto r = parse_term(text, config);
  if (!r) raise_diagnostics(r.error());
  return r.value();
}

// Definitions of a document given as text; errors raise.
Environment environment_from(const std::optional<std::string>& text, const SyntaxConfig& config) {
  if (!text) return {};
  auto parsed = parse_document(*text, config);
  auto built = build_environment(parsed.doc);
  parsed.diagnostics.insert(parsed.diagnostics.end(), built.diagnostics.begin(),
                            built.diagnostics.end());
  if (!parsed.diagnostics.empty()) raise_diagnostics(parsed.diagnostics);
  return built.env;
}

std::vector<std::string> path_steps(const TermPath& p) {
  std::vector<std::string> out;
  for (Step s : p.steps) out.emplace_back(to_string(s));
  return out;
}

Strategy strategy_from(const std::string& name) {
  if (name == "normal-order") return Strategy::NormalOrder;
  if (name == "applicative-order") return Strategy::ApplicativeOrder;
  throw py::value_error("unknown strategy '" + name + "'");
}

py::dict command_result(const cli::CommandResult& r) {
  py::dict d;
  d["exit_code"] = r.exit_code;
  d["out"] = r.out;
  d["err"] = r.err;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Untyped lambda calculus terms, derivations and the editor protocol.";

  py::class_<Term>(m, "Term")
      .def("__str__", [](const Term& t) { return print_term(t); })
      .def("__repr__", [](const Term& t) { return "Term('" + print_term(t) + "')"; })
      .def("__eq__", [](const Term& a, const Term& b) { return a == b; })
      .def_property_readonly("size", &Term::size)
      .def_property_readonly("kind", [](const Term& t) {
        switch (t.kind()) {
          case TermKind::BoundVar: return "bound";
          case TermKind::FreeVar: return "free";
          case TermKind::Abs: return "abs";
          case TermKind::App: return "app";
          case TermKind::Ref: return "ref";
        }
        return "?";
      });

  m.def("parse", [](const std::string& text, const std::optional<std::string>& config) {
    return parse_or_raise(text, config_from(config));
  }, py::arg("text"), py::arg("config") = py::none(),
        "Parses one term. Raises ValueError with line:col diagnostics.");

  m.def("print", [](const Term& t, const std::optional<std::string>& config) {
    return print_term(t, config_from(config));
  }, py::arg("term"), py::arg("config") = py::none());

  m.def("alpha_eq", &alpha_eq);
  m.def("free_vars", &free_vars);

  m.def("redexes", [](const Term& t, const std::optional<std::string>& env) {
    py::list out;
    for (const auto& r : enumerate_redexes(t, environment_from(env, default_config()))) {
      py::dict d;
      d["path"] = path_steps(r.path);
      d["kind"] = r.kind == RedexKind::Direct ? "direct" : "via-expansion";
      d["chain"] = r.ref_chain;
      out.append(d);
    }
    return out;
  }, py::arg("term"), py::arg("env") = py::none(),
        "Redexes in pre-order. `env` is the text of a document of definitions.");

  m.def("normalize", [](const Term& t, const std::string& strategy, std::size_t max_steps,
                        const std::optional<std::string>& env) {
    const auto r = normalize(t, environment_from(env, default_config()), strategy_from(strategy),
                             max_steps);
    py::dict d;
    d["outcome"] = std::string(outcome_name(r.outcome));
    d["steps"] = r.trace.steps;
    std::vector<std::string> rules;
    for (Rule rule : r.trace.rules) rules.emplace_back(rule_symbol(rule));
    d["rules"] = rules;
    if (r.capture) {
      py::dict c;
      c["names"] = r.capture->captured_names;
      c["site"] = path_steps(r.capture->site);
      d["capture"] = c;
    } else {
      d["capture"] = py::none();
    }
    return d;
  }, py::arg("term"), py::arg("strategy") = "normal-order", py::arg("max_steps") = 1000,
        py::arg("env") = py::none());

  m.def("validate", [](const std::string& text, const std::optional<std::string>& config) {
    const SyntaxConfig cfg = config_from(config);
    auto parsed = parse_document(text, cfg);
    auto built = build_environment(parsed.doc);
    parsed.diagnostics.insert(parsed.diagnostics.end(), built.diagnostics.begin(),
                              built.diagnostics.end());
    if (!parsed.diagnostics.empty()) raise_diagnostics(parsed.diagnostics);
    py::list items;
    for (const auto& item : parsed.doc.items) {
      py::dict entry;
      entry["name"] = item.name;
      py::list verdicts;
      for (const auto& v : validate_derivation(from_ast(item), built.env)) {
        py::dict vd;
        vd["index"] = v.index;
        vd["valid"] = v.valid();
        vd["reason"] = v.reason;
        verdicts.append(vd);
      }
      entry["steps"] = verdicts;
      items.append(entry);
    }
    return items;
  }, py::arg("text"), py::arg("config") = py::none(),
        "Checks every arrow of a document. Raises ValueError on parse errors.");

  m.def("check", [](const std::vector<std::string>& files, bool json) {
    cli::CommonOptions opts;
    opts.format = json ? cli::Format::Json : cli::Format::Text;
    return command_result(cli::cmd_check(files, opts));
  }, py::arg("files"), py::arg("json") = false, "Same as `lambda-lab check`.");

  m.def("reduce", [](const std::string& term, const std::string& strategy, std::size_t max_steps,
                     const std::optional<std::string>& env_file) {
    cli::ReduceOptions o;
    o.term = term;
    o.strategy = strategy_from(strategy);
    o.max_steps = max_steps;
    o.env_file = env_file;
    return command_result(cli::cmd_reduce(o, {}));
  }, py::arg("term"), py::arg("strategy") = "normal-order", py::arg("max_steps") = 1000,
        py::arg("env_file") = py::none(), "Same as `lambda-lab reduce`.");

  py::class_<ProtocolServer>(m, "ProtocolServer")
      .def(py::init([](const std::optional<std::string>& config) {
        return std::make_unique<ProtocolServer>(config_from(config));
      }), py::arg("config") = py::none())
      .def("handle", &ProtocolServer::handle, py::call_guard<py::gil_scoped_release>(),
           "Handles one JSON request and returns the JSON response.")
      .def_property_readonly("session_count", &ProtocolServer::session_count);

  m.attr("PROTOCOL_VERSION") = kProtocolVersion;
}

#include <doctest.h>

#include <random>

#include "lambdalab/derivation.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace lambdalab;
using namespace lambdalab::testing;

namespace {

Term T(std::string_view text) {
  auto r = parse_term(text);
  REQUIRE_MESSAGE(r.ok(), text);
  return r.value();
}

Derivation D(std::initializer_list<std::string_view> terms, std::vector<Rule> rules) {
  Derivation d;
  for (auto t : terms) d.steps.push_back(T(t));
  d.rules = std::move(rules);
  return d;
}

Environment church_env() {
  Environment env;
  env.define("True", T("λx. λy. x"));
  env.define("False", T("λx. λy. y"));
  env.define("Id", T("λz. z"));
  env.define("I", Term::ref("Id"));
  return env;
}

TermPath P(std::initializer_list<Step> steps) { return TermPath{steps}; }

// App node paths whose children differ up to alpha, for the mutation test.
void swappable(const Term& t, TermPath& path, std::vector<TermPath>& out) {
  if (t.is_app()) {
    if (!alpha_eq(t.fun(), t.arg())) out.push_back(path);
    path.steps.push_back(Step::FunSide);
    swappable(t.fun(), path, out);
    path.steps.back() = Step::ArgSide;
    swappable(t.arg(), path, out);
    path.steps.pop_back();
  } else if (t.is_abs()) {
    path.steps.push_back(Step::Body);
    swappable(t.body(), path, out);
    path.steps.pop_back();
  }
}

}  // namespace

TEST_CASE("apply_action") {
  const Environment env = church_env();

  SUBCASE("direct β") {
    const Derivation d = D({"(λx. x) y"}, {});
    auto r = apply_action(d, BetaAt{}, env);
    REQUIRE(r.ok());
    CHECK(r.value() == D({"(λx. x) y", "y"}, {Rule::Beta}));
  }
  SUBCASE("β through a reference records the expansion") {
    const Derivation d = D({"True a b"}, {});
    auto r = apply_action(d, BetaAt{P({Step::FunSide})}, env);
    REQUIRE(r.ok());
    CHECK(r.value() ==
          D({"True a b", "(λx. λy. x) a b", "(λy. a) b"}, {Rule::Equiv, Rule::Beta}));
  }
  SUBCASE("β through a two-deep chain") {
    auto r = apply_action(D({"I a"}, {}), BetaAt{}, env);
    REQUIRE(r.ok());
    CHECK(r.value() == D({"I a", "Id a", "(λz. z) a", "a"}, {Rule::Equiv, Rule::Equiv, Rule::Beta}));
    for (const auto& v : validate_derivation(r.value(), env)) CHECK(v.valid());
  }
  SUBCASE("capture is refused and nothing changes") {
    const Derivation d = D({"(λx. λp. x) p"}, {});
    const Derivation before = d;
    auto r = apply_action(d, BetaAt{}, env);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().code == ErrorCode::Capture);
    CHECK(r.error().capture.captured_names == std::set<std::string>{"p"});
    CHECK(d == before);
  }
  SUBCASE("α and ≡") {
    auto a = apply_action(D({"λx. x"}, {}), AlphaRename{{}, "y"}, env);
    REQUIRE(a.ok());
    CHECK(a.value().last() == T("λy. y"));
    CHECK(a.value().rules == std::vector<Rule>{Rule::Alpha});

    auto e = apply_action(D({"f True"}, {}), ExpandAt{P({Step::ArgSide})}, env);
    REQUIRE(e.ok());
    CHECK(e.value().last() == T("f (λx. λy. x)"));
  }
  SUBCASE("errors propagate") {
    CHECK(apply_action(D({"a b"}, {}), BetaAt{}, env).error().code == ErrorCode::NotARedex);
    CHECK(apply_action(D({"a"}, {}), ExpandAt{}, env).error().code == ErrorCode::NotARef);
    CHECK(apply_action(D({"Nope"}, {}), ExpandAt{}, env).error().code == ErrorCode::UndefinedRef);
    CHECK(apply_action(D({"a"}, {}), AlphaRename{{}, "y"}, env).error().code ==
          ErrorCode::NotAnAbstraction);
    CHECK(apply_action(D({"λx. y x"}, {}), AlphaRename{{}, "y"}, env).error().code ==
          ErrorCode::WouldBindFree);
    CHECK(apply_action(D({"λx. λy. x"}, {}), AlphaRename{{}, "y"}, env).error().code ==
          ErrorCode::WouldShadow);
    CHECK(apply_action(D({"a"}, {}), BetaAt{P({Step::ArgSide})}, env).error().code ==
          ErrorCode::InvalidPath);
  }
  SUBCASE("only the last term is touched") {
    const Derivation d = D({"(λx. x) ((λy. y) a)", "(λy. y) a"}, {Rule::Beta});
    auto r = apply_action(d, BetaAt{}, env);
    REQUIRE(r.ok());
    CHECK(r.value().steps.size() == 3);
    CHECK(r.value().last() == T("a"));
    CHECK(std::equal(d.steps.begin(), d.steps.end(), r.value().steps.begin()));
  }
}

TEST_CASE("validate_derivation") {
  const Environment env = church_env();

  auto one = validate_derivation(D({"(λx. x) y", "y"}, {Rule::Beta}), env);
  REQUIRE(one.size() == 1);
  CHECK(one[0].index == 1);
  CHECK(one[0].valid());
  CHECK(one[0].witness == TermPath{});

  CHECK(validate_derivation(D({"λx. x", "λy. y"}, {Rule::Alpha}), env)[0].valid());

  auto bad = validate_derivation(D({"(λx. x) y", "z"}, {Rule::Beta}), env);
  CHECK_FALSE(bad[0].valid());
  CHECK(bad[0].reason == "no β-redex produces this term");
  // Exhaustive check: no redex position, reference headed or not, gives z.
  for (const auto& r : enumerate_redexes(T("(λx. x) y"), env))
    CHECK(beta_reduce_at(T("(λx. x) y"), r.path, env).value() != T("z"));

  SUBCASE("comparison is literal") {
    CHECK_FALSE(validate_derivation(D({"(λx. λy. x) a", "λz. a"}, {Rule::Beta}), env)[0].valid());
    CHECK(validate_derivation(D({"(λx. λy. x) a", "λy. a"}, {Rule::Beta}), env)[0].valid());
  }
  SUBCASE("α renames exactly one binder") {
    const auto v = validate_derivation(D({"λx. λy. x y", "λa. λb. a b"}, {Rule::Alpha}), env);
    CHECK_FALSE(v[0].valid());
    CHECK(v[0].reason == "no single binder rename produces this term");
    CHECK_FALSE(validate_derivation(D({"λx. x", "λx. x"}, {Rule::Alpha}), env)[0].valid());
    const auto inner = validate_derivation(D({"λx. λy. x y", "λx. λb. x b"}, {Rule::Alpha}), env);
    CHECK(inner[0].valid());
    CHECK(inner[0].witness == P({Step::Body}));
  }
  SUBCASE("β does not look through references") {
    CHECK_FALSE(validate_derivation(D({"True a b", "(λy. a) b"}, {Rule::Beta}), env)[0].valid());
  }
  SUBCASE("≡ is a single expansion") {
    const auto v = validate_derivation(D({"True Id", "True (λz. z)"}, {Rule::Equiv}), env);
    CHECK(v[0].valid());
    CHECK(v[0].witness == P({Step::ArgSide}));
    const auto both =
        validate_derivation(D({"True Id", "(λx. λy. x) (λz. z)"}, {Rule::Equiv}), env);
    CHECK_FALSE(both[0].valid());
    CHECK(both[0].reason == "no ≡-expansion produces this term");
  }
  SUBCASE("one verdict per arrow, numbered from one") {
    const auto v = validate_derivation(
        D({"(λx. x) Id", "Id", "λz. z", "λw. w"}, {Rule::Beta, Rule::Equiv, Rule::Alpha}), env);
    REQUIRE(v.size() == 3);
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(v[i].index == i + 1);
      CHECK(v[i].valid());
    }
  }
}

TEST_CASE("normalize") {
  const Environment env = church_env();

  SUBCASE("ω hits the step limit") {
    const Term omega = T("(λx. x x) (λx. x x)");
    const auto r = normalize(omega, env, Strategy::NormalOrder, 100);
    CHECK(r.outcome == Outcome::StepLimit);
    CHECK(r.trace.steps.size() == 101);
    for (const auto& s : r.trace.steps) CHECK(alpha_eq(s, omega));
  }
  SUBCASE("True a b") {
    const auto r = normalize(T("True a b"), env, Strategy::NormalOrder, 100);
    CHECK(r.outcome == Outcome::NormalForm);
    CHECK(r.trace.last() == T("a"));
    CHECK(r.trace.rules == std::vector<Rule>{Rule::Equiv, Rule::Beta, Rule::Beta});
    // Hand expansion: True a b ≡ (λx. λy. x) a b →β (λy. a) b →β a.
    CHECK(r.trace.steps[1] == T("(λx. λy. x) a b"));
    CHECK(r.trace.steps[2] == T("(λy. a) b"));
  }
  SUBCASE("zero steps") {
    const auto r = normalize(T("y"), env, Strategy::NormalOrder, 0);
    CHECK(r.outcome == Outcome::NormalForm);
    CHECK(r.trace.steps.size() == 1);
  }
  SUBCASE("a pending redex with no budget is a step limit") {
    const auto r = normalize(T("(λx. x) y"), env, Strategy::NormalOrder, 0);
    CHECK(r.outcome == Outcome::StepLimit);
    CHECK(r.trace.steps.size() == 1);
  }
  SUBCASE("an expansion group never straddles the limit") {
    const auto r = normalize(T("I a"), env, Strategy::NormalOrder, 2);
    CHECK(r.outcome == Outcome::StepLimit);
    CHECK(r.trace.steps.size() == 1);
    CHECK(normalize(T("I a"), env, Strategy::NormalOrder, 3).outcome == Outcome::NormalForm);
  }
  SUBCASE("strategies pick different redexes") {
    const Term t = T("(λx. y) ((λx. x x) (λx. x x))");
    const auto normal = normalize(t, env, Strategy::NormalOrder, 50);
    CHECK(normal.outcome == Outcome::NormalForm);
    CHECK(normal.trace.last() == T("y"));
    CHECK(normalize(t, env, Strategy::ApplicativeOrder, 50).outcome == Outcome::StepLimit);
  }
  SUBCASE("applicative order takes the rightmost innermost redex") {
    const Term t = T("((λx. x) a) ((λy. y) ((λz. z) b))");
    const auto pick = select_redex(t, env, Strategy::ApplicativeOrder);
    REQUIRE(pick);
    CHECK(pick->path == P({Step::ArgSide, Step::ArgSide}));
    CHECK(select_redex(t, env, Strategy::NormalOrder)->path == P({Step::FunSide}));
  }
  SUBCASE("capture halts") {
    const auto r = normalize(T("(λx. λp. x) p"), env, Strategy::NormalOrder, 10);
    CHECK(r.outcome == Outcome::Stuck);
    REQUIRE(r.capture);
    CHECK(r.capture->captured_names == std::set<std::string>{"p"});
    CHECK(r.capture->site == TermPath{});
    CHECK(r.trace.steps.size() == 1);
  }
  SUBCASE("traces validate") {
    const auto r = normalize(T("True (I a) b"), env, Strategy::ApplicativeOrder, 100);
    CHECK(r.outcome == Outcome::NormalForm);
    CHECK(r.trace.last() == T("a"));
    for (const auto& v : validate_derivation(r.trace, env)) CHECK(v.valid());
  }
}

TEST_CASE("derivation soundness on random derivations") {
  std::mt19937_64 rng(21);
  const Environment env = church_env();
  TermAlphabet alphabet;
  alphabet.refs = {"True", "Id", "I"};
  int mutated = 0;
  for (int i = 0; i < 200; ++i) {
    const Term start = random_term(rng, 4 + i % 20, alphabet);
    const Derivation d = random_derivation(rng, start, env, 6);
    for (const auto& v : validate_derivation(d, env)) REQUIRE(v.valid());

    // Swap two different children of one App in an intermediate term.
    for (std::size_t m = 1; m < d.steps.size(); ++m) {
      std::vector<TermPath> sites;
      TermPath path;
      swappable(d.steps[m], path, sites);
      if (sites.empty()) continue;
      const TermPath& site = sites[rng() % sites.size()];
      const Term* node = find_subterm(d.steps[m], site);
      Derivation bad = d;
      bad.steps[m] = replace_at(d.steps[m], site, Term::app(node->arg(), node->fun())).value();
      const auto verdicts = validate_derivation(bad, env);
      CHECK_FALSE(verdicts[m - 1].valid());
      for (const auto& v : verdicts)
        if (v.index != m && v.index != m + 1) CHECK(v.valid());
      ++mutated;
      break;
    }
  }
  CHECK(mutated > 50);
}

TEST_CASE("confluence on small terms") {
  std::mt19937_64 rng(5);
  TermAlphabet alphabet;
  int compared = 0;
  for (int i = 0; i < 400; ++i) {
    const Term t = random_redex(rng, 5 + i % 20, alphabet);
    const auto a = normalize(t, {}, Strategy::NormalOrder, 500);
    const auto b = normalize(t, {}, Strategy::ApplicativeOrder, 500);
    if (a.outcome != Outcome::NormalForm || b.outcome != Outcome::NormalForm) continue;
    CHECK(alpha_eq(a.trace.last(), b.trace.last()));
    ++compared;
  }
  CHECK(compared > 100);
}

TEST_CASE("normalize is deterministic and bounded") {
  std::mt19937_64 rng(9);
  TermAlphabet alphabet;
  for (int i = 0; i < 100; ++i) {
    const Term t = random_term(rng, 10 + i % 15, alphabet);
    const std::size_t n = i % 7;
    const auto a = normalize(t, {}, Strategy::NormalOrder, n);
    const auto b = normalize(t, {}, Strategy::NormalOrder, n);
    CHECK(a.trace == b.trace);
    CHECK(a.outcome == b.outcome);
    CHECK(a.trace.steps.size() <= n + 1);
  }
}

TEST_CASE("build_environment") {
  SUBCASE("cycle") {
    const auto doc = parse_document("A := { B }\nB := { A }\nC := { λx. x }");
    const auto env = build_environment(doc.doc);
    REQUIRE(env.diagnostics.size() == 1);
    CHECK(env.diagnostics[0].code == "cyclic_definition");
    CHECK(env.diagnostics[0].message.find('A') != std::string::npos);
    CHECK(env.diagnostics[0].message.find('B') != std::string::npos);
    CHECK_FALSE(env.env.contains("A"));
    CHECK_FALSE(env.env.contains("B"));
    CHECK(env.env.contains("C"));
  }
  SUBCASE("self reference") {
    const auto env = build_environment(parse_document("Y := { λf. f Y }").doc);
    REQUIRE(env.diagnostics.size() == 1);
    CHECK(env.env.empty());
  }
  SUBCASE("redefinition keeps the first") {
    const auto doc = parse_document("K := { λx. λy. x }\nK := { λz. z }");
    const auto env = build_environment(doc.doc);
    REQUIRE(env.diagnostics.size() == 1);
    CHECK(env.diagnostics[0].code == "redefinition");
    CHECK(env.diagnostics[0].span.start_line == 2);
    CHECK(env.env.find("K")->body == T("λx. λy. x"));
    CHECK(env.env.find("K")->arity == 2);
  }
  SUBCASE("forward references and derivation items") {
    const auto doc = parse_document("A := { B ->≡ λx. x }\nB := { λx. x }\n{ A b }");
    const auto env = build_environment(doc.doc);
    CHECK(env.diagnostics.empty());
    CHECK(env.env.find("A")->body == Term::ref("B"));
    CHECK(env.env.size() == 2);
  }
}

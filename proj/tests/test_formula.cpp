#include "doctest.h"
#include "mgg/errors.hpp"
#include "mgg/formula.hpp"
#include "support.hpp"

using namespace mgg;
using namespace mgg::testing;

TEST_CASE("parse the concrete syntax") {
  Formula f = parse_formula("exists A forall B [ (A & Q(B)) -> P(C,~G) ]");
  REQUIRE(f.kind == Formula::Kind::Quant);
  CHECK(f.quant == Quant::Exists);
  CHECK(f.var == "A");
  const Formula& b = f.kids[0];
  CHECK(b.quant == Quant::Forall);
  const Formula& body = b.kids[0];
  REQUIRE(body.kind == Formula::Kind::Implies);
  CHECK(body.kids[0].kind == Formula::Kind::And);
  CHECK(body.kids[0].kids[0] == f_P("A"));
  CHECK(body.kids[0].kids[1] == f_Q("B"));
  CHECK(body.kids[1] == f_P("C", Target::NegHost));
  CHECK(bound_vars(f) == std::vector<std::string>{"A", "B"});
  CHECK(atom_vars(f) == std::vector<std::string>{"A", "B", "C"});
}

TEST_CASE("atoms and connectives") {
  CHECK(parse_formula("true") == f_true());
  CHECK(parse_formula("false") == f_false());
  CHECK(parse_formula("P(A)") == f_P("A"));
  CHECK(parse_formula("P(A,G)") == f_P("A"));
  CHECK(parse_formula("Q(A,~G)") == f_Q("A", Target::NegHost));
  CHECK(parse_formula("!A") == f_not(f_P("A")));
  CHECK(parse_formula("PU(A,B)") == f_PU("A", "B"));
  CHECK(parse_formula("PU(A,B,{x:y,z:w})") == f_PU("A", "B", Relation{{"x", "y"}, {"z", "w"}}));
  CHECK(parse_formula("nexists A [A]").quant == Quant::NExists);
  CHECK(parse_formula("nforall A [A]").quant == Quant::NForall);
  Formula a = parse_formula("exists A@{x:h1} [A]");
  REQUIRE(a.anchor);
  CHECK(a.anchor->nodes.at("x") == "h1");
  // & binds tighter than |, which binds tighter than ->
  CHECK(parse_formula("A | B & C") == f_or({f_P("A"), f_and({f_P("B"), f_P("C")})}));
  CHECK(parse_formula("A -> B | C") == f_implies(f_P("A"), f_or({f_P("B"), f_P("C")})));
}

TEST_CASE("syntax errors") {
  for (const char* bad : {"", "exists [A]", "exists A A", "(A", "A &", "P(A,H)", "PU(A)", "A B", "forall A [A"})
    CHECK_THROWS_AS(parse_formula(bad), InputError);
}

TEST_CASE("printing round-trips") {
  for (const char* s : {"exists A forall B [(A & Q(B)) -> P(C,~G)]", "nexists iMach [iMach]",
                        "exists L nexists bMach forall bOp [L & bMach & bOp]",
                        "exists Cv forall AllC [(AllC & exists out [out]) -> exists next [next & Cv]]",
                        "exists A@{x:h1,y:h2} [!PU(A,B,{x:y}) | true]"}) {
    Formula f = parse_formula(s);
    CHECK(parse_formula(to_string(f)) == f);
  }
  Gen gen(41);
  for (int t = 0; t < 200; ++t) {
    GraphConstraint gc = gen.constraint();
    CHECK(parse_formula(to_string(gc.formula)) == gc.formula);
  }
}

TEST_CASE("quantifier names") {
  CHECK(std::string(quant_name(Quant::Exists)) == "exists");
  CHECK(std::string(quant_name(Quant::NForall)) == "nforall");
}

#include <cstdlib>

#include "doctest.h"
#include "mgg/errors.hpp"
#include "mgg/oracle.hpp"
#include "support.hpp"

using namespace mgg;
using namespace mgg::testing;

TEST_CASE("budget from the environment") {
  unsetenv("MGG_BUDGET");
  OracleBudget d = OracleBudget::from_env();
  CHECK(d.max_nodes == 8);
  CHECK(d.max_seq_len == 6);
  setenv("MGG_BUDGET", "10", 1);
  CHECK(OracleBudget::from_env().max_nodes == 10);
  CHECK(OracleBudget::from_env().max_seq_len == 6);
  setenv("MGG_BUDGET", "5,3", 1);
  CHECK(OracleBudget::from_env().max_nodes == 5);
  CHECK(OracleBudget::from_env().max_seq_len == 3);
  unsetenv("MGG_BUDGET");
}

TEST_CASE("budget limits") {
  GrammarFile f = factory();
  OracleBudget small;
  small.max_nodes = 2;
  CHECK_THROWS_AS(oracle_satisfies(f.graph("twoMachines"), f.constraints.at("exists-opMachine"), small),
                  BudgetError);
  RuleSequence s;
  for (int i = 0; i < 7; ++i) s.add(f.rule("identity"));
  CHECK_THROWS_AS(oracle_applicable(s, f.graph("twoMachines")), BudgetError);
}

TEST_CASE("strict and epsilon applicability") {
  GrammarFile f = factory();
  Production p = f.rule("break");
  RuleSequence s;
  s.add(p);
  const TypedDigraph& g = f.graph("breakHost");
  CHECK(oracle_applicable(s, g));
  CHECK_FALSE(oracle_applicable(s, g, true));
  CHECK(oracle_applicable(s, g.induced({"m1"}), true));
}

TEST_CASE("conditioned applicability needs a match") {
  GrammarFile f = factory();
  CHECK_FALSE(oracle_conditioned(f.ac("contract"), f.graph("opMachine").induced({"o"})));
}

TEST_CASE("dangling scan") {
  GrammarFile f = factory();
  Production p = f.rule("remove");
  const TypedDigraph& g = f.graph("removeHost");
  Morphism m{{{"c1", "c1"}, {"c2", "c2"}, {"mach", "mach"}}};
  CHECK(oracle_dangling(p, m, g).empty());
  TypedDigraph h = g;
  h.add_node("o", "Operator");
  h.add_edge("o", "mach");
  CHECK(oracle_dangling(p, m, h) == std::vector<EdgeIds>{{"o", "mach"}});
  // a loop on the machine is ruled out by the nihilation matrix, not by the scan
  h.add_edge("mach", "mach");
  CHECK(oracle_dangling(p, m, h) == std::vector<EdgeIds>{{"o", "mach"}});
  CHECK(find_matches(p, h).empty());
}

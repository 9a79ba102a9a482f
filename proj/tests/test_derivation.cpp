#include <algorithm>

#include "doctest.h"
#include "mgg/derivation.hpp"
#include "mgg/errors.hpp"
#include "mgg/oracle.hpp"
#include "support.hpp"

using namespace mgg;
using namespace mgg::testing;

TEST_CASE("startProcess on the plant") {
  GrammarFile f = factory();
  Production p = f.rule("startProcess");
  const TypedDigraph& g = f.graph("plant");
  auto ms = find_matches(p, g);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].mL == Morphism{{{"c1", "conv1"}, {"m1", "mach1"}, {"o1", "op1"}, {"p1", "p1"}}});
  DerivationResult r = direct_derive(p, ms[0], g);
  TypedDigraph h = r.H.compacted();
  CHECK_FALSE(h.has_node("p1"));
  CHECK(h.node_count() == 6);
  CHECK(h.has_edge("mach1", "mach1"));
  CHECK(h.has_edge("op1", "op1"));
  CHECK(h.has_edge("op1", "mach1"));
  CHECK(h.edge_count() == 7);
  CHECK(r.comatch == Morphism{{{"c1", "conv1"}, {"m1", "mach1"}, {"o1", "op1"}}});
  RuleSequence s;
  s.add(p);
  CHECK(oracle_applicable(s, g));
}

TEST_CASE("busy machine blocks startProcess") {
  GrammarFile f = factory();
  Production p = f.rule("startProcess");
  TypedDigraph g = f.graph("plant");
  g.add_edge("mach1", "mach1");
  CHECK(find_matches(p, g).empty());
}

TEST_CASE("identity rule leaves the host alone") {
  GrammarFile f = factory();
  Production p = f.rule("identity");
  const TypedDigraph& g = f.graph("twoMachines");
  for (const auto& m : find_matches(p, g)) CHECK(direct_derive(p, m, g).H == g);
}

TEST_CASE("dangling edges") {
  Production p = factory().rule("break");
  TypedDigraph g = build_graph({{"o1", "Operator"}, {"m1", "Machine"}}, {{"o1", "m1"}});
  Match m{Morphism{{{"m1", "m1"}}}};
  CHECK(dangling_edges(p, m, g) == std::vector<EdgeIds>{{"o1", "m1"}});
  CHECK(oracle_dangling(p, m.mL, g) == std::vector<EdgeIds>{{"o1", "m1"}});
  CHECK_THROWS_AS(direct_derive(p, m, g), DanglingError);
  DerivationResult r = derive_with_epsilon(p, m, g);
  REQUIRE(r.epsilon);
  CHECK(r.epsilon->lhs().edge_count() == 1);
  CHECK(r.H.compacted() == build_graph({{"o1", "Operator"}}, {}));
  CHECK(compatibility_check(r.H).compatible());
}

TEST_CASE("bad matches") {
  Production p = factory().rule("startProcess");
  TypedDigraph g = factory().graph("plant");
  CHECK_THROWS_AS(direct_derive(p, Match{Morphism{{{"c1", "conv1"}}}}, g), MatchError);
  CHECK_THROWS_AS(direct_derive(p, Match{Morphism{{{"c1", "nope"}, {"m1", "mach1"}, {"o1", "op1"}, {"p1", "p1"}}}}, g),
                  MatchError);
}

TEST_CASE("new nodes avoid host ids") {
  TypedDigraph l;
  TypedDigraph r = build_graph({{"x", "T"}}, {});
  Production p = from_static("mk", l, r, {});
  TypedDigraph g = build_graph({{"x", "T"}}, {});
  DerivationResult d = direct_derive(p, Match{}, g);
  CHECK(d.H.node_count() == 2);
  CHECK(d.H.has_node("x"));
  CHECK(d.comatch.nodes.at("x") != "x");
}

TEST_CASE("random derivations: epsilon keeps graphs compatible, strict fails exactly on dangling") {
  Gen gen(31);
  int tried = 0;
  while (tried < 300) {
    Production p = gen.rule(4);
    TypedDigraph g = gen.host(6, 0.4);
    auto ms = find_matches(p, g);
    if (ms.empty()) continue;
    ++tried;
    const Match& m = ms[gen.uniform(0, ms.size() - 1)];
    DerivationResult r = derive_with_epsilon(p, m, g);
    CHECK(compatibility_check(r.H).compatible());
    auto scan = oracle_dangling(p, m.mL, g);
    auto eng = dangling_edges(p, m, g);
    std::sort(scan.begin(), scan.end());
    std::sort(eng.begin(), eng.end());
    CHECK(scan == eng);
    if (scan.empty())
      CHECK_NOTHROW(direct_derive(p, m, g));
    else
      CHECK_THROWS_AS(direct_derive(p, m, g), DanglingError);
  }
}

TEST_CASE("find_matches agrees with the oracle") {
  Gen gen(32);
  for (int t = 0; t < 200; ++t) {
    Production p = gen.rule(3);
    TypedDigraph g = gen.host(5, 0.4);
    RuleSequence s;
    s.add(p);
    CHECK(!find_matches(p, g).empty() == oracle_applicable(s, g));
  }
}

TEST_CASE("sequence links are validated") {
  Production p = factory().rule("identity");
  RuleSequence s;
  s.add(p);
  s.add(p);
  s.same({0, "o"}, {1, "o"});
  CHECK_NOTHROW(s.validate());
  s.same({0, "o"}, {2, "o"});
  CHECK_THROWS_AS(s.validate(), CompletionError);
  s.links.pop_back();
  s.differ({0, "zz"}, {1, "o"});
  CHECK_THROWS_AS(s.validate(), CompletionError);
  CHECK(RuleSequence{}.str() == "(empty)");
}

TEST_CASE("empty sequence is applicable") {
  CHECK(oracle_applicable(RuleSequence{}, factory().graph("plant")));
}

TEST_CASE("marking replaces links by mark nodes") {
  GrammarFile f = factory();
  RuleSequence s = f.sequence("startThenIdle");
  RuleSequence m = mark(s);
  CHECK(m.size() == s.size());
  bool has_mark = false;
  for (const auto& n : m.rules[1].rhs().present_nodes()) has_mark |= n.type.rfind(kMarkType, 0) == 0;
  CHECK(has_mark);
  CHECK(oracle_applicable(s, f.graph("plant")));
  CHECK(oracle_applicable(m, f.graph("plant")));
}

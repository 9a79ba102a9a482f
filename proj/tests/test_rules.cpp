#include "doctest.h"
#include "mgg/errors.hpp"
#include "mgg/rules.hpp"
#include "support.hpp"

using namespace mgg;
using namespace mgg::testing;

TEST_CASE("startProcess nihilation") {
  Production p = factory().rule("startProcess");
  std::vector<std::string> ids;
  for (const auto& n : p.slots()) ids.push_back(n.id);
  CHECK(ids == std::vector<std::string>{"c1", "m1", "o1", "p1"});
  CHECK(p.NE == BoolMatrix{{0, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 1}});
  CHECK(dbar(p) == BoolMatrix{{0, 0, 0, 1}, {0, 0, 0, 1}, {0, 0, 0, 1}, {1, 1, 1, 1}});
  CHECK(p.eV == BoolVector{0, 0, 0, 1});
  CHECK(p.rV == BoolVector{0, 0, 0, 0});
  CHECK(p.eE.count() == 1);
  CHECK(p.rE.count() == 2);
  CHECK(p.compatible);
  CHECK(p.nihilation_graph().edge_count() == 8);
}

TEST_CASE("evolution identity on random rules") {
  Gen gen(21);
  for (int t = 0; t < 300; ++t) {
    Production p = gen.rule(6);
    REQUIRE(p.compatible);
    CHECK((p.eE | (~p.rE & p.NE)) == (p.eE | dbar(p)));
    CHECK_NOTHROW(evolve_nihilation(p));
    // e and r are disjoint, r only touches what is missing, e only what is there
    CHECK_FALSE((p.eE & p.rE).any());
    CHECK_FALSE((p.rE & p.L.adj()).any());
    CHECK((p.eE & ~p.L.adj()) == BoolMatrix(p.size(), p.size()));
  }
}

TEST_CASE("action on the left-hand side gives the right-hand side") {
  Gen gen(22);
  for (int t = 0; t < 200; ++t) {
    Production p = gen.rule(5);
    CHECK(apply_action(p, p.L.adj()) == p.R.adj());
    CHECK(apply_action(p, p.L.present()) == p.R.present());
  }
}

TEST_CASE("inverse swaps the sides") {
  Gen gen(23);
  for (int t = 0; t < 200; ++t) {
    Production p = gen.rule(5);
    Production q = inverse(p);
    CHECK(q.eE == p.rE);
    CHECK(q.rE == p.eE);
    CHECK(q.eV == p.rV);
    CHECK(q.lhs() == p.rhs());
    CHECK(inverse(q).lhs() == p.lhs());
    CHECK(inverse(q).NE == p.NE);
  }
}

TEST_CASE("identity rule") {
  GrammarFile f = factory();
  Production p = id_rule(f.graph("opMachine"));
  CHECK_FALSE(p.eE.any());
  CHECK_FALSE(p.rE.any());
  CHECK_FALSE(p.eV.any());
  CHECK(p.lhs() == p.rhs());
  // the missing edges on its nodes are forbidden only if they would be added
  CHECK_FALSE(p.NE.any());
}

TEST_CASE("dynamic and static formulations agree") {
  Gen gen(24);
  for (int t = 0; t < 100; ++t) {
    Production p = gen.rule(5);
    Production q = from_dynamic("q", p.slots(), p.L.adj(), p.L.present(), p.eE, p.rE, p.eV, p.rV);
    CHECK(q.R == p.R);
    CHECK(q.NE == p.NE);
  }
}

TEST_CASE("invalid rules") {
  TypedDigraph l = build_graph({{"a", "T"}}, {});
  TypedDigraph r = build_graph({{"b", "U"}}, {});
  CHECK_THROWS_AS(from_static("bad", l, r, Morphism{{{"a", "b"}}}), MorphismError);
  CHECK_THROWS_AS(from_static("bad", l, r, Morphism{{{"a", "zz"}}}), MorphismError);
  TypedDigraph r2 = build_graph({{"b", "T"}, {"c", "T"}}, {});
  CHECK_THROWS_AS(from_static("bad", build_graph({{"a", "T"}, {"x", "T"}}, {}), r2,
                              Morphism{{{"a", "b"}, {"x", "b"}}}),
                  MorphismError);
}

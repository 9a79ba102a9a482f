#include <algorithm>

#include "doctest.h"
#include "mgg/errors.hpp"
#include "mgg/matching.hpp"
#include "mgg/oracle.hpp"
#include "support.hpp"

using namespace mgg;
using namespace mgg::testing;

namespace {

std::vector<Morphism> sorted(std::vector<Morphism> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("operator and machine counts") {
  GrammarFile f = factory();
  const TypedDigraph& a = f.graph("opMachine");
  const TypedDigraph& g = f.graph("twoMachines");
  CHECK(enumerate_tot(a, g).size() == 1);
  CHECK(enumerate_par_max(a, g).size() == 2);
  CHECK(oracle_morphisms(a, g, MorphKind::Tot).size() == 1);
  CHECK(oracle_morphisms(a, g, MorphKind::ParMax).size() == 2);
  CHECK(oracle_morphisms(a, g, MorphKind::Iso).empty());
  CHECK(oracle_morphisms(a, g.induced({"o1", "m1"}), MorphKind::Iso).size() == 1);
}

TEST_CASE("single node into same-type nodes") {
  TypedDigraph a = build_graph({{"x", "T"}}, {});
  TypedDigraph g = build_graph({{"a", "T"}, {"b", "T"}, {"c", "T"}, {"d", "U"}}, {});
  CHECK(enumerate_tot(a, g).size() == 3);
  CHECK(enumerate_par_max(a, g).size() == 3);
}

TEST_CASE("fixed pairs and forbidden hosts") {
  TypedDigraph a = build_graph({{"x", "T"}, {"y", "T"}}, {{"x", "y"}});
  TypedDigraph g = build_graph({{"a", "T"}, {"b", "T"}, {"c", "T"}}, {{"a", "b"}, {"a", "c"}, {"b", "c"}});
  std::size_t n = 0;
  InjectionQuery q;
  q.fixed.nodes["x"] = "a";
  for_each_injection(a, g, q, [&](const Morphism&) { return ++n, true; });
  CHECK(n == 2);
  q.forbidden = {"c"};
  n = 0;
  for_each_injection(a, g, q, [&](const Morphism& m) {
    CHECK(m.nodes.at("y") == "b");
    return ++n, true;
  });
  CHECK(n == 1);
  n = 0;
  CHECK_FALSE(for_each_injection(a, g, {}, [&](const Morphism&) { return ++n, false; }));
  CHECK(n == 1);
}

TEST_CASE("enumeration agrees with the oracle on random pairs") {
  Gen gen(11);
  for (int t = 0; t < 300; ++t) {
    TypedDigraph a = gen.graph(gen.uniform(1, 3), 0.3, "a");
    TypedDigraph g = gen.graph(gen.uniform(1, 5), 0.35, "h");
    CHECK(sorted(enumerate_tot(a, g)) == sorted(oracle_morphisms(a, g, MorphKind::Tot)));
    CHECK(sorted(enumerate_par_max(a, g)) == sorted(oracle_morphisms(a, g, MorphKind::ParMax)));
  }
}

TEST_CASE("mapped edges and isomorphism") {
  TypedDigraph a = build_graph({{"x", "T"}, {"y", "T"}}, {{"x", "y"}, {"y", "x"}});
  TypedDigraph g = build_graph({{"a", "T"}, {"b", "T"}}, {{"a", "b"}});
  Morphism f{{{"x", "a"}, {"y", "b"}}};
  CHECK(mapped_edges(a, g, f) == std::vector<EdgeIds>{{"x", "y"}});
  CHECK_FALSE(is_iso(f, a, g));
  TypedDigraph b = build_graph({{"p", "T"}, {"q", "T"}}, {{"p", "q"}, {"q", "p"}});
  CHECK(is_iso(Morphism{{{"x", "q"}, {"y", "p"}}}, a, b));
}

TEST_CASE("diagram commutation") {
  Diagram d;
  d.graphs["A"] = build_graph({{"x", "T"}}, {});
  d.graphs["B"] = build_graph({{"y", "T"}, {"z", "T"}}, {});
  d.graphs["C"] = build_graph({{"u", "T"}, {"v", "T"}}, {});
  d.arrows = {{"A", "B", Morphism{{{"x", "y"}}}},
              {"B", "C", Morphism{{{"y", "u"}}}},
              {"A", "C", Morphism{{{"x", "u"}}}}};
  CHECK(check_commuting(d));
  d.arrows[2].map.nodes["x"] = "v";
  CHECK_FALSE(check_commuting(d));
  d.arrows[2].map.nodes["x"] = "missing";
  CHECK_THROWS_AS(d.validate(), MorphismError);
}

TEST_CASE("oracle budget") {
  TypedDigraph a = build_graph({{"x", "T"}}, {});
  Gen gen(3);
  TypedDigraph big = gen.graph(9, 0.1);
  CHECK_THROWS_AS(oracle_morphisms(a, big, MorphKind::Tot, OracleBudget{}), BudgetError);
  OracleBudget wide;
  wide.max_nodes = 12;
  CHECK_NOTHROW(oracle_morphisms(a, big, MorphKind::Tot, wide));
}

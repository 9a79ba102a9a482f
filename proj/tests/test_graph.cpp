#include <random>

#include "doctest.h"
#include "mgg/errors.hpp"
#include "mgg/graph.hpp"

using namespace mgg;

namespace {

TypedDigraph plant() {
  return build_graph({{"gen1", "Generator"},
                      {"conv1", "Conveyor"},
                      {"conv2", "Conveyor"},
                      {"mach1", "Machine"},
                      {"op1", "Operator"},
                      {"p1", "Piece"},
                      {"p2", "Piece"}},
                     {{"gen1", "conv1"},
                      {"conv1", "mach1"},
                      {"mach1", "conv2"},
                      {"op1", "mach1"},
                      {"p1", "conv1"},
                      {"p2", "conv2"}});
}

// offenders by scanning every edge
BoolVector scan_offenders(const TypedDigraph& g) {
  BoolVector off(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      bool touches_absent = false;
      if (g.edge(i, j) && !g.is_present(j)) touches_absent = true;
      if (g.edge(j, i) && !g.is_present(j)) touches_absent = true;
      if (touches_absent) off.set(i);
    }
  return off;
}

}  // namespace

TEST_CASE("compatibility") {
  CHECK(compatibility_check(TypedDigraph{}).compatible());

  TypedDigraph g({{"a", "T"}, {"b", "T"}}, BoolMatrix{{0, 1}, {0, 0}}, BoolVector{1, 0});
  auto c = compatibility_check(g);
  CHECK(c.dangling);
  CHECK(c.offenders == BoolVector{1, 0});

  auto p = plant();
  CHECK(compatibility_check(p).offenders == scan_offenders(p));
  CHECK(compatibility_check(p).compatible());
  CHECK(bool_product(p.adj() | p.adj().transpose(), ~p.present()) == BoolVector(7));
}

TEST_CASE("compatibility agrees with an edge scan on random structures") {
  std::mt19937 rng(5);
  std::bernoulli_distribution coin(0.35);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + t % 6;
    std::vector<Node> ns;
    for (std::size_t i = 0; i < n; ++i) ns.push_back({"n" + std::to_string(i), "T"});
    BoolMatrix m(n, n);
    BoolVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v.set(i, !coin(rng));
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, coin(rng));
    }
    TypedDigraph g(ns, m, v);
    auto c = compatibility_check(g);
    CHECK(c.offenders == scan_offenders(g));
    if (c.compatible())
      for (auto [i, j] : g.edges()) CHECK((g.is_present(i) && g.is_present(j)));
  }
}

TEST_CASE("completion of the startProcess sides") {
  auto l = build_graph({{"c1", "Conveyor"}, {"m1", "Machine"}, {"o1", "Operator"}, {"p1", "Piece"}},
                       {{"p1", "c1"}, {"c1", "m1"}, {"o1", "m1"}});
  auto r = build_graph({{"c1", "Conveyor"}, {"m1", "Machine"}, {"o1", "Operator"}},
                       {{"c1", "m1"}, {"o1", "m1"}, {"m1", "m1"}, {"o1", "o1"}});
  Morphism f{{{"c1", "c1"}, {"m1", "m1"}, {"o1", "o1"}}};
  auto [lc, rc] = complete(l, r, f);
  REQUIRE(lc.size() == 4);
  REQUIRE(rc.size() == 4);
  CHECK(lc.node(3).id == "p1");
  CHECK(rc.node(3).id == "~1.p1");
  CHECK_FALSE(rc.is_present(3));
  CHECK(rc.adj().row(3) == BoolVector(4));
  CHECK(rc.adj().transpose().row(3) == BoolVector(4));
  CHECK((lc.adj() & ~rc.adj()) == BoolMatrix{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}});

  // idempotent on a completed pair
  Morphism same;
  for (const auto& n : lc.nodes()) same.nodes[n.id] = rc.node(lc.index_of(n.id)).id;
  auto [lc2, rc2] = complete(lc, rc, same);
  CHECK(lc2 == lc);
  CHECK(rc2 == rc);
}

TEST_CASE("completion with empty and bijective maps") {
  auto a = build_graph({{"x", "B"}, {"y", "A"}}, {{"x", "y"}});
  auto b = build_graph({{"u", "A"}, {"v", "B"}}, {{"v", "u"}});
  auto [a1, b1] = complete(a, b, Morphism{{{"x", "v"}, {"y", "u"}}});
  CHECK(a1.size() == 2);
  CHECK(a1.node(0).id == "y");
  CHECK(b1.node(0).id == "u");
  CHECK(a1.adj() == b1.adj());

  auto [a2, b2] = complete(a, b, Morphism{});
  CHECK(a2.size() == 4);
  CHECK(a2.node_count() == 2);
  CHECK(b2.node_count() == 2);
  CHECK(b2.node(0).id == "~1.y");

  CHECK_THROWS_AS(complete(a, b, Morphism{{{"x", "u"}}}), MorphismError);
  CHECK_THROWS_AS(complete(a, b, Morphism{{{"x", "v"}, {"y", "v"}}}), MorphismError);
}

TEST_CASE("negation") {
  auto e = negate(TypedDigraph{});
  CHECK(e.nodes.empty());
  auto k = build_graph({{"a", "T"}, {"b", "T"}}, {{"a", "a"}, {"a", "b"}, {"b", "a"}, {"b", "b"}});
  auto nk = negate(k);
  CHECK_FALSE(nk.adj.any());
  CHECK_FALSE(nk.present.any());
}

TEST_CASE("complement with respect to a graph") {
  // A = operator -> machine; G has the machine but no operator
  auto g = build_graph({{"m1", "Machine"}, {"c1", "Conveyor"}}, {{"c1", "m1"}});
  auto a = build_graph({{"o", "Operator"}, {"m", "Machine"}}, {{"o", "m"}});
  auto plain = negate(g).as_target();
  CHECK_FALSE(plain.has_node("o"));
  auto comp = complement_wrt(g, a, Morphism{{{"m", "m1"}}}).as_target();
  REQUIRE(comp.has_node("~2.o"));
  CHECK(comp.has_edge("~2.o", "m1"));

  // total f: same edges as plain negation
  auto a2 = build_graph({{"m", "Machine"}}, {});
  auto c2 = complement_wrt(g, a2, Morphism{{{"m", "m1"}}});
  CHECK(c2.adj.count() == negate(g).adj.count());
}

TEST_CASE("complement flips every edge of A slotwise") {
  std::mt19937 rng(9);
  std::bernoulli_distribution coin(0.4);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + t % 6;
    std::vector<Node> gn, an;
    for (std::size_t i = 0; i < n; ++i) gn.push_back({"g" + std::to_string(i), "T"});
    std::size_t k = 1 + t % n;
    for (std::size_t i = 0; i < k; ++i) an.push_back({"a" + std::to_string(i), "T"});
    std::vector<EdgeIds> ge, ae;
    for (auto& x : gn)
      for (auto& y : gn)
        if (coin(rng)) ge.emplace_back(x.id, y.id);
    for (auto& x : an)
      for (auto& y : an)
        if (coin(rng)) ae.emplace_back(x.id, y.id);
    auto g = build_graph(gn, ge), a = build_graph(an, ae);
    Morphism f;
    for (std::size_t i = 0; i < k; ++i) f.nodes["a" + std::to_string(i)] = "g" + std::to_string(i);
    auto c = complement_wrt(g, a, f).as_target();
    for (auto& [x, y] : a.edge_ids())
      CHECK(g.has_edge(*f(x), *f(y)) != c.has_edge(*f(x), *f(y)));
  }
}

#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "mgg/errors.hpp"
#include "support.hpp"

using namespace mgg;
using namespace mgg::testing;

TEST_CASE("grammar round-trip") {
  GrammarFile f = factory();
  Json out = grammar_to_json(f);
  GrammarFile back = grammar_from_json(out);
  CHECK(back == f);
  CHECK(grammar_to_json(back).dump() == out.dump());
  CHECK_NOTHROW(back.validate());
}

TEST_CASE("rule maps default to shared ids") {
  Json j = Json::parse(R"({
    "rules": {
      "swap": {
        "lhs": {"nodes": [{"id": "a", "type": "T"}, {"id": "b", "type": "T"}], "edges": [["a", "b"]]},
        "rhs": {"nodes": [{"id": "a", "type": "T"}, {"id": "b", "type": "T"}], "edges": [["b", "a"]]},
        "map": {"b": null}
      },
      "retype": {
        "lhs": {"nodes": [{"id": "a", "type": "T"}]},
        "rhs": {"nodes": [{"id": "a", "type": "U"}]}
      }
    }
  })");
  GrammarFile f = grammar_from_json(j);
  CHECK(f.rules.at("swap").map == Morphism{{{"a", "a"}}});
  CHECK(f.rules.at("retype").map.empty());
  Production p = f.rule("swap");
  CHECK(p.size() == 3);
  CHECK(grammar_to_json(f)["rules"]["swap"]["map"] == Json::parse(R"({"b": null})"));
  CHECK(grammar_from_json(grammar_to_json(f)) == f);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"nodes": [{"id": "a"}]})")), InputError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"nodes": [{"id": "a", "type": "T"}, {"id": "a", "type": "T"}]})")),
                  InputError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"nodes": [{"id": "a", "type": "T"}], "edges": [["a", "b"]]})")),
                  InputError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"nodes": [], "edges": [["a"]]})")), InputError);
  CHECK_THROWS_AS(grammar_from_json(Json::parse(R"({"rules": {"r": {"lhs": "nope", "rhs": "nope"}}})")),
                  InputError);
  CHECK_THROWS_AS(grammar_from_json(Json::parse(R"({"constraints": {"c": {"diagram": {}, "formula": "exists ["}}})")),
                  InputError);
  CHECK_THROWS_AS(load_grammar("/nonexistent/grammar.json"), InputError);

  const char* path = "mgg_test_bad.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(load_grammar(path), InputError);
  std::remove(path);
}

TEST_CASE("validation") {
  GrammarFile f = factory();
  GrammarFile g = f;
  g.graphs["odd"] = build_graph({{"x", "Robot"}}, {});
  CHECK_THROWS_AS(g.validate(), InputError);
  g = f;
  g.acs["broken"] = {"contract", "missing"};
  CHECK_THROWS_AS(g.validate(), InputError);
  g = f;
  g.sequences["broken"] = {{"identity"}, {Link{Link::Kind::Same, {0, "o"}, {3, "o"}, {}}}};
  CHECK_THROWS_AS(g.validate(), CompletionError);
  CHECK_THROWS_AS(f.rule("nope"), InputError);
  CHECK_THROWS_AS(f.graph("nope"), InputError);
}

TEST_CASE("graph files") {
  const char* path = "mgg_test_graph.json";
  TypedDigraph g = factory().graph("plant");
  std::ofstream(path) << graph_to_json(g).dump();
  CHECK(load_graph(path) == g);
  std::remove(path);
}

TEST_CASE("DOT export") {
  GrammarFile f = factory();
  std::string dot = to_dot(f.graph("twoMachines"), "G");
  CHECK(dot.find("digraph \"G\"") == 0);
  CHECK(dot.find("\"o1\" -> \"m1\";") != std::string::npos);
  CHECK(dot.find("dashed") == std::string::npos);
  std::string neg = to_dot(f.graph("twoMachines"), "N", true);
  CHECK(neg.find("\"o1\" -> \"m1\" [style=dashed];") != std::string::npos);
  std::string rule = rule_to_dot(f.rule("startProcess"));
  CHECK(rule.find("cluster_N") != std::string::npos);
  CHECK(rule.find("\"N.p1\" -> \"N.p1\" [style=dashed];") != std::string::npos);
  RuleSequence m = mark(f.sequence("startThenIdle"));
  CHECK(rule_to_dot(m.rules[1]).find("shape=diamond") != std::string::npos);
}

TEST_CASE("reports") {
  GrammarFile f = factory();
  Json m = matrix_to_json(f.rule("startProcess").NE);
  CHECK(m.dump() == "[[0,0,0,1],[0,1,0,1],[0,0,1,1],[0,1,1,1]]");
  SequenceSet s = compile_ac(f.ac("break"), f.graph("breakHost"));
  Json seq = sequence_to_json(s.alternatives[0]);
  CHECK(seq["text"] == "break; id_Operated");
  CHECK(seq["rules"][1]["role"] == "identity");
  Json rep = report_to_json(analyze(s.alternatives[0]));
  CHECK(rep["compatible"] == false);
  CHECK(rep["conflicts"][0]["kind"] == "dangling");
  CHECK(rep["conflicts"][0]["edge"]["src_type"] == "Operator");
  ReductionTrace t = reduce(f.constraints.at("allGenerators"), f.graph("genHost"));
  Json tr = trace_to_json(t);
  CHECK(tr["steps"][0]["op"] == "closure");
  CHECK(tr["steps"][0]["count"] == 3);
  CHECK(tr["census"]["Conveyor"] == 3);
}

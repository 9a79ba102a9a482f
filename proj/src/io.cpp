#include "mgg/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "mgg/errors.hpp"

namespace mgg {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string str_of(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where + ": expected a string");
  return j.get<std::string>();
}

Morphism morphism_from_json(const Json& j, const std::string& where) {
  Morphism m;
  if (j.is_null()) return m;
  if (!j.is_object()) bad(where + ": a morphism is an object of id pairs");
  for (const auto& [k, v] : j.items()) m.nodes[k] = str_of(v, where);
  if (!m.injective()) bad(where + ": morphism is not injective");
  return m;
}

Link::Kind link_kind(const std::string& s, const std::string& where) {
  if (s == "same") return Link::Kind::Same;
  if (s == "differ") return Link::Kind::Differ;
  if (s == "anchor") return Link::Kind::Anchor;
  bad(where + ": unknown link kind '" + s + "'");
}

const char* link_name(Link::Kind k) {
  switch (k) {
    case Link::Kind::Same: return "same";
    case Link::Kind::Differ: return "differ";
    case Link::Kind::Anchor: return "anchor";
  }
  return "?";
}

SlotRef slot_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_string())
    bad(where + ": a slot is [rule index, slot id]");
  return {j[0].get<std::size_t>(), j[1].get<std::string>()};
}

Morphism default_map(const TypedDigraph& l, const TypedDigraph& r) {
  Morphism m;
  for (const auto& n : l.present_nodes()) {
    int i = r.index_of(n.id);
    if (i >= 0 && r.is_present(i) && r.node(i).type == n.type) m.nodes[n.id] = n.id;
  }
  return m;
}

}  // namespace

TypedDigraph graph_from_json(const Json& j) {
  if (!j.is_object()) bad("graph literal must be an object");
  std::vector<Node> nodes;
  std::set<std::string> ids;
  if (j.contains("nodes")) {
    if (!j.at("nodes").is_array()) bad("graph \"nodes\" must be an array");
    for (const auto& n : j.at("nodes")) {
      Node x{str_of(field(n, "id", "node"), "node id"), str_of(field(n, "type", "node"), "node type")};
      if (!ids.insert(x.id).second) bad("duplicate node id '" + x.id + "'");
      nodes.push_back(std::move(x));
    }
  }
  std::vector<EdgeIds> edges;
  if (j.contains("edges")) {
    if (!j.at("edges").is_array()) bad("graph \"edges\" must be an array");
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) bad("an edge is a pair of node ids");
      EdgeIds x{str_of(e[0], "edge"), str_of(e[1], "edge")};
      if (!ids.count(x.first) || !ids.count(x.second))
        bad("edge (" + x.first + "," + x.second + ") names an unknown node");
      edges.push_back(std::move(x));
    }
  }
  return build_graph(nodes, edges);
}

Json graph_to_json(const TypedDigraph& g) {
  Json j;
  j["nodes"] = Json::array();
  for (const auto& n : g.present_nodes()) j["nodes"].push_back({{"id", n.id}, {"type", n.type}});
  j["edges"] = Json::array();
  for (const auto& [a, b] : g.edge_ids()) j["edges"].push_back({a, b});
  return j;
}

Json matrix_to_json(const BoolMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m.get(i, k) ? 1 : 0);
    j.push_back(std::move(row));
  }
  return j;
}

Json morphism_to_json(const Morphism& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m.nodes) j[k] = v;
  return j;
}

GrammarFile grammar_from_json(const Json& j) {
  if (!j.is_object()) bad("grammar file must be a JSON object");
  GrammarFile f;
  if (j.contains("types"))
    for (const auto& t : j.at("types")) f.types.push_back(str_of(t, "types"));
  if (j.contains("graphs"))
    for (const auto& [name, g] : j.at("graphs").items()) f.graphs[name] = graph_from_json(g);

  auto graph_ref = [&](const Json& g, const std::string& where) -> TypedDigraph {
    if (g.is_string()) {
      auto it = f.graphs.find(g.get<std::string>());
      if (it == f.graphs.end()) bad(where + ": no graph named '" + g.get<std::string>() + "'");
      return it->second;
    }
    return graph_from_json(g);
  };

  if (j.contains("rules"))
    for (const auto& [name, r] : j.at("rules").items()) {
      std::string where = "rule '" + name + "'";
      RuleSpec spec;
      spec.lhs = graph_ref(field(r, "lhs", where), where);
      spec.rhs = graph_ref(field(r, "rhs", where), where);
      spec.map = default_map(spec.lhs, spec.rhs);
      if (r.contains("map")) {
        if (!r.at("map").is_object()) bad(where + ": \"map\" must be an object");
        for (const auto& [k, v] : r.at("map").items()) {
          if (v.is_null())
            spec.map.nodes.erase(k);
          else
            spec.map.nodes[k] = str_of(v, where);
        }
      }
      f.rules[name] = std::move(spec);
    }

  if (j.contains("constraints"))
    for (const auto& [name, c] : j.at("constraints").items()) {
      std::string where = "constraint '" + name + "'";
      GraphConstraint gc;
      const Json& d = field(c, "diagram", where);
      if (d.contains("graphs"))
        for (const auto& [var, g] : d.at("graphs").items())
          gc.diagram.graphs[var] = graph_ref(g, where);
      if (d.contains("morphisms"))
        for (const auto& m : d.at("morphisms"))
          gc.diagram.arrows.push_back({str_of(field(m, "from", where), where),
                                       str_of(field(m, "to", where), where),
                                       morphism_from_json(field(m, "map", where), where)});
      gc.formula = parse_formula(str_of(field(c, "formula", where), where));
      f.constraints[name] = std::move(gc);
    }

  if (j.contains("acs"))
    for (const auto& [name, a] : j.at("acs").items()) {
      std::string where = "condition '" + name + "'";
      AcSpec spec;
      spec.rule = str_of(field(a, "rule", where), where);
      spec.constraint = str_of(field(a, "constraint", where), where);
      if (a.contains("l_var")) spec.l_var = str_of(a.at("l_var"), where);
      if (a.contains("n_var")) spec.n_var = str_of(a.at("n_var"), where);
      f.acs[name] = std::move(spec);
    }

  if (j.contains("sequences"))
    for (const auto& [name, s] : j.at("sequences").items()) {
      std::string where = "sequence '" + name + "'";
      SeqSpec spec;
      for (const auto& r : field(s, "rules", where)) spec.rules.push_back(str_of(r, where));
      if (s.contains("links"))
        for (const auto& l : s.at("links")) {
          Link x;
          x.kind = link_kind(str_of(field(l, "kind", where), where), where);
          x.a = slot_from_json(field(l, "a", where), where);
          if (x.kind == Link::Kind::Anchor)
            x.host = str_of(field(l, "host", where), where);
          else
            x.b = slot_from_json(field(l, "b", where), where);
          spec.links.push_back(std::move(x));
        }
      f.sequences[name] = std::move(spec);
    }
  return f;
}

Json grammar_to_json(const GrammarFile& f) {
  Json j;
  j["types"] = f.types;
  j["graphs"] = Json::object();
  for (const auto& [name, g] : f.graphs) j["graphs"][name] = graph_to_json(g);
  j["rules"] = Json::object();
  for (const auto& [name, r] : f.rules) {
    Json x{{"lhs", graph_to_json(r.lhs)}, {"rhs", graph_to_json(r.rhs)}};
    Morphism def = default_map(r.lhs, r.rhs);
    Json map = Json::object();
    for (const auto& [k, v] : def.nodes)
      if (!r.map.defined(k)) map[k] = nullptr;
    for (const auto& [k, v] : r.map.nodes)
      if (def(k) != v) map[k] = v;
    if (!map.empty()) x["map"] = std::move(map);
    j["rules"][name] = std::move(x);
  }
  j["constraints"] = Json::object();
  for (const auto& [name, c] : f.constraints) {
    Json graphs = Json::object();
    for (const auto& [var, g] : c.diagram.graphs) graphs[var] = graph_to_json(g);
    Json arrows = Json::array();
    for (const auto& a : c.diagram.arrows)
      arrows.push_back({{"from", a.from}, {"to", a.to}, {"map", morphism_to_json(a.map)}});
    j["constraints"][name] = {{"diagram", {{"graphs", graphs}, {"morphisms", arrows}}},
                              {"formula", to_string(c.formula)}};
  }
  j["acs"] = Json::object();
  for (const auto& [name, a] : f.acs)
    j["acs"][name] = {
        {"rule", a.rule}, {"constraint", a.constraint}, {"l_var", a.l_var}, {"n_var", a.n_var}};
  j["sequences"] = Json::object();
  for (const auto& [name, s] : f.sequences) {
    Json links = Json::array();
    for (const auto& l : s.links) {
      Json x{{"kind", link_name(l.kind)}, {"a", {l.a.rule, l.a.slot}}};
      if (l.kind == Link::Kind::Anchor)
        x["host"] = l.host;
      else
        x["b"] = {l.b.rule, l.b.slot};
      links.push_back(std::move(x));
    }
    j["sequences"][name] = {{"rules", s.rules}, {"links", links}};
  }
  return j;
}

const TypedDigraph& GrammarFile::graph(const std::string& name) const {
  auto it = graphs.find(name);
  if (it == graphs.end()) bad("no graph named '" + name + "'");
  return it->second;
}

Production GrammarFile::rule(const std::string& name) const {
  auto it = rules.find(name);
  if (it == rules.end()) bad("no rule named '" + name + "'");
  return from_static(name, it->second.lhs, it->second.rhs, it->second.map);
}

AppCondition GrammarFile::ac(const std::string& name) const {
  auto it = acs.find(name);
  if (it == acs.end()) bad("no condition named '" + name + "'");
  auto c = constraints.find(it->second.constraint);
  if (c == constraints.end()) bad("no constraint named '" + it->second.constraint + "'");
  return make_ac(rule(it->second.rule), c->second.diagram, c->second.formula, it->second.l_var,
                 it->second.n_var);
}

RuleSequence GrammarFile::sequence(const std::string& name) const {
  auto it = sequences.find(name);
  if (it == sequences.end()) bad("no sequence named '" + name + "'");
  RuleSequence s;
  for (const auto& r : it->second.rules) s.add(rule(r));
  s.links = it->second.links;
  s.validate();
  return s;
}

void GrammarFile::validate() const {
  std::set<std::string> declared(types.begin(), types.end());
  auto check_graph = [&](const TypedDigraph& g, const std::string& where) {
    if (!declared.empty())
      for (const auto& n : g.present_nodes())
        if (!declared.count(n.type)) bad(where + ": undeclared type '" + n.type + "'");
    if (!compatibility_check(g).compatible()) bad(where + ": graph has dangling edges");
  };
  for (const auto& [name, g] : graphs) check_graph(g, "graph '" + name + "'");
  for (const auto& [name, r] : rules) {
    check_graph(r.lhs, "rule '" + name + "' lhs");
    check_graph(r.rhs, "rule '" + name + "' rhs");
    rule(name);
  }
  std::set<std::string> used_by_ac;
  for (const auto& [name, a] : acs) {
    ac(name);
    used_by_ac.insert(a.constraint);
  }
  for (const auto& [name, c] : constraints) {
    for (const auto& [var, g] : c.diagram.graphs)
      check_graph(g, "constraint '" + name + "' graph '" + var + "'");
    if (!used_by_ac.count(name)) c.validate();
  }
  for (const auto& [name, s] : sequences) sequence(name);
}

namespace {

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

GrammarFile load_grammar(const std::string& path) {
  try {
    return grammar_from_json(read_json(path));
  } catch (const Json::exception& e) {
    bad("'" + path + "': " + e.what());
  }
}

TypedDigraph load_graph(const std::string& path) {
  try {
    return graph_from_json(read_json(path));
  } catch (const Json::exception& e) {
    bad("'" + path + "': " + e.what());
  }
}

Json sequence_to_json(const RuleSequence& s) {
  static const char* roles[] = {"plain", "identity", "conj-add", "conj-del", "domain"};
  Json rules = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Production& p = s.rules[i];
    rules.push_back({{"name", p.name},
                     {"role", roles[static_cast<int>(s.roles[i])]},
                     {"lhs", graph_to_json(p.lhs())},
                     {"rhs", graph_to_json(p.rhs())}});
  }
  Json links = Json::array();
  for (const auto& l : s.links) {
    Json x{{"kind", link_name(l.kind)}, {"a", {l.a.rule, l.a.slot}}};
    if (l.kind == Link::Kind::Anchor)
      x["host"] = l.host;
    else
      x["b"] = {l.b.rule, l.b.slot};
    links.push_back(std::move(x));
  }
  return {{"text", s.str()}, {"tags", s.tags}, {"rules", rules}, {"links", links}};
}

Json report_to_json(const SequenceReport& r) {
  Json conflicts = Json::array();
  for (const auto& c : r.conflicts) {
    Json x{{"kind", conflict_name(c.kind)}, {"rule", c.rule}};
    if (c.is_edge)
      x["edge"] = {{"src", c.src}, {"dst", c.dst}, {"src_type", c.src_type}, {"dst_type", c.dst_type}};
    else
      x["node"] = {{"id", c.src}, {"type", c.src_type}};
    conflicts.push_back(std::move(x));
  }
  return {{"coherent", r.coherent},
          {"compatible", r.compatible},
          {"mid", graph_to_json(r.mid)},
          {"nid", graph_to_json(r.nid)},
          {"context", graph_to_json(r.context)},
          {"conflicts", conflicts}};
}

Json trace_to_json(const ReductionTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back({{"op", op_name(s.op)}, {"var", s.var}, {"count", s.count}});
  Json census = Json::object();
  for (const auto& [k, v] : t.census) census[k] = v;
  return {{"steps", steps}, {"formula", to_string(t.result.formula)}, {"census", census}};
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void dot_body(std::ostringstream& o, const TypedDigraph& g, const std::string& prefix,
              const std::string& indent, bool negative) {
  for (const auto& n : g.present_nodes()) {
    bool mark = n.type.rfind(kMarkType, 0) == 0;
    o << indent << quoted(prefix + n.id) << " [label=" << quoted(n.id + ":" + n.type)
      << (mark ? ", shape=diamond" : "") << "];\n";
  }
  for (const auto& [a, b] : g.edge_ids())
    o << indent << quoted(prefix + a) << " -> " << quoted(prefix + b)
      << (negative ? " [style=dashed]" : "") << ";\n";
}

}  // namespace

std::string to_dot(const TypedDigraph& g, const std::string& name, bool negative) {
  std::ostringstream o;
  o << "digraph " << quoted(name) << " {\n";
  dot_body(o, g, "", "  ", negative);
  o << "}\n";
  return o.str();
}

std::string rule_to_dot(const Production& p) {
  std::ostringstream o;
  o << "digraph " << quoted(p.name) << " {\n";
  struct Part {
    const char* key;
    TypedDigraph g;
    bool negative;
  };
  Part parts[] = {{"L", p.lhs(), false}, {"R", p.rhs(), false}, {"N", p.nihilation_graph(), true}};
  for (const auto& part : parts) {
    o << "  subgraph " << quoted(std::string("cluster_") + part.key) << " {\n";
    o << "    label=" << quoted(part.key) << ";\n";
    dot_body(o, part.g, std::string(part.key) + ".", "    ", part.negative);
    o << "  }\n";
  }
  o << "}\n";
  return o.str();
}

}  // namespace mgg

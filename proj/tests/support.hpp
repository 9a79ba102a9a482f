#pragma once

#include <random>
#include <string>
#include <vector>

#include "mgg/io.hpp"

namespace mgg::testing {

inline GrammarFile factory() { return load_grammar(std::string(MGG_DATA_DIR) + "/factory.json"); }

// Seeded generators shared by the unit tests and the acceptance run.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  std::string type() { return types_[uniform(0, types_.size() - 1)]; }

  TypedDigraph graph(std::size_t n, double p_edge, const std::string& prefix = "n") {
    TypedDigraph g;
    for (std::size_t i = 0; i < n; ++i) g.add_node(prefix + std::to_string(i), type());
    add_edges(g, p_edge);
    return g;
  }

  void add_edges(TypedDigraph& g, double p_edge) {
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        if (coin(p_edge)) g.set_edge(i, j, true);
  }

  // Connected with at least one edge.
  TypedDigraph connected(std::size_t n, double p_extra, const std::string& prefix = "a") {
    for (;;) {
      TypedDigraph g;
      for (std::size_t i = 0; i < n; ++i) g.add_node(prefix + std::to_string(i), type());
      for (std::size_t i = 1; i < n; ++i) {
        std::size_t j = uniform(0, i - 1);
        if (coin())
          g.set_edge(i, j, true);
        else
          g.set_edge(j, i, true);
      }
      add_edges(g, p_extra);
      if (g.edge_count() > 0 && connected_with_edge(g)) return g;
    }
  }

  // Slots s0..s(n-1); each is in L, in R or in both, shared ids identified.
  Production rule(std::size_t max_nodes, const std::string& name = "p") {
    std::size_t n = uniform(1, max_nodes);
    std::vector<Node> slots;
    for (std::size_t i = 0; i < n; ++i) slots.push_back({"s" + std::to_string(i), type()});
    TypedDigraph l, r;
    Morphism f;
    for (const auto& s : slots) {
      int where = static_cast<int>(uniform(0, 3));  // 0 L only, 1 R only, 2-3 both
      if (where != 1) l.add_node(s.id, s.type);
      if (where != 0) r.add_node(s.id, s.type);
      if (where >= 2) f.nodes[s.id] = s.id;
    }
    add_edges(l, 0.3);
    add_edges(r, 0.3);
    return from_static(name, l, r, f);
  }

  // A rule that always keeps at least one node of L.
  Production rule_with_lhs(std::size_t max_nodes, const std::string& name = "p") {
    for (;;) {
      Production p = rule(max_nodes, name);
      if (p.lhs().node_count() > 0) return p;
    }
  }

  // Partial injective type-preserving map from a into b.
  Morphism partial_map(const TypedDigraph& a, const TypedDigraph& b, double p_map = 0.6) {
    Morphism m;
    std::vector<bool> used(b.size(), false);
    for (const auto& n : a.present_nodes()) {
      if (!coin(p_map)) continue;
      std::vector<std::size_t> options;
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!used[j] && b.is_present(j) && b.node(j).type == n.type) options.push_back(j);
      if (options.empty()) continue;
      std::size_t j = options[uniform(0, options.size() - 1)];
      used[j] = true;
      m.nodes[n.id] = b.node(j).id;
    }
    return m;
  }

  Formula atom(const std::vector<std::string>& vars, const Diagram& d) {
    for (;;) {
      const std::string& v = vars[uniform(0, vars.size() - 1)];
      Target t = coin(0.3) ? Target::NegHost : Target::Host;
      switch (uniform(0, 3)) {
        case 0:
        case 1:
          return f_P(v, t);
        case 2:
          if (connected_with_edge(d.graph(v))) return f_Q(v, t);
          break;
        default:
          if (vars.size() > 1) {
            const std::string& w = vars[uniform(0, vars.size() - 1)];
            if (w != v) return f_PU(v, w);
          }
      }
    }
  }

  Formula body(const std::vector<std::string>& vars, const Diagram& d, int depth) {
    if (depth == 0 || coin(0.35)) return coin(0.2) ? f_not(atom(vars, d)) : atom(vars, d);
    switch (uniform(0, 3)) {
      case 0:
        return f_and({body(vars, d, depth - 1), body(vars, d, depth - 1)});
      case 1:
        return f_or({body(vars, d, depth - 1), body(vars, d, depth - 1)});
      case 2:
        return f_implies(body(vars, d, depth - 1), body(vars, d, depth - 1));
      default:
        return f_not(body(vars, d, depth - 1));
    }
  }

  Quant quant() {
    static const Quant qs[] = {Quant::Exists, Quant::Forall, Quant::NExists, Quant::NForall};
    return qs[uniform(0, 3)];
  }

  // One to three graphs of at most three nodes, arrows along a chain.
  GraphConstraint constraint() {
    GraphConstraint gc;
    std::size_t k = uniform(1, 3);
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < k; ++i) {
      std::string v = std::string(1, static_cast<char>('A' + i));
      vars.push_back(v);
      gc.diagram.graphs[v] = coin(0.6) ? connected(uniform(1, 3), 0.2, "x") : graph(uniform(1, 3), 0.3, "x");
      if (gc.diagram.graphs[v].size() == 1 && coin()) gc.diagram.graphs[v].set_edge(0, 0, true);
      if (i > 0 && coin(0.7)) {
        const std::string& prev = vars[i - 1];
        gc.diagram.arrows.push_back(
            {prev, v, partial_map(gc.diagram.graphs[prev], gc.diagram.graphs[v])});
      }
    }
    Formula f = body(vars, gc.diagram, 2);
    for (std::size_t i = k; i-- > 0;) f = f_quant(quant(), vars[i], std::move(f));
    gc.formula = f;
    return gc;
  }

  TypedDigraph host(std::size_t max_nodes = 6, double p_edge = 0.3) {
    return graph(uniform(1, max_nodes), p_edge, "h");
  }

 private:
  std::mt19937 rng_;
  std::vector<std::string> types_{"T", "U"};
};

// The condition of one of the four basic shapes over a single graph A with d : L -> A.
inline AppCondition basic_condition(const Production& p, const TypedDigraph& a, const Morphism& d,
                                    int shape) {
  Diagram dg;
  dg.graphs["A"] = a;
  dg.arrows.push_back({"L", "A", d});
  Formula f;
  switch (shape) {
    case 0: f = f_quant(Quant::Exists, "A", f_P("A")); break;
    case 1: f = f_quant(Quant::Exists, "A", f_not(f_P("A"))); break;
    case 2: f = f_quant(Quant::Forall, "A", f_P("A")); break;
    default: f = f_quant(Quant::NExists, "A", f_P("A")); break;
  }
  return make_ac(p, dg, f);
}

inline const char* shape_name(int shape) {
  static const char* names[] = {"exists A [A]", "exists A [!A]", "forall A [A]", "nexists A [A]"};
  return names[shape];
}

// The compiler matching each shape.
inline SequenceSet compile_shape(const Production& p, const TypedDigraph& a, const Morphism& d,
                                 const TypedDigraph& g, int shape) {
  switch (shape) {
    case 0: return {{compile_match(p, a, d)}};
    case 1: return compile_decomp(p, a, d, g);
    case 2: return compile_closure(p, a, d, g);
    default: return compile_nac(p, a, d, g);
  }
}

// A graph A for a basic condition on p: some nodes of L are copied in (that is d),
// plus fresh nodes, with random edges. Shape 1 needs a connected graph with an edge.
inline std::pair<TypedDigraph, Morphism> condition_graph(Gen& gen, const Production& p, int shape) {
  for (;;) {
    TypedDigraph a;
    Morphism d;
    for (const auto& n : p.lhs().present_nodes())
      if (gen.coin(0.5)) {
        a.add_node("d" + n.id, n.type);
        d.nodes[n.id] = "d" + n.id;
      }
    std::size_t extra = gen.uniform(a.size() == 0 ? 1 : 0, 2);
    for (std::size_t i = 0; i < extra; ++i) a.add_node("f" + std::to_string(i), gen.type());
    gen.add_edges(a, 0.35);
    if (shape == 1 && !connected_with_edge(a)) continue;
    return {a, d};
  }
}

}  // namespace mgg::testing

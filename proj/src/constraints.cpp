#include "mgg/constraints.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "mgg/derivation.hpp"
#include "mgg/errors.hpp"

namespace mgg {

void GraphConstraint::validate() const {
  diagram.validate();
  if (!check_commuting(diagram)) throw MorphismError("diagram does not commute");
  for (const auto& v : bound_vars(formula))
    if (!diagram.has(v)) throw InputError("formula quantifies undeclared graph '" + v + "'");
  for (const auto& v : atom_vars(formula))
    if (!diagram.has(v)) throw InputError("formula uses undeclared graph '" + v + "'");
}

namespace {

Formula strip_leading(Formula f, const std::set<std::string>& vars) {
  while (f.kind == Formula::Kind::Quant && f.quant == Quant::Exists && !f.anchor &&
         vars.count(f.var))
    f = std::move(f.kids[0]);
  return f;
}

}  // namespace

AppCondition make_ac(const Production& p, Diagram d, Formula f, const std::string& l_var,
                     const std::string& n_var) {
  for (const auto& ar : d.arrows)
    if (ar.to == l_var || ar.to == n_var)
      throw InputError("no diagram morphism may have codomain " + ar.to);
  d.graphs[l_var] = p.lhs();
  d.graphs[n_var] = p.nihilation_graph();
  AppCondition ac;
  ac.rule = p;
  ac.l_var = l_var;
  ac.n_var = n_var;
  ac.gc.diagram = std::move(d);
  ac.gc.formula = strip_leading(std::move(f), {l_var, n_var});
  ac.gc.validate();
  return ac;
}

std::vector<Binding> domain(const TypedDigraph& a, const TypedDigraph& g) {
  auto types = g.types();
  std::vector<std::string> keep;
  for (const auto& n : a.present_nodes())
    if (types.count(n.type)) keep.push_back(n.id);
  TypedDigraph ar = a.induced(keep);
  std::vector<Binding> out;
  InjectionQuery q;
  q.edges = false;
  for_each_injection(ar, g, q, [&](const Morphism& f) {
    out.push_back(f);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Edge of a present in g under m; an unmapped endpoint means absent.
bool edge_present(const Binding& m, const TypedDigraph& g, const std::string& x,
                  const std::string& y) {
  auto fx = m(x), fy = m(y);
  return fx && fy && g.has_edge(*fx, *fy);
}

}  // namespace

bool eval_P(const TypedDigraph& a, const Binding& m, const TypedDigraph& g, Target t) {
  if (t == Target::Host) {
    for (const auto& n : a.present_nodes())
      if (!m.defined(n.id)) return false;
    for (const auto& [x, y] : a.edge_ids())
      if (!edge_present(m, g, x, y)) return false;
    return true;
  }
  for (const auto& [x, y] : a.edge_ids())
    if (edge_present(m, g, x, y)) return false;
  return true;
}

bool connected_with_edge(const TypedDigraph& a) {
  auto nodes = a.present_nodes();
  if (nodes.empty() || a.edge_count() == 0) return false;
  std::set<std::string> seen{nodes[0].id};
  std::vector<std::string> stack{nodes[0].id};
  auto edges = a.edge_ids();
  while (!stack.empty()) {
    std::string n = stack.back();
    stack.pop_back();
    for (const auto& [x, y] : edges) {
      if (x == n && seen.insert(y).second) stack.push_back(y);
      if (y == n && seen.insert(x).second) stack.push_back(x);
    }
  }
  return seen.size() == nodes.size();
}

bool eval_Q(const TypedDigraph& a, const Binding& m, const TypedDigraph& g, Target t) {
  if (!connected_with_edge(a))
    throw ShapeError("Q needs a connected graph with at least one edge");
  for (const auto& [x, y] : a.edge_ids())
    if (edge_present(m, g, x, y) == (t == Target::Host)) return true;
  return false;
}

bool eval_PU(const TypedDigraph& a, const TypedDigraph& b, const Binding& ma, const Binding& mb,
             const Relation& rel) {
  std::set<std::pair<std::string, std::string>> r(rel.begin(), rel.end());
  for (const auto& x : a.present_nodes())
    for (const auto& y : b.present_nodes()) {
      auto fx = ma(x.id), fy = mb(y.id);
      if (r.count({x.id, y.id})) {
        if (fx != fy) return false;
      } else if (fx && fy && *fx == *fy) {
        return false;
      }
    }
  return true;
}

Relation pu_relation(const Diagram& d, const Formula& atom) {
  if (atom.relation) return *atom.relation;
  for (const auto& ar : d.arrows) {
    if (ar.from == atom.var && ar.to == atom.var2)
      return Relation(ar.map.nodes.begin(), ar.map.nodes.end());
    if (ar.from == atom.var2 && ar.to == atom.var) {
      Relation r;
      for (const auto& [k, v] : ar.map.nodes) r.emplace_back(v, k);
      return r;
    }
  }
  return {};
}

bool consistent(const Diagram& d, const std::string& var, const Binding& m, const Env& env) {
  for (const auto& ar : d.arrows) {
    bool out = ar.from == var, in = ar.to == var;
    if (!out && !in) continue;
    const std::string& other = out ? ar.to : ar.from;
    if (other == var) continue;
    auto it = env.find(other);
    if (it == env.end()) continue;
    for (const auto& [x, y] : ar.map.nodes) {
      auto mine = out ? m(x) : m(y);
      auto theirs = out ? it->second(y) : it->second(x);
      if (mine != theirs) return false;
    }
  }
  return true;
}

namespace {

struct Evaluator {
  const TypedDigraph& g;
  const Diagram& d;

  std::vector<Binding> candidates(const Formula& f, const Env& env) const {
    std::vector<Binding> out;
    if (f.anchor) {
      if (consistent(d, f.var, *f.anchor, env)) out.push_back(*f.anchor);
      return out;
    }
    for (auto& m : domain(d.graph(f.var), g))
      if (consistent(d, f.var, m, env)) out.push_back(std::move(m));
    return out;
  }

  const Binding& bound(const std::string& v, const Env& env) const {
    auto it = env.find(v);
    if (it == env.end()) throw InputError("graph '" + v + "' is used outside its quantifier");
    return it->second;
  }

  bool eval(const Formula& f, const Env& env, Env* wit) const {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::True: return true;
      case K::False: return false;
      case K::P: return eval_P(d.graph(f.var), bound(f.var, env), g, f.target);
      case K::Q: return eval_Q(d.graph(f.var), bound(f.var, env), g, f.target);
      case K::PU:
        return eval_PU(d.graph(f.var), d.graph(f.var2), bound(f.var, env), bound(f.var2, env),
                       pu_relation(d, f));
      case K::Not: return !eval(f.kids[0], env, nullptr);
      case K::And: {
        Env w;
        for (const auto& k : f.kids)
          if (!eval(k, env, wit ? &w : nullptr)) return false;
        if (wit) wit->insert(w.begin(), w.end());
        return true;
      }
      case K::Or:
        for (const auto& k : f.kids) {
          Env w;
          if (eval(k, env, wit ? &w : nullptr)) {
            if (wit) wit->insert(w.begin(), w.end());
            return true;
          }
        }
        return false;
      case K::Implies:
        if (!eval(f.kids[0], env, nullptr)) return true;
        return eval(f.kids[1], env, wit);
      case K::Quant: {
        Env inner = env;
        for (const auto& m : candidates(f, env)) {
          inner[f.var] = m;
          Env w;
          bool b = eval(f.kids[0], inner, f.quant == Quant::Exists ? &w : nullptr);
          switch (f.quant) {
            case Quant::Exists:
              if (b) {
                if (wit) {
                  (*wit)[f.var] = m;
                  wit->insert(w.begin(), w.end());
                }
                return true;
              }
              break;
            case Quant::Forall:
              if (!b) return false;
              break;
            case Quant::NExists:
              if (b) return false;
              break;
            case Quant::NForall:
              if (!b) return true;
              break;
          }
        }
        return f.quant == Quant::Forall || f.quant == Quant::NExists;
      }
    }
    return false;
  }
};

}  // namespace

SatResult evaluate(const TypedDigraph& g, const Diagram& d, const Formula& f, const Env& env) {
  SatResult r;
  r.ok = Evaluator{g, d}.eval(f, env, &r.witness);
  if (!r.ok) r.witness.clear();
  return r;
}

SatResult satisfies(const TypedDigraph& g, const GraphConstraint& gc) {
  return evaluate(g, gc.diagram, gc.formula);
}

bool satisfies_ac(const TypedDigraph& g, const Morphism& mL, const AppCondition& ac) {
  const TypedDigraph& l = ac.gc.diagram.graph(ac.l_var);
  for (const auto& n : l.present_nodes()) {
    auto t = mL(n.id);
    if (!t) throw MatchError("match is not total on '" + n.id + "'");
    int h = g.index_of(*t);
    if (h < 0 || !g.is_present(h) || g.node(h).type != n.type)
      throw MatchError("match sends '" + n.id + "' outside the host");
  }
  if (!eval_P(l, mL, g, Target::Host)) throw MatchError("match misses an edge of the LHS");
  if (!eval_P(ac.gc.diagram.graph(ac.n_var), mL, g, Target::NegHost)) return false;
  Env env{{ac.l_var, mL}, {ac.n_var, mL}};
  return evaluate(g, ac.gc.diagram, ac.gc.formula, env).ok;
}

bool conditioned_applicable(const AppCondition& ac, const TypedDigraph& g) {
  for (const auto& m : find_matches(ac.rule, g))
    if (satisfies_ac(g, m.mL, ac)) return true;
  return false;
}

std::pair<std::size_t, std::size_t> outer_census(const TypedDigraph& g, const GraphConstraint& gc) {
  const Formula& f = gc.formula;
  if (f.kind != Formula::Kind::Quant) return {evaluate(g, gc.diagram, f).ok ? 1 : 0, 1};
  Evaluator ev{g, gc.diagram};
  auto cands = ev.candidates(f, {});
  std::size_t good = 0;
  for (const auto& m : cands)
    if (ev.eval(f.kids[0], Env{{f.var, m}}, nullptr)) ++good;
  return {good, cands.size()};
}

}  // namespace mgg

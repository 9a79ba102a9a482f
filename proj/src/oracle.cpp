#include "mgg/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "mgg/errors.hpp"

namespace mgg {

OracleBudget OracleBudget::from_env() {
  OracleBudget b;
  if (const char* s = std::getenv("MGG_BUDGET")) {
    std::string v(s);
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream in(v);
    std::size_t n = 0, l = 0;
    if (in >> n) b.max_nodes = n;
    if (in >> l) b.max_seq_len = l;
  }
  return b;
}

namespace {

// Plain set-based graph.
struct OGraph {
  std::map<std::string, std::string> type;  // present nodes only
  std::set<std::pair<std::string, std::string>> edges;
};

OGraph to_ograph(const TypedDigraph& g) {
  OGraph o;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.is_present(i)) o.type[g.node(i).id] = g.node(i).type;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g.edge(i, j) && g.is_present(i) && g.is_present(j))
        o.edges.insert({g.node(i).id, g.node(j).id});
  return o;
}

using Map = std::map<std::string, std::string>;

void check_budget(std::size_t n, const OracleBudget& b) {
  if (n > b.max_nodes)
    throw BudgetError("oracle budget of " + std::to_string(b.max_nodes) + " nodes exceeded (" +
                      std::to_string(n) + ")");
}

// All injective maps from the given pattern nodes into the host's nodes,
// keeping only the type-preserving ones.
std::vector<Map> all_injections(const std::vector<std::pair<std::string, std::string>>& pattern,
                                const OGraph& host) {
  std::vector<std::pair<std::string, std::string>> hs(host.type.begin(), host.type.end());
  std::vector<Map> out;
  std::vector<bool> used(hs.size());
  Map cur;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == pattern.size()) {
      bool typed = true;
      for (const auto& [x, t] : pattern)
        if (host.type.at(cur[x]) != t) typed = false;
      if (typed) out.push_back(cur);
      return;
    }
    for (std::size_t h = 0; h < hs.size(); ++h) {
      if (used[h]) continue;
      used[h] = true;
      cur[pattern[k].first] = hs[h].first;
      rec(k + 1);
      cur.erase(pattern[k].first);
      used[h] = false;
    }
  };
  rec(0);
  return out;
}

bool all_edges_in(const OGraph& a, const Map& m, const OGraph& g) {
  for (const auto& [x, y] : a.edges) {
    auto ix = m.find(x), iy = m.find(y);
    if (ix == m.end() || iy == m.end() || !g.edges.count({ix->second, iy->second})) return false;
  }
  return true;
}

Morphism to_morphism(const Map& m) { return Morphism{m}; }

// ---- constraint evaluation ----

struct OEval {
  OGraph g;
  const Diagram& d;
  const OracleBudget& b;
  std::map<std::string, OGraph> graphs;

  OEval(const TypedDigraph& host, const Diagram& dia, const OracleBudget& bud)
      : g(to_ograph(host)), d(dia), b(bud) {
    check_budget(g.type.size(), b);
    for (const auto& [v, gr] : d.graphs) graphs[v] = to_ograph(gr);
  }

  // candidates: every injective typed map of the nodes whose type the host has
  std::vector<Map> occurrences(const std::string& var) {
    std::set<std::string> host_types;
    for (const auto& [id, t] : g.type) host_types.insert(t);
    std::vector<std::pair<std::string, std::string>> pat;
    for (const auto& [id, t] : graphs.at(var).type)
      if (host_types.count(t)) pat.emplace_back(id, t);
    check_budget(pat.size(), b);
    return all_injections(pat, g);
  }

  static std::optional<std::string> at(const Map& m, const std::string& k) {
    auto it = m.find(k);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }

  bool respects_diagram(const std::string& var, const Map& m, const std::map<std::string, Map>& env) {
    for (const auto& ar : d.arrows) {
      if (ar.from == var && ar.to != var && env.count(ar.to)) {
        for (const auto& [x, y] : ar.map.nodes)
          if (at(m, x) != at(env.at(ar.to), y)) return false;
      }
      if (ar.to == var && ar.from != var && env.count(ar.from)) {
        for (const auto& [x, y] : ar.map.nodes)
          if (at(env.at(ar.from), x) != at(m, y)) return false;
      }
    }
    return true;
  }

  bool edge_in_host(const Map& m, const std::pair<std::string, std::string>& e) {
    auto x = at(m, e.first), y = at(m, e.second);
    return x && y && g.edges.count({*x, *y});
  }

  bool atom_P(const std::string& var, const Map& m, Target t) {
    const OGraph& a = graphs.at(var);
    if (t == Target::Host) {
      for (const auto& [id, ty] : a.type)
        if (!m.count(id)) return false;
      for (const auto& e : a.edges)
        if (!edge_in_host(m, e)) return false;
      return true;
    }
    for (const auto& e : a.edges)
      if (edge_in_host(m, e)) return false;
    return true;
  }

  bool atom_Q(const std::string& var, const Map& m, Target t) {
    const OGraph& a = graphs.at(var);
    if (a.edges.empty()) throw ShapeError("Q on an edgeless graph");
    // weakly connected
    std::set<std::string> seen{a.type.begin()->first};
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& [x, y] : a.edges)
        if (seen.count(x) != seen.count(y)) {
          seen.insert(x);
          seen.insert(y);
          grew = true;
        }
    }
    if (seen.size() != a.type.size()) throw ShapeError("Q on a disconnected graph");
    for (const auto& e : a.edges)
      if (edge_in_host(m, e) == (t == Target::Host)) return true;
    return false;
  }

  bool atom_PU(const Formula& f, const std::map<std::string, Map>& env) {
    std::set<std::pair<std::string, std::string>> rel;
    if (f.relation) {
      rel.insert(f.relation->begin(), f.relation->end());
    } else {
      for (const auto& ar : d.arrows) {
        if (ar.from == f.var && ar.to == f.var2)
          for (const auto& [x, y] : ar.map.nodes) rel.insert({x, y});
        if (ar.from == f.var2 && ar.to == f.var)
          for (const auto& [x, y] : ar.map.nodes) rel.insert({y, x});
        if (!rel.empty()) break;
      }
    }
    const Map& ma = env.at(f.var);
    const Map& mb = env.at(f.var2);
    for (const auto& [x, tx] : graphs.at(f.var).type)
      for (const auto& [y, ty] : graphs.at(f.var2).type) {
        auto ix = at(ma, x), iy = at(mb, y);
        bool same = ix && iy && *ix == *iy;
        if (rel.count({x, y}) ? !(ix == iy) : same) return false;
      }
    return true;
  }

  bool eval(const Formula& f, const std::map<std::string, Map>& env) {
    switch (f.kind) {
      case Formula::Kind::True: return true;
      case Formula::Kind::False: return false;
      case Formula::Kind::P: return atom_P(f.var, env.at(f.var), f.target);
      case Formula::Kind::Q: return atom_Q(f.var, env.at(f.var), f.target);
      case Formula::Kind::PU: return atom_PU(f, env);
      case Formula::Kind::Not: return !eval(f.kids[0], env);
      case Formula::Kind::And: {
        bool r = true;
        for (const auto& k : f.kids) r = eval(k, env) && r;
        return r;
      }
      case Formula::Kind::Or: {
        bool r = false;
        for (const auto& k : f.kids) r = eval(k, env) || r;
        return r;
      }
      case Formula::Kind::Implies: return !eval(f.kids[0], env) || eval(f.kids[1], env);
      case Formula::Kind::Quant: {
        std::vector<Map> dom;
        if (f.anchor)
          dom.push_back(f.anchor->nodes);
        else
          dom = occurrences(f.var);
        std::size_t total = 0, good = 0;
        for (const auto& m : dom) {
          if (!respects_diagram(f.var, m, env)) continue;
          auto inner = env;
          inner[f.var] = m;
          ++total;
          if (eval(f.kids[0], inner)) ++good;
        }
        switch (f.quant) {
          case Quant::Exists: return good > 0;
          case Quant::Forall: return good == total;
          case Quant::NExists: return good == 0;
          case Quant::NForall: return good < total;
        }
      }
    }
    return false;
  }
};

}  // namespace

std::vector<Morphism> oracle_morphisms(const TypedDigraph& a, const TypedDigraph& g, MorphKind k,
                                       const OracleBudget& b) {
  OGraph oa = to_ograph(a), og = to_ograph(g);
  check_budget(oa.type.size(), b);
  check_budget(og.type.size(), b);
  std::vector<std::pair<std::string, std::string>> pat(oa.type.begin(), oa.type.end());
  std::vector<Morphism> out;
  for (const auto& m : all_injections(pat, og)) {
    bool tot = all_edges_in(oa, m, og);
    bool keep = false;
    switch (k) {
      case MorphKind::ParMax: keep = true; break;
      case MorphKind::Tot: keep = tot; break;
      case MorphKind::Iso:
        keep = tot && oa.type.size() == og.type.size() && oa.edges.size() == og.edges.size();
        break;
    }
    if (keep) out.push_back(to_morphism(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool oracle_satisfies(const TypedDigraph& g, const GraphConstraint& gc, const OracleBudget& b) {
  OEval ev(g, gc.diagram, b);
  return ev.eval(gc.formula, {});
}

namespace {

bool ne_clear(const Production& p, const Map& m, const OGraph& g) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (!p.NE.get(i, j) || !p.in_lhs(i) || !p.in_lhs(j)) continue;
      if (g.edges.count({m.at(p.slots()[i].id), m.at(p.slots()[j].id)})) return false;
    }
  return true;
}

std::vector<Map> lhs_matches(const Production& p, const OGraph& g, const OracleBudget& b) {
  OGraph l = to_ograph(p.L);
  check_budget(l.type.size(), b);
  std::vector<std::pair<std::string, std::string>> pat(l.type.begin(), l.type.end());
  std::vector<Map> out;
  for (const auto& m : all_injections(pat, g))
    if (all_edges_in(l, m, g) && ne_clear(p, m, g)) out.push_back(m);
  return out;
}

}  // namespace

bool oracle_conditioned(const AppCondition& ac, const TypedDigraph& g, const OracleBudget& b) {
  OGraph og = to_ograph(g);
  check_budget(og.type.size(), b);
  OEval ev(g, ac.gc.diagram, b);
  for (const auto& m : lhs_matches(ac.rule, og, b)) {
    std::map<std::string, Map> env{{ac.l_var, m}, {ac.n_var, m}};
    if (ev.eval(ac.gc.formula, env)) return true;
  }
  return false;
}

std::vector<EdgeIds> oracle_dangling(const Production& p, const Morphism& mL,
                                     const TypedDigraph& g) {
  OGraph og = to_ograph(g);
  std::set<std::string> image, gone;
  for (const auto& [k, v] : mL.nodes) image.insert(v);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.in_lhs(i) && !p.in_rhs(i)) gone.insert(mL.nodes.at(p.slots()[i].id));
  std::vector<EdgeIds> out;
  for (const auto& [x, y] : og.edges)
    if ((gone.count(x) && !image.count(y)) || (gone.count(y) && !image.count(x)))
      out.emplace_back(x, y);
  return out;
}

bool oracle_applicable(const RuleSequence& s, const TypedDigraph& g, bool strict,
                       const OracleBudget& b) {
  if (s.size() > b.max_seq_len)
    throw BudgetError("oracle budget of " + std::to_string(b.max_seq_len) + " rules exceeded");
  OGraph start = to_ograph(g);
  check_budget(start.type.size(), b);
  std::set<std::string> ever;  // ids ever used, so fresh nodes never reuse one
  for (std::size_t i = 0; i < g.size(); ++i) ever.insert(g.node(i).id);

  // host id of every slot of every applied rule
  std::vector<Map> where(s.size());

  std::function<bool(std::size_t, const OGraph&, std::set<std::string>)> step =
      [&](std::size_t left, const OGraph& cur, std::set<std::string> used_ids) -> bool {
    if (left == 0) return true;
    std::size_t r = left - 1;
    const Production& p = s.rules[r];
    for (const auto& m : lhs_matches(p, cur, b)) {
      // links between this rule's L slots and already-applied rules
      bool ok = true;
      for (const auto& l : s.links) {
        if (l.kind == Link::Kind::Anchor) {
          if (l.a.rule == r && m.count(l.a.slot) && m.at(l.a.slot) != l.host) ok = false;
          continue;
        }
        const SlotRef* mine = l.a.rule == r ? &l.a : l.b.rule == r ? &l.b : nullptr;
        const SlotRef* other = mine == &l.a ? &l.b : &l.a;
        if (!mine || other->rule <= r || !m.count(mine->slot)) continue;
        auto it = where[other->rule].find(other->slot);
        if (it == where[other->rule].end()) continue;
        bool same = it->second == m.at(mine->slot);
        if ((l.kind == Link::Kind::Same) != same) ok = false;
      }
      if (!ok) continue;

      std::set<std::string> gone;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p.in_lhs(i) && !p.in_rhs(i)) gone.insert(m.at(p.slots()[i].id));
      std::set<std::string> image;
      for (const auto& [k, v] : m) image.insert(v);
      OGraph next = cur;
      bool dangling = false;
      for (const auto& [x, y] : cur.edges) {
        bool touches = gone.count(x) || gone.count(y);
        if (!touches) continue;
        bool external = (gone.count(x) && !image.count(y)) || (gone.count(y) && !image.count(x));
        if (external) dangling = true;
        next.edges.erase({x, y});
      }
      if (dangling && strict) continue;
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
          if (p.in_lhs(i) && p.in_lhs(j) && p.L.edge(i, j) && !p.R.edge(i, j))
            next.edges.erase({m.at(p.slots()[i].id), m.at(p.slots()[j].id)});
      for (const auto& id : gone) next.type.erase(id);
      Map full = m;
      auto ids = used_ids;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (!p.in_lhs(i) && p.in_rhs(i)) {
          std::string id = p.slots()[i].id;
          for (int k = 1; ids.count(id); ++k) id = p.slots()[i].id + "#" + std::to_string(k);
          ids.insert(id);
          next.type[id] = p.slots()[i].type;
          full[p.slots()[i].id] = id;
        }
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
          if (p.R.edge(i, j) && !(p.in_lhs(i) && p.in_lhs(j) && p.L.edge(i, j)))
            next.edges.insert({full.at(p.slots()[i].id), full.at(p.slots()[j].id)});
      // links naming new slots of this rule against applied rules
      for (const auto& l : s.links) {
        if (l.kind == Link::Kind::Anchor) continue;
        const SlotRef* mine = l.a.rule == r ? &l.a : l.b.rule == r ? &l.b : nullptr;
        const SlotRef* other = mine == &l.a ? &l.b : &l.a;
        if (!mine || other->rule <= r || m.count(mine->slot)) continue;
        auto it = where[other->rule].find(other->slot);
        if (it == where[other->rule].end()) continue;
        if ((l.kind == Link::Kind::Same) != (it->second == full.at(mine->slot))) ok = false;
      }
      if (!ok) continue;
      where[r] = full;
      if (step(r, next, ids)) return true;
    }
    where[r].clear();
    return false;
  };
  return step(s.size(), start, ever);
}

}  // namespace mgg

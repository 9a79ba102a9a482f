#include "mgg/derivation.hpp"

#include <algorithm>
#include <set>

#include "mgg/errors.hpp"
#include "mgg/matching.hpp"

namespace mgg {

std::vector<Match> find_matches(const Production& p, const TypedDigraph& g, const Morphism& fixed) {
  std::vector<Match> out;
  InjectionQuery q;
  q.fixed = fixed;
  const auto& s = p.slots();
  for_each_injection(p.L, g, q, [&](const Morphism& f) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p.in_lhs(i)) continue;
      const std::string& hi = *f(s[i].id);
      for (std::size_t j = 0; j < p.size(); ++j)
        if (p.in_lhs(j) && p.NE.get(i, j) && g.has_edge(hi, *f(s[j].id))) return true;
    }
    out.push_back({f});
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeIds> dangling_edges(const Production& p, const Match& m, const TypedDigraph& g) {
  std::set<std::string> image, deleted;
  for (const auto& [k, v] : m.mL.nodes) image.insert(v);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.deletes(i)) deleted.insert(*m.mL(p.slots()[i].id));
  std::vector<EdgeIds> out;
  for (const auto& [a, b] : g.edge_ids()) {
    bool hit = (deleted.count(a) && !image.count(b)) || (deleted.count(b) && !image.count(a));
    if (hit) out.emplace_back(a, b);
  }
  return out;
}

namespace {

std::string fresh_id(const TypedDigraph& h, const std::string& base) {
  if (!h.has_node(base)) return base;
  for (int k = 1;; ++k) {
    std::string id = base + "#" + std::to_string(k);
    if (!h.has_node(id)) return id;
  }
}

void check_match(const Production& p, const Match& m, const TypedDigraph& g) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p.in_lhs(i)) continue;
    auto t = m.mL(p.slots()[i].id);
    if (!t) throw MatchError("match is not total on '" + p.slots()[i].id + "'");
    int h = g.index_of(*t);
    if (h < 0 || !g.is_present(h)) throw MatchError("match target '" + *t + "' is not in the host");
  }
}

}  // namespace

DerivationResult direct_derive(const Production& p, const Match& m, const TypedDigraph& g) {
  check_match(p, m, g);
  auto dang = dangling_edges(p, m, g);
  if (!dang.empty()) {
    std::string msg = "rule '" + p.name + "' leaves dangling edges:";
    for (const auto& [a, b] : dang) msg += " (" + a + "," + b + ")";
    throw DanglingError(msg, dang);
  }
  const auto& s = p.slots();
  DerivationResult res;
  res.H = g;
  res.used = m;
  std::vector<std::string> host(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.in_lhs(i)) host[i] = *m.mL(s[i].id);

  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p.eE.get(i, j)) res.H.remove_edge(host[i], host[j]);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.deletes(i)) {
      // L-internal edges at a deleted node are either in e or forbidden by N
      int h = res.H.index_of(host[i]);
      for (std::size_t j = 0; j < res.H.size(); ++j) {
        res.H.set_edge(h, j, false);
        res.H.set_edge(j, h, false);
      }
      res.H.set_present(h, false);
    }
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.adds(i)) {
      host[i] = fresh_id(res.H, s[i].id);
      res.H.add_node(host[i], s[i].type);
    }
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p.rE.get(i, j)) res.H.add_edge(host[i], host[j]);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.in_rhs(i)) res.comatch.nodes[s[i].id] = host[i];
  return res;
}

Production epsilon_rule(const TypedDigraph& g, const std::vector<EdgeIds>& edges) {
  std::set<std::string> ids;
  for (const auto& [a, b] : edges) {
    ids.insert(a);
    ids.insert(b);
  }
  std::vector<std::string> order(ids.begin(), ids.end());
  TypedDigraph l = g.induced(order);
  TypedDigraph r = l;
  for (const auto& [a, b] : l.edge_ids()) {
    l.remove_edge(a, b);
    r.remove_edge(a, b);
  }
  for (const auto& [a, b] : edges) l.add_edge(a, b);
  Morphism f;
  for (const auto& id : order) f.nodes[id] = id;
  return from_static("epsilon", l, r, f);
}

DerivationResult derive_with_epsilon(const Production& p, const Match& m, const TypedDigraph& g) {
  check_match(p, m, g);
  auto dang = dangling_edges(p, m, g);
  Production eps = epsilon_rule(g, dang);
  TypedDigraph mid = g;
  if (!dang.empty()) {
    Match em;
    for (const auto& n : eps.slots()) em.mL.nodes[n.id] = n.id;
    mid = direct_derive(eps, em, g).H;
  }
  DerivationResult res = direct_derive(p, m, mid);
  res.epsilon = std::move(eps);
  return res;
}

// ---- RuleSequence ----

std::size_t RuleSequence::add(Production p, Role r) {
  rules.push_back(std::move(p));
  roles.push_back(r);
  return rules.size() - 1;
}

void RuleSequence::validate() const {
  auto check = [&](const SlotRef& s) {
    if (s.rule >= rules.size())
      throw CompletionError("link names rule " + std::to_string(s.rule) + " of " +
                            std::to_string(rules.size()));
    if (!rules[s.rule].L.has_node(s.slot))
      throw CompletionError("link names unknown slot '" + s.slot + "' of rule " +
                            std::to_string(s.rule));
  };
  if (roles.size() != rules.size()) throw CompletionError("every rule needs a role");
  for (const auto& l : links) {
    check(l.a);
    if (l.kind != Link::Kind::Anchor) check(l.b);
  }
}

std::string RuleSequence::str() const {
  std::string s;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i) s += "; ";
    s += rules[i].name;
  }
  return s.empty() ? "(empty)" : s;
}

namespace {

// identity map on the slots kept by p
Morphism kept(const Production& p) {
  Morphism f;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.in_lhs(i) && p.in_rhs(i)) f.nodes[p.slots()[i].id] = p.slots()[i].id;
  return f;
}

}  // namespace

RuleSequence mark(const RuleSequence& s) {
  s.validate();
  RuleSequence out;
  out.roles = s.roles;
  out.tags = s.tags;
  std::vector<TypedDigraph> ls, rs;
  std::vector<Morphism> fs;
  for (const auto& p : s.rules) {
    ls.push_back(p.lhs());
    rs.push_back(p.rhs());
    fs.push_back(kept(p));
  }
  int k = 0;
  for (const auto& l : s.links) {
    if (l.kind != Link::Kind::Same) {
      out.links.push_back(l);
      continue;
    }
    if (l.a.rule == l.b.rule) throw OperatorError("cannot mark two slots of one rule");
    const SlotRef& first = l.a.rule > l.b.rule ? l.a : l.b;
    const SlotRef& later = l.a.rule > l.b.rule ? l.b : l.a;
    if (!rs[first.rule].has_node(first.slot))
      throw OperatorError("marked slot '" + first.slot + "' is deleted before it is reused");
    std::string id = "__mk" + std::to_string(k);
    std::string type = kMarkType + std::to_string(k);
    ++k;
    rs[first.rule].add_node(id, type);
    rs[first.rule].add_edge(id, first.slot);
    ls[later.rule].add_node(id, type);
    ls[later.rule].add_edge(id, later.slot);
  }
  for (std::size_t i = 0; i < s.rules.size(); ++i)
    out.rules.push_back(from_static(s.rules[i].name, ls[i], rs[i], fs[i]));
  return out;
}

}  // namespace mgg

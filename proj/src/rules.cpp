#include "mgg/rules.hpp"

#include <set>

#include "mgg/errors.hpp"

namespace mgg {

namespace {

void finish(Production& p) {
  if ((p.eE & p.rE).any()) throw OperatorError("rule adds and deletes the same edge");
  if ((p.eV & p.rV).any()) throw OperatorError("rule adds and deletes the same node");
  p.NE = nihilation(p);
  TypedDigraph out(p.L.nodes(), apply_action(p, p.L.adj()), apply_action(p, p.L.present()));
  p.compatible = compatibility_check(out).compatible();
}

}  // namespace

TypedDigraph Production::nihilation_graph() const {
  TypedDigraph n(L.nodes(), NE, L.present());
  return n.compacted();
}

Production from_static(const std::string& name, const TypedDigraph& L, const TypedDigraph& R,
                       const Morphism& f) {
  auto [lc, rc] = complete(L.compacted(), R.compacted(), f);
  // Slot ids come from L; R-only slots keep their R id.
  std::vector<Node> slots;
  std::set<std::string> lids;
  for (const auto& n : L.nodes()) lids.insert(n.id);
  for (std::size_t i = 0; i < lc.size(); ++i) {
    if (lc.is_present(i)) {
      slots.push_back(lc.node(i));
    } else {
      std::string id = rc.node(i).id;
      while (lids.count(id)) id += "'";
      lids.insert(id);
      slots.push_back({id, rc.node(i).type});
    }
  }
  Production p;
  p.name = name;
  p.L = TypedDigraph(slots, lc.adj(), lc.present());
  p.R = TypedDigraph(slots, rc.adj(), rc.present());
  p.eE = lc.adj() & ~rc.adj();
  p.rE = rc.adj() & ~lc.adj();
  p.eV = lc.present() & ~rc.present();
  p.rV = rc.present() & ~lc.present();
  finish(p);
  return p;
}

Production from_dynamic(const std::string& name, const std::vector<Node>& slots,
                        const BoolMatrix& LE, const BoolVector& LV, const BoolMatrix& eE,
                        const BoolMatrix& rE, const BoolVector& eV, const BoolVector& rV) {
  Production p;
  p.name = name;
  p.L = TypedDigraph(slots, LE, LV);
  p.eE = eE;
  p.rE = rE;
  p.eV = eV;
  p.rV = rV;
  p.R = TypedDigraph(slots, apply_action(p, LE), apply_action(p, LV));
  finish(p);
  return p;
}

BoolMatrix dbar(const Production& p) {
  auto inside = p.L.present();
  auto keep = ~p.eV;
  return ~tensor(keep, keep) & tensor(inside, inside);
}

BoolMatrix nihilation(const Production& p) { return apply_action(p, dbar(p)); }

Production inverse(const Production& p) {
  Production q;
  const std::string suffix = "^-1";
  bool inverted = p.name.size() >= suffix.size() &&
                  p.name.compare(p.name.size() - suffix.size(), suffix.size(), suffix) == 0;
  q.name = inverted ? p.name.substr(0, p.name.size() - suffix.size()) : p.name + suffix;
  q.L = p.R;
  q.R = p.L;
  q.eE = p.rE;
  q.rE = p.eE;
  q.eV = p.rV;
  q.rV = p.eV;
  finish(q);
  return q;
}

BoolMatrix evolve_nihilation(const Production& p) {
  BoolMatrix evolved = p.eE | dbar(p);
  if (!((p.eE | (~p.rE & p.NE)) == evolved))
    throw OperatorError("nihilation evolution identity fails for '" + p.name + "'");
  return evolved;
}

BoolMatrix apply_action(const Production& p, const BoolMatrix& x) { return p.rE | (~p.eE & x); }

BoolVector apply_action(const Production& p, const BoolVector& x) { return p.rV | (~p.eV & x); }

Production id_rule(const TypedDigraph& a, const std::string& name) {
  Morphism f;
  for (const auto& n : a.present_nodes()) f.nodes[n.id] = n.id;
  return from_static(name, a, a, f);
}

}  // namespace mgg

#include "mgg/matching.hpp"

#include <algorithm>
#include <set>

#include "mgg/errors.hpp"

namespace mgg {

namespace {

struct Search {
  const TypedDigraph& a;
  const TypedDigraph& g;
  const InjectionQuery& q;
  const std::function<bool(const Morphism&)>& visit;

  std::vector<int> order;          // pattern slots in search order
  std::vector<std::vector<int>> cands;
  std::vector<int> img;            // pattern slot -> host slot, -1 unset
  std::vector<bool> used;

  bool consistent(int i, int h) const {
    if (!q.edges) return true;
    if (a.edge(i, i) && !g.edge(h, h)) return false;
    for (int j : order) {
      if (img[j] < 0 || j == i) continue;
      if (a.edge(i, j) && !g.edge(h, img[j])) return false;
      if (a.edge(j, i) && !g.edge(img[j], h)) return false;
    }
    return true;
  }

  bool run(std::size_t k) {
    if (k == order.size()) {
      Morphism f;
      for (int i : order) f.nodes[a.node(i).id] = g.node(img[i]).id;
      return visit(f);
    }
    int i = order[k];
    for (int h : cands[k]) {
      if (used[h] || !consistent(i, h)) continue;
      img[i] = h;
      used[h] = true;
      bool go = run(k + 1);
      used[h] = false;
      img[i] = -1;
      if (!go) return false;
    }
    return true;
  }
};

}  // namespace

bool for_each_injection(const TypedDigraph& a, const TypedDigraph& g, const InjectionQuery& q,
                        const std::function<bool(const Morphism&)>& visit) {
  Search s{a, g, q, visit, {}, {}, std::vector<int>(a.size(), -1), std::vector<bool>(g.size())};

  std::map<std::string, int> freq;
  for (std::size_t h = 0; h < g.size(); ++h)
    if (g.is_present(h)) ++freq[g.node(h).type];
  std::set<int> forbidden;
  for (const auto& id : q.forbidden)
    if (int h = g.index_of(id); h >= 0) forbidden.insert(h);

  std::vector<int> free;
  std::vector<std::pair<int, int>> pinned;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a.is_present(i)) continue;
    if (auto t = q.fixed(a.node(i).id)) {
      int h = g.index_of(*t);
      if (h < 0 || !g.is_present(h) || g.node(h).type != a.node(i).type) return true;
      pinned.emplace_back(static_cast<int>(i), h);
    } else {
      free.push_back(static_cast<int>(i));
    }
  }
  // fixed pairs first, then rarer types, then by id
  std::stable_sort(free.begin(), free.end(), [&](int x, int y) {
    int fx = freq[a.node(x).type], fy = freq[a.node(y).type];
    if (fx != fy) return fx < fy;
    return a.node(x).id < a.node(y).id;
  });
  for (auto [i, h] : pinned) {
    s.order.push_back(i);
    s.cands.push_back({h});
  }
  for (int i : free) {
    s.order.push_back(i);
    std::vector<int> c;
    for (std::size_t h = 0; h < g.size(); ++h)
      if (g.is_present(h) && g.node(h).type == a.node(i).type && !forbidden.count(h))
        c.push_back(static_cast<int>(h));
    std::sort(c.begin(), c.end(), [&](int x, int y) { return g.node(x).id < g.node(y).id; });
    s.cands.push_back(std::move(c));
  }
  return s.run(0);
}

namespace {

std::vector<Morphism> collect(const TypedDigraph& a, const TypedDigraph& g, bool edges) {
  std::vector<Morphism> out;
  InjectionQuery q;
  q.edges = edges;
  for_each_injection(a, g, q, [&](const Morphism& f) {
    out.push_back(f);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Morphism> enumerate_tot(const TypedDigraph& a, const TypedDigraph& g) {
  return collect(a, g, true);
}

std::vector<Morphism> enumerate_tot(const TypedDigraph& a, const NegStructure& g) {
  return collect(a, g.as_target(), true);
}

std::vector<Morphism> enumerate_par_max(const TypedDigraph& a, const TypedDigraph& g) {
  return collect(a, g, false);
}

std::vector<Morphism> enumerate_par_max(const TypedDigraph& a, const NegStructure& g) {
  return collect(a, g.as_target(), false);
}

std::vector<EdgeIds> mapped_edges(const TypedDigraph& a, const TypedDigraph& g, const Morphism& f) {
  std::vector<EdgeIds> r;
  for (const auto& [x, y] : a.edge_ids()) {
    auto fx = f(x), fy = f(y);
    if (fx && fy && g.has_edge(*fx, *fy)) r.emplace_back(x, y);
  }
  return r;
}

bool is_iso(const Morphism& f, const TypedDigraph& a, const TypedDigraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  if (!f.injective()) return false;
  for (const auto& n : a.present_nodes()) {
    auto t = f(n.id);
    if (!t) return false;
    int j = b.index_of(*t);
    if (j < 0 || !b.is_present(j) || b.node(j).type != n.type) return false;
  }
  if (f.size() != a.node_count()) return false;
  for (const auto& [x, y] : a.edge_ids())
    if (!b.has_edge(*f(x), *f(y))) return false;
  return true;
}

const TypedDigraph& Diagram::graph(const std::string& var) const {
  auto it = graphs.find(var);
  if (it == graphs.end()) throw InputError("diagram has no graph '" + var + "'");
  return it->second;
}

void Diagram::validate() const {
  for (const auto& ar : arrows) {
    if (!has(ar.from) || !has(ar.to))
      throw MorphismError("arrow " + ar.from + "->" + ar.to + " names an unknown graph");
    check_morphism(graph(ar.from), graph(ar.to), ar.map);
  }
}

namespace {

bool agree(const Morphism& f, const Morphism& g) {
  for (const auto& [k, v] : f.nodes)
    if (auto w = g(k); w && *w != v) return false;
  return true;
}

}  // namespace

bool check_commuting(const Diagram& d) {
  std::map<std::string, std::vector<const Arrow*>> out;
  for (const auto& ar : d.arrows) out[ar.from].push_back(&ar);

  for (const auto& [src, graph] : d.graphs) {
    (void)graph;
    // composed maps of all simple paths from src, grouped by endpoint
    std::map<std::string, std::vector<Morphism>> reach;
    std::set<std::string> on_path{src};
    std::function<bool(const std::string&, const Morphism&)> walk =
        [&](const std::string& at, const Morphism& acc) {
          for (const Arrow* ar : out[at]) {
            Morphism next = acc.then(ar->map);
            if (ar->to == src) {
              for (const auto& [k, v] : next.nodes)
                if (k != v) return false;
              continue;
            }
            if (on_path.count(ar->to)) continue;
            for (const auto& other : reach[ar->to])
              if (!agree(next, other)) return false;
            reach[ar->to].push_back(next);
            on_path.insert(ar->to);
            bool ok = walk(ar->to, next);
            on_path.erase(ar->to);
            if (!ok) return false;
          }
          return true;
        };
    Morphism id;
    for (const auto& n : d.graph(src).nodes()) id.nodes[n.id] = n.id;
    if (!walk(src, id)) return false;
  }
  return true;
}

}  // namespace mgg

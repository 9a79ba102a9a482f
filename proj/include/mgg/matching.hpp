#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mgg/graph.hpp"
#include "mgg/morphism.hpp"

namespace mgg {

struct InjectionQuery {
  // pre-assigned pairs, honored as-is (they must still be type-correct)
  Morphism fixed;
  // host nodes no free pattern node may use
  std::vector<std::string> forbidden;
  // require every pattern edge to land on a host edge
  bool edges = true;
};

// Visits every injective type-preserving map of a's present nodes into g's
// present nodes that satisfies q, in a deterministic order. The visitor
// returns false to stop early; the function returns false if stopped.
bool for_each_injection(const TypedDigraph& a, const TypedDigraph& g, const InjectionQuery& q,
                        const std::function<bool(const Morphism&)>& visit);

std::vector<Morphism> enumerate_tot(const TypedDigraph& a, const TypedDigraph& g);
std::vector<Morphism> enumerate_tot(const TypedDigraph& a, const NegStructure& g);
// Node-total maps; the edge part of each is forced by the host.
std::vector<Morphism> enumerate_par_max(const TypedDigraph& a, const TypedDigraph& g);
std::vector<Morphism> enumerate_par_max(const TypedDigraph& a, const NegStructure& g);

// Edges of a whose image under f is an edge of g.
std::vector<EdgeIds> mapped_edges(const TypedDigraph& a, const TypedDigraph& g, const Morphism& f);

bool is_iso(const Morphism& f, const TypedDigraph& a, const TypedDigraph& b);

struct Arrow {
  std::string from, to;
  Morphism map;
  bool operator==(const Arrow&) const = default;
};

// Named graphs plus partial injective morphisms between them.
struct Diagram {
  std::map<std::string, TypedDigraph> graphs;
  std::vector<Arrow> arrows;

  bool has(const std::string& var) const { return graphs.count(var) != 0; }
  const TypedDigraph& graph(const std::string& var) const;
  // Throws MorphismError if some arrow is not a valid morphism.
  void validate() const;
  bool operator==(const Diagram&) const = default;
};

// Every two directed paths between the same pair of graphs agree where both
// are defined, and every directed cycle is the identity on its domain.
bool check_commuting(const Diagram& d);

}  // namespace mgg

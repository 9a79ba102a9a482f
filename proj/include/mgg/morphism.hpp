#pragma once

#include <map>
#include <optional>
#include <string>

namespace mgg {

// Partial injective node map. The edge map is implied: (n,m) goes to
// (f(n), f(m)) whenever both ends are mapped.
struct Morphism {
  std::map<std::string, std::string> nodes;

  bool defined(const std::string& n) const { return nodes.count(n) != 0; }
  std::optional<std::string> operator()(const std::string& n) const {
    auto it = nodes.find(n);
    if (it == nodes.end()) return std::nullopt;
    return it->second;
  }
  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }

  bool injective() const;
  Morphism inverse() const;
  // (g after f): first this, then g.
  Morphism then(const Morphism& g) const;
  std::string str() const;

  bool operator==(const Morphism&) const = default;
  auto operator<=>(const Morphism&) const = default;
};

}  // namespace mgg

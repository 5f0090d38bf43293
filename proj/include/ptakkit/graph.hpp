#pragma once

// Simple undirected graphs on labels 0..n-1 and maximal clique enumeration
// (Bron–Kerbosch with Tomita pivoting over bitmasks).

#include "ptakkit/element_set.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ptakkit {

using Edge = std::pair<int, int>;

class Graph {
 public:
  Graph(int n, const std::vector<Edge>& edges) : n_(GroundSet(n).size()), adj_(static_cast<std::size_t>(n_)) {
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n_ || v >= n_) {
        throw std::out_of_range("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                ") references a label outside 0.." + std::to_string(n - 1));
      }
      if (u == v) continue;
      adj_[static_cast<std::size_t>(u)].insert(v);
      adj_[static_cast<std::size_t>(v)].insert(u);
    }
  }

  int n() const { return n_; }
  ElementSet neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }

  Graph complement() const {
    Graph g(*this);
    const ElementSet all = ElementSet::full(n_);
    for (int v = 0; v < n_; ++v) {
      ElementSet others = all;
      others.erase(v);
      g.adj_[static_cast<std::size_t>(v)] = others.minus(adj_[static_cast<std::size_t>(v)]);
    }
    return g;
  }

  // Lexicographically sorted maximal cliques. Isolated vertices are singleton cliques.
  std::vector<ElementSet> maximal_cliques() const {
    std::vector<ElementSet> out;
    expand(ElementSet{}, ElementSet::full(n_), ElementSet{}, out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void expand(ElementSet r, ElementSet p, ElementSet x, std::vector<ElementSet>& out) const {
    if (p.empty()) {
      if (x.empty() && !r.empty()) out.push_back(r);
      return;
    }
    // Pivot: vertex of P ∪ X with most neighbours in P; lowest label on ties.
    int pivot = -1;
    int best = -1;
    (p | x).for_each([&](int u) {
      const int deg = (neighbors(u) & p).size();
      if (deg > best) {
        best = deg;
        pivot = u;
      }
    });
    const ElementSet candidates = p.minus(neighbors(pivot));
    candidates.for_each([&](int v) {
      ElementSet rv = r;
      rv.insert(v);
      expand(rv, p & neighbors(v), x & neighbors(v), out);
      p.erase(v);
      x.insert(v);
    });
  }

  int n_;
  std::vector<ElementSet> adj_;
};

}  // namespace ptakkit

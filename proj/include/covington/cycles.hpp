#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gold_tree.hpp"
#include "transition_system.hpp"

namespace covington {

// Nodes 0..num_nodes-1. Parallel arcs are merged, self-loops rejected.
class Digraph {
 public:
  explicit Digraph(int num_nodes = 0)
      : succ_(static_cast<std::size_t>(num_nodes)), pred_(static_cast<std::size_t>(num_nodes)) {}
  Digraph(int num_nodes, std::span<const std::pair<int, int>> arcs) : Digraph(num_nodes) {
    for (auto [u, v] : arcs) add_arc(u, v);
  }
  Digraph(int num_nodes, std::initializer_list<std::pair<int, int>> arcs)
      : Digraph(num_nodes, std::span<const std::pair<int, int>>(arcs.begin(), arcs.size())) {}

  void add_arc(int from, int to) {
    check(from);
    check(to);
    if (from == to) throw std::invalid_argument("Digraph: self-loop at " + std::to_string(from));
    auto& out = succ_[static_cast<std::size_t>(from)];
    auto it = std::lower_bound(out.begin(), out.end(), to);
    if (it != out.end() && *it == to) return;
    out.insert(it, to);
    auto& in = pred_[static_cast<std::size_t>(to)];
    in.insert(std::lower_bound(in.begin(), in.end(), from), from);
    ++num_arcs_;
  }

  int num_nodes() const noexcept { return static_cast<int>(succ_.size()); }
  std::size_t num_arcs() const noexcept { return num_arcs_; }
  const std::vector<int>& successors(int v) const { return succ_.at(static_cast<std::size_t>(v)); }
  const std::vector<int>& predecessors(int v) const { return pred_.at(static_cast<std::size_t>(v)); }
  int in_degree(int v) const { return static_cast<int>(predecessors(v).size()); }
  bool has_arc(int u, int v) const {
    const auto& out = successors(u);
    return std::binary_search(out.begin(), out.end(), v);
  }

 private:
  void check(int v) const {
    if (v < 0 || v >= num_nodes()) throw std::out_of_range("Digraph: node " + std::to_string(v));
  }

  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
  std::size_t num_arcs_ = 0;
};

// Node sequence of a simple cycle, starting at its smallest node.
using Cycle = std::vector<int>;

// Linear-time count for graphs where every node has at most one incoming arc:
// each weak component then holds at most one cycle, found by walking parents.
inline std::size_t count_cycles_indeg1(const Digraph& g) {
  const int n = g.num_nodes();
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    const auto& in = g.predecessors(v);
    if (in.size() > 1) {
      throw std::invalid_argument("count_cycles_indeg1: node " + std::to_string(v) + " has in-degree " +
                                  std::to_string(in.size()));
    }
    if (!in.empty()) parent[static_cast<std::size_t>(v)] = in.front();
  }
  // walk[v]: 0 unvisited, otherwise id of the walk that first reached v.
  std::vector<int> walk(static_cast<std::size_t>(n), 0);
  std::size_t cycles = 0;
  for (int start = 0; start < n; ++start) {
    const int id = start + 1;
    int v = start;
    while (v != -1 && walk[static_cast<std::size_t>(v)] == 0) {
      walk[static_cast<std::size_t>(v)] = id;
      v = parent[static_cast<std::size_t>(v)];
    }
    if (v != -1 && walk[static_cast<std::size_t>(v)] == id) ++cycles;
  }
  return cycles;
}

namespace detail {

// Johnson's circuit enumeration, restricted to one strongly connected
// component whose least node is `start`.
class CircuitSearch {
 public:
  CircuitSearch(const Digraph& g, std::vector<Cycle>& out)
      : g_(g),
        out_(out),
        blocked_(static_cast<std::size_t>(g.num_nodes()), 0),
        blocked_by_(static_cast<std::size_t>(g.num_nodes())),
        member_(static_cast<std::size_t>(g.num_nodes()), 0) {}

  void run() {
    const int n = g_.num_nodes();
    for (start_ = 0; start_ < n; ++start_) {
      if (!component_of_start()) continue;
      for (int v = start_; v < n; ++v) {
        blocked_[static_cast<std::size_t>(v)] = 0;
        blocked_by_[static_cast<std::size_t>(v)].clear();
      }
      circuit(start_);
    }
  }

 private:
  // Marks the SCC of start_ in the subgraph induced by nodes >= start_.
  // Returns false when it is a single node (no self-loops, so no cycle).
  bool component_of_start() {
    const int n = g_.num_nodes();
    std::vector<char> fwd(static_cast<std::size_t>(n), 0), bwd(static_cast<std::size_t>(n), 0);
    flood(fwd, true);
    flood(bwd, false);
    std::size_t size = 0;
    for (int v = 0; v < n; ++v) {
      const bool in = v >= start_ && fwd[static_cast<std::size_t>(v)] && bwd[static_cast<std::size_t>(v)];
      member_[static_cast<std::size_t>(v)] = in;
      size += in;
    }
    return size > 1;
  }

  void flood(std::vector<char>& seen, bool forward) {
    std::vector<int> stack{start_};
    seen[static_cast<std::size_t>(start_)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : forward ? g_.successors(v) : g_.predecessors(v)) {
        if (w < start_ || seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }

  void unblock(int u) {
    blocked_[static_cast<std::size_t>(u)] = 0;
    auto& waiting = blocked_by_[static_cast<std::size_t>(u)];
    while (!waiting.empty()) {
      const int w = waiting.back();
      waiting.pop_back();
      if (blocked_[static_cast<std::size_t>(w)]) unblock(w);
    }
  }

  bool circuit(int v) {
    bool found = false;
    path_.push_back(v);
    blocked_[static_cast<std::size_t>(v)] = 1;
    for (int w : g_.successors(v)) {
      if (!member_[static_cast<std::size_t>(w)]) continue;
      if (w == start_) {
        out_.push_back(path_);
        found = true;
      } else if (!blocked_[static_cast<std::size_t>(w)] && circuit(w)) {
        found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (int w : g_.successors(v)) {
        if (!member_[static_cast<std::size_t>(w)]) continue;
        auto& waiting = blocked_by_[static_cast<std::size_t>(w)];
        if (std::find(waiting.begin(), waiting.end(), v) == waiting.end()) waiting.push_back(v);
      }
    }
    path_.pop_back();
    return found;
  }

  const Digraph& g_;
  std::vector<Cycle>& out_;
  std::vector<char> blocked_;
  std::vector<std::vector<int>> blocked_by_;
  std::vector<char> member_;
  std::vector<int> path_;
  int start_ = 0;
};

}  // namespace detail

// Every elementary cycle once, each starting at its least node, sorted.
inline std::vector<Cycle> elementary_cycles(const Digraph& g) {
  std::vector<Cycle> out;
  detail::CircuitSearch(g, out).run();
  std::sort(out.begin(), out.end());
  return out;
}

// True when arc a is built after arc b by the Covington criteria: the right
// focus word moves rightward, the left one scans leftward.
inline bool covington_later(const Arc& a, const Arc& b) {
  const int ra = std::max(a.head, a.dep), rb = std::max(b.head, b.dep);
  if (ra != rb) return ra > rb;
  return std::min(a.head, a.dep) < std::min(b.head, b.dep);
}

struct CycleCounts {
  std::size_t cycles = 0;
  std::size_t problematic = 0;

  friend bool operator==(const CycleCounts&, const CycleCounts&) = default;
};

// Cycles of A + reachable. For each cycle, the arc not yet in A that the
// canonical completion would build last closes it; cycle breaking then drops
// the cycle arc entering that arc's head. The cycle is problematic when the
// dropped arc is gold.
inline CycleCounts classify_cycles(const ArcSet& a, std::span<const Arc> reachable, const GoldTree& gold) {
  const int n = a.size();
  if (gold.size() != n) throw std::invalid_argument("classify_cycles: gold tree size mismatch");
  Digraph g(n + 1);
  for (const Arc& arc : a.arcs()) g.add_arc(arc.head, arc.dep);
  for (const Arc& arc : reachable) {
    if (!gold.contains(arc.head, arc.dep)) {
      throw std::invalid_argument("classify_cycles: reachable arc " + std::to_string(arc.head) + "->" +
                                  std::to_string(arc.dep) + " is not gold");
    }
    g.add_arc(arc.head, arc.dep);
  }

  CycleCounts counts;
  for (const Cycle& cycle : elementary_cycles(g)) {
    ++counts.cycles;
    const std::size_t len = cycle.size();
    std::size_t closing = len;
    for (std::size_t m = 0; m < len; ++m) {
      const Arc arc{cycle[m], cycle[(m + 1) % len]};
      if (a.contains(arc.head, arc.dep)) continue;
      if (closing == len || covington_later(arc, Arc{cycle[closing], cycle[(closing + 1) % len]})) closing = m;
    }
    if (closing == len) throw std::logic_error("classify_cycles: cycle made only of built arcs");
    // Closing arc is cycle[closing] -> cycle[closing+1]; its head x = cycle[closing].
    const int x = cycle[closing];
    const int z = cycle[(closing + len - 1) % len];
    if (gold.contains(z, x)) ++counts.problematic;
  }
  return counts;
}

}  // namespace covington

#pragma once

// Slow reference implementations used as test oracles. Deliberately written
// without the library's shortcuts (no bounds, no cycle algorithms).

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "covington/covington.hpp"

namespace brute {

using namespace covington;

inline std::string key(const Configuration& c) {
  std::string k = std::to_string(c.i) + "," + std::to_string(c.j) + ":";
  for (int d = 1; d <= c.n(); ++d) k += std::to_string(c.arcs.head(d)) + ",";
  return k;
}

// Minimum final |t_G \ A| over every transition sequence; memoized
// exhaustive recursion, no pruning.
inline int min_loss(const Configuration& c, const GoldTree& g, System system, std::map<std::string, int>& memo) {
  if (c.terminal()) return final_loss(c.arcs, g);
  const std::string k = key(c);
  if (auto it = memo.find(k); it != memo.end()) return it->second;
  int best = 1 << 30;
  for (TransitionKind kind : legal_kinds(c, system).to_vector()) {
    best = std::min(best, min_loss(step(c, Transition{kind, kNoLabel}, system), g, system, memo));
  }
  memo.emplace(k, best);
  return best;
}

inline int min_loss(const Configuration& c, const GoldTree& g, System system) {
  std::map<std::string, int> memo;
  return min_loss(c, g, system, memo);
}

// All configurations reachable from the initial one.
inline std::vector<Configuration> reachable_configs(int n, System system) {
  std::vector<Configuration> out;
  std::set<std::string> seen;
  std::deque<Configuration> queue{initial_config(n)};
  seen.insert(key(queue.front()));
  while (!queue.empty()) {
    Configuration c = queue.front();
    queue.pop_front();
    out.push_back(c);
    if (c.terminal()) continue;
    for (TransitionKind kind : legal_kinds(c, system).to_vector()) {
      Configuration next = step(c, Transition{kind, kNoLabel}, system);
      if (seen.insert(key(next)).second) queue.push_back(std::move(next));
    }
  }
  return out;
}

// Every head vector over n words that forms a forest under the root.
inline std::vector<GoldTree> all_trees(int n) {
  std::vector<GoldTree> out;
  std::vector<int> heads(static_cast<std::size_t>(n) + 1, 0);
  std::function<void(int)> rec = [&](int d) {
    if (d > n) {
      for (int x = 1; x <= n; ++x) {
        int k = x;
        for (int steps = 0; k != 0; ++steps) {
          if (steps > n) return;
          k = heads[static_cast<std::size_t>(k)];
        }
      }
      out.emplace_back(heads);
      return;
    }
    for (int h = 0; h <= n; ++h) {
      if (h == d) continue;
      heads[static_cast<std::size_t>(d)] = h;
      rec(d + 1);
    }
  };
  rec(1);
  return out;
}

// Simple cycles by trying every sequence of distinct nodes that starts at its
// minimum. Exponential; fine for <= 6 nodes.
inline std::vector<std::vector<int>> simple_cycles(int nodes, const std::set<std::pair<int, int>>& arcs) {
  std::vector<std::vector<int>> out;
  std::vector<int> seq;
  std::vector<char> used(static_cast<std::size_t>(nodes), 0);
  std::function<void()> rec = [&] {
    if (seq.size() >= 2 && arcs.count({seq.back(), seq.front()})) out.push_back(seq);
    for (int v = seq.front() + 1; v < nodes; ++v) {
      if (used[static_cast<std::size_t>(v)] || !arcs.count({seq.back(), v})) continue;
      used[static_cast<std::size_t>(v)] = 1;
      seq.push_back(v);
      rec();
      seq.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  for (int s = 0; s < nodes; ++s) {
    seq = {s};
    used.assign(static_cast<std::size_t>(nodes), 0);
    used[static_cast<std::size_t>(s)] = 1;
    rec();
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Literal Covington state with explicit lists, applying the transition rules
// as stated, with no shortcuts.
struct ListConfig {
  std::vector<int> l1, l2, buffer;
  std::set<std::pair<int, int>> arcs;  // (head, dep)

  static ListConfig initial(int n) {
    ListConfig c;
    for (int k = 1; k <= n; ++k) c.buffer.push_back(k);
    return c;
  }

  bool reaches(int u, int v) const {
    if (u == v) return true;
    std::set<int> seen{u};
    std::vector<int> stack{u};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (auto [h, d] : arcs) {
        if (h == x && seen.insert(d).second) {
          if (d == v) return true;
          stack.push_back(d);
        }
      }
    }
    return false;
  }

  void apply(TransitionKind kind, bool nonmonotonic) {
    const int j = buffer.front();
    if (kind == TransitionKind::Shift) {
      l1.insert(l1.end(), l2.begin(), l2.end());
      l1.push_back(j);
      l2.clear();
      buffer.erase(buffer.begin());
      return;
    }
    const int i = l1.back();
    if (kind != TransitionKind::NoArc) {
      const int h = kind == TransitionKind::LeftArc ? j : i;
      const int d = kind == TransitionKind::LeftArc ? i : j;
      if (nonmonotonic) {
        std::set<std::pair<int, int>> drop;
        for (auto [x, y] : arcs) {
          if (y == d && x != h) drop.insert({x, y});
          if (y == h && reaches(d, x)) drop.insert({x, y});
        }
        for (auto arc : drop) arcs.erase(arc);
      }
      arcs.insert({h, d});
    }
    l1.pop_back();
    l2.insert(l2.begin(), i);
  }
};

}  // namespace brute

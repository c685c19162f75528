#pragma once

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cycles.hpp"
#include "gold_tree.hpp"
#include "transition_system.hpp"

namespace covington {

enum class LossVariant : std::uint8_t { Lower, PcUpper, Upper };
enum class OracleKind : std::uint8_t { Static, DynamicMonotonic, DynamicNonMonotonic };

struct OracleMode {
  OracleKind kind = OracleKind::DynamicNonMonotonic;
  LossVariant variant = LossVariant::Upper;  // only read by the non-monotonic oracle

  static OracleMode static_oracle() { return {OracleKind::Static, LossVariant::Upper}; }
  static OracleMode dynamic_monotonic() { return {OracleKind::DynamicMonotonic, LossVariant::Upper}; }
  static OracleMode dynamic_nonmonotonic(LossVariant v) { return {OracleKind::DynamicNonMonotonic, v}; }

  friend bool operator==(const OracleMode&, const OracleMode&) = default;
};

inline System system_for(OracleMode mode) {
  return mode.kind == OracleKind::DynamicNonMonotonic ? System::NonMonotonic : System::Monotonic;
}

struct LossBounds {
  int lower = 0;
  int pc_upper = 0;
  int upper = 0;

  int get(LossVariant v) const noexcept {
    switch (v) {
      case LossVariant::Lower: return lower;
      case LossVariant::PcUpper: return pc_upper;
      case LossVariant::Upper: return upper;
    }
    return upper;
  }

  friend bool operator==(const LossBounds&, const LossBounds&) = default;
};

namespace detail {

inline void check_sizes(const Configuration& c, const GoldTree& g) {
  if (c.n() != g.size()) {
    throw std::invalid_argument("gold tree has " + std::to_string(g.size()) + " tokens, configuration " +
                                std::to_string(c.n()));
  }
}

// The focus words have moved past the arc's endpoints for good.
inline bool out_of_reach(const Configuration& c, const Arc& arc) {
  const int right = std::max(arc.head, arc.dep);
  const int left = std::min(arc.head, arc.dep);
  return c.j > right || (c.j == right && c.i < left);
}

inline std::vector<Arc> complement(std::span<const Arc> gold, const ArcSet& a, const std::vector<Arc>& unreachable) {
  std::vector<Arc> out;
  for (const Arc& arc : gold) {
    if (a.contains(arc.head, arc.dep)) continue;
    if (std::find(unreachable.begin(), unreachable.end(), arc) != unreachable.end()) continue;
    out.push_back(arc);
  }
  return out;
}

}  // namespace detail

inline std::vector<Arc> unreachable_mono(const Configuration& c, const GoldTree& g) {
  detail::check_sizes(c, g);
  std::vector<Arc> u;
  for (const Arc& arc : g.arcs()) {
    if (c.arcs.contains(arc.head, arc.dep)) continue;
    if (detail::out_of_reach(c, arc) || c.arcs.has_head(arc.dep) || c.arcs.weakly_connected(arc.head, arc.dep)) {
      u.push_back(arc);
    }
  }
  return u;
}

inline std::vector<Arc> unreachable_nonmono(const Configuration& c, const GoldTree& g) {
  detail::check_sizes(c, g);
  std::vector<Arc> u;
  for (const Arc& arc : g.arcs()) {
    if (!c.arcs.contains(arc.head, arc.dep) && detail::out_of_reach(c, arc)) u.push_back(arc);
  }
  return u;
}

// Gold arcs not built yet that can each still be built: I = t_G \ (A + U).
inline std::vector<Arc> reachable_mono(const Configuration& c, const GoldTree& g) {
  return detail::complement(g.arcs(), c.arcs, unreachable_mono(c, g));
}

inline std::vector<Arc> reachable_nonmono(const Configuration& c, const GoldTree& g) {
  return detail::complement(g.arcs(), c.arcs, unreachable_nonmono(c, g));
}

inline int loss_mono(const Configuration& c, const GoldTree& g) {
  const auto u = unreachable_mono(c, g);
  Digraph graph(c.n() + 1);
  for (const Arc& arc : c.arcs.arcs()) graph.add_arc(arc.head, arc.dep);
  for (const Arc& arc : detail::complement(g.arcs(), c.arcs, u)) graph.add_arc(arc.head, arc.dep);
  return static_cast<int>(u.size() + count_cycles_indeg1(graph));
}

inline LossBounds loss_bounds_nonmono(const Configuration& c, const GoldTree& g) {
  const auto u = unreachable_nonmono(c, g);
  const auto counts = classify_cycles(c.arcs, detail::complement(g.arcs(), c.arcs, u), g);
  const int lower = static_cast<int>(u.size());
  return {lower, lower + static_cast<int>(counts.problematic), lower + static_cast<int>(counts.cycles)};
}

inline int loss_nonmono(const Configuration& c, const GoldTree& g, LossVariant v) {
  if (v == LossVariant::Lower) return static_cast<int>(unreachable_nonmono(c, g).size());
  return loss_bounds_nonmono(c, g).get(v);
}

// Final loss of a terminal configuration.
inline int final_loss(const ArcSet& a, const GoldTree& g) {
  int missing = 0;
  for (const Arc& arc : g.arcs()) missing += !a.contains(arc.head, arc.dep);
  return missing;
}

struct StaticOracleOptions {
  // Shift as soon as no unbuilt gold arc links j to a word left of i.
  bool shift_early = false;
};

// Covington criteria: build the gold arc between the focus words if there is
// one, otherwise move i leftward, and Shift once lambda1 is empty.
inline Transition static_next(const Configuration& c, const GoldTree& g, const StaticOracleOptions& options = {}) {
  detail::check_sizes(c, g);
  if (c.terminal()) throw std::invalid_argument("static_next: terminal configuration");
  if (c.i == kNone) return Transition::shift();
  if (g.contains(c.j, c.i) && !c.arcs.contains(c.j, c.i)) return Transition::left_arc(g.label(c.i));
  if (g.contains(c.i, c.j) && !c.arcs.contains(c.i, c.j)) return Transition::right_arc(g.label(c.j));
  if (options.shift_early) {
    bool pending = false;
    for (int k = 1; k < c.i && !pending; ++k) {
      pending = (g.contains(c.j, k) && !c.arcs.contains(c.j, k)) || (g.contains(k, c.j) && !c.arcs.contains(k, c.j));
    }
    if (!pending) return Transition::shift();
  }
  return Transition::no_arc();
}

// Transitions whose successor attains the least loss among all successors.
// Arc transitions carry the dependent's gold label.
inline std::vector<Transition> oracle_transitions(const Configuration& c, const GoldTree& g, OracleMode mode) {
  detail::check_sizes(c, g);
  if (c.terminal()) throw std::invalid_argument("oracle_transitions: terminal configuration");
  if (mode.kind == OracleKind::Static) return {static_next(c, g)};

  const System system = system_for(mode);
  struct Candidate {
    Transition t;
    int loss;
    bool attaches_root_word;
  };
  std::vector<Candidate> candidates;
  int best = INT_MAX;
  for (TransitionKind kind : legal_kinds(c, system).to_vector()) {
    Transition t{kind, kNoLabel};
    bool root_word = false;
    if (is_arc(kind)) {
      const int dep = kind == TransitionKind::LeftArc ? c.i : c.j;
      t.label = g.label(dep);
      root_word = g.root_attached(dep);
    }
    const Configuration next = step(c, t, system);
    const int loss = system == System::Monotonic ? loss_mono(next, g) : loss_nonmono(next, g, mode.variant);
    best = std::min(best, loss);
    candidates.push_back({t, loss, root_word});
  }
  // The loss ignores root attachments, so giving a head to a root-attached
  // word looks free. Keep such arcs only when nothing else is as good.
  bool other_best = false;
  for (const Candidate& cand : candidates) other_best |= cand.loss == best && !cand.attaches_root_word;
  std::vector<Transition> out;
  for (const Candidate& cand : candidates) {
    if (cand.loss == best && !(other_best && cand.attaches_root_word)) out.push_back(cand.t);
  }
  return out;
}

}  // namespace covington

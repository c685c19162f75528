#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "labels.hpp"

namespace covington {

// Position 0: empty left list for i, "no head" inside ArcSet.
inline constexpr int kNone = 0;

struct Arc {
  int head = 0;
  int dep = 0;
  LabelId label = kNoLabel;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Head assignment over tokens 1..n. One head per token by construction;
// add() refuses arcs that would close a cycle.
class ArcSet {
 public:
  ArcSet() = default;
  explicit ArcSet(int n)
      : head_(static_cast<std::size_t>(n) + 1, kNone), label_(static_cast<std::size_t>(n) + 1, kNoLabel) {}
  ArcSet(int n, std::initializer_list<Arc> arcs) : ArcSet(n) {
    for (const Arc& a : arcs) add(a);
  }

  int size() const noexcept { return head_.empty() ? 0 : static_cast<int>(head_.size()) - 1; }
  std::size_t arc_count() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  int head(int dep) const { return head_[at(dep)]; }
  LabelId label(int dep) const { return label_[at(dep)]; }
  bool has_head(int dep) const { return head(dep) != kNone; }
  bool contains(int head, int dep) const { return head != kNone && this->head(dep) == head; }

  // u reaches v (possibly by the empty path). In-degree <= 1, so this is a
  // walk up the head chain of v.
  bool path_exists(int u, int v) const {
    at(u);
    for (int k = v, steps = 0; k != kNone && steps <= size(); k = head_[at(k)], ++steps) {
      if (k == u) return true;
    }
    return false;
  }

  int component_root(int x) const {
    while (head_[at(x)] != kNone) x = head_[x];
    return x;
  }

  bool weakly_connected(int x, int y) const { return component_root(x) == component_root(y); }

  void add(const Arc& arc) {
    at(arc.head);
    if (arc.head == arc.dep) throw std::logic_error("arc " + describe(arc) + " is a self-loop");
    if (head_[at(arc.dep)] != kNone) {
      throw std::logic_error("arc " + describe(arc) + " violates single-head");
    }
    if (path_exists(arc.dep, arc.head)) {
      throw std::logic_error("arc " + describe(arc) + " closes a cycle");
    }
    head_[arc.dep] = arc.head;
    label_[arc.dep] = arc.label;
    ++count_;
  }

  void relabel(int dep, LabelId label) { label_[at(dep)] = label; }

  void remove(int dep) {
    if (head_[at(dep)] == kNone) return;
    head_[dep] = kNone;
    label_[dep] = kNoLabel;
    --count_;
  }

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    out.reserve(count_);
    for (int d = 1; d <= size(); ++d) {
      if (head_[d] != kNone) out.push_back({head_[d], d, label_[d]});
    }
    return out;
  }

  // Index 0 unused.
  std::span<const int> heads() const noexcept { return head_; }

  friend bool operator==(const ArcSet&, const ArcSet&) = default;

 private:
  std::size_t at(int k) const {
    if (k < 1 || k > size()) {
      throw std::out_of_range("position " + std::to_string(k) + " outside 1.." + std::to_string(size()));
    }
    return static_cast<std::size_t>(k);
  }

  static std::string describe(const Arc& a) {
    return std::to_string(a.head) + "->" + std::to_string(a.dep);
  }

  std::vector<int> head_;
  std::vector<LabelId> label_;
  std::size_t count_ = 0;
};

inline bool path_exists(const ArcSet& a, int u, int v) { return a.path_exists(u, v); }
inline bool weakly_connected(const ArcSet& a, int x, int y) { return a.weakly_connected(x, y); }

enum class System : std::uint8_t { Monotonic, NonMonotonic };

enum class TransitionKind : std::uint8_t { Shift, NoArc, LeftArc, RightArc };

inline bool is_arc(TransitionKind k) noexcept {
  return k == TransitionKind::LeftArc || k == TransitionKind::RightArc;
}

struct Transition {
  TransitionKind kind = TransitionKind::Shift;
  LabelId label = kNoLabel;  // kNoLabel on arcs means "unlabeled"

  static Transition shift() { return {TransitionKind::Shift, kNoLabel}; }
  static Transition no_arc() { return {TransitionKind::NoArc, kNoLabel}; }
  static Transition left_arc(LabelId l = kNoLabel) { return {TransitionKind::LeftArc, l}; }
  static Transition right_arc(LabelId l = kNoLabel) { return {TransitionKind::RightArc, l}; }

  // Kind first, then label id (= lexicographic label order).
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

inline const char* kind_name(TransitionKind k) {
  switch (k) {
    case TransitionKind::Shift: return "Shift";
    case TransitionKind::NoArc: return "NoArc";
    case TransitionKind::LeftArc: return "LeftArc";
    case TransitionKind::RightArc: return "RightArc";
  }
  return "?";
}

class KindSet {
 public:
  KindSet() = default;
  KindSet(std::initializer_list<TransitionKind> kinds) {
    for (TransitionKind k : kinds) insert(k);
  }
  void insert(TransitionKind k) { bits_ |= bit(k); }
  bool contains(TransitionKind k) const noexcept { return bits_ & bit(k); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(__builtin_popcount(bits_)); }
  std::vector<TransitionKind> to_vector() const {
    std::vector<TransitionKind> out;
    for (auto k : {TransitionKind::Shift, TransitionKind::NoArc, TransitionKind::LeftArc, TransitionKind::RightArc}) {
      if (contains(k)) out.push_back(k);
    }
    return out;
  }
  friend bool operator==(const KindSet&, const KindSet&) = default;

 private:
  static unsigned bit(TransitionKind k) noexcept { return 1u << static_cast<unsigned>(k); }
  unsigned bits_ = 0;
};

// lambda1 = [1..i], lambda2 = [i+1..j-1], B = [j..n]; i == kNone when lambda1
// is empty and j == n+1 when B is empty.
struct Configuration {
  int i = kNone;
  int j = 1;
  ArcSet arcs;

  int n() const noexcept { return arcs.size(); }
  bool terminal() const noexcept { return j == n() + 1; }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

inline Configuration initial_config(int n) {
  if (n < 1) throw std::invalid_argument("initial_config: sentence length must be at least 1");
  return Configuration{kNone, 1, ArcSet(n)};
}

inline bool is_terminal(const Configuration& c) noexcept { return c.terminal(); }

namespace detail {

inline void require_open(const Configuration& c) {
  if (c.terminal()) throw IllegalTransition("no transition applies to a terminal configuration");
}

inline void move_focus(Configuration& c, TransitionKind kind) {
  if (kind == TransitionKind::Shift) {
    c.i = c.j;
    ++c.j;
  } else {
    --c.i;
  }
}

}  // namespace detail

inline KindSet legal_monotonic(const Configuration& c) {
  if (c.terminal()) throw std::invalid_argument("legal_monotonic: terminal configuration");
  KindSet s{TransitionKind::Shift};
  if (c.i == kNone) return s;
  s.insert(TransitionKind::NoArc);
  if (!c.arcs.has_head(c.i) && !c.arcs.path_exists(c.i, c.j)) s.insert(TransitionKind::LeftArc);
  if (!c.arcs.has_head(c.j) && !c.arcs.path_exists(c.j, c.i)) s.insert(TransitionKind::RightArc);
  return s;
}

inline KindSet legal_nonmonotonic(const Configuration& c) {
  if (c.terminal()) throw std::invalid_argument("legal_nonmonotonic: terminal configuration");
  if (c.i == kNone) return {TransitionKind::Shift};
  return {TransitionKind::Shift, TransitionKind::NoArc, TransitionKind::LeftArc, TransitionKind::RightArc};
}

inline KindSet legal_kinds(const Configuration& c, System system) {
  return system == System::Monotonic ? legal_monotonic(c) : legal_nonmonotonic(c);
}

inline void apply_monotonic(Configuration& c, const Transition& t) {
  detail::require_open(c);
  if (t.kind != TransitionKind::Shift && c.i == kNone) {
    throw IllegalTransition(std::string(kind_name(t.kind)) + " needs a non-empty left list");
  }
  if (t.kind == TransitionKind::LeftArc) {
    if (c.arcs.has_head(c.i)) {
      throw IllegalTransition("LeftArc violates single-head: " + std::to_string(c.i) + " already has head " +
                              std::to_string(c.arcs.head(c.i)));
    }
    if (c.arcs.path_exists(c.i, c.j)) {
      throw IllegalTransition("LeftArc violates acyclicity: path " + std::to_string(c.i) + " ->* " +
                              std::to_string(c.j));
    }
    c.arcs.add({c.j, c.i, t.label});
  } else if (t.kind == TransitionKind::RightArc) {
    if (c.arcs.has_head(c.j)) {
      throw IllegalTransition("RightArc violates single-head: " + std::to_string(c.j) + " already has head " +
                              std::to_string(c.arcs.head(c.j)));
    }
    if (c.arcs.path_exists(c.j, c.i)) {
      throw IllegalTransition("RightArc violates acyclicity: path " + std::to_string(c.j) + " ->* " +
                              std::to_string(c.i));
    }
    c.arcs.add({c.i, c.j, t.label});
  }
  detail::move_focus(c, t.kind);
}

inline Configuration step_monotonic(Configuration c, const Transition& t) {
  apply_monotonic(c, t);
  return c;
}

// Arcs deleted by one non-monotonic arc transition.
struct Removed {
  std::optional<Arc> replaced;  // old head of the new dependent
  std::optional<Arc> broken;    // arc into the new head that would close a cycle

  std::size_t count() const noexcept { return replaced.has_value() + broken.has_value(); }
};

// Arc transitions may replace a head or break a cycle. Removal sets are read from A before any modification.
inline Removed apply_nonmonotonic(Configuration& c, const Transition& t) {
  detail::require_open(c);
  Removed removed;
  if (t.kind == TransitionKind::Shift || t.kind == TransitionKind::NoArc) {
    if (t.kind == TransitionKind::NoArc && c.i == kNone) {
      throw IllegalTransition("NoArc needs a non-empty left list");
    }
    detail::move_focus(c, t.kind);
    return removed;
  }
  if (c.i == kNone) throw IllegalTransition(std::string(kind_name(t.kind)) + " needs a non-empty left list");

  const bool left = t.kind == TransitionKind::LeftArc;
  const int h = left ? c.j : c.i;
  const int d = left ? c.i : c.j;
  ArcSet& a = c.arcs;

  if (a.head(d) == h) {
    // The arc is already there; only the label changes.
    a.relabel(d, t.label);
    detail::move_focus(c, t.kind);
    return removed;
  }
  const int k = a.head(h);
  if (k != kNone && a.path_exists(d, k)) removed.broken = Arc{k, h, a.label(h)};
  if (a.has_head(d)) removed.replaced = Arc{a.head(d), d, a.label(d)};

  if (removed.broken) a.remove(h);
  if (removed.replaced) a.remove(d);
  a.add({h, d, t.label});
  detail::move_focus(c, t.kind);
  return removed;
}

inline Configuration step_nonmonotonic(Configuration c, const Transition& t) {
  apply_nonmonotonic(c, t);
  return c;
}

inline void apply(Configuration& c, const Transition& t, System system) {
  if (system == System::Monotonic) {
    apply_monotonic(c, t);
  } else {
    apply_nonmonotonic(c, t);
  }
}

inline Configuration step(Configuration c, const Transition& t, System system) {
  apply(c, t, system);
  return c;
}

}  // namespace covington

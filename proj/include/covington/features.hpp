#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "labels.hpp"
#include "transition_system.hpp"
#include "treebank.hpp"

namespace covington {

using FeatureId = std::uint64_t;
using FeatureVector = std::vector<FeatureId>;

struct FeatureOptions {
  bool raw_distance = false;  // default buckets d into 1..5, 6-7, 8-10, >10
};

inline constexpr int kTemplateVersion = 1;

// Templates as "NODE.attrs" parts joined by '+'. Attributes: w form, p tag,
// l label of the node's own arc, d focus distance, vl/vr valencies, sl/sr
// label sets. Nodes: L0 = i, R0 = j, L1 = i-1, R1/R2 = j+1/j+2, h/h2 head and
// grandparent, l/l' farthest/closest left dependent, r/r' likewise rightward.
inline constexpr std::array<std::string_view, 87> kTemplateNames = {
    // unigrams
    "L0.w", "L0.p", "L0.wp", "L0.l", "L0h.w", "L0h.p", "L0h.l", "L0l'.w", "L0l'.p", "L0l'.l",
    "L0r'.w", "L0r'.p", "L0r'.l", "L0h2.w", "L0h2.p", "L0h2.l", "L0l.w", "L0l.p", "L0l.l", "L0r.w",
    "L0r.p", "L0r.l", "L0.wd", "L0.pd", "L0.wvr", "L0.pvr", "L0.wvl", "L0.pvl", "L0.wsl", "L0.psl",
    "L0.wsr", "L0.psr", "L1.w", "L1.p", "L1.wp", "R0.w", "R0.p", "R0.wp", "R0h.w", "R0h.p",
    "R0h.l", "R0h2.w", "R0h2.p", "R0l'.w", "R0l'.p", "R0l'.l", "R0l.w", "R0l.p", "R0l.l", "R0.wd",
    "R0.pd", "R0.wvl", "R0.pvl", "R0.wsl", "R0.psl", "R1.w", "R1.p", "R1.wp", "R2.w", "R2.p",
    "R2.wp", "CL.w", "CL.p", "CL.wp", "CR.w", "CR.p", "CR.wp",
    // pairs
    "L0.wp+R0.wp", "L0.wp+R0.w", "L0.w+R0.wp", "L0.wp+R0.p", "L0.p+R0.wp", "L0.w+R0.w", "L0.p+R0.p",
    "R0.p+R1.p", "L0.w+R0.wd", "L0.p+R0.pd",
    // triples
    "R0.p+R1.p+R2.p", "L0.p+R0.p+R1.p", "L0h.p+L0.p+R0.p", "L0.p+L0l'.p+R0.p", "L0.p+L0r'.p+R0.p",
    "L0.p+R0.p+R0l'.p", "L0.p+L0l'.p+L0l.p", "L0.p+L0r'.p+L0r.p", "L0.p+L0h.p+L0h2.p",
    "R0.p+R0l'.p+R0l.p"};

inline constexpr std::size_t kTemplateCount = kTemplateNames.size();

namespace detail {

enum class Node : std::uint8_t { L0, L0h, L0h2, L0l, L0lc, L0r, L0rc, L1, R0, R0h, R0h2, R0l, R0lc, R1, R2, CL, CR, Count };
enum class Attr : std::uint8_t { W, P, L, D, VL, VR, SL, SR };

struct Part {
  Node node;
  Attr attr;
};

using TemplateParts = std::vector<Part>;

inline Node parse_node(std::string_view s) {
  static constexpr std::pair<std::string_view, Node> table[] = {
      {"L0", Node::L0},   {"L0h", Node::L0h},   {"L0h2", Node::L0h2}, {"L0l", Node::L0l}, {"L0l'", Node::L0lc},
      {"L0r", Node::L0r}, {"L0r'", Node::L0rc}, {"L1", Node::L1},     {"R0", Node::R0},   {"R0h", Node::R0h},
      {"R0h2", Node::R0h2}, {"R0l", Node::R0l}, {"R0l'", Node::R0lc}, {"R1", Node::R1},   {"R2", Node::R2},
      {"CL", Node::CL},   {"CR", Node::CR}};
  for (auto [name, node] : table) {
    if (name == s) return node;
  }
  throw std::logic_error("unknown feature node " + std::string(s));
}

inline TemplateParts parse_template(std::string_view name) {
  TemplateParts parts;
  while (!name.empty()) {
    const std::size_t plus = name.find('+');
    std::string_view piece = name.substr(0, plus);
    name = plus == std::string_view::npos ? std::string_view() : name.substr(plus + 1);
    const std::size_t dot = piece.find('.');
    const Node node = parse_node(piece.substr(0, dot));
    std::string_view attrs = piece.substr(dot + 1);
    while (!attrs.empty()) {
      Attr a;
      std::size_t len = 1;
      switch (attrs[0]) {
        case 'w': a = Attr::W; break;
        case 'p': a = Attr::P; break;
        case 'l': a = Attr::L; break;
        case 'd': a = Attr::D; break;
        case 'v': a = attrs.at(1) == 'l' ? Attr::VL : Attr::VR; len = 2; break;
        case 's': a = attrs.at(1) == 'l' ? Attr::SL : Attr::SR; len = 2; break;
        default: throw std::logic_error("unknown feature attribute in " + std::string(piece));
      }
      parts.push_back({node, a});
      attrs.remove_prefix(len);
    }
  }
  return parts;
}

inline const std::vector<TemplateParts>& template_parts() {
  static const std::vector<TemplateParts> parts = [] {
    std::vector<TemplateParts> out;
    for (std::string_view name : kTemplateNames) out.push_back(parse_template(name));
    return out;
  }();
  return parts;
}

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline constexpr std::string_view kNull = "<NULL>";

// Everything the templates look at, resolved once per configuration.
class FeatureContext {
 public:
  FeatureContext(const Configuration& c, const Sentence& s, const LabelTable& labels, const FeatureOptions& options)
      : c_(c), s_(s), labels_(labels), options_(options) {
    nodes_.fill(kNone);
    const int n = c.n();
    const auto head = [&](int k) { return k == kNone ? kNone : c.arcs.head(k); };
    set(Node::R0, c.j);
    if (c.j + 1 <= n) set(Node::R1, c.j + 1);
    if (c.j + 2 <= n) set(Node::R2, c.j + 2);
    set(Node::R0h, head(c.j));
    set(Node::R0h2, head(get(Node::R0h)));
    set(Node::R0l, farthest_left(c.j));
    set(Node::R0lc, closest_left(c.j));
    if (c.i == kNone) return;
    set(Node::L0, c.i);
    if (c.i > 1) set(Node::L1, c.i - 1);
    set(Node::L0h, head(c.i));
    set(Node::L0h2, head(get(Node::L0h)));
    set(Node::L0l, farthest_left(c.i));
    set(Node::L0lc, closest_left(c.i));
    set(Node::L0r, farthest_right(c.i));
    set(Node::L0rc, closest_right(c.i));
    // CL/CR: first and last words strictly between the focus words whose head
    // lies outside [i, j]; words without a head count as outside.
    for (int k = c.i + 1; k < c.j; ++k) {
      const int h = c.arcs.head(k);
      if (h == kNone || h < c.i || h > c.j) {
        if (get(Node::CL) == kNone) set(Node::CL, k);
        set(Node::CR, k);
      }
    }
  }

  std::string value(const TemplateParts& parts) const {
    std::string out;
    for (std::size_t m = 0; m < parts.size(); ++m) {
      if (m) out += '/';
      out += part_value(parts[m]);
    }
    return out;
  }

 private:
  int get(Node n) const { return nodes_[static_cast<std::size_t>(n)]; }
  void set(Node n, int k) { nodes_[static_cast<std::size_t>(n)] = k; }

  int farthest_left(int x) const {
    for (int k = 1; k < x; ++k) {
      if (c_.arcs.head(k) == x) return k;
    }
    return kNone;
  }
  int closest_left(int x) const {
    for (int k = x - 1; k >= 1; --k) {
      if (c_.arcs.head(k) == x) return k;
    }
    return kNone;
  }
  int farthest_right(int x) const {
    for (int k = c_.n(); k > x; --k) {
      if (c_.arcs.head(k) == x) return k;
    }
    return kNone;
  }
  int closest_right(int x) const {
    for (int k = x + 1; k <= c_.n(); ++k) {
      if (c_.arcs.head(k) == x) return k;
    }
    return kNone;
  }

  std::string label_name(LabelId id) const {
    if (id == kNoLabel || static_cast<std::size_t>(id) >= labels_.size()) return "_";
    return labels_.name(id);
  }

  std::string dependents(int x, bool left, bool count) const {
    std::vector<std::string> names;
    const int lo = left ? 1 : x + 1, hi = left ? x - 1 : c_.n();
    for (int k = lo; k <= hi; ++k) {
      if (c_.arcs.head(k) == x) names.push_back(label_name(c_.arcs.label(k)));
    }
    if (count) return std::to_string(names.size());
    std::sort(names.begin(), names.end());
    std::string out;
    for (std::size_t m = 0; m < names.size(); ++m) {
      if (m) out += ',';
      out += names[m];
    }
    return out;
  }

  std::string distance() const {
    if (c_.i == kNone) return std::string(kNull);
    const int d = c_.j - c_.i;
    if (options_.raw_distance || d <= 5) return std::to_string(d);
    if (d <= 7) return "6-7";
    if (d <= 10) return "8-10";
    return ">10";
  }

  std::string part_value(const Part& part) const {
    if (part.attr == Attr::D) return distance();
    const int k = get(part.node);
    if (k == kNone) return std::string(kNull);
    const Token& t = s_.token(k);
    switch (part.attr) {
      case Attr::W: return t.form;
      case Attr::P: return t.pos == "_" ? t.cpos : t.pos;
      case Attr::L: return c_.arcs.has_head(k) ? label_name(c_.arcs.label(k)) : std::string("<none>");
      case Attr::VL: return dependents(k, true, true);
      case Attr::VR: return dependents(k, false, true);
      case Attr::SL: return dependents(k, true, false);
      case Attr::SR: return dependents(k, false, false);
      case Attr::D: break;
    }
    return std::string(kNull);
  }

  const Configuration& c_;
  const Sentence& s_;
  const LabelTable& labels_;
  const FeatureOptions& options_;
  std::array<int, static_cast<std::size_t>(Node::Count)> nodes_{};
};

inline void check_sentence(const Configuration& c, const Sentence& s) {
  if (c.n() != s.size()) throw std::invalid_argument("extract_features: sentence/configuration size mismatch");
  if (c.terminal()) throw std::invalid_argument("extract_features: terminal configuration");
}

}  // namespace detail

// Template index in the top byte, hash of the instantiated value below it.
inline FeatureId make_feature(std::size_t template_index, std::string_view value) {
  return (static_cast<std::uint64_t>(template_index) << 56) | (detail::fnv1a64(value) & ((1ull << 56) - 1));
}

inline std::size_t feature_template(FeatureId f) { return static_cast<std::size_t>(f >> 56); }

inline FeatureVector extract_features(const Configuration& c, const Sentence& s, const LabelTable& labels,
                                      const FeatureOptions& options = {}) {
  detail::check_sentence(c, s);
  const detail::FeatureContext ctx(c, s, labels, options);
  const auto& templates = detail::template_parts();
  FeatureVector f;
  f.reserve(kTemplateCount);
  for (std::size_t t = 0; t < kTemplateCount; ++t) f.push_back(make_feature(t, ctx.value(templates[t])));
  return f;
}

// (template name, value) pairs, in template order.
inline std::vector<std::pair<std::string, std::string>> describe_features(const Configuration& c, const Sentence& s,
                                                                          const LabelTable& labels,
                                                                          const FeatureOptions& options = {}) {
  detail::check_sentence(c, s);
  const detail::FeatureContext ctx(c, s, labels, options);
  const auto& templates = detail::template_parts();
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t t = 0; t < kTemplateCount; ++t) out.emplace_back(kTemplateNames[t], ctx.value(templates[t]));
  return out;
}

// One "name = value" line per template.
inline std::string dump_features(const Configuration& c, const Sentence& s, const LabelTable& labels,
                                 const FeatureOptions& options = {}) {
  std::string out;
  for (const auto& [name, value] : describe_features(c, s, labels, options)) {
    out += name;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

}  // namespace covington

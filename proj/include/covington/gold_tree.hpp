#pragma once

#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "labels.hpp"
#include "transition_system.hpp"
#include "treebank.hpp"

namespace covington {

// Gold heads of one sentence. Tokens headed by the artificial root contribute
// no arc: t_G holds the arcs between words only, so the loss |t_G \ A| only
// counts word-to-word attachments.
class GoldTree {
 public:
  GoldTree() = default;

  // heads[d] for d in 1..n (heads[0] ignored); 0 = attached to the root.
  explicit GoldTree(std::vector<int> heads, std::vector<LabelId> labels = {})
      : head_(std::move(heads)), label_(std::move(labels)) {
    if (head_.empty()) head_.push_back(0);
    if (label_.empty()) label_.assign(head_.size(), kNoLabel);
    if (label_.size() != head_.size()) throw std::invalid_argument("GoldTree: label/head size mismatch");
    const int n = size();
    head_[0] = 0;
    for (int d = 1; d <= n; ++d) {
      const int h = head_[static_cast<std::size_t>(d)];
      if (h < 0 || h > n || h == d) {
        throw std::invalid_argument("GoldTree: bad head " + std::to_string(h) + " for " + std::to_string(d));
      }
      int k = d;
      for (int steps = 0; k != 0; ++steps) {
        if (steps > n) throw std::invalid_argument("GoldTree: cycle through " + std::to_string(d));
        k = head_[static_cast<std::size_t>(k)];
      }
      if (h != 0) arcs_.push_back({h, d, label_[static_cast<std::size_t>(d)]});
    }
  }

  // Tokens not mentioned are attached to the root.
  static GoldTree from_arcs(int n, std::initializer_list<Arc> arcs) {
    std::vector<int> heads(static_cast<std::size_t>(n) + 1, 0);
    std::vector<LabelId> labels(static_cast<std::size_t>(n) + 1, kNoLabel);
    for (const Arc& a : arcs) {
      if (a.dep < 1 || a.dep > n) throw std::invalid_argument("GoldTree: dependent out of range");
      heads[static_cast<std::size_t>(a.dep)] = a.head;
      labels[static_cast<std::size_t>(a.dep)] = a.label;
    }
    return GoldTree(std::move(heads), std::move(labels));
  }

  // Labels are looked up in `labels` when given.
  static GoldTree from_sentence(const Sentence& s, const LabelTable* labels = nullptr) {
    std::vector<int> heads(static_cast<std::size_t>(s.size()) + 1, 0);
    std::vector<LabelId> ids(heads.size(), kNoLabel);
    for (const Token& t : s.tokens()) {
      if (t.head == kUnknownHead) throw std::invalid_argument("GoldTree: sentence lacks gold heads");
      heads[static_cast<std::size_t>(t.index)] = t.head;
      if (labels) ids[static_cast<std::size_t>(t.index)] = labels->find(t.label);
    }
    return GoldTree(std::move(heads), std::move(ids));
  }

  int size() const noexcept { return static_cast<int>(head_.size()) - 1; }
  int head(int dep) const { return head_.at(static_cast<std::size_t>(dep)); }
  LabelId label(int dep) const { return label_.at(static_cast<std::size_t>(dep)); }
  bool contains(int head, int dep) const { return head != 0 && this->head(dep) == head; }
  bool root_attached(int dep) const { return head(dep) == 0; }

  // Word-to-word gold arcs, ordered by dependent.
  std::span<const Arc> arcs() const noexcept { return arcs_; }

 private:
  std::vector<int> head_{0};
  std::vector<LabelId> label_{kNoLabel};
  std::vector<Arc> arcs_;
};

}  // namespace covington

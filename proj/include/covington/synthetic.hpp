#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "gold_tree.hpp"
#include "random.hpp"
#include "treebank.hpp"

namespace covington {

struct SyntheticOptions {
  std::size_t sentences = 200;
  int min_length = 5;
  int max_length = 12;
  std::uint64_t seed = 7;
};

namespace detail {

struct Lexicon {
  std::vector<std::string_view> words;
  std::string_view tag;
};

inline const Lexicon& lexicon(char category) {
  static const Lexicon adv{{"today", "often", "rarely", "now"}, "RB"};
  static const Lexicon det{{"the", "a", "every", "some"}, "DT"};
  static const Lexicon adj{{"big", "old", "red", "quiet", "happy"}, "JJ"};
  static const Lexicon noun{{"dog", "cat", "man", "river", "house", "idea", "bird", "car"}, "NN"};
  static const Lexicon verb{{"saw", "likes", "took", "found", "gave", "made"}, "VB"};
  static const Lexicon rel{{"who", "which", "that"}, "WP"};
  static const Lexicon prep{{"in", "near", "with", "under"}, "IN"};
  static const Lexicon part{{"up", "out", "away", "off"}, "RP"};
  switch (category) {
    case 'B': return adv;
    case 'D': return det;
    case 'A': return adj;
    case 'N': return noun;
    case 'V': return verb;
    case 'R': return rel;
    case 'P': return prep;
    default: return part;
  }
}

class SentenceBuilder {
 public:
  explicit SentenceBuilder(Rng& rng) : rng_(rng) {}

  // Adds a word; returns its index. head may be patched later.
  int add(char category, int head, std::string label) {
    const Lexicon& lex = lexicon(category);
    Token t;
    t.index = static_cast<int>(tokens_.size()) + 1;
    t.form = std::string(lex.words[rng_.below(lex.words.size())]);
    t.lemma = t.form;
    t.cpos = std::string(lex.tag.substr(0, 1));
    t.pos = std::string(lex.tag);
    t.head = head;
    t.label = std::move(label);
    tokens_.push_back(std::move(t));
    return tokens_.back().index;
  }

  void set_head(int dep, int head) { tokens_[static_cast<std::size_t>(dep) - 1].head = head; }

  // Optional determiner and adjective in front of a noun.
  int noun_phrase(int head, const std::string& label) {
    std::vector<int> mods;
    if (rng_.bernoulli(0.7)) mods.push_back(add('D', 0, "DET"));
    if (rng_.bernoulli(0.3)) mods.push_back(add('A', 0, "AMOD"));
    const int n = add('N', head, label);
    for (int m : mods) set_head(m, n);
    return n;
  }

  std::vector<Token> take() { return std::move(tokens_); }

 private:
  Rng& rng_;
  std::vector<Token> tokens_;
};

}  // namespace detail

// Deterministic toy treebank. Word order: [adv] subject verb [object] [rel]
// [pp [rel]] [particle]. Relative words hang off the subject or object noun
// across the verb or the prepositional phrase, so many arcs are non-projective.
inline Corpus synthetic_treebank(const SyntheticOptions& options = {}) {
  Rng rng(options.seed);
  Corpus corpus;
  while (corpus.size() < options.sentences) {
    detail::SentenceBuilder b(rng);
    std::vector<int> to_verb;
    if (rng.bernoulli(0.3)) to_verb.push_back(b.add('B', 0, "ADV"));
    const int subj = b.noun_phrase(0, "SUBJ");
    to_verb.push_back(subj);
    const int verb = b.add('V', 0, "ROOT");
    const int obj = rng.bernoulli(0.8) ? b.noun_phrase(verb, "OBJ") : 0;
    if (rng.bernoulli(0.7)) b.add('R', subj, "REL");
    if (rng.bernoulli(0.5)) {
      const int p = b.add('P', verb, "PREP");
      b.noun_phrase(p, "POBJ");
      // Extraposed relative of the object, crossing the prepositional phrase.
      if (obj && rng.bernoulli(0.4)) b.add('R', obj, "REL");
    }
    if (rng.bernoulli(0.4)) b.add('X', verb, "PRT");
    for (int d : to_verb) b.set_head(d, verb);
    std::vector<Token> tokens = b.take();
    const int n = static_cast<int>(tokens.size());
    if (n < options.min_length || n > options.max_length) continue;
    corpus.emplace_back(std::move(tokens));
  }
  return corpus;
}

// Random tree over n words: each word in a random order attaches to a word
// placed before it, the first to the root. Non-projective in general.
inline GoldTree random_tree(int n, Rng& rng, double extra_root = 0.1) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = k + 1;
  rng.shuffle(order);
  std::vector<int> heads(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (rng.bernoulli(extra_root)) continue;
    heads[static_cast<std::size_t>(order[k])] = order[rng.below(k)];
  }
  return GoldTree(std::move(heads));
}

// Sentence whose gold analysis is the given tree, with placeholder words.
inline Sentence sentence_from_tree(const GoldTree& g) {
  std::vector<Token> tokens;
  for (int d = 1; d <= g.size(); ++d) {
    Token t;
    t.index = d;
    t.form = "w" + std::to_string(d);
    t.lemma = t.form;
    t.cpos = t.pos = "X";
    t.head = g.head(d);
    t.label = g.head(d) == 0 ? "ROOT" : "DEP";
    tokens.push_back(std::move(t));
  }
  return Sentence(std::move(tokens));
}

// Arc h->d is non-projective when a word strictly between them is not
// dominated by h.
inline bool non_projective(const Sentence& s, int dep) {
  const int h = s.token(dep).head;
  if (h <= 0) return false;
  for (int k = std::min(h, dep) + 1; k < std::max(h, dep); ++k) {
    int a = k;
    while (a != 0 && a != h) a = s.token(a).head;
    if (a != h) return true;
  }
  return false;
}

inline double non_projective_fraction(const Corpus& corpus) {
  std::size_t arcs = 0, crossing = 0;
  for (const Sentence& s : corpus) {
    for (const Token& t : s.tokens()) {
      ++arcs;
      crossing += non_projective(s, t.index);
    }
  }
  return arcs == 0 ? 0.0 : static_cast<double>(crossing) / static_cast<double>(arcs);
}

}  // namespace covington

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "labels.hpp"

namespace covington {

inline constexpr int kUnknownHead = -1;

struct Token {
  int index = 0;
  std::string form;
  std::string lemma = "_";
  std::string cpos = "_";
  std::string pos = "_";
  std::string feats = "_";
  int head = kUnknownHead;  // 0 is the artificial root
  std::string label = "_";
  // Projective columns, carried through untouched.
  std::string phead = "_";
  std::string pdeprel = "_";

  friend bool operator==(const Token&, const Token&) = default;
};

class Sentence {
 public:
  Sentence() = default;
  explicit Sentence(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  int size() const noexcept { return static_cast<int>(tokens_.size()); }
  // 1-based, like token ids.
  const Token& token(int index) const { return tokens_.at(static_cast<std::size_t>(index) - 1); }
  Token& token(int index) { return tokens_.at(static_cast<std::size_t>(index) - 1); }
  const std::vector<Token>& tokens() const noexcept { return tokens_; }

  bool has_gold() const noexcept {
    for (const Token& t : tokens_) {
      if (t.head == kUnknownHead) return false;
    }
    return true;
  }

  friend bool operator==(const Sentence&, const Sentence&) = default;

 private:
  std::vector<Token> tokens_;
};

using Corpus = std::vector<Sentence>;

// Predicted analysis of one sentence; index 0 is unused.
struct PredictedTree {
  std::vector<int> heads;
  std::vector<std::string> labels;

  friend bool operator==(const PredictedTree&, const PredictedTree&) = default;
};

struct ReadOptions {
  // Parser input may leave HEAD/DEPREL as "_".
  bool require_heads = true;
};

namespace detail {

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

inline bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

inline void validate_heads(const std::vector<Token>& tokens, std::size_t sentence) {
  const int n = static_cast<int>(tokens.size());
  for (const Token& t : tokens) {
    if (t.head == kUnknownHead) continue;
    if (t.head < 0 || t.head > n) {
      throw ValidationError(sentence, "head " + std::to_string(t.head) + " of token " +
                                          std::to_string(t.index) + " out of range");
    }
    if (t.head == t.index) {
      throw ValidationError(sentence, "token " + std::to_string(t.index) + " is its own head (cycle)");
    }
  }
  // Each token has one head by construction, so a walk longer than n means a cycle.
  for (const Token& t : tokens) {
    int k = t.index;
    for (int steps = 0; k > 0; ++steps) {
      if (steps > n) {
        throw ValidationError(sentence, "cycle through token " + std::to_string(t.index));
      }
      k = tokens[static_cast<std::size_t>(k) - 1].head;
    }
  }
}

}  // namespace detail

inline Corpus parse_conllx(std::string_view text, const ReadOptions& options = {}) {
  Corpus corpus;
  std::vector<Token> block;

  auto flush = [&] {
    if (block.empty()) return;
    detail::validate_heads(block, corpus.size() + 1);
    corpus.emplace_back(std::move(block));
    block.clear();
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (detail::is_blank(line)) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;

    auto f = detail::split_tabs(line);
    if (f.size() != 10) {
      throw FormatError(line_no, "expected 10 tab-separated columns, found " + std::to_string(f.size()));
    }
    const std::size_t sentence = corpus.size() + 1;
    Token t;
    if (!detail::parse_int(f[0], t.index)) {
      throw ValidationError(sentence, "bad token id '" + std::string(f[0]) + "' at line " +
                                          std::to_string(line_no));
    }
    if (t.index != static_cast<int>(block.size()) + 1) {
      throw ValidationError(sentence, "non-contiguous token ids: expected " +
                                          std::to_string(block.size() + 1) + ", found " +
                                          std::string(f[0]));
    }
    t.form = f[1];
    t.lemma = f[2];
    t.cpos = f[3];
    t.pos = f[4];
    t.feats = f[5];
    if (f[6] == "_" && !options.require_heads) {
      t.head = kUnknownHead;
    } else if (!detail::parse_int(f[6], t.head)) {
      throw ValidationError(sentence, "bad head '" + std::string(f[6]) + "' at line " +
                                          std::to_string(line_no));
    }
    t.label = f[7];
    t.phead = f[8];
    t.pdeprel = f[9];
    block.push_back(std::move(t));
  }
  flush();
  return corpus;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Corpus read_conllx(const std::filesystem::path& path, const ReadOptions& options = {}) {
  return parse_conllx(read_text_file(path), options);
}

inline PredictedTree gold_prediction(const Sentence& s) {
  PredictedTree p;
  p.heads.assign(static_cast<std::size_t>(s.size()) + 1, kUnknownHead);
  p.labels.assign(static_cast<std::size_t>(s.size()) + 1, std::string());
  p.heads[0] = 0;
  for (const Token& t : s.tokens()) {
    p.heads[static_cast<std::size_t>(t.index)] = t.head;
    p.labels[static_cast<std::size_t>(t.index)] = t.label;
  }
  return p;
}

inline std::string emit_conllx(const Corpus& corpus, const std::vector<PredictedTree>& predictions) {
  if (predictions.size() != corpus.size()) {
    throw std::logic_error("emit_conllx: " + std::to_string(predictions.size()) +
                           " predictions for " + std::to_string(corpus.size()) + " sentences");
  }
  std::string out;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const Sentence& sentence = corpus[s];
    const PredictedTree& p = predictions[s];
    const int n = sentence.size();
    if (p.heads.size() != static_cast<std::size_t>(n) + 1 || p.labels.size() != p.heads.size()) {
      throw std::logic_error("emit_conllx: prediction size mismatch in sentence " + std::to_string(s + 1));
    }
    for (const Token& t : sentence.tokens()) {
      const auto k = static_cast<std::size_t>(t.index);
      if (p.heads[k] < 0 || p.heads[k] > n) {
        throw std::logic_error("emit_conllx: token " + std::to_string(t.index) + " of sentence " +
                               std::to_string(s + 1) + " has no head");
      }
      out += std::to_string(t.index);
      for (const std::string* field : {&t.form, &t.lemma, &t.cpos, &t.pos, &t.feats}) {
        out += '\t';
        out += *field;
      }
      out += '\t';
      out += std::to_string(p.heads[k]);
      out += '\t';
      out += p.labels[k].empty() ? std::string("_") : p.labels[k];
      out += '\t';
      out += t.phead;
      out += '\t';
      out += t.pdeprel;
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

// Gold columns written back out.
inline std::string emit_conllx(const Corpus& corpus) {
  std::vector<PredictedTree> gold;
  gold.reserve(corpus.size());
  for (const Sentence& s : corpus) gold.push_back(gold_prediction(s));
  return emit_conllx(corpus, gold);
}

// Every DEPREL of the corpus, plus extra names such as the root label.
inline LabelTable collect_labels(const Corpus& corpus, const std::vector<std::string>& extra = {}) {
  std::vector<std::string> names(extra);
  for (const Sentence& s : corpus) {
    for (const Token& t : s.tokens()) names.push_back(t.label);
  }
  return LabelTable(std::move(names));
}

}  // namespace covington

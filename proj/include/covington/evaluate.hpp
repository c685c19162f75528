#pragma once

#include <array>
#include <cstdlib>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "treebank.hpp"

namespace covington {

// Arc transitions taken while parsing with the non-monotonic system. A
// transition is non-monotonic when it deleted an arc; those are split into
// gold-creating, harmful (a gold arc replaced by a non-gold one) and neutral.
struct NonMonotonicArcStats {
  std::size_t arc_transitions = 0;
  std::size_t non_monotonic = 0;
  std::size_t gold_creating = 0;
  std::size_t harmful = 0;
  std::size_t neutral = 0;

  NonMonotonicArcStats& operator+=(const NonMonotonicArcStats& o) {
    arc_transitions += o.arc_transitions;
    non_monotonic += o.non_monotonic;
    gold_creating += o.gold_creating;
    harmful += o.harmful;
    neutral += o.neutral;
    return *this;
  }

  static double pct(std::size_t part, std::size_t whole) {
    return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
  }
  double non_monotonic_pct() const { return pct(non_monotonic, arc_transitions); }
  double gold_creating_pct() const { return pct(gold_creating, non_monotonic); }
  double harmful_pct() const { return pct(harmful, non_monotonic); }
  double neutral_pct() const { return pct(neutral, non_monotonic); }

  friend bool operator==(const NonMonotonicArcStats&, const NonMonotonicArcStats&) = default;
};

struct LengthBucket {
  std::string name;
  std::size_t predicted = 0;
  std::size_t correct = 0;

  double precision() const { return predicted == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(predicted); }
};

struct EvalReport {
  std::size_t tokens = 0;
  double uas = 0.0;
  double las = 0.0;
  std::array<LengthBucket, 4> by_length{{{"1"}, {"2"}, {"3-7"}, {">7"}}};
  std::optional<NonMonotonicArcStats> nonmono;

  std::string summary() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "UAS %.2f LAS %.2f", uas, las);
    return buf;
  }

  std::string text() const {
    char buf[160];
    std::string out = summary() + "\n";
    std::snprintf(buf, sizeof buf, "tokens %zu (punctuation included)\n", tokens);
    out += buf;
    out += "precision by arc length:";
    for (const LengthBucket& b : by_length) {
      std::snprintf(buf, sizeof buf, "  %s: %.2f (%zu)", b.name.c_str(), b.precision(), b.predicted);
      out += buf;
    }
    out += "\n";
    if (nonmono) {
      std::snprintf(buf, sizeof buf,
                    "non-monotonic arcs: %.2f%% of %zu arc transitions; gold-creating %.2f%%, harmful %.2f%%, "
                    "neutral %.2f%%\n",
                    nonmono->non_monotonic_pct(), nonmono->arc_transitions, nonmono->gold_creating_pct(),
                    nonmono->harmful_pct(), nonmono->neutral_pct());
      out += buf;
    }
    return out;
  }

  nlohmann::json json() const {
    nlohmann::json j{{"tokens", tokens}, {"uas", uas}, {"las", las}};
    for (const LengthBucket& b : by_length) {
      j["precision_by_length"][b.name] = {{"precision", b.precision()}, {"arcs", b.predicted}};
    }
    if (nonmono) {
      j["nonmonotonic"] = {{"arc_transitions", nonmono->arc_transitions},
                           {"non_monotonic", nonmono->non_monotonic},
                           {"non_monotonic_pct", nonmono->non_monotonic_pct()},
                           {"gold_creating_pct", nonmono->gold_creating_pct()},
                           {"harmful_pct", nonmono->harmful_pct()},
                           {"neutral_pct", nonmono->neutral_pct()}};
    }
    return j;
  }
};

inline std::size_t length_bucket(int length) {
  if (length <= 1) return 0;
  if (length == 2) return 1;
  if (length <= 7) return 2;
  return 3;
}

inline EvalReport evaluate(const Corpus& gold, const std::vector<PredictedTree>& pred) {
  if (gold.size() != pred.size()) {
    throw std::invalid_argument("evaluate: " + std::to_string(pred.size()) + " predicted sentences for " +
                                std::to_string(gold.size()) + " gold");
  }
  EvalReport r;
  std::size_t head_ok = 0, both_ok = 0;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const Sentence& g = gold[s];
    const PredictedTree& p = pred[s];
    if (p.heads.size() != static_cast<std::size_t>(g.size()) + 1 || p.labels.size() != p.heads.size()) {
      throw std::invalid_argument("evaluate: sentence " + std::to_string(s + 1) + " has a different length");
    }
    for (const Token& t : g.tokens()) {
      const auto k = static_cast<std::size_t>(t.index);
      const bool head = p.heads[k] == t.head;
      ++r.tokens;
      head_ok += head;
      both_ok += head && p.labels[k] == t.label;
      if (p.heads[k] > 0) {
        LengthBucket& b = r.by_length[length_bucket(std::abs(p.heads[k] - t.index))];
        ++b.predicted;
        b.correct += head;
      }
    }
  }
  if (r.tokens > 0) {
    r.uas = 100.0 * static_cast<double>(head_ok) / static_cast<double>(r.tokens);
    r.las = 100.0 * static_cast<double>(both_ok) / static_cast<double>(r.tokens);
  }
  return r;
}

// Predictions read back from a parsed file.
inline EvalReport evaluate(const Corpus& gold, const Corpus& predicted) {
  if (gold.size() != predicted.size()) {
    throw std::invalid_argument("evaluate: " + std::to_string(predicted.size()) + " predicted sentences for " +
                                std::to_string(gold.size()) + " gold");
  }
  std::vector<PredictedTree> pred;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (predicted[s].size() != gold[s].size()) {
      throw std::invalid_argument("evaluate: sentence " + std::to_string(s + 1) + " has a different length");
    }
    pred.push_back(gold_prediction(predicted[s]));
  }
  return evaluate(gold, pred);
}

}  // namespace covington

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evaluate.hpp"
#include "features.hpp"
#include "gold_tree.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "transition_system.hpp"
#include "treebank.hpp"

namespace covington {

struct ExplorationSchedule {
  int warmup_iterations = 1;       // k: iterations that always follow the oracle
  double follow_prediction = 0.9;  // p: afterwards, follow the model this often
};

struct TrainOptions {
  OracleMode mode = OracleMode::dynamic_nonmonotonic(LossVariant::Upper);
  int iterations = 15;
  ExplorationSchedule exploration;
  std::uint64_t seed = 1;
  bool shuffle = true;
  FeatureOptions features;
  std::optional<System> system;  // defaults to the oracle's own system
  std::string root_label = "ROOT";
};

struct TrainStats {
  std::vector<std::size_t> updates_per_iteration;
  std::uint64_t steps = 0;
  std::size_t sentence_passes = 0;
  std::size_t passes_ending_in_gold = 0;  // final A equal to the gold arcs
};

inline const char* system_name(System s) { return s == System::Monotonic ? "monotonic" : "nonmonotonic"; }

inline std::string oracle_name(OracleKind k) {
  switch (k) {
    case OracleKind::Static: return "static";
    case OracleKind::DynamicMonotonic: return "dyn-mono";
    case OracleKind::DynamicNonMonotonic: return "dyn-nonmono";
  }
  return "?";
}

inline std::string loss_name(LossVariant v) {
  switch (v) {
    case LossVariant::Lower: return "lower";
    case LossVariant::PcUpper: return "pc-upper";
    case LossVariant::Upper: return "upper";
  }
  return "?";
}

inline System parse_system(const std::string& s) {
  if (s == "monotonic") return System::Monotonic;
  if (s == "nonmonotonic") return System::NonMonotonic;
  throw std::invalid_argument("unknown transition system '" + s + "'");
}

namespace detail {

inline bool same_arcs(const ArcSet& a, const GoldTree& g) {
  for (int d = 1; d <= a.size(); ++d) {
    if (a.head(d) != g.head(d)) return false;
  }
  return true;
}

}  // namespace detail

// Online training with error exploration; returns the averaged model.
inline Model train(const Corpus& corpus, const TrainOptions& options, TrainStats* stats = nullptr) {
  if (corpus.empty()) throw std::invalid_argument("train: empty corpus");
  if (options.iterations < 1) throw std::invalid_argument("train: iterations must be at least 1");
  const double p = options.exploration.follow_prediction;
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("train: exploration probability outside [0, 1]");
  const System system = options.system.value_or(system_for(options.mode));
  if (system != system_for(options.mode)) {
    throw std::invalid_argument(std::string("train: oracle ") + oracle_name(options.mode.kind) +
                                " does not match the " + system_name(system) + " system");
  }
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    if (!corpus[s].has_gold()) throw std::invalid_argument("train: sentence " + std::to_string(s + 1) + " lacks gold heads");
  }

  const LabelTable labels = collect_labels(corpus, {options.root_label});
  ModelMetadata meta;
  meta.system = system_name(system);
  meta.oracle = oracle_name(options.mode.kind);
  meta.loss = loss_name(options.mode.variant);
  meta.iterations = options.iterations;
  meta.seed = options.seed;
  meta.raw_distance = options.features.raw_distance;
  meta.explore_warmup = options.exploration.warmup_iterations;
  meta.explore_p = p;
  meta.root_label = options.root_label;
  Model model(ActionSpace(labels), meta);

  std::vector<GoldTree> golds;
  golds.reserve(corpus.size());
  for (const Sentence& s : corpus) golds.push_back(GoldTree::from_sentence(s, &labels));

  TrainStats local;
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  Rng rng(options.seed);
  std::uint64_t t = 0;

  for (int iter = 1; iter <= options.iterations; ++iter) {
    if (options.shuffle) rng.shuffle(order);
    std::size_t updates = 0;
    const bool explore = iter > options.exploration.warmup_iterations;
    for (std::size_t idx : order) {
      const Sentence& s = corpus[idx];
      const GoldTree& gold = golds[idx];
      Configuration c = initial_config(s.size());
      while (!c.terminal()) {
        ++t;
        const FeatureVector f = extract_features(c, s, labels, options.features);
        const auto scored = score_actions(model, f, model.actions().candidates(c, system));
        const Transition predicted = scored.front().transition;
        Transition next;
        if (options.mode.kind == OracleKind::Static) {
          next = static_next(c, gold);
          if (predicted != next) {
            perceptron_update(model, f, predicted, next, t);
            ++updates;
          }
        } else {
          const auto zero_cost = oracle_transitions(c, gold, options.mode);
          auto in_oracle = [&](const Transition& x) {
            return std::find(zero_cost.begin(), zero_cost.end(), x) != zero_cost.end();
          };
          auto it = std::find_if(scored.begin(), scored.end(), [&](const ScoredAction& a) { return in_oracle(a.transition); });
          if (it == scored.end()) throw std::logic_error("train: no oracle transition among the candidates");
          const Transition correct = it->transition;
          if (!in_oracle(predicted)) {
            perceptron_update(model, f, predicted, correct, t);
            ++updates;
          }
          next = explore && rng.bernoulli(p) ? predicted : correct;
        }
        apply(c, next, system);
      }
      ++local.sentence_passes;
      local.passes_ending_in_gold += detail::same_arcs(c.arcs, gold);
    }
    local.updates_per_iteration.push_back(updates);
  }
  local.steps = t;
  finalize_average(model, std::max<std::uint64_t>(t, 1));
  if (stats) *stats = std::move(local);
  return model;
}

struct ParseResult {
  PredictedTree tree;
  std::optional<NonMonotonicArcStats> arcs;  // non-monotonic system on a sentence with gold heads
};

// Greedy parse; words left without a head are attached to the root.
inline ParseResult parse_sentence(const Model& m, const Sentence& s, System system) {
  const LabelTable& labels = m.actions().labels();
  const FeatureOptions features{m.metadata().raw_distance};
  std::optional<GoldTree> gold;
  if (system == System::NonMonotonic && s.has_gold()) gold = GoldTree::from_sentence(s);

  NonMonotonicArcStats arcs;
  Configuration c = initial_config(s.size());
  while (!c.terminal()) {
    const Transition t = best_action(m, extract_features(c, s, labels, features), m.actions().candidates(c, system));
    if (system == System::Monotonic) {
      apply_monotonic(c, t);
      continue;
    }
    const int h = t.kind == TransitionKind::LeftArc ? c.j : c.i;
    const int d = t.kind == TransitionKind::LeftArc ? c.i : c.j;
    const Removed removed = apply_nonmonotonic(c, t);
    if (!is_arc(t.kind) || !gold) continue;
    ++arcs.arc_transitions;
    if (removed.count() == 0) continue;
    ++arcs.non_monotonic;
    const bool lost_gold = (removed.replaced && gold->contains(removed.replaced->head, removed.replaced->dep)) ||
                           (removed.broken && gold->contains(removed.broken->head, removed.broken->dep));
    if (gold->contains(h, d)) {
      ++arcs.gold_creating;
    } else if (lost_gold) {
      ++arcs.harmful;
    } else {
      ++arcs.neutral;
    }
  }

  ParseResult result;
  const auto n = static_cast<std::size_t>(s.size());
  result.tree.heads.assign(n + 1, 0);
  result.tree.labels.assign(n + 1, m.metadata().root_label);
  result.tree.labels[0].clear();
  for (int d = 1; d <= s.size(); ++d) {
    if (!c.arcs.has_head(d)) continue;
    result.tree.heads[static_cast<std::size_t>(d)] = c.arcs.head(d);
    const LabelId l = c.arcs.label(d);
    result.tree.labels[static_cast<std::size_t>(d)] = l == kNoLabel ? std::string("_") : labels.name(l);
  }
  if (gold) result.arcs = arcs;
  return result;
}

struct CorpusParse {
  std::vector<PredictedTree> trees;
  std::optional<NonMonotonicArcStats> arcs;
};

inline CorpusParse parse_corpus(const Model& m, const Corpus& corpus, System system) {
  CorpusParse out;
  for (const Sentence& s : corpus) {
    ParseResult r = parse_sentence(m, s, system);
    out.trees.push_back(std::move(r.tree));
    if (r.arcs) {
      if (!out.arcs) out.arcs.emplace();
      *out.arcs += *r.arcs;
    }
  }
  return out;
}

// Parses with the model's own system and scores against the corpus' gold.
inline EvalReport parse_and_evaluate(const Model& m, const Corpus& corpus) {
  const CorpusParse parsed = parse_corpus(m, corpus, parse_system(m.metadata().system));
  EvalReport report = evaluate(corpus, parsed.trees);
  report.nonmono = parsed.arcs;
  return report;
}

}  // namespace covington

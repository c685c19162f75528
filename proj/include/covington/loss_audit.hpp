#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "gold_tree.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "transition_system.hpp"
#include "treebank.hpp"

namespace covington {

struct SearchOptions {
  int max_length = 10;
  std::size_t max_expansions = 5'000'000;
  System system = System::NonMonotonic;
};

struct SearchStats {
  std::size_t expanded = 0;
  std::size_t generated = 0;
};

// Search frontier entry: state key plus the bound that orders the frontier.
struct SearchNode {
  Configuration config;
  int lower = 0;
  std::size_t order = 0;  // insertion counter, keeps pops deterministic
};

namespace detail {

inline std::string state_key(const Configuration& c) {
  std::string key;
  key.reserve(static_cast<std::size_t>(c.n()) + 2);
  key.push_back(static_cast<char>(c.i));
  key.push_back(static_cast<char>(c.j));
  for (int d = 1; d <= c.n(); ++d) key.push_back(static_cast<char>(c.arcs.head(d)));
  return key;
}

}  // namespace detail

// Runs the Covington criteria over the individually reachable gold arcs until
// the buffer is empty. Its final loss is an achievable value, i.e. an upper
// bound on the exact loss from c.
inline Configuration canonical_completion(Configuration c, const GoldTree& g, System system) {
  std::vector<int> target(static_cast<std::size_t>(c.n()) + 1, kNone);
  const auto reachable = system == System::Monotonic ? reachable_mono(c, g) : reachable_nonmono(c, g);
  for (const Arc& arc : reachable) target[static_cast<std::size_t>(arc.dep)] = arc.head;
  while (!c.terminal()) {
    Transition t = Transition::shift();
    if (c.i != kNone) {
      t = Transition::no_arc();
      if (target[static_cast<std::size_t>(c.i)] == c.j && !c.arcs.contains(c.j, c.i)) {
        t = Transition::left_arc(g.label(c.i));
      } else if (target[static_cast<std::size_t>(c.j)] == c.i && !c.arcs.contains(c.i, c.j)) {
        t = Transition::right_arc(g.label(c.j));
      }
      if (system == System::Monotonic && is_arc(t.kind) && !legal_monotonic(c).contains(t.kind)) {
        t = Transition::no_arc();
      }
    }
    apply(c, t, system);
  }
  return c;
}

// Least final loss |t_G \ A_final| over every transition sequence from c.
// Best-first on the positional lower bound |U|; a branch is cut when its lower
// bound reaches the best loss already realized, and a node is closed when the
// loss realized by its canonical completion equals its lower bound.
inline int exact_loss(const Configuration& start, const GoldTree& g, const SearchOptions& options = {},
                      SearchStats* stats = nullptr) {
  detail::check_sizes(start, g);
  if (start.n() > options.max_length) {
    throw SearchLimitError("exact_loss: sentence length " + std::to_string(start.n()) + " exceeds search limit " +
                           std::to_string(options.max_length));
  }
  auto lower_of = [&](const Configuration& c) { return static_cast<int>(unreachable_nonmono(c, g).size()); };

  int incumbent = final_loss(canonical_completion(start, g, options.system).arcs, g);
  auto later = [](const SearchNode& a, const SearchNode& b) {
    return a.lower != b.lower ? a.lower > b.lower : a.order > b.order;
  };
  std::priority_queue<SearchNode, std::vector<SearchNode>, decltype(later)> frontier(later);
  std::unordered_set<std::string> seen;
  std::size_t order = 0;
  SearchStats local;

  seen.insert(detail::state_key(start));
  frontier.push({start, lower_of(start), order++});
  while (!frontier.empty()) {
    SearchNode node = frontier.top();
    frontier.pop();
    if (node.lower >= incumbent) break;
    if (++local.expanded > options.max_expansions) {
      throw SearchLimitError("exact_loss: expansion budget exhausted");
    }
    if (node.config.terminal()) {
      incumbent = std::min(incumbent, final_loss(node.config.arcs, g));
      continue;
    }
    const int realized = final_loss(canonical_completion(node.config, g, options.system).arcs, g);
    incumbent = std::min(incumbent, realized);
    if (realized == node.lower) continue;

    for (TransitionKind kind : legal_kinds(node.config, options.system).to_vector()) {
      Configuration child = step(node.config, Transition{kind, kNoLabel}, options.system);
      const int lower = lower_of(child);
      if (lower >= incumbent) continue;
      if (!seen.insert(detail::state_key(child)).second) continue;
      ++local.generated;
      frontier.push({std::move(child), lower, order++});
    }
  }
  if (stats) *stats = local;
  return incumbent;
}

enum class AuditPolicyKind : std::uint8_t { RandomLegal, OracleNoise, ModelGuided };

struct AuditPolicy {
  using Chooser = std::function<Transition(const Configuration&, const Sentence&)>;

  AuditPolicyKind kind = AuditPolicyKind::OracleNoise;
  double noise = 0.1;
  Chooser chooser;  // ModelGuided only

  static AuditPolicy random_legal() { return {AuditPolicyKind::RandomLegal, 0.0, {}}; }
  static AuditPolicy oracle_noise(double p = 0.1) { return {AuditPolicyKind::OracleNoise, p, {}}; }
  static AuditPolicy model_guided(Chooser c) { return {AuditPolicyKind::ModelGuided, 0.0, std::move(c)}; }

  std::string describe() const {
    switch (kind) {
      case AuditPolicyKind::RandomLegal: return "random-legal";
      case AuditPolicyKind::ModelGuided: return "model-guided";
      case AuditPolicyKind::OracleNoise: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "oracle-noise(p=%g)", noise);
        return buf;
      }
    }
    return "?";
  }
};

struct BoundStats {
  std::size_t config_count = 0;
  double mean_lower = 0, mean_exact = 0, mean_pc_upper = 0, mean_upper = 0;
  double rel_lower = 0, rel_pc_upper = 0, rel_upper = 0;
  std::size_t violations = 0;
  std::size_t skipped_sentences = 0;
  std::string policy;

  std::string csv() const {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    out << "config_count,mean_lower,mean_exact,mean_pc_upper,mean_upper,rel_lower,rel_pc_upper,rel_upper\n"
        << config_count << ',' << mean_lower << ',' << mean_exact << ',' << mean_pc_upper << ',' << mean_upper
        << ',' << rel_lower << ',' << rel_pc_upper << ',' << rel_upper << '\n';
    return out.str();
  }

  std::string text() const {
    char buf[512];
    std::ostringstream out;
    out << "policy: " << policy << " (configurations sampled along its trajectories)\n";
    std::snprintf(buf, sizeof buf, "configurations: %zu  skipped sentences: %zu  bound violations: %zu\n",
                  config_count, skipped_sentences, violations);
    out << buf;
    std::snprintf(buf, sizeof buf, "%-10s %10s %10s\n", "", "mean", "rel.diff");
    out << buf;
    std::snprintf(buf, sizeof buf, "%-10s %10.5f %10.5f\n", "lower", mean_lower, rel_lower);
    out << buf;
    std::snprintf(buf, sizeof buf, "%-10s %10.5f %10s\n", "loss", mean_exact, "-");
    out << buf;
    std::snprintf(buf, sizeof buf, "%-10s %10.5f %10.5f\n", "pc-upper", mean_pc_upper, rel_pc_upper);
    out << buf;
    std::snprintf(buf, sizeof buf, "%-10s %10.5f %10.5f\n", "upper", mean_upper, rel_upper);
    out << buf;
    out << "relative difference = |bound - loss| / max(loss, 1), averaged over configurations\n";
    return out.str();
  }
};

struct AuditOptions {
  SearchOptions search;
  // Passes over the corpus before giving up on filling the budget.
  std::size_t max_passes = 1000;
};

// Walks configurations of the corpus sentences under the policy and compares
// the three bounds with the exact loss, for `budget` configurations.
inline BoundStats audit_bounds(const Corpus& corpus, const AuditPolicy& policy, std::size_t budget,
                               std::uint64_t seed, const AuditOptions& options = {}) {
  if (corpus.empty()) throw std::invalid_argument("audit_bounds: empty corpus");
  if (budget == 0) throw std::invalid_argument("audit_bounds: budget must be at least 1");
  if (policy.kind == AuditPolicyKind::ModelGuided && !policy.chooser) {
    throw std::invalid_argument("audit_bounds: model-guided policy without a model");
  }

  BoundStats stats;
  stats.policy = policy.describe();
  long long sum_lower = 0, sum_exact = 0, sum_pc = 0, sum_upper = 0;
  double rel_lower = 0, rel_pc = 0, rel_upper = 0;
  bool usable = false;

  for (std::size_t pass = 0; pass < options.max_passes && stats.config_count < budget; ++pass) {
    for (std::size_t s = 0; s < corpus.size() && stats.config_count < budget; ++s) {
      const Sentence& sentence = corpus[s];
      if (sentence.size() > options.search.max_length || !sentence.has_gold()) {
        if (pass == 0) ++stats.skipped_sentences;
        continue;
      }
      usable = true;
      const GoldTree gold = GoldTree::from_sentence(sentence);
      Rng rng(derive_seed(seed, pass * corpus.size() + s));
      Configuration c = initial_config(sentence.size());
      while (!c.terminal() && stats.config_count < budget) {
        const LossBounds b = loss_bounds_nonmono(c, gold);
        const int exact = exact_loss(c, gold, options.search);
        if (!(b.lower <= exact && exact <= b.pc_upper && b.pc_upper <= b.upper)) ++stats.violations;
        ++stats.config_count;
        sum_lower += b.lower;
        sum_exact += exact;
        sum_pc += b.pc_upper;
        sum_upper += b.upper;
        const double denom = std::max(exact, 1);
        rel_lower += std::abs(b.lower - exact) / denom;
        rel_pc += std::abs(b.pc_upper - exact) / denom;
        rel_upper += std::abs(b.upper - exact) / denom;

        Transition t;
        const auto legal = legal_nonmonotonic(c).to_vector();
        switch (policy.kind) {
          case AuditPolicyKind::RandomLegal:
            t = Transition{legal[rng.below(legal.size())], kNoLabel};
            break;
          case AuditPolicyKind::OracleNoise:
            if (rng.bernoulli(policy.noise)) {
              t = Transition{legal[rng.below(legal.size())], kNoLabel};
            } else {
              const auto zero_cost = oracle_transitions(c, gold, OracleMode::dynamic_nonmonotonic(LossVariant::Upper));
              t = zero_cost[rng.below(zero_cost.size())];
            }
            break;
          case AuditPolicyKind::ModelGuided:
            t = policy.chooser(c, sentence);
            break;
        }
        apply_nonmonotonic(c, t);
      }
    }
    if (!usable) break;
  }
  if (!usable) throw std::invalid_argument("audit_bounds: no sentence within the search limit");

  if (stats.config_count > 0) {
    const double count = static_cast<double>(stats.config_count);
    stats.mean_lower = static_cast<double>(sum_lower) / count;
    stats.mean_exact = static_cast<double>(sum_exact) / count;
    stats.mean_pc_upper = static_cast<double>(sum_pc) / count;
    stats.mean_upper = static_cast<double>(sum_upper) / count;
    stats.rel_lower = rel_lower / count;
    stats.rel_pc_upper = rel_pc / count;
    stats.rel_upper = rel_upper / count;
  }
  return stats;
}

}  // namespace covington

#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "covington/covington.hpp"

using namespace covington;

namespace {

Configuration config(int i, int j, ArcSet a) { return Configuration{i, j, std::move(a)}; }

}  // namespace

TEST(ExactLoss, Examples) {
  const GoldTree g = GoldTree::from_arcs(3, {{2, 1}, {2, 3}});
  EXPECT_EQ(exact_loss(initial_config(3), g), 0);
  EXPECT_EQ(exact_loss(config(2, 3, ArcSet(3)), g), 1);
  const GoldTree g4 = GoldTree::from_arcs(4, {{2, 1}, {2, 3}, {3, 4}});
  EXPECT_EQ(exact_loss(config(kNone, 5, ArcSet(4)), g4), 3);
}

TEST(ExactLoss, RefusesLongSentences) {
  const GoldTree g(std::vector<int>(12, 0));
  EXPECT_THROW(exact_loss(initial_config(11), g), SearchLimitError);
  EXPECT_NO_THROW(exact_loss(initial_config(11), g, {.max_length = 11}));
}

TEST(ExactLoss, MatchesUnprunedSearchUpToThreeWords) {
  for (int n = 1; n <= 3; ++n) {
    const auto configs = brute::reachable_configs(n, System::NonMonotonic);
    for (const GoldTree& g : brute::all_trees(n)) {
      std::map<std::string, int> memo;
      for (const Configuration& c : configs) {
        ASSERT_EQ(exact_loss(c, g), brute::min_loss(c, g, System::NonMonotonic, memo)) << brute::key(c);
      }
    }
  }
}

TEST(ExactLoss, MatchesUnprunedSearchOnFourWordSample) {
  const auto configs = brute::reachable_configs(4, System::NonMonotonic);
  const auto trees = brute::all_trees(4);
  Rng rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const GoldTree& g = trees[rng.below(trees.size())];
    std::map<std::string, int> memo;
    for (std::size_t k = 0; k < configs.size(); k += 1 + rng.below(7)) {
      ASSERT_EQ(exact_loss(configs[k], g), brute::min_loss(configs[k], g, System::NonMonotonic, memo));
    }
  }
}

TEST(ExactLoss, MonotonicSearchEqualsMonotonicLoss) {
  Rng rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(7));
    const GoldTree g = random_tree(n, rng);
    Configuration c = initial_config(n);
    const std::uint64_t len = rng.below(static_cast<std::uint64_t>(n * n + 1));
    for (std::uint64_t k = 0; k < len && !c.terminal(); ++k) {
      const auto kinds = legal_monotonic(c).to_vector();
      apply_monotonic(c, Transition{kinds[rng.below(kinds.size())], kNoLabel});
    }
    ASSERT_EQ(exact_loss(c, g, {.system = System::Monotonic}), loss_mono(c, g));
  }
}

TEST(Audit, EmptyCorpusIsAnError) {
  EXPECT_THROW(audit_bounds({}, AuditPolicy::random_legal(), 10, 1), std::invalid_argument);
}

TEST(Audit, GoldPathGivesEqualMeans) {
  const Corpus corpus = synthetic_treebank({10, 5, 8, 1});
  const BoundStats s = audit_bounds(corpus, AuditPolicy::oracle_noise(0.0), 200, 1);
  EXPECT_EQ(s.config_count, 200u);
  EXPECT_EQ(s.mean_lower, 0.0);
  EXPECT_EQ(s.mean_exact, 0.0);
  EXPECT_EQ(s.mean_upper, 0.0);
  EXPECT_EQ(s.rel_lower, 0.0);
  EXPECT_EQ(s.rel_pc_upper, 0.0);
  EXPECT_EQ(s.rel_upper, 0.0);
}

TEST(Audit, RandomPolicyIsOrderedAndDeterministic) {
  const Corpus corpus = synthetic_treebank({50, 5, 8, 4});
  const BoundStats a = audit_bounds(corpus, AuditPolicy::random_legal(), 1500, 9);
  const BoundStats b = audit_bounds(corpus, AuditPolicy::random_legal(), 1500, 9);
  EXPECT_EQ(a.csv(), b.csv());
  EXPECT_EQ(a.text(), b.text());
  EXPECT_EQ(a.violations, 0u);
  EXPECT_LE(a.mean_lower, a.mean_exact);
  EXPECT_LE(a.mean_exact, a.mean_pc_upper);
  EXPECT_LE(a.mean_pc_upper, a.mean_upper);
  EXPECT_GE(a.rel_lower, 0.0);
  EXPECT_NE(audit_bounds(corpus, AuditPolicy::random_legal(), 1500, 10).csv(), a.csv());
}

TEST(Audit, SkipsLongSentences) {
  Corpus corpus = synthetic_treebank({20, 9, 12, 4});
  corpus.push_back(synthetic_treebank({1, 5, 5, 4}).front());
  const BoundStats s = audit_bounds(corpus, AuditPolicy::oracle_noise(), 50, 1, {.search = {.max_length = 8}});
  EXPECT_EQ(s.skipped_sentences, 20u);
  EXPECT_EQ(s.config_count, 50u);
}

TEST(Audit, CsvHeader) {
  const Corpus corpus = synthetic_treebank({3, 5, 6, 4});
  const std::string csv = audit_bounds(corpus, AuditPolicy::oracle_noise(), 5, 1).csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "config_count,mean_lower,mean_exact,mean_pc_upper,mean_upper,rel_lower,rel_pc_upper,rel_upper");
}

#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "covington/covington.hpp"

using namespace covington;

namespace {

Configuration config(int i, int j, ArcSet a) { return Configuration{i, j, std::move(a)}; }

bool acyclic_single_head(const ArcSet& a) {
  for (int d = 1; d <= a.size(); ++d) {
    int k = d;
    for (int steps = 0; k != kNone; ++steps) {
      if (steps > a.size()) return false;
      k = a.head(k);
    }
  }
  return true;
}

}  // namespace

TEST(Config, InitialAndTerminal) {
  const Configuration c = initial_config(3);
  EXPECT_EQ(c.i, kNone);
  EXPECT_EQ(c.j, 1);
  EXPECT_TRUE(c.arcs.empty());
  EXPECT_FALSE(is_terminal(c));
  EXPECT_TRUE(is_terminal(config(kNone, 4, ArcSet(3))));
  EXPECT_FALSE(is_terminal(config(2, 3, ArcSet(3))));
  EXPECT_THROW(initial_config(0), std::invalid_argument);
  EXPECT_EQ(legal_monotonic(initial_config(1)), KindSet{TransitionKind::Shift});
}

TEST(ArcSetQueries, PathsAndComponents) {
  EXPECT_TRUE(path_exists(ArcSet(5), 5, 5));
  EXPECT_TRUE(path_exists(ArcSet(3, {{1, 2}, {2, 3}}), 1, 3));
  EXPECT_FALSE(path_exists(ArcSet(2, {{1, 2}}), 2, 1));
  EXPECT_FALSE(weakly_connected(ArcSet(2), 1, 2));
  EXPECT_TRUE(weakly_connected(ArcSet(2, {{2, 1}}), 1, 2));
  EXPECT_TRUE(weakly_connected(ArcSet(3, {{2, 1}, {2, 3}}), 1, 3));
}

TEST(ArcSetQueries, InvariantsEnforced) {
  ArcSet a(3, {{1, 2}});
  EXPECT_THROW(a.add({3, 2}), std::logic_error);
  EXPECT_THROW(a.add({2, 1}), std::logic_error);
  EXPECT_THROW(a.add({1, 1}), std::logic_error);
}

TEST(Monotonic, LegalSets) {
  EXPECT_EQ(legal_monotonic(initial_config(2)), KindSet{TransitionKind::Shift});
  EXPECT_EQ(legal_monotonic(config(1, 2, ArcSet(2))),
            (KindSet{TransitionKind::Shift, TransitionKind::NoArc, TransitionKind::LeftArc, TransitionKind::RightArc}));
  EXPECT_EQ(legal_monotonic(config(1, 2, ArcSet(2, {{1, 2}}))), (KindSet{TransitionKind::Shift, TransitionKind::NoArc}));
  EXPECT_THROW(legal_monotonic(config(kNone, 3, ArcSet(2))), std::invalid_argument);
}

TEST(Monotonic, Steps) {
  EXPECT_EQ(step_monotonic(initial_config(3), Transition::shift()), config(1, 2, ArcSet(3)));
  EXPECT_EQ(step_monotonic(config(1, 2, ArcSet(2)), Transition::left_arc(4)), config(kNone, 2, ArcSet(2, {{2, 1, 4}})));
  EXPECT_EQ(step_monotonic(config(2, 3, ArcSet(3)), Transition::no_arc()), config(1, 3, ArcSet(3)));
}

TEST(Monotonic, IllegalTransitionNamesCondition) {
  try {
    step_monotonic(config(1, 2, ArcSet(2, {{2, 1}})), Transition::right_arc());
    FAIL();
  } catch (const IllegalTransition& e) {
    EXPECT_NE(std::string(e.what()).find("acyclicity"), std::string::npos) << e.what();
  }
  try {
    step_monotonic(config(1, 2, ArcSet(3, {{3, 1}})), Transition::left_arc());
    FAIL();
  } catch (const IllegalTransition& e) {
    EXPECT_NE(std::string(e.what()).find("single-head"), std::string::npos) << e.what();
  }
  EXPECT_THROW(step_monotonic(initial_config(2), Transition::no_arc()), IllegalTransition);
  EXPECT_THROW(step_monotonic(config(kNone, 3, ArcSet(2)), Transition::shift()), IllegalTransition);
}

TEST(NonMonotonic, RemovalExamples) {
  EXPECT_EQ(step_nonmonotonic(config(1, 2, ArcSet(2, {{1, 2}})), Transition::left_arc()).arcs, ArcSet(2, {{2, 1}}));
  EXPECT_EQ(step_nonmonotonic(config(2, 3, ArcSet(3, {{1, 3}})), Transition::right_arc()).arcs, ArcSet(3, {{2, 3}}));
  EXPECT_EQ(step_nonmonotonic(config(1, 3, ArcSet(3, {{3, 2}, {2, 1}})), Transition::right_arc()).arcs,
            ArcSet(3, {{1, 3}, {3, 2}}));
}

TEST(NonMonotonic, ReportsRemovedArcs) {
  Configuration c = config(1, 3, ArcSet(3, {{3, 2}, {2, 1}}));
  const Removed r = apply_nonmonotonic(c, Transition::right_arc());
  EXPECT_EQ(r.count(), 1u);
  ASSERT_TRUE(r.broken.has_value());
  EXPECT_EQ(r.broken->head, 2);
  EXPECT_EQ(r.broken->dep, 1);

  Configuration both = config(1, 3, ArcSet(4, {{3, 2}, {2, 1}, {4, 3}}));
  EXPECT_EQ(apply_nonmonotonic(both, Transition::right_arc()).count(), 2u);
}

TEST(NonMonotonic, ListShapePreconditions) {
  EXPECT_THROW(step_nonmonotonic(initial_config(2), Transition::left_arc()), IllegalTransition);
  EXPECT_THROW(step_nonmonotonic(initial_config(2), Transition::no_arc()), IllegalTransition);
  EXPECT_NO_THROW(step_nonmonotonic(initial_config(2), Transition::shift()));
}

TEST(NonMonotonic, RebuildingExistingArcOnlyRelabels) {
  const Configuration c = step_nonmonotonic(config(1, 2, ArcSet(2, {{2, 1, 0}})), Transition::left_arc(3));
  EXPECT_EQ(c.arcs.head(1), 2);
  EXPECT_EQ(c.arcs.label(1), 3);
}

// Reference implementation with explicit lists: same arcs and lists after
// every step of random walks, for both systems.
TEST(ListEquivalence, RandomWalksMatchLiteralLists) {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(7));
    const bool nonmono = trial % 2 == 0;
    const System system = nonmono ? System::NonMonotonic : System::Monotonic;
    Configuration c = initial_config(n);
    auto ref = brute::ListConfig::initial(n);
    while (!c.terminal()) {
      const auto kinds = legal_kinds(c, system).to_vector();
      const TransitionKind k = kinds[rng.below(kinds.size())];
      apply(c, Transition{k, kNoLabel}, system);
      ref.apply(k, nonmono);

      std::vector<int> l1, l2, b;
      for (int x = 1; x <= c.i; ++x) l1.push_back(x);
      for (int x = c.i + 1; x < c.j; ++x) l2.push_back(x);
      for (int x = c.j; x <= n; ++x) b.push_back(x);
      ASSERT_EQ(ref.l1, l1);
      ASSERT_EQ(ref.l2, l2);
      ASSERT_EQ(ref.buffer, b);
      std::set<std::pair<int, int>> arcs;
      for (const Arc& a : c.arcs.arcs()) arcs.insert({a.head, a.dep});
      ASSERT_EQ(ref.arcs, arcs);
      ASSERT_TRUE(acyclic_single_head(c.arcs));
    }
  }
}

TEST(NonMonotonic, AnyTransitionKeepsInvariants) {
  Rng rng(5);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(8));
    Configuration c = initial_config(n);
    std::size_t steps = 0;
    while (!c.terminal()) {
      const auto kinds = legal_nonmonotonic(c).to_vector();
      const TransitionKind k = kinds[rng.below(kinds.size())];
      const std::size_t before = c.arcs.arc_count();
      const bool existed = k == TransitionKind::LeftArc    ? c.arcs.contains(c.j, c.i)
                           : k == TransitionKind::RightArc ? c.arcs.contains(c.i, c.j)
                                                           : true;
      const Removed r = apply_nonmonotonic(c, Transition{k, kNoLabel});
      ASSERT_LE(r.count(), 2u);
      ASSERT_EQ(c.arcs.arc_count(), before - r.count() + (existed ? 0 : 1));
      ASSERT_TRUE(acyclic_single_head(c.arcs));
      ++steps;
    }
    EXPECT_LE(steps, static_cast<std::size_t>(n * (n - 1) / 2 + n) * 4);
  }
}

TEST(Consistency, MonotonicSequencesReplayIdenticallyNonMonotonically) {
  Rng rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(9));
    Configuration mono = initial_config(n), nonmono = initial_config(n);
    while (!mono.terminal()) {
      const auto kinds = legal_monotonic(mono).to_vector();
      const Transition t{kinds[rng.below(kinds.size())], static_cast<LabelId>(rng.below(3))};
      apply_monotonic(mono, t);
      const Removed r = apply_nonmonotonic(nonmono, t);
      ASSERT_EQ(r.count(), 0u);
      ASSERT_EQ(mono, nonmono);
    }
  }
}

TEST(Canonical, QuadraticTransitionBound) {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(10));
    const GoldTree g = random_tree(n, rng);
    Configuration c = initial_config(n);
    int shifts = 0, total = 0;
    while (!c.terminal()) {
      const Transition t = static_next(c, g);
      shifts += t.kind == TransitionKind::Shift;
      ++total;
      apply_monotonic(c, t);
    }
    EXPECT_EQ(shifts, n);
    EXPECT_LE(total, n * (n - 1) / 2 + n);
  }
}

#include <gtest/gtest.h>

#include <map>

#include "covington/covington.hpp"

using namespace covington;

namespace {

Sentence words(std::vector<std::pair<std::string, std::string>> forms_tags) {
  std::vector<Token> tokens;
  for (std::size_t k = 0; k < forms_tags.size(); ++k) {
    Token t;
    t.index = static_cast<int>(k) + 1;
    t.form = forms_tags[k].first;
    t.cpos = t.pos = forms_tags[k].second;
    t.head = 0;
    tokens.push_back(t);
  }
  return Sentence(tokens);
}

std::map<std::string, std::string> feats(const Configuration& c, const Sentence& s, const LabelTable& labels,
                                         FeatureOptions options = {}) {
  std::map<std::string, std::string> out;
  for (auto& [name, value] : describe_features(c, s, labels, options)) out[name] = value;
  return out;
}

const LabelTable kLabels({"OBJ", "ROOT", "SUBJ"});
constexpr LabelId OBJ = 0, SUBJ = 2;

}  // namespace

TEST(Templates, CountsByArity) {
  int uni = 0, pair = 0, triple = 0;
  for (std::string_view name : kTemplateNames) {
    const auto plus = std::count(name.begin(), name.end(), '+');
    (plus == 0 ? uni : plus == 1 ? pair : triple)++;
  }
  EXPECT_EQ(uni, 67);
  EXPECT_EQ(pair, 10);
  EXPECT_EQ(triple, 10);
  EXPECT_EQ(kTemplateCount, 87u);
}

TEST(Extract, InitialConfigHasNullLeftContext) {
  const Sentence s = words({{"He", "PRP"}, {"runs", "VBZ"}});
  auto f = feats(initial_config(2), s, kLabels);
  EXPECT_EQ(f["L0.w"], "<NULL>");
  EXPECT_EQ(f["L0h.p"], "<NULL>");
  EXPECT_EQ(f["L0.wd"], "<NULL>/<NULL>");
  EXPECT_EQ(f["R0.w"], "He");
  EXPECT_EQ(f["R1.p"], "VBZ");
  EXPECT_EQ(f["R2.p"], "<NULL>");
  EXPECT_EQ(extract_features(initial_config(2), s, kLabels).size(), 87u);
}

TEST(Extract, FocusPair) {
  const Sentence s = words({{"He", "PRP"}, {"runs", "VBZ"}});
  auto f = feats(Configuration{1, 2, ArcSet(2)}, s, kLabels);
  EXPECT_EQ(f["L0.w"], "He");
  EXPECT_EQ(f["R0.p"], "VBZ");
  EXPECT_EQ(f["L0.wd"], "He/1");
  EXPECT_EQ(f["L0.pvl"], "PRP/0");
  EXPECT_EQ(f["L0.l"], "<none>");
  EXPECT_EQ(f["CL.w"], "<NULL>");
  EXPECT_EQ(f["CR.wp"], "<NULL>/<NULL>");
  EXPECT_EQ(f["L0.wp+R0.wp"], "He/PRP/runs/VBZ");
}

TEST(Extract, HeadsAndDependentsFromLiveArcs) {
  const Sentence s = words({{"He", "PRP"}, {"runs", "VBZ"}, {"fast", "RB"}});
  auto f = feats(Configuration{1, 3, ArcSet(3, {{2, 1, SUBJ}})}, s, kLabels);
  EXPECT_EQ(f["L0h.w"], "runs");
  EXPECT_EQ(f["L0.l"], "SUBJ");
  EXPECT_EQ(f["L0h.l"], "<none>");
  auto g = feats(Configuration{2, 3, ArcSet(3, {{2, 1, SUBJ}})}, s, kLabels);
  EXPECT_EQ(g["L0.wvl"], "runs/1");
  EXPECT_EQ(g["L0.psl"], "VBZ/SUBJ");
  EXPECT_EQ(g["L0l.w"], "He");
  EXPECT_EQ(g["L0l'.l"], "SUBJ");
}

TEST(Extract, ValencyDropsAfterHeadReplacement) {
  const Sentence s = words({{"a", "X"}, {"b", "X"}, {"c", "X"}});
  Configuration c{2, 3, ArcSet(3, {{2, 1, SUBJ}})};
  EXPECT_EQ(feats(c, s, kLabels)["L0.wvl"], "b/1");
  c = step_nonmonotonic(Configuration{1, 3, c.arcs}, Transition::left_arc(OBJ));
  // 3 -> 1 replaced 2 -> 1.
  Configuration later{2, 3, c.arcs};
  EXPECT_EQ(feats(later, s, kLabels)["L0.wvl"], "b/0");
  EXPECT_EQ(feats(later, s, kLabels)["R0.psl"], "X/OBJ");
}

TEST(Extract, BetweenWordsWithOutsideHeads) {
  const Sentence s = words({{"a", "X"}, {"b", "Y"}, {"c", "Z"}, {"d", "W"}});
  auto f = feats(Configuration{1, 4, ArcSet(4)}, s, kLabels);
  EXPECT_EQ(f["CL.w"], "b");
  EXPECT_EQ(f["CR.w"], "c");
  auto g = feats(Configuration{1, 4, ArcSet(4, {{1, 2}})}, s, kLabels);
  EXPECT_EQ(g["CL.w"], "c");
  EXPECT_EQ(g["CR.p"], "Z");
}

TEST(Extract, DistanceBuckets) {
  std::vector<std::pair<std::string, std::string>> ws(12, {"w", "X"});
  const Sentence s = words(ws);
  EXPECT_EQ(feats(Configuration{1, 8, ArcSet(12)}, s, kLabels)["L0.pd"], "X/6-7");
  EXPECT_EQ(feats(Configuration{1, 12, ArcSet(12)}, s, kLabels)["L0.pd"], "X/>10");
  EXPECT_EQ(feats(Configuration{1, 12, ArcSet(12)}, s, kLabels, {.raw_distance = true})["L0.pd"], "X/11");
}

TEST(Extract, PureAndTemplateTagged) {
  const Sentence s = words({{"He", "PRP"}, {"runs", "VBZ"}});
  const Configuration c{1, 2, ArcSet(2)};
  const FeatureVector a = extract_features(c, s, kLabels);
  EXPECT_EQ(a, extract_features(c, s, kLabels));
  for (std::size_t t = 0; t < a.size(); ++t) EXPECT_EQ(feature_template(a[t]), t);
  EXPECT_THROW(extract_features(Configuration{kNone, 3, ArcSet(2)}, s, kLabels), std::invalid_argument);
}

TEST(Extract, DumpFormat) {
  const Sentence s = words({{"He", "PRP"}});
  const std::string dump = dump_features(initial_config(1), s, kLabels);
  EXPECT_EQ(dump.substr(0, dump.find('\n')), "L0.w = <NULL>");
  EXPECT_EQ(std::count(dump.begin(), dump.end(), '\n'), 87);
}

// Command-line front end: train, parse, eval, audit-bounds, inspect, generate.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "covington/covington.hpp"

namespace cv = covington;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

cv::OracleMode oracle_mode(const std::string& mode, const std::string& loss) {
  static const std::map<std::string, cv::LossVariant> losses = {
      {"lower", cv::LossVariant::Lower}, {"pc-upper", cv::LossVariant::PcUpper}, {"upper", cv::LossVariant::Upper}};
  if (mode == "static") return cv::OracleMode::static_oracle();
  if (mode == "dyn-mono") return cv::OracleMode::dynamic_monotonic();
  return cv::OracleMode::dynamic_nonmonotonic(losses.at(loss));
}

struct TrainArgs {
  std::string mode = "dyn-nonmono";
  std::string loss = "upper";
  int iters = 15;
  std::uint64_t seed = 1;
  int explore_k = 1;
  double explore_p = 0.9;
  bool raw_distance = false;
  bool no_shuffle = false;
  std::string train;
  std::string model;
};

int run_train(const TrainArgs& a) {
  const cv::Corpus corpus = cv::read_conllx(a.train);
  cv::TrainOptions opt;
  opt.mode = oracle_mode(a.mode, a.loss);
  opt.iterations = a.iters;
  opt.seed = a.seed;
  opt.exploration = {a.explore_k, a.explore_p};
  opt.features.raw_distance = a.raw_distance;
  opt.shuffle = !a.no_shuffle;
  cv::TrainStats stats;
  const cv::Model model = cv::train(corpus, opt, &stats);
  cv::save_model(model, std::filesystem::path(a.model));
  std::cerr << "trained " << a.mode << " (" << a.loss << ") on " << corpus.size() << " sentences, "
            << stats.steps << " steps, " << model.feature_count() << " features\n";
  return 0;
}

struct ParseArgs {
  std::string model;
  std::string input;
  std::string output;
};

int run_parse(const ParseArgs& a) {
  const cv::Model model = cv::load_model(std::filesystem::path(a.model));
  const cv::Corpus corpus = cv::read_conllx(a.input, {.require_heads = false});
  const auto parsed = cv::parse_corpus(model, corpus, cv::parse_system(model.metadata().system));
  write_file(a.output, cv::emit_conllx(corpus, parsed.trees));
  return 0;
}

struct EvalArgs {
  std::string gold;
  std::string pred;
  std::string report;
};

int run_eval(const EvalArgs& a) {
  const cv::Corpus gold = cv::read_conllx(a.gold);
  const cv::Corpus pred = cv::read_conllx(a.pred);
  const cv::EvalReport report = cv::evaluate(gold, pred);
  std::cout << report.text();
  if (!a.report.empty()) {
    std::ofstream out(a.report, std::ios::app);
    if (!out) throw std::runtime_error("cannot write " + a.report);
    out << report.json().dump() << '\n';
  }
  return 0;
}

struct AuditArgs {
  std::string input;
  std::size_t budget = 5000;
  std::string policy = "oracle-noise";
  double noise = 0.1;
  std::uint64_t seed = 1;
  std::string out;
  std::string model;
  int max_length = 10;
};

int run_audit(const AuditArgs& a) {
  const cv::Corpus corpus = cv::read_conllx(a.input);
  cv::AuditPolicy policy;
  std::optional<cv::Model> model;
  if (a.policy == "random-legal") {
    policy = cv::AuditPolicy::random_legal();
  } else if (a.policy == "oracle-noise") {
    policy = cv::AuditPolicy::oracle_noise(a.noise);
  } else {
    if (a.model.empty()) throw CLI::RequiredError("--model (needed by --policy model-guided)");
    model = cv::load_model(std::filesystem::path(a.model));
    policy = cv::AuditPolicy::model_guided([&m = *model](const cv::Configuration& c, const cv::Sentence& s) {
      const cv::FeatureOptions fo{m.metadata().raw_distance};
      const auto f = cv::extract_features(c, s, m.actions().labels(), fo);
      return cv::best_action(m, f, m.actions().candidates(c, cv::System::NonMonotonic));
    });
  }
  cv::AuditOptions options;
  options.search.max_length = a.max_length;
  const cv::BoundStats stats = cv::audit_bounds(corpus, policy, a.budget, a.seed, options);
  if (stats.skipped_sentences > 0) {
    std::cerr << "warning: skipped " << stats.skipped_sentences << " sentences longer than " << a.max_length
              << " tokens\n";
  }
  std::cout << stats.text();
  if (!a.out.empty()) write_file(a.out, stats.csv());
  return stats.violations == 0 ? 0 : 1;
}

struct InspectArgs {
  std::string model;
  std::size_t top = 20;
};

int run_inspect(const InspectArgs& a) {
  const cv::Model m = cv::load_model(std::filesystem::path(a.model));
  std::cout << nlohmann::json(m.metadata()).dump(2) << '\n';
  std::cout << "labels: " << m.actions().labels().size() << "  features: " << m.feature_count() << '\n';

  struct Entry {
    cv::FeatureId f;
    std::size_t action;
    double w;
  };
  std::vector<Entry> entries;
  for (const auto& [f, row] : m.rows()) {
    for (std::size_t k = 0; k < row.weight.size(); ++k) {
      if (row.weight[k] != 0.0) entries.push_back({f, k, row.weight[k]});
    }
  }
  const std::size_t shown = std::min(a.top, entries.size());
  std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(shown), entries.end(),
                    [](const Entry& x, const Entry& y) {
                      if (std::abs(x.w) != std::abs(y.w)) return std::abs(x.w) > std::abs(y.w);
                      return std::tie(x.f, x.action) < std::tie(y.f, y.action);
                    });
  for (std::size_t k = 0; k < shown; ++k) {
    const Entry& e = entries[k];
    std::printf("%12.4f  %-16s %014llx  %s\n", e.w, std::string(cv::kTemplateNames[cv::feature_template(e.f)]).c_str(),
                static_cast<unsigned long long>(e.f & ((1ull << 56) - 1)),
                m.actions().name(m.actions().at(e.action)).c_str());
  }
  return 0;
}

struct GenerateArgs {
  std::size_t sentences = 200;
  std::uint64_t seed = 7;
  int min_length = 5;
  int max_length = 12;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  const cv::Corpus corpus = cv::synthetic_treebank({a.sentences, a.min_length, a.max_length, a.seed});
  write_file(a.out, cv::emit_conllx(corpus));
  std::cerr << "non-projective arcs: " << 100.0 * cv::non_projective_fraction(corpus) << "%\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covington non-projective dependency parser with non-monotonic dynamic oracles"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "train an averaged perceptron model");
  t->add_option("--mode", train.mode, "oracle")->check(CLI::IsMember({"static", "dyn-mono", "dyn-nonmono"}));
  t->add_option("--loss", train.loss, "loss expression of the non-monotonic oracle")
      ->check(CLI::IsMember({"lower", "pc-upper", "upper"}));
  t->add_option("--iters", train.iters, "training iterations")->check(CLI::PositiveNumber);
  t->add_option("--seed", train.seed, "random seed");
  t->add_option("--explore-k", train.explore_k, "iterations that always follow the oracle");
  t->add_option("--explore-p", train.explore_p, "probability of following the model afterwards")
      ->check(CLI::Range(0.0, 1.0));
  t->add_flag("--raw-distance", train.raw_distance, "do not bucket the focus distance");
  t->add_flag("--no-shuffle", train.no_shuffle, "keep corpus order in every iteration");
  t->add_option("--train", train.train, "CoNLL-X training file")->required()->check(CLI::ExistingFile);
  t->add_option("--model", train.model, "output model file")->required();

  ParseArgs parse;
  auto* p = app.add_subcommand("parse", "parse a CoNLL-X file");
  p->add_option("--model", parse.model)->required()->check(CLI::ExistingFile);
  p->add_option("--input", parse.input)->required()->check(CLI::ExistingFile);
  p->add_option("--output", parse.output)->required();

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "score predictions against gold");
  e->add_option("--gold", eval.gold)->required()->check(CLI::ExistingFile);
  e->add_option("--pred", eval.pred)->required()->check(CLI::ExistingFile);
  e->add_option("--report", eval.report, "append a JSON line with the report");

  AuditArgs audit;
  auto* b = app.add_subcommand("audit-bounds", "compare loss bounds with the exact loss");
  b->add_option("--input", audit.input)->required()->check(CLI::ExistingFile);
  b->add_option("--budget", audit.budget, "configurations to audit")->check(CLI::PositiveNumber);
  b->add_option("--policy", audit.policy)->check(CLI::IsMember({"random-legal", "oracle-noise", "model-guided"}));
  b->add_option("--noise", audit.noise, "random-move probability of oracle-noise")->check(CLI::Range(0.0, 1.0));
  b->add_option("--seed", audit.seed);
  b->add_option("--out", audit.out, "CSV output");
  b->add_option("--model", audit.model, "model for --policy model-guided")->check(CLI::ExistingFile);
  b->add_option("--max-length", audit.max_length, "longest sentence given to the exact search");

  InspectArgs inspect;
  auto* i = app.add_subcommand("inspect", "print model metadata and top weights");
  i->add_option("--model", inspect.model)->required()->check(CLI::ExistingFile);
  i->add_option("--top", inspect.top);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write the synthetic treebank");
  g->add_option("--sentences", gen.sentences);
  g->add_option("--seed", gen.seed);
  g->add_option("--min-length", gen.min_length);
  g->add_option("--max-length", gen.max_length);
  g->add_option("--out", gen.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 2;
  }

  try {
    if (*t) return run_train(train);
    if (*p) return run_parse(parse);
    if (*e) return run_eval(eval);
    if (*b) return run_audit(audit);
    if (*i) return run_inspect(inspect);
    if (*g) return run_generate(gen);
  } catch (const CLI::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 2;
}

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "features.hpp"
#include "labels.hpp"
#include "transition_system.hpp"

namespace covington {

// Scored actions: Shift, NoArc, then LeftArc and RightArc for every label.
// Index order equals the tie-break order of Transition.
class ActionSpace {
 public:
  ActionSpace() = default;
  explicit ActionSpace(LabelTable labels) : labels_(std::move(labels)) {}

  std::size_t size() const noexcept { return 2 + 2 * labels_.size(); }
  const LabelTable& labels() const noexcept { return labels_; }

  std::size_t index(const Transition& t) const {
    const std::size_t l = static_cast<std::size_t>(t.label);
    switch (t.kind) {
      case TransitionKind::Shift: return 0;
      case TransitionKind::NoArc: return 1;
      case TransitionKind::LeftArc:
        if (t.label < 0 || l >= labels_.size()) break;
        return 2 + l;
      case TransitionKind::RightArc:
        if (t.label < 0 || l >= labels_.size()) break;
        return 2 + labels_.size() + l;
    }
    throw std::out_of_range("ActionSpace: transition label not in inventory");
  }

  Transition at(std::size_t a) const {
    if (a == 0) return Transition::shift();
    if (a == 1) return Transition::no_arc();
    const std::size_t l = a - 2;
    if (l < labels_.size()) return Transition::left_arc(static_cast<LabelId>(l));
    if (l < 2 * labels_.size()) return Transition::right_arc(static_cast<LabelId>(l - labels_.size()));
    throw std::out_of_range("ActionSpace: action " + std::to_string(a));
  }

  std::string name(const Transition& t) const {
    std::string out = kind_name(t.kind);
    if (is_arc(t.kind)) out += "(" + (t.label == kNoLabel ? std::string("_") : labels_.name(t.label)) + ")";
    return out;
  }

  // Legal kinds expanded with every label, in tie-break order.
  std::vector<Transition> candidates(const Configuration& c, System system) const {
    std::vector<Transition> out;
    for (TransitionKind kind : legal_kinds(c, system).to_vector()) {
      if (!is_arc(kind)) {
        out.push_back({kind, kNoLabel});
        continue;
      }
      for (std::size_t l = 0; l < labels_.size(); ++l) out.push_back({kind, static_cast<LabelId>(l)});
    }
    return out;
  }

  friend bool operator==(const ActionSpace&, const ActionSpace&) = default;

 private:
  LabelTable labels_;
};

struct ModelMetadata {
  std::string system = "nonmonotonic";
  std::string oracle = "dyn-nonmono";
  std::string loss = "upper";
  int iterations = 15;
  std::uint64_t seed = 1;
  int template_version = kTemplateVersion;
  bool raw_distance = false;
  int explore_warmup = 1;
  double explore_p = 0.9;
  std::uint64_t horizon = 0;
  std::string root_label = "ROOT";

  friend bool operator==(const ModelMetadata&, const ModelMetadata&) = default;
};

inline void to_json(nlohmann::json& j, const ModelMetadata& m) {
  j = nlohmann::json{{"system", m.system},
                     {"oracle", m.oracle},
                     {"loss", m.loss},
                     {"iterations", m.iterations},
                     {"seed", m.seed},
                     {"template_version", m.template_version},
                     {"raw_distance", m.raw_distance},
                     {"explore_warmup", m.explore_warmup},
                     {"explore_p", m.explore_p},
                     {"horizon", m.horizon},
                     {"root_label", m.root_label}};
}

inline void from_json(const nlohmann::json& j, ModelMetadata& m) {
  j.at("system").get_to(m.system);
  j.at("oracle").get_to(m.oracle);
  j.at("loss").get_to(m.loss);
  j.at("iterations").get_to(m.iterations);
  j.at("seed").get_to(m.seed);
  j.at("template_version").get_to(m.template_version);
  j.at("raw_distance").get_to(m.raw_distance);
  j.at("explore_warmup").get_to(m.explore_warmup);
  j.at("explore_p").get_to(m.explore_p);
  j.at("horizon").get_to(m.horizon);
  j.at("root_label").get_to(m.root_label);
}

// Averaged perceptron weights, one dense row of actions per feature.
// Before finalize_average the rows also carry the running sums and the
// timestamp of each cell's last change.
class Model {
 public:
  struct Row {
    std::vector<double> weight;
    std::vector<double> total;
    std::vector<std::uint64_t> stamp;

    friend bool operator==(const Row&, const Row&) = default;
  };

  Model() = default;
  explicit Model(ActionSpace actions, ModelMetadata metadata = {})
      : actions_(std::move(actions)), metadata_(std::move(metadata)) {}

  const ActionSpace& actions() const noexcept { return actions_; }
  const ModelMetadata& metadata() const noexcept { return metadata_; }
  ModelMetadata& metadata() noexcept { return metadata_; }
  bool finalized() const noexcept { return finalized_; }
  std::size_t feature_count() const noexcept { return rows_.size(); }
  const std::unordered_map<FeatureId, Row>& rows() const noexcept { return rows_; }

  double weight(FeatureId f, const Transition& t) const {
    auto it = rows_.find(f);
    return it == rows_.end() ? 0.0 : it->second.weight[actions_.index(t)];
  }

  void set_weight(FeatureId f, const Transition& t, double w) { row(f, 1).weight[actions_.index(t)] = w; }

  // Row for f, created with every cell stamped at `now`.
  Row& row(FeatureId f, std::uint64_t now) {
    auto [it, fresh] = rows_.try_emplace(f);
    if (fresh) {
      it->second.weight.assign(actions_.size(), 0.0);
      if (!finalized_) {
        it->second.total.assign(actions_.size(), 0.0);
        it->second.stamp.assign(actions_.size(), now);
      }
    }
    return it->second;
  }

  const Row* find(FeatureId f) const {
    auto it = rows_.find(f);
    return it == rows_.end() ? nullptr : &it->second;
  }

  friend bool operator==(const Model&, const Model&) = default;

 private:
  friend void finalize_average(Model&, std::uint64_t);
  friend Model load_model(std::istream&);

  ActionSpace actions_;
  ModelMetadata metadata_;
  std::unordered_map<FeatureId, Row> rows_;
  bool finalized_ = false;
};

struct ScoredAction {
  Transition transition;
  double score = 0.0;
};

// Candidates ordered best first: higher score, then Transition order.
inline std::vector<ScoredAction> score_actions(const Model& m, const FeatureVector& f,
                                               const std::vector<Transition>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("score_actions: no candidates");
  std::vector<double> totals(m.actions().size(), 0.0);
  for (FeatureId id : f) {
    if (const Model::Row* row = m.find(id)) {
      for (std::size_t a = 0; a < totals.size(); ++a) totals[a] += row->weight[a];
    }
  }
  std::vector<ScoredAction> out;
  out.reserve(candidates.size());
  for (const Transition& t : candidates) out.push_back({t, totals[m.actions().index(t)]});
  std::stable_sort(out.begin(), out.end(), [](const ScoredAction& a, const ScoredAction& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.transition < b.transition;
  });
  return out;
}

inline Transition best_action(const Model& m, const FeatureVector& f, const std::vector<Transition>& candidates) {
  return score_actions(m, f, candidates).front().transition;
}

namespace detail {

inline void bump(Model::Row& row, std::size_t a, double delta, std::uint64_t now) {
  row.total[a] += row.weight[a] * static_cast<double>(now - row.stamp[a]);
  row.stamp[a] = now;
  row.weight[a] += delta;
}

}  // namespace detail

// +1 for the correct action and -1 for the predicted one on every feature
// occurrence. The change holds from step `timestamp` onward.
inline void perceptron_update(Model& m, const FeatureVector& f, const Transition& predicted, const Transition& correct,
                              std::uint64_t timestamp) {
  if (predicted == correct) return;
  if (m.finalized()) throw std::logic_error("perceptron_update: model already finalized");
  if (timestamp == 0) throw std::invalid_argument("perceptron_update: timestamps start at 1");
  const std::size_t good = m.actions().index(correct);
  const std::size_t bad = m.actions().index(predicted);
  for (FeatureId id : f) {
    Model::Row& row = m.row(id, timestamp);
    detail::bump(row, good, 1.0, timestamp);
    detail::bump(row, bad, -1.0, timestamp);
  }
}

// Replaces every weight by its mean over steps 1..horizon. Cells that
// average to zero are dropped.
inline void finalize_average(Model& m, std::uint64_t horizon) {
  if (horizon == 0) throw std::invalid_argument("finalize_average: horizon must be positive");
  if (m.finalized_) return;
  const double h = static_cast<double>(horizon);
  for (auto it = m.rows_.begin(); it != m.rows_.end();) {
    Model::Row& row = it->second;
    bool nonzero = false;
    for (std::size_t a = 0; a < row.weight.size(); ++a) {
      const double held = static_cast<double>(horizon + 1 - std::min(row.stamp[a], horizon + 1));
      row.weight[a] = (row.total[a] + row.weight[a] * held) / h;
      nonzero |= row.weight[a] != 0.0;
    }
    row.total.clear();
    row.stamp.clear();
    it = nonzero ? std::next(it) : m.rows_.erase(it);
  }
  m.metadata_.horizon = horizon;
  m.finalized_ = true;
}

namespace detail {

inline constexpr char kMagic[4] = {'C', 'V', 'N', 'M'};
inline constexpr std::uint32_t kFormatVersion = 1;

class Writer {
 public:
  void bytes(const void* p, std::size_t n) { out.append(static_cast<const char*>(p), n); }
  template <class T>
  void le(T v) {
    for (std::size_t k = 0; k < sizeof(T); ++k) out.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * k)) & 0xff));
  }
  void str(const std::string& s) {
    le<std::uint64_t>(s.size());
    bytes(s.data(), s.size());
  }
  std::string out;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}
  template <class T>
  T le() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < sizeof(T); ++k) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + k])) << (8 * k);
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  std::string str() {
    const auto n = le<std::uint64_t>();
    need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::size_t pos() const { return pos_; }

 private:
  void need(std::uint64_t n) const {
    if (n > data_.size() - pos_) throw ModelFormatError("model file truncated");
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Layout (little endian): magic "CVNM", u32 version, metadata JSON, label
// inventory, sorted (u64 feature, u32 action, f64 weight) triples, and an
// FNV-1a 64 checksum of everything before it.
inline void save_model(const Model& m, std::ostream& os) {
  if (!m.finalized()) throw std::logic_error("save_model: finalize the model first");
  detail::Writer w;
  w.bytes(detail::kMagic, 4);
  w.le<std::uint32_t>(detail::kFormatVersion);
  w.str(nlohmann::json(m.metadata()).dump());
  const auto& labels = m.actions().labels().names();
  w.le<std::uint32_t>(static_cast<std::uint32_t>(labels.size()));
  for (const std::string& l : labels) w.str(l);

  std::vector<std::tuple<FeatureId, std::uint32_t, double>> triples;
  for (const auto& [f, row] : m.rows()) {
    for (std::size_t a = 0; a < row.weight.size(); ++a) {
      if (row.weight[a] != 0.0) triples.emplace_back(f, static_cast<std::uint32_t>(a), row.weight[a]);
    }
  }
  std::sort(triples.begin(), triples.end());
  w.le<std::uint64_t>(triples.size());
  for (const auto& [f, a, v] : triples) {
    w.le<std::uint64_t>(f);
    w.le<std::uint32_t>(a);
    w.le<std::uint64_t>(std::bit_cast<std::uint64_t>(v));
  }
  w.le<std::uint64_t>(detail::fnv1a64(w.out));
  os.write(w.out.data(), static_cast<std::streamsize>(w.out.size()));
  if (!os) throw std::runtime_error("save_model: write failed");
}

inline Model load_model(std::istream& is) {
  const std::string data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (data.size() < 4 || std::memcmp(data.data(), detail::kMagic, 4) != 0) {
    throw ModelFormatError("not a model file (bad magic)");
  }
  detail::Reader r(std::string_view(data).substr(4));
  const auto version = r.le<std::uint32_t>();
  if (version != detail::kFormatVersion) {
    throw ModelFormatError("unsupported model format version " + std::to_string(version));
  }
  ModelMetadata meta;
  try {
    nlohmann::json::parse(r.str()).get_to(meta);
  } catch (const nlohmann::json::exception& e) {
    throw ModelFormatError(std::string("bad model metadata: ") + e.what());
  }
  std::vector<std::string> labels(r.le<std::uint32_t>());
  for (std::string& l : labels) l = r.str();
  LabelTable table(labels);
  if (table.names() != labels) throw ModelFormatError("label inventory not sorted");

  Model m(ActionSpace(std::move(table)), std::move(meta));
  m.finalized_ = true;
  const auto count = r.le<std::uint64_t>();
  for (std::uint64_t k = 0; k < count; ++k) {
    const auto f = r.le<std::uint64_t>();
    const auto a = r.le<std::uint32_t>();
    const double v = std::bit_cast<double>(r.le<std::uint64_t>());
    if (a >= m.actions().size()) throw ModelFormatError("action index out of range");
    m.row(f, 0).weight[a] = v;
  }
  const std::size_t body = 4 + r.pos();
  const auto stored = r.le<std::uint64_t>();
  if (stored != detail::fnv1a64(std::string_view(data).substr(0, body))) {
    throw ModelFormatError("model checksum mismatch");
  }
  if (4 + r.pos() != data.size()) throw ModelFormatError("trailing bytes after model");
  return m;
}

inline void save_model(const Model& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  save_model(m, out);
}

inline Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load_model(in);
}

}  // namespace covington

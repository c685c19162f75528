#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace covington {

using LabelId = std::int32_t;
inline constexpr LabelId kNoLabel = -1;

// Sorted, duplicate-free label inventory. Ids follow lexicographic order of the
// names, so comparing ids compares labels.
class LabelTable {
 public:
  LabelTable() = default;
  explicit LabelTable(std::vector<std::string> names) : names_(std::move(names)) {
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  }

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  LabelId find(std::string_view name) const noexcept {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return kNoLabel;
    return static_cast<LabelId>(it - names_.begin());
  }

  const std::string& name(LabelId id) const { return names_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const LabelTable&, const LabelTable&) = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace covington

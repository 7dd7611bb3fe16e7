// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_SEMANTIC_FILTER_HPP
#define HSC_SEMANTIC_FILTER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hsc/point_cloud.hpp"

namespace hsc {

/// One class entry from a class config: `class <id> <name> <group> <tier>`.
struct ClassDef {
  uint16_t id = 0;
  std::string name;
  std::string group;
  int tier = 0;
};

/// Name/group/tier table for a labeling convention. The shipped default
/// follows Semantic KITTI ids.
class ClassConfig {
public:
  static ClassConfig parse(const std::string& text);
  static ClassConfig parse_file(const std::string& path);
  static const ClassConfig& semantic_kitti_default();

  const std::vector<ClassDef>& defs() const { return defs_; }
  const ClassDef* find_id(uint16_t id) const;
  const ClassDef* find_name(const std::string& name) const;
  bool has_group(const std::string& group) const;
  std::vector<uint16_t> group_ids(const std::string& group) const;

private:
  std::vector<ClassDef> defs_;
  std::unordered_map<uint16_t, size_t> by_id_;
  std::unordered_map<std::string, size_t> by_name_;
};

enum class HscLevel { Hsc0 = 0, Hsc1 = 1, Hsc2 = 2 };

/// Drop set plus priority tiers. drop_classes and tier_of are disjoint;
/// tiers are contiguous from 0.
struct FilterProfile {
  std::string name;
  std::unordered_set<uint16_t> drop_classes;
  std::unordered_map<uint16_t, int> tier_of;
  int default_tier = 0;
  int tier_count = 1;
  uint8_t profile_id = 255;

  int tier_for(uint16_t class_id) const {
    auto it = tier_of.find(class_id);
    return it == tier_of.end() ? default_tier : it->second;
  }
};

/// HSC-0 drops nothing; HSC-1 drops the road group; HSC-2 additionally
/// drops the building, vegetation and traffic-sign groups. Dynamic classes
/// keep tier 0.
FilterProfile builtin_profile(HscLevel level, const ClassConfig& config);

/// Custom profile text: `name <text>`, `drop <group-or-id>...`,
/// `tier <group-or-id> <n>`, `default_tier <n>`; `#` comments.
FilterProfile parse_profile(const std::string& text, const ClassConfig& config);
FilterProfile load_profile_file(const std::string& path, const ClassConfig& config);

struct FilterOutcome {
  PointCloud kept;
  std::map<uint16_t, uint64_t> removed_per_class;
  uint64_t unknown_class_points = 0; // labels absent from the config; kept

  uint64_t removed_total() const {
    uint64_t n = 0;
    for (const auto& [id, c] : removed_per_class) n += c;
    return n;
  }
};

/// Drops profile classes, preserving point order and all channels.
/// |kept| + removed_total == |input|.
FilterOutcome filter(const PointCloud& cloud, const FilterProfile& profile);

/// Filters, then groups the kept points by tier, ascending; empty tiers
/// are omitted. Partition multisets union back to the filtered cloud.
std::vector<std::pair<int, PointCloud>> partition_by_priority(
    const PointCloud& cloud, const FilterProfile& profile);

} // namespace hsc

#endif

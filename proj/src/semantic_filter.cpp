// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/semantic_filter.hpp"

#include <algorithm>
#include <sstream>

#include "hsc/error.hpp"
#include "hsc/frame.hpp"
#include "hsc/kitti_io.hpp"

namespace hsc {

namespace {

// Semantic KITTI raw label ids. Dynamic groups (vehicle, person) are tier 0;
// everything else rides tier 1.
constexpr const char* kSemanticKittiConfig = R"(# Semantic KITTI class map
# class <id> <name> <group> <tier>
class 0   unlabeled        unknown      1
class 1   outlier          unknown      1
class 10  car              vehicle      0
class 11  bicycle          vehicle      0
class 13  bus              vehicle      0
class 15  motorcycle       vehicle      0
class 16  on-rails         vehicle      0
class 18  truck            vehicle      0
class 20  other-vehicle    vehicle      0
class 30  person           person       0
class 31  bicyclist        person       0
class 32  motorcyclist     person       0
class 40  road             road         1
class 44  parking          road         1
class 48  sidewalk         road         1
class 49  other-ground     road         1
class 50  building         building     1
class 51  fence            structure    1
class 52  other-structure  structure    1
class 60  lane-marking     road         1
class 70  vegetation       vegetation   1
class 71  trunk            vegetation   1
class 72  terrain          vegetation   1
class 80  pole             structure    1
class 81  traffic-sign     traffic-sign 1
class 99  other-object     structure    1
class 252 moving-car       vehicle      0
class 253 moving-bicyclist person       0
class 254 moving-person    person       0
class 255 moving-motorcyclist person    0
class 256 moving-on-rails  vehicle      0
class 257 moving-bus       vehicle      0
class 258 moving-truck     vehicle      0
class 259 moving-other-vehicle vehicle  0
)";

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (ss >> tok) {
    if (tok[0] == '#') break;
    tokens.push_back(tok);
  }
  return tokens;
}

int parse_int(const std::string& tok, const std::string& what) {
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    raise(ErrorKind::Config, "bad " + what + " '" + tok + "'");
  }
}

// Resolve a profile token to class ids: numeric id, class name, or group.
std::vector<uint16_t> resolve_token(const std::string& tok,
                                    const ClassConfig& config) {
  if (!tok.empty() && std::all_of(tok.begin(), tok.end(),
                                  [](char c) { return c >= '0' && c <= '9'; })) {
    int id = parse_int(tok, "class id");
    if (id < 0 || id > 0xFFFF) raise(ErrorKind::Config, "class id out of range: " + tok);
    return {static_cast<uint16_t>(id)};
  }
  if (const ClassDef* def = config.find_name(tok)) return {def->id};
  if (config.has_group(tok)) return config.group_ids(tok);
  raise(ErrorKind::Config, "unknown class or group name '" + tok + "'");
}

void validate_tiers(FilterProfile& p) {
  int max_tier = p.default_tier;
  for (const auto& [id, t] : p.tier_of) max_tier = std::max(max_tier, t);
  std::vector<bool> used(static_cast<size_t>(max_tier) + 1, false);
  used[static_cast<size_t>(p.default_tier)] = true;
  for (const auto& [id, t] : p.tier_of) {
    if (t < 0) raise(ErrorKind::Config, "negative tier in profile " + p.name);
    used[static_cast<size_t>(t)] = true;
  }
  for (size_t t = 0; t < used.size(); ++t)
    if (!used[t])
      raise(ErrorKind::Config,
            "profile " + p.name + " leaves tier " + std::to_string(t) + " unused");
  p.tier_count = max_tier + 1;
}

} // namespace

ClassConfig ClassConfig::parse(const std::string& text) {
  ClassConfig cfg;
  std::istringstream ss(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0] != "class" || tokens.size() != 5)
      raise(ErrorKind::Config,
            "class config line " + std::to_string(line_no) +
                ": expected 'class <id> <name> <group> <tier>'");
    ClassDef def;
    int id = parse_int(tokens[1], "class id");
    if (id < 0 || id > 0xFFFF)
      raise(ErrorKind::Config, "class id out of range on line " + std::to_string(line_no));
    def.id = static_cast<uint16_t>(id);
    def.name = tokens[2];
    def.group = tokens[3];
    def.tier = parse_int(tokens[4], "tier");
    if (def.tier < 0)
      raise(ErrorKind::Config, "negative tier on line " + std::to_string(line_no));
    if (cfg.by_id_.count(def.id))
      raise(ErrorKind::Config, "duplicate class id " + std::to_string(def.id));
    if (cfg.by_name_.count(def.name))
      raise(ErrorKind::Config, "duplicate class name " + def.name);
    cfg.by_id_[def.id] = cfg.defs_.size();
    cfg.by_name_[def.name] = cfg.defs_.size();
    cfg.defs_.push_back(std::move(def));
  }
  if (cfg.defs_.empty()) raise(ErrorKind::Config, "class config defines no classes");
  return cfg;
}

ClassConfig ClassConfig::parse_file(const std::string& path) {
  std::vector<uint8_t> bytes = read_file(path);
  return parse(std::string(bytes.begin(), bytes.end()));
}

const ClassConfig& ClassConfig::semantic_kitti_default() {
  static const ClassConfig cfg = parse(kSemanticKittiConfig);
  return cfg;
}

const ClassDef* ClassConfig::find_id(uint16_t id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &defs_[it->second];
}

const ClassDef* ClassConfig::find_name(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &defs_[it->second];
}

bool ClassConfig::has_group(const std::string& group) const {
  return std::any_of(defs_.begin(), defs_.end(),
                     [&](const ClassDef& d) { return d.group == group; });
}

std::vector<uint16_t> ClassConfig::group_ids(const std::string& group) const {
  std::vector<uint16_t> ids;
  for (const ClassDef& d : defs_)
    if (d.group == group) ids.push_back(d.id);
  return ids;
}

FilterProfile builtin_profile(HscLevel level, const ClassConfig& config) {
  std::vector<std::string> drop_groups;
  FilterProfile p;
  switch (level) {
    case HscLevel::Hsc0:
      p.name = "hsc0";
      p.profile_id = kProfileHsc0;
      break;
    case HscLevel::Hsc1:
      p.name = "hsc1";
      p.profile_id = kProfileHsc1;
      drop_groups = {"road"};
      break;
    case HscLevel::Hsc2:
      p.name = "hsc2";
      p.profile_id = kProfileHsc2;
      drop_groups = {"road", "building", "vegetation", "traffic-sign"};
      break;
  }
  for (const std::string& g : drop_groups) {
    if (!config.has_group(g))
      raise(ErrorKind::Config,
            "class config lacks the '" + g + "' group required by " + p.name);
    for (uint16_t id : config.group_ids(g)) p.drop_classes.insert(id);
  }
  p.default_tier = 1;
  for (const ClassDef& d : config.defs())
    if (!p.drop_classes.count(d.id)) p.tier_of[d.id] = d.tier;
  validate_tiers(p);
  return p;
}

FilterProfile parse_profile(const std::string& text, const ClassConfig& config) {
  FilterProfile p;
  p.name = "custom";
  p.default_tier = 0;
  std::istringstream ss(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& verb = tokens[0];
    if (verb == "name" && tokens.size() == 2) {
      p.name = tokens[1];
    } else if (verb == "drop" && tokens.size() >= 2) {
      for (size_t i = 1; i < tokens.size(); ++i)
        for (uint16_t id : resolve_token(tokens[i], config))
          p.drop_classes.insert(id);
    } else if (verb == "tier" && tokens.size() == 3) {
      int tier = parse_int(tokens[2], "tier");
      for (uint16_t id : resolve_token(tokens[1], config)) p.tier_of[id] = tier;
    } else if (verb == "default_tier" && tokens.size() == 2) {
      p.default_tier = parse_int(tokens[1], "default tier");
    } else {
      raise(ErrorKind::Config,
            "profile line " + std::to_string(line_no) + ": unrecognized '" + line + "'");
    }
  }
  for (uint16_t id : p.drop_classes) p.tier_of.erase(id);
  validate_tiers(p);
  return p;
}

FilterProfile load_profile_file(const std::string& path, const ClassConfig& config) {
  std::vector<uint8_t> bytes = read_file(path);
  return parse_profile(std::string(bytes.begin(), bytes.end()), config);
}

FilterOutcome filter(const PointCloud& cloud, const FilterProfile& profile) {
  cloud.check_channels();
  if (!cloud.has_labels() && !profile.drop_classes.empty())
    raise(ErrorKind::MissingLabels,
          "profile " + profile.name + " needs a labeled cloud");

  FilterOutcome out;
  if (profile.drop_classes.empty()) {
    out.kept = cloud;
    if (cloud.has_labels())
      for (const SemanticLabel& l : cloud.labels)
        if (!profile.tier_of.count(l.class_id)) ++out.unknown_class_points;
    return out;
  }

  out.kept.points.reserve(cloud.size());
  if (cloud.has_reflectance()) out.kept.reflectance.reserve(cloud.size());
  out.kept.labels.reserve(cloud.size());
  for (size_t i = 0; i < cloud.size(); ++i) {
    uint16_t cls = cloud.labels[i].class_id;
    if (profile.drop_classes.count(cls)) {
      ++out.removed_per_class[cls];
      continue;
    }
    if (!profile.tier_of.count(cls)) ++out.unknown_class_points;
    out.kept.points.push_back(cloud.points[i]);
    if (cloud.has_reflectance()) out.kept.reflectance.push_back(cloud.reflectance[i]);
    out.kept.labels.push_back(cloud.labels[i]);
  }
  return out;
}

std::vector<std::pair<int, PointCloud>> partition_by_priority(
    const PointCloud& cloud, const FilterProfile& profile) {
  if (!cloud.has_labels())
    raise(ErrorKind::MissingLabels, "partition_by_priority needs a labeled cloud");

  FilterOutcome outcome = filter(cloud, profile);
  const PointCloud& kept = outcome.kept;

  std::map<int, PointCloud> buckets;
  for (size_t i = 0; i < kept.size(); ++i) {
    PointCloud& part = buckets[profile.tier_for(kept.labels[i].class_id)];
    part.points.push_back(kept.points[i]);
    if (kept.has_reflectance()) part.reflectance.push_back(kept.reflectance[i]);
    part.labels.push_back(kept.labels[i]);
  }

  std::vector<std::pair<int, PointCloud>> out;
  out.reserve(buckets.size());
  for (auto& [tier, part] : buckets) out.emplace_back(tier, std::move(part));
  return out;
}

} // namespace hsc

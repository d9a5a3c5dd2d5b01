#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "normlab/context.hpp"
#include "normlab/group.hpp"

namespace normlab {

constexpr int kCacheVersion = 1;

// A named group construction. The construction is one of:
//   {"named":      {"family": "...", "params": [..]}}
//   {"perms":      {"degree": d, "gens": ["(1 2 3)", "[2,3,1]"]}}
//   {"table":      {"order": n, "table": [row-major products]}}
//   {"product":    {"a": <construction>, "b": <construction>}}
//   {"semidirect": {"n": <c>, "h": <c>, "action": [[N-gen images] per H-gen]}}
struct GroupDescriptor {
  std::string name;
  nlohmann::json construction;

  bool operator==(const GroupDescriptor& o) const {
    return name == o.name && construction == o.construction;
  }
};

struct CorpusManifest {
  int schema_version = 1;
  std::optional<int> cap;
  std::string notes;
  std::vector<GroupDescriptor> groups;

  bool operator==(const CorpusManifest& o) const {
    return schema_version == o.schema_version && cap == o.cap &&
           notes == o.notes && groups == o.groups;
  }
};

// Small-group catalog: cyclic C1..C32, elementary abelian E4/E8/E9/E27,
// dihedral D4..D24, Q8/Q16, S3/S4/S5, A4/A5, SL23, Frobenius F20/F21, and a
// coprime direct product S3xC5.
CorpusManifest builtin_catalog();

CorpusManifest parse_manifest(const std::string& text);
std::string serialize_manifest(const CorpusManifest& m);

GroupPtr load_group(Workspace& ws, const GroupDescriptor& desc,
                    std::optional<int> cap_override = std::nullopt);

// All groups of a manifest, constructed and validated; names must be unique.
std::vector<std::pair<std::string, GroupPtr>> load_corpus(
    Workspace& ws, const CorpusManifest& m);

// Builds the total action map from per-H-generator images of N's generators
// (element indices of N) and validates it end to end.
GroupPtr semidirect_from_gen_action(
    const GroupPtr& n, const GroupPtr& h,
    const std::vector<std::vector<int>>& n_gen_images_per_h_gen);

// ---- advisory disk cache --------------------------------------------------
// Layout: <dir>/<group-id-hex>/<kind>.v<N>. Writes are atomic
// (temp-then-rename). Loads throw CacheVersionMismatch or CorruptCache;
// callers recompute on either.
void cache_store(const std::string& dir, const FiniteGroup& g,
                 const std::string& kind, const nlohmann::json& payload);
std::optional<nlohmann::json> cache_load(const std::string& dir,
                                         const FiniteGroup& g,
                                         const std::string& kind);

// Loads whatever artifacts exist for g into the workspace (lattice, chief
// series, norm results), sanity-checking each before use.
void preload_group_caches(Workspace& ws, const GroupPtr& g);
// Writes the workspace's cached artifacts for g back to disk.
void store_group_caches(Workspace& ws, const GroupPtr& g);

}  // namespace normlab

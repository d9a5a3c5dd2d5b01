#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "normlab/group.hpp"

namespace normlab {

struct Lattice;
struct FactorData;
struct ChiefSeries;

// Per-run memoization context. Groups are keyed by content hash, subgroups by
// (group id, member list), class expressions by their canonical string.
// Everything cached is immutable once stored.
struct Workspace {
  int order_cap = kDefaultOrderCap;
  int lattice_budget = 20000;
  std::optional<std::string> cache_dir;  // disk cache root (advisory)

  using SubKey = std::pair<Gid, std::vector<int>>;
  using ExprKey = std::pair<Gid, std::string>;

  std::map<Gid, std::shared_ptr<const Lattice>> lattices;
  std::map<Gid, std::vector<Subgroup>> normal_lists;
  std::map<ExprKey, bool> membership;
  std::map<ExprKey, std::vector<int>> residuals;
  std::map<ExprKey, std::vector<int>> radicals;
  std::map<SubKey, SubgroupAsGroup> as_groups;
  std::map<std::tuple<Gid, std::vector<int>, std::vector<int>>,
           std::shared_ptr<FactorData>>
      factors;
  std::map<SubKey, std::shared_ptr<const ChiefSeries>> chief_cache;
  std::map<std::tuple<Gid, std::string, std::string>, std::vector<int>>
      norm_cache;
  std::map<std::tuple<Gid, std::string, std::string>, std::vector<int>>
      norm_infinity_cache;
  std::map<ExprKey, std::vector<int>> int_x_cache;
  std::map<ExprKey, bool> crit_cache;
  std::map<std::tuple<Gid, std::string, std::string>, std::vector<int>>
      hypercentre_cache;

  // Keeps constructed groups that back cache entries alive.
  std::vector<GroupPtr> retained;

  const std::vector<Subgroup>& normal_subgroups_of(const GroupPtr& g);
  const SubgroupAsGroup& as_group(const Subgroup& h);
};

}  // namespace normlab

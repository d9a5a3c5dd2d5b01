#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "normlab/context.hpp"
#include "normlab/group.hpp"

namespace normlab {

// Complete subgroup lattice with conjugacy classes. Subgroups are sorted
// canonically by (order, member list); inclusion is decided by mask subset.
struct Lattice {
  GroupPtr parent;
  std::vector<Subgroup> subgroups;
  std::vector<std::vector<int>> conjugacy_classes;  // indices, sorted
  std::vector<int> class_of;

  int size() const { return static_cast<int>(subgroups.size()); }
  bool includes(int outer, int inner) const {
    return subgroups[inner].mask.is_subset_of(subgroups[outer].mask);
  }
  int index_of(const std::vector<int>& members) const;
  bool is_normal_index(int i) const {
    return conjugacy_classes[class_of[i]].size() == 1;
  }
};

// Cyclic extension from all cyclic subgroups, seeded additionally with the
// two-generated perfect subgroups when the group is not solvable (pure cyclic
// extension cannot reach those; two generators suffice for every perfect
// group within the order cap). Throws LatticeBudgetExceeded.
std::shared_ptr<const Lattice> enumerate_lattice(Workspace& ws, const GroupPtr& g);

// Independent oracle: fixpoint of one-generator extensions of known
// subgroups. Exponential-free but slow; used for cross-checks at small order.
std::vector<std::vector<int>> enumerate_subgroups_naive(const GroupPtr& g);

std::vector<Subgroup> normal_subgroups(Workspace& ws, const GroupPtr& g);
std::vector<Subgroup> minimal_normal_subgroups(Workspace& ws, const GroupPtr& g);
std::vector<Subgroup> maximal_subgroups(Workspace& ws, const GroupPtr& g);
Subgroup frattini_subgroup(Workspace& ws, const GroupPtr& g);

// Normal-closure descent: replace G by the normal closure of H until stable;
// H is subnormal iff the chain bottoms out at H.
bool is_subnormal(const GroupPtr& g, const Subgroup& h);

// Lattice-backed, deterministic (least canonical member set).
Subgroup sylow_subgroup(Workspace& ws, const GroupPtr& g, int p);
std::optional<Subgroup> hall_subgroup(Workspace& ws, const GroupPtr& g,
                                      const std::vector<int>& pi);

}  // namespace normlab

#include "normlab/lattice.hpp"

#include <algorithm>
#include <map>

#include "normlab/errors.hpp"

namespace normlab {

const std::vector<Subgroup>& Workspace::normal_subgroups_of(const GroupPtr& g) {
  auto it = normal_lists.find(g->id());
  if (it == normal_lists.end()) {
    it = normal_lists.emplace(g->id(), normal_subgroups_direct(g)).first;
    retained.push_back(g);
  }
  return it->second;
}

const SubgroupAsGroup& Workspace::as_group(const Subgroup& h) {
  SubKey key{h.parent->id(), h.members};
  auto it = as_groups.find(key);
  if (it == as_groups.end()) {
    it = as_groups.emplace(key, subgroup_as_group(h)).first;
    retained.push_back(h.parent);
  }
  return it->second;
}

int Lattice::index_of(const std::vector<int>& members) const {
  auto it = std::lower_bound(
      subgroups.begin(), subgroups.end(), members,
      [](const Subgroup& s, const std::vector<int>& m) {
        if (s.members.size() != m.size())
          return s.members.size() < m.size();
        return s.members < m;
      });
  if (it == subgroups.end() || it->members != members) return -1;
  return static_cast<int>(it - subgroups.begin());
}

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::shared_ptr<const Lattice> enumerate_lattice(Workspace& ws, const GroupPtr& g) {
  auto hit = ws.lattices.find(g->id());
  if (hit != ws.lattices.end()) return hit->second;
  if (g->order() > ws.order_cap)
    throw OrderCapExceeded("lattice enumeration above order cap");

  const int n = g->order();
  std::map<std::vector<int>, int> seen;
  std::vector<Subgroup> found;
  auto add = [&](Subgroup s) -> bool {
    auto it = seen.find(s.members);
    if (it != seen.end()) return false;
    if (static_cast<int>(found.size()) >= ws.lattice_budget)
      throw LatticeBudgetExceeded("subgroup count exceeds budget " +
                                  std::to_string(ws.lattice_budget));
    seen.emplace(s.members, static_cast<int>(found.size()));
    found.push_back(std::move(s));
    return true;
  };

  add(trivial_subgroup(g));
  for (int x = 1; x < n; ++x) add(closure(g, {x}));
  add(whole_subgroup(g));

  bool solvable = derived_series(g).back().order() == 1;
  if (!solvable) {
    std::map<std::vector<int>, bool> tested;  // pair closures already judged
    for (int a = 1; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        Subgroup s = closure(g, {a, b});
        if (s.order() < 60 || seen.count(s.members) || tested.count(s.members))
          continue;
        bool perfect =
            commutator_subgroup(g, s, s).order() == s.order();
        tested.emplace(s.members, perfect);
        if (perfect) add(std::move(s));
      }
  }

  // cyclic extension: K = <H, x> with x normalizing H and xH of prime order
  for (size_t i = 0; i < found.size(); ++i) {
    Subgroup h = found[i];  // copy: found may reallocate
    if (h.is_whole()) continue;
    Subgroup nrm = normalizer(g, h);
    for (int x : nrm.members) {
      if (h.mask.test(x)) continue;
      int m = 1, xx = x;
      while (!h.mask.test(xx)) {
        xx = g->mul(xx, x);
        ++m;
      }
      if (!is_prime(m)) continue;
      std::vector<int> bigger = h.members;
      int cos = x;
      for (int t = 1; t < m; ++t) {
        for (int mm : h.members) bigger.push_back(g->mul(mm, cos));
        cos = g->mul(cos, x);
      }
      add(subgroup_from_members(g, std::move(bigger)));
    }
  }

  auto lat = std::make_shared<Lattice>();
  lat->parent = g;
  lat->subgroups = std::move(found);
  std::sort(lat->subgroups.begin(), lat->subgroups.end(),
            [](const Subgroup& a, const Subgroup& b) {
              if (a.order() != b.order()) return a.order() < b.order();
              return a.members < b.members;
            });

  // conjugacy classes: orbit of member sets under generator conjugation
  int total = lat->size();
  lat->class_of.assign(total, -1);
  for (int i = 0; i < total; ++i) {
    if (lat->class_of[i] >= 0) continue;
    int c = static_cast<int>(lat->conjugacy_classes.size());
    std::vector<int> orbit = {i};
    lat->class_of[i] = c;
    for (size_t pos = 0; pos < orbit.size(); ++pos) {
      const auto& cur = lat->subgroups[orbit[pos]];
      for (int y : g->generators()) {
        auto conj = conjugate_members(*g, cur.members, y);
        int j = lat->index_of(conj);
        if (j < 0)
          throw NormLabError("lattice not closed under conjugation");
        if (lat->class_of[j] < 0) {
          lat->class_of[j] = c;
          orbit.push_back(j);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    lat->conjugacy_classes.push_back(std::move(orbit));
  }

  ws.lattices.emplace(g->id(), lat);
  ws.retained.push_back(g);
  return lat;
}

std::vector<std::vector<int>> enumerate_subgroups_naive(const GroupPtr& g) {
  std::map<std::vector<int>, bool> seen;  // value: processed
  seen[trivial_subgroup(g).members] = false;
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<std::vector<int>> todo;
    for (auto& [mem, done] : seen)
      if (!done) todo.push_back(mem);
    for (auto& mem : todo) {
      seen[mem] = true;
      for (int x = 1; x < g->order(); ++x) {
        std::vector<int> s = mem;
        s.push_back(x);
        auto ext = closure(g, s);
        if (!seen.count(ext.members)) {
          seen[ext.members] = false;
          progress = true;
        }
      }
    }
  }
  std::vector<std::vector<int>> out;
  for (auto& [mem, done] : seen) out.push_back(mem);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<Subgroup> normal_subgroups(Workspace& ws, const GroupPtr& g) {
  auto lat = enumerate_lattice(ws, g);
  std::vector<Subgroup> out;
  for (int i = 0; i < lat->size(); ++i)
    if (lat->is_normal_index(i)) out.push_back(lat->subgroups[i]);
  return out;
}

std::vector<Subgroup> minimal_normal_subgroups(Workspace& ws, const GroupPtr& g) {
  auto normals = normal_subgroups(ws, g);
  std::vector<Subgroup> out;
  for (const auto& n : normals) {
    if (n.is_trivial()) continue;
    bool minimal = true;
    for (const auto& m : normals) {
      if (m.is_trivial() || m.order() >= n.order()) continue;
      if (m.mask.is_subset_of(n.mask)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(n);
  }
  return out;
}

std::vector<Subgroup> maximal_subgroups(Workspace& ws, const GroupPtr& g) {
  auto lat = enumerate_lattice(ws, g);
  std::vector<Subgroup> out;
  for (int i = 0; i < lat->size(); ++i) {
    const auto& h = lat->subgroups[i];
    if (h.is_whole()) continue;
    bool maximal = true;
    for (int j = 0; j < lat->size(); ++j) {
      const auto& k = lat->subgroups[j];
      if (k.is_whole() || k.order() <= h.order()) continue;
      if (h.mask.is_subset_of(k.mask)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(h);
  }
  return out;
}

Subgroup frattini_subgroup(Workspace& ws, const GroupPtr& g) {
  if (g->order() == 1) return whole_subgroup(g);
  auto maxes = maximal_subgroups(ws, g);
  if (maxes.empty()) return whole_subgroup(g);
  DynBitset m = maxes[0].mask;
  for (size_t i = 1; i < maxes.size(); ++i) m &= maxes[i].mask;
  return subgroup_from_members(g, m.to_indices());
}

bool is_subnormal(const GroupPtr& g, const Subgroup& h) {
  std::vector<int> hgens = small_generating_set(h);
  Subgroup cur = whole_subgroup(g);
  for (;;) {
    if (cur.members == h.members) return true;
    // normal closure of H inside cur
    std::vector<int> cgens = small_generating_set(cur);
    Subgroup next = closure(g, hgens);
    for (;;) {
      std::vector<int> add;
      for (int t : small_generating_set(next))
        for (int y : cgens) {
          int c = g->conj(y, t);
          if (!next.mask.test(c)) add.push_back(c);
        }
      if (add.empty()) break;
      std::vector<int> seed = next.members;
      for (int c : add) seed.push_back(c);
      next = closure(g, seed);
    }
    if (next.members == cur.members) return cur.members == h.members;
    cur = std::move(next);
  }
}

Subgroup sylow_subgroup(Workspace& ws, const GroupPtr& g, int p) {
  long long pp = p_part(g->order(), p);
  auto lat = enumerate_lattice(ws, g);
  for (int i = 0; i < lat->size(); ++i)
    if (lat->subgroups[i].order() == pp) return lat->subgroups[i];
  throw NormLabError("sylow subgroup missing from lattice");
}

std::optional<Subgroup> hall_subgroup(Workspace& ws, const GroupPtr& g,
                                      const std::vector<int>& pi) {
  long long part = 1;
  for (int p : pi) part *= p_part(g->order(), p);
  auto lat = enumerate_lattice(ws, g);
  for (int i = 0; i < lat->size(); ++i)
    if (lat->subgroups[i].order() == part) return lat->subgroups[i];
  return std::nullopt;
}

}  // namespace normlab

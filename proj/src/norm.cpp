#include "normlab/norm.hpp"

#include <algorithm>

#include "normlab/errors.hpp"

namespace normlab {

namespace {

// Largest normal subgroup of G inside N: intersect with generator conjugates
// until stable.
Subgroup normal_core(const GroupPtr& g, const Subgroup& n) {
  Subgroup core = n;
  for (;;) {
    DynBitset next = core.mask;
    for (int y : g->generators()) {
      DynBitset conj(g->order());
      int yi = g->inv(y);
      for (int m : core.members) conj.set(g->mul(g->mul(yi, m), y));
      next &= conj;
    }
    if (next == core.mask) return core;
    core = subgroup_from_members(g, next.to_indices());
  }
}

// Residual of a subgroup U, mapped back into the parent.
Subgroup sub_residual(Workspace& ws, const Subgroup& u, const ClassPtr& f) {
  const auto& ug = ws.as_group(u);
  Subgroup r = residual(ws, ug.group, f);
  std::vector<int> back;
  back.reserve(r.members.size());
  for (int i : r.members) back.push_back(ug.embed[i]);
  return subgroup_from_members(u.parent, std::move(back));
}

}  // namespace

Subgroup hf_norm(Workspace& ws, const GroupPtr& g, const ClassPtr& h,
                 const ClassPtr& f) {
  std::tuple<Gid, std::string, std::string> key{g->id(), h->key, f->key};
  auto it = ws.norm_cache.find(key);
  if (it != ws.norm_cache.end()) return subgroup_from_members(g, it->second);

  Subgroup rad = radical(ws, g, h);
  auto lat = enumerate_lattice(ws, g);
  DynBitset acc(g->order());
  acc.set_all();
  for (const auto& cls : lat->conjugacy_classes) {
    const Subgroup& u = lat->subgroups[cls.front()];
    Subgroup k = join_subgroups(sub_residual(ws, u, f), rad);
    Subgroup nk = normalizer(g, k);
    if (nk.is_whole()) continue;
    acc &= normal_core(g, nk).mask;
  }
  Subgroup result = subgroup_from_members(g, acc.to_indices());
  if (!is_normal(result))
    throw NormLabError("hf_norm produced a non-normal subgroup");
  ws.norm_cache.emplace(std::move(key), result.members);
  ws.retained.push_back(g);
  return result;
}

Subgroup hf_norm_naive(Workspace& ws, const GroupPtr& g, const ClassPtr& h,
                       const ClassPtr& f) {
  Subgroup rad = radical(ws, g, h);
  auto lat = enumerate_lattice(ws, g);
  DynBitset acc(g->order());
  acc.set_all();
  for (const auto& u : lat->subgroups) {
    Subgroup k = join_subgroups(sub_residual(ws, u, f), rad);
    acc &= normalizer(g, k).mask;
  }
  return subgroup_from_members(g, acc.to_indices());
}

Subgroup pi_f_norm(Workspace& ws, const GroupPtr& g, const PrimeSet& pi,
                   const ClassPtr& f) {
  return hf_norm(ws, g, cls_gpi(pi), f);
}

NormSeries norm_series(Workspace& ws, const GroupPtr& g, const ClassPtr& h,
                       const ClassPtr& f) {
  NormSeries s;
  s.parent = g;
  s.h = h;
  s.f = f;
  s.terms.push_back(trivial_subgroup(g));
  for (;;) {
    const Subgroup& t = s.terms.back();
    if (t.is_whole()) break;
    auto [q, pi] = quotient_group(g, t);
    Subgroup nq = hf_norm(ws, q, h, f);
    if (nq.is_trivial()) break;
    s.terms.push_back(preimage(pi, nq));
  }
  s.terminal_index = static_cast<int>(s.terms.size()) - 1;
  return s;
}

Subgroup norm_infinity(Workspace& ws, const GroupPtr& g, const ClassPtr& h,
                       const ClassPtr& f) {
  std::tuple<Gid, std::string, std::string> key{g->id(), h->key, f->key};
  auto it = ws.norm_infinity_cache.find(key);
  if (it != ws.norm_infinity_cache.end())
    return subgroup_from_members(g, it->second);
  Subgroup t = norm_series(ws, g, h, f).terms.back();
  ws.norm_infinity_cache.emplace(std::move(key), t.members);
  ws.retained.push_back(g);
  return t;
}

Subgroup pi_f_norm_infinity(Workspace& ws, const GroupPtr& g,
                            const PrimeSet& pi, const ClassPtr& f) {
  return norm_infinity(ws, g, cls_gpi(pi), f);
}

bool validate_norm_series(Workspace& ws, const NormSeries& s) {
  if (s.terms.empty() || !s.terms.front().is_trivial()) return false;
  for (size_t i = 0; i + 1 < s.terms.size(); ++i) {
    if (!is_normal(s.terms[i]) || !is_normal(s.terms[i + 1])) return false;
    auto [q, pi] = quotient_group(s.parent, s.terms[i]);
    Subgroup expect = hf_norm(ws, q, s.h, s.f);
    if (image(pi, s.terms[i + 1]).members != expect.members) return false;
  }
  // terminal: norm of G/T_k is trivial (or T_k is the whole group)
  const Subgroup& last = s.terms.back();
  if (!last.is_whole()) {
    auto [q, pi] = quotient_group(s.parent, last);
    if (!hf_norm(ws, q, s.h, s.f).is_trivial()) return false;
  }
  return true;
}

std::vector<Subgroup> x_maximal_subgroups(Workspace& ws, const GroupPtr& g,
                                          const ClassPtr& x) {
  if (!is_member(ws, trivial_group(), x))
    throw UnsupportedClass("class does not contain the trivial group: " +
                           x->key);
  auto lat = enumerate_lattice(ws, g);
  std::vector<char> in_x(lat->size(), 0);
  for (int i = 0; i < lat->size(); ++i)
    in_x[i] = is_member(ws, ws.as_group(lat->subgroups[i]).group, x) ? 1 : 0;
  std::vector<Subgroup> out;
  for (int i = 0; i < lat->size(); ++i) {
    if (!in_x[i]) continue;
    bool maximal = true;
    for (int j = 0; j < lat->size(); ++j) {
      if (j == i || !in_x[j]) continue;
      if (lat->subgroups[j].order() > lat->subgroups[i].order() &&
          lat->includes(j, i)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(lat->subgroups[i]);
  }
  return out;
}

Subgroup int_x(Workspace& ws, const GroupPtr& g, const ClassPtr& x) {
  Workspace::ExprKey key{g->id(), x->key};
  auto it = ws.int_x_cache.find(key);
  if (it != ws.int_x_cache.end()) return subgroup_from_members(g, it->second);
  auto maxes = x_maximal_subgroups(ws, g, x);
  DynBitset acc(g->order());
  acc.set_all();
  for (const auto& m : maxes) acc &= m.mask;
  Subgroup r = subgroup_from_members(g, acc.to_indices());
  ws.int_x_cache.emplace(std::move(key), r.members);
  ws.retained.push_back(g);
  return r;
}

bool crit_s_full(Workspace& ws, const GroupPtr& g, const ClassPtr& x) {
  if (is_member(ws, g, x)) return false;
  auto lat = enumerate_lattice(ws, g);
  for (const auto& u : lat->subgroups) {
    if (u.is_whole()) continue;
    if (!is_member(ws, ws.as_group(u).group, x)) return false;
  }
  return true;
}

bool crit_s(Workspace& ws, const GroupPtr& g, const ClassPtr& x) {
  Workspace::ExprKey key{g->id(), x->key};
  auto it = ws.crit_cache.find(key);
  if (it != ws.crit_cache.end()) return it->second;
  bool v;
  if (class_flags(x).s_closed) {
    // maximal subgroups suffice for an S-closed class
    v = !is_member(ws, g, x);
    if (v)
      for (const auto& m : maximal_subgroups(ws, g))
        if (!is_member(ws, ws.as_group(m).group, x)) {
          v = false;
          break;
        }
  } else {
    v = crit_s_full(ws, g, x);
  }
  ws.crit_cache.emplace(std::move(key), v);
  ws.retained.push_back(g);
  return v;
}

Subgroup wielandt_subgroup(Workspace& ws, const GroupPtr& g) {
  auto lat = enumerate_lattice(ws, g);
  DynBitset acc(g->order());
  acc.set_all();
  for (const auto& u : lat->subgroups) {
    if (u.is_trivial() || u.is_whole()) continue;
    if (!is_subnormal(g, u)) continue;
    acc &= normalizer(g, u).mask;
  }
  return subgroup_from_members(g, acc.to_indices());
}

}  // namespace normlab

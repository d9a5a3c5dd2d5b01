#include "normlab/series.hpp"

#include <algorithm>

#include "normlab/errors.hpp"
#include "normlab/lattice.hpp"

namespace normlab {

namespace {

// Normal subgroups M of g with cur < M <= top, minimal among those.
std::vector<const Subgroup*> minimal_steps(Workspace& ws, const GroupPtr& g,
                                           const Subgroup& cur,
                                           const Subgroup& top) {
  const auto& normals = ws.normal_subgroups_of(g);
  std::vector<const Subgroup*> between;
  for (const auto& m : normals) {
    if (m.order() <= cur.order() || m.order() > top.order()) continue;
    if (cur.mask.is_subset_of(m.mask) && m.mask.is_subset_of(top.mask) &&
        m.members != cur.members)
      between.push_back(&m);
  }
  std::vector<const Subgroup*> minimal;
  for (auto* m : between) {
    bool is_min = true;
    for (auto* m2 : between)
      if (m2 != m && m2->mask.is_subset_of(m->mask) &&
          m2->members != m->members) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(m);
  }
  return minimal;
}

}  // namespace

std::shared_ptr<const ChiefSeries> chief_series(Workspace& ws, const GroupPtr& g,
                                                const Subgroup& top,
                                                std::mt19937* tie_break) {
  Workspace::SubKey key{g->id(), top.members};
  if (!tie_break) {
    auto it = ws.chief_cache.find(key);
    if (it != ws.chief_cache.end()) return it->second;
  }
  auto cs = std::make_shared<ChiefSeries>();
  cs->parent = g;
  cs->terms.push_back(trivial_subgroup(g));
  while (cs->terms.back().members != top.members) {
    auto choices = minimal_steps(ws, g, cs->terms.back(), top);
    if (choices.empty())
      throw NormLabError("chief series cannot reach the requested top");
    const Subgroup* pick = choices.front();  // least canonical key
    if (tie_break && choices.size() > 1)
      pick = choices[(*tie_break)() % choices.size()];
    cs->terms.push_back(*pick);
  }
  for (size_t i = 0; i + 1 < cs->terms.size(); ++i) {
    ChiefSeries::Factor f;
    f.below = static_cast<int>(i);
    f.order = cs->terms[i + 1].order() / cs->terms[i].order();
    f.primes = prime_divisors(f.order);
    cs->factors.push_back(std::move(f));
  }
  if (!tie_break) {
    ws.chief_cache.emplace(key, cs);
    ws.retained.push_back(g);
  }
  return cs;
}

std::shared_ptr<const ChiefSeries> chief_series(Workspace& ws, const GroupPtr& g) {
  return chief_series(ws, g, whole_subgroup(g), nullptr);
}

namespace {

std::shared_ptr<FactorData> get_factor(Workspace& ws, const GroupPtr& g,
                                       const Subgroup& l, const Subgroup& k) {
  std::tuple<Gid, std::vector<int>, std::vector<int>> key{g->id(), l.members,
                                                          k.members};
  auto it = ws.factors.find(key);
  if (it != ws.factors.end()) return it->second;

  auto fd = std::make_shared<FactorData>();
  fd->l = l;
  fd->k = k;

  const SubgroupAsGroup& lg = ws.as_group(l);
  // positions of K inside L
  std::vector<int> pos_of(g->order(), -1);
  for (size_t i = 0; i < lg.embed.size(); ++i) pos_of[lg.embed[i]] = (int)i;
  std::vector<int> k_pos;
  for (int m : k.members) k_pos.push_back(pos_of[m]);
  Subgroup k_in_l = subgroup_from_members(lg.group, k_pos);
  auto [factor, pi_l] = quotient_group(lg.group, k_in_l);
  fd->factor = factor;

  fd->centralizer = factor_centralizer(g, l, k);
  auto [quot, pi_c] = quotient_group(g, fd->centralizer);
  fd->quotient = quot;

  // representatives
  int vn = factor->order(), qn = quot->order();
  std::vector<int> vrep(vn, -1);  // factor element -> parent element of G
  for (int x = 0; x < lg.group->order(); ++x) {
    int f = pi_l.image_of[x];
    if (vrep[f] < 0) vrep[f] = lg.embed[x];
  }
  std::vector<int> qrep(qn, -1);
  for (int x = 0; x < g->order(); ++x) {
    int q = pi_c.image_of[x];
    if (qrep[q] < 0) qrep[q] = x;
  }

  // conjugation action of Q on V: q acts by x -> r_q x r_q^{-1}
  std::vector<std::vector<int32_t>> action(qn, std::vector<int32_t>(vn));
  for (int q = 0; q < qn; ++q) {
    int rq = qrep[q];
    int rq_inv = g->inv(rq);
    for (int v = 0; v < vn; ++v) {
      int x = vrep[v];
      int y = g->mul(g->mul(rq, x), rq_inv);
      action[q][v] = pi_l.image_of[pos_of[y]];
    }
  }
  fd->semidirect = semidirect_product(factor, quot, action);

  long long fo = factor->order();
  auto ps = prime_divisors(fo);
  if (ps.size() == 1) {
    fd->p = ps[0];
    fd->elementary_abelian_p = true;  // chief p-factors are elementary abelian
  }

  ws.factors.emplace(std::move(key), fd);
  ws.retained.push_back(g);
  return fd;
}

void check_chief(Workspace& ws, const GroupPtr& g, const Subgroup& l,
                 const Subgroup& k) {
  if (!k.mask.is_subset_of(l.mask) || k.members == l.members)
    throw InvalidFactor("K must be a proper subgroup of L");
  for (const auto& m : ws.normal_subgroups_of(g)) {
    if (m.order() <= k.order() || m.order() >= l.order()) continue;
    if (k.mask.is_subset_of(m.mask) && m.mask.is_subset_of(l.mask) &&
        m.members != k.members && m.members != l.members)
      throw InvalidFactor("L/K is not a chief factor of G");
  }
}

}  // namespace

CentralityVerdict is_f_central(Workspace& ws, const GroupPtr& g,
                               const Subgroup& l, const Subgroup& k,
                               const ClassPtr& f) {
  check_chief(ws, g, l, k);
  auto fd = get_factor(ws, g, l, k);
  CentralityVerdict v;
  v.semidirect_result = is_member(ws, fd->semidirect, f);
  if (fd->elementary_abelian_p) {
    if (auto local = canonical_local_definition(f)) {
      auto at_p = (*local)(fd->p);
      v.local_result = at_p.has_value() && is_member(ws, fd->quotient, *at_p);
      v.agree = (*v.local_result == v.semidirect_result);
    }
  }
  return v;
}

bool is_pi_f_hypercentral(Workspace& ws, const GroupPtr& g, const Subgroup& n,
                          const PrimeSet& pi, const ClassPtr& f,
                          std::mt19937* tie_break) {
  if (n.is_trivial()) return true;
  auto cs = chief_series(ws, g, n, tie_break);
  for (const auto& fac : cs->factors) {
    bool pi_divides = false;
    for (int p : fac.primes)
      if (pi.contains(p)) pi_divides = true;
    if (!pi_divides) continue;
    auto verdict =
        is_f_central(ws, g, cs->terms[fac.below + 1], cs->terms[fac.below], f);
    if (!verdict.semidirect_result) return false;
  }
  return true;
}

Subgroup hypercentre(Workspace& ws, const GroupPtr& g, const PrimeSet& pi,
                     const ClassPtr& f) {
  std::tuple<Gid, std::string, std::string> key{g->id(), pi.to_string(),
                                                f->key};
  auto it = ws.hypercentre_cache.find(key);
  if (it != ws.hypercentre_cache.end())
    return subgroup_from_members(g, it->second);

  Subgroup join = trivial_subgroup(g);
  for (const auto& n : ws.normal_subgroups_of(g)) {
    if (n.mask.is_subset_of(join.mask)) continue;
    if (is_pi_f_hypercentral(ws, g, n, pi, f)) join = join_subgroups(join, n);
  }
  if (!is_pi_f_hypercentral(ws, g, join, pi, f))
    throw HypercentreJoinFailure(
        "join of pi-F-hypercentral normal subgroups is not hypercentral "
        "(Jordan-Hoelder independence violated)");
  ws.hypercentre_cache.emplace(std::move(key), join.members);
  ws.retained.push_back(g);
  return join;
}

Subgroup hypercentre_ascending(Workspace& ws, const GroupPtr& g,
                               const PrimeSet& pi, const ClassPtr& f) {
  Subgroup z = trivial_subgroup(g);
  for (;;) {
    std::vector<Subgroup> adds;
    for (const auto& m : ws.normal_subgroups_of(g)) {
      if (m.mask.is_subset_of(z.mask) || !z.mask.is_subset_of(m.mask))
        continue;
      // minimal normal above z?
      bool minimal = true;
      for (const auto& m2 : ws.normal_subgroups_of(g)) {
        if (m2.order() <= z.order() || m2.order() >= m.order()) continue;
        if (z.mask.is_subset_of(m2.mask) && m2.mask.is_subset_of(m.mask) &&
            m2.members != z.members && m2.members != m.members) {
          minimal = false;
          break;
        }
      }
      if (!minimal) continue;
      long long fo = m.order() / z.order();
      bool pi_divides = false;
      for (int p : prime_divisors(fo))
        if (pi.contains(p)) pi_divides = true;
      if (!pi_divides || is_f_central(ws, g, m, z, f).semidirect_result)
        adds.push_back(m);
    }
    if (adds.empty()) return z;
    Subgroup next = z;
    for (const auto& a : adds) next = join_subgroups(next, a);
    z = std::move(next);
  }
}

int p_length(Workspace& ws, const GroupPtr& g, int p) {
  PrimeSet just_p = PrimeSet::of({p});
  if (!is_member(ws, g, cls_spi(just_p)))
    throw NotPiSolvable("p-length requires a p-solvable group");
  GroupPtr cur = g;
  int count = 0;
  for (;;) {
    if (cur->order() == 1) return count;
    Subgroup opp = o_pi(ws, cur, just_p.complement());
    if (!opp.is_trivial()) {
      auto [q1, h1] = quotient_group(cur, opp);
      cur = q1;
    }
    if (cur->order() == 1) return count;
    Subgroup op = o_pi(ws, cur, just_p);
    if (op.is_trivial())
      throw NormLabError("upper p-series stalled on a p-solvable group");
    ++count;
    auto [q2, h2] = quotient_group(cur, op);
    cur = q2;
  }
}

bool sylow2_quaternion_free(Workspace& ws, const GroupPtr& g) {
  Subgroup syl = quick_sylow(g, 2);
  if (syl.order() < 8) return true;
  const auto& pg = ws.as_group(syl);
  auto lat = enumerate_lattice(ws, pg.group);
  for (const auto& h : lat->subgroups) {
    if (h.order() < 8 || h.order() % 8 != 0) continue;
    const auto& hg = ws.as_group(h);
    for (const auto& k : ws.normal_subgroups_of(hg.group)) {
      if (h.order() / k.order() != 8) continue;
      auto [q, pi] = quotient_group(hg.group, k);
      if (is_quaternion_q8(*q)) return false;
    }
  }
  return true;
}

Subgroup psi_p(Workspace& ws, const GroupPtr& g, int p) {
  std::vector<int> seed;
  if (p != 2) {
    for (int x = 1; x < g->order(); ++x)
      if (g->element_order(x) == p) seed.push_back(x);
  } else if (sylow2_quaternion_free(ws, g)) {
    for (int x = 1; x < g->order(); ++x)
      if (g->element_order(x) == 2) seed.push_back(x);
  } else {
    for (int x = 1; x < g->order(); ++x) {
      int o = g->element_order(x);
      if (o == 2 || o == 4) seed.push_back(x);
    }
  }
  return closure(g, seed);
}

}  // namespace normlab

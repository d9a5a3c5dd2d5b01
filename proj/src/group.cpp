#include "normlab/group.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "normlab/errors.hpp"

namespace normlab {

namespace {

// Tables above this order fall back to structured backends.
constexpr int kTableThreshold = 1024;

uint64_t fnv_step(uint64_t h, uint64_t v) {
  h ^= v;
  h *= 1099511628211ull;
  return h;
}

}  // namespace

std::vector<int> prime_divisors(long long n) {
  std::vector<int> out;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(static_cast<int>(p));
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(static_cast<int>(n));
  return out;
}

long long p_part(long long n, int p) {
  long long pp = 1;
  while (n % p == 0) {
    pp *= p;
    n /= p;
  }
  return pp;
}

// ---- FiniteGroup ---------------------------------------------------------

FiniteGroup::FiniteGroup(Backend backend, int order, std::vector<int> generators)
    : backend_(std::move(backend)), order_(order), generators_(std::move(generators)) {
  build_inverses();
  compute_id();
}

int FiniteGroup::mul(int a, int b) const {
  switch (backend_.index()) {
    case 0: {
      const auto& pb = std::get<PermBackend>(backend_);
      if (!pb.table.empty()) return pb.table[a * order_ + b];
      return pb.index.at(pb.elems[a].compose(pb.elems[b]));
    }
    case 1:
      return std::get<TableBackend>(backend_).table[a * order_ + b];
    case 2: {
      const auto& sb = std::get<SemidirectBackend>(backend_);
      int hn = sb.h_part->order();
      int v1 = a / hn, q1 = a % hn, v2 = b / hn, q2 = b % hn;
      return sb.n_part->mul(v1, sb.action[q1][v2]) * hn + sb.h_part->mul(q1, q2);
    }
    default: {
      const auto& ib = std::get<InducedBackend>(backend_);
      return ib.rep_pos[ib.parent->mul(ib.rep[a], ib.rep[b])];
    }
  }
}

int FiniteGroup::pow(int a, long long e) const {
  int ord = element_order(a);
  e %= ord;
  if (e < 0) e += ord;
  int r = 0;
  for (long long i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

int FiniteGroup::element_order(int a) const {
  int x = a, n = 1;
  while (x != 0) {
    x = mul(x, a);
    ++n;
  }
  return n;
}

void FiniteGroup::build_inverses() {
  inverse_.assign(order_, -1);
  switch (backend_.index()) {
    case 0: {
      const auto& pb = std::get<PermBackend>(backend_);
      for (int a = 0; a < order_; ++a)
        inverse_[a] = pb.index.at(pb.elems[a].inverse());
      break;
    }
    case 2: {
      const auto& sb = std::get<SemidirectBackend>(backend_);
      int hn = sb.h_part->order();
      for (int a = 0; a < order_; ++a) {
        int v = a / hn, q = a % hn;
        int qi = sb.h_part->inv(q);
        inverse_[a] = sb.action[qi][sb.n_part->inv(v)] * hn + qi;
      }
      break;
    }
    case 3: {
      const auto& ib = std::get<InducedBackend>(backend_);
      for (int a = 0; a < order_; ++a)
        inverse_[a] = ib.rep_pos[ib.parent->inv(ib.rep[a])];
      break;
    }
    default: {
      for (int a = 0; a < order_; ++a) {
        for (int b = 0; b < order_; ++b) {
          if (mul(a, b) == 0 && mul(b, a) == 0) {
            inverse_[a] = b;
            break;
          }
        }
        if (inverse_[a] < 0) throw ValidationError("element has no inverse");
      }
    }
  }
}

void FiniteGroup::compute_id() {
  // Content hash over the defining data of the backend. Rebuilding the same
  // construction yields the same id; ids never collide across different
  // multiplication structures except by hash collision.
  uint64_t h = 1469598103934665603ull;
  h = fnv_step(h, static_cast<uint64_t>(order_));
  switch (backend_.index()) {
    case 0: {
      const auto& pb = std::get<PermBackend>(backend_);
      h = fnv_step(h, 0xA1);
      h = fnv_step(h, static_cast<uint64_t>(pb.degree));
      for (const auto& e : pb.elems)
        for (int v : e.images()) h = fnv_step(h, static_cast<uint64_t>(v));
      break;
    }
    case 1: {
      const auto& tb = std::get<TableBackend>(backend_);
      h = fnv_step(h, 0xA2);
      for (auto v : tb.table) h = fnv_step(h, static_cast<uint64_t>(v));
      break;
    }
    case 2: {
      const auto& sb = std::get<SemidirectBackend>(backend_);
      h = fnv_step(h, 0xA3);
      h = fnv_step(h, sb.n_part->id());
      h = fnv_step(h, sb.h_part->id());
      for (const auto& row : sb.action)
        for (auto v : row) h = fnv_step(h, static_cast<uint64_t>(v));
      break;
    }
    default: {
      const auto& ib = std::get<InducedBackend>(backend_);
      h = fnv_step(h, 0xA4);
      h = fnv_step(h, ib.parent->id());
      for (auto v : ib.rep) h = fnv_step(h, static_cast<uint64_t>(v));
      break;
    }
  }
  id_ = h;
}

const char* FiniteGroup::backend_name() const {
  switch (backend_.index()) {
    case 0: return "permutation";
    case 1: return "table";
    case 2: return "semidirect";
    default: return "induced";
  }
}

const Permutation* FiniteGroup::perm_of(int a) const {
  if (auto* pb = std::get_if<PermBackend>(&backend_)) return &pb->elems[a];
  return nullptr;
}

std::vector<std::string> FiniteGroup::element_words() const {
  auto gen_name = [&](int k) -> std::string {
    if (k < 26) return std::string(1, static_cast<char>('a' + k));
    return "g" + std::to_string(k);
  };
  std::vector<std::string> words(order_);
  words[0] = "e";
  std::vector<int> queue = {0};
  std::vector<char> seen(order_, 0);
  seen[0] = 1;
  for (size_t pos = 0; pos < queue.size(); ++pos) {
    int e = queue[pos];
    for (size_t k = 0; k < generators_.size(); ++k) {
      int f = mul(e, generators_[k]);
      if (!seen[f]) {
        seen[f] = 1;
        words[f] = (e == 0) ? gen_name(static_cast<int>(k))
                            : words[e] + "*" + gen_name(static_cast<int>(k));
        queue.push_back(f);
      }
    }
  }
  for (int a = 0; a < order_; ++a)
    if (!seen[a]) words[a] = "?";  // not reachable: generator list incomplete
  return words;
}

bool FiniteGroup::check_axioms() const {
  for (int a = 0; a < order_; ++a)
    if (mul(0, a) != a || mul(a, 0) != a) return false;
  for (int a = 0; a < order_; ++a)
    if (mul(a, inv(a)) != 0 || mul(inv(a), a) != 0) return false;
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b)
      for (int c = 0; c < order_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
  return true;
}

// ---- constructors --------------------------------------------------------

GroupPtr group_from_permutations(int degree, const std::vector<Permutation>& gens,
                                 int order_cap) {
  for (const auto& g : gens)
    if (g.degree() != degree)
      throw InvalidPermutation("generator degree mismatch");

  FiniteGroup::PermBackend pb;
  pb.degree = degree;
  pb.elems.push_back(Permutation(degree));
  pb.index[pb.elems[0]] = 0;
  for (size_t pos = 0; pos < pb.elems.size(); ++pos) {
    Permutation cur = pb.elems[pos];  // copy: elems may reallocate
    for (const auto& g : gens) {
      Permutation nxt = cur.compose(g);
      if (pb.index.find(nxt) == pb.index.end()) {
        if (static_cast<int>(pb.elems.size()) >= order_cap)
          throw OrderCapExceeded("closure exceeds order cap " +
                                 std::to_string(order_cap));
        pb.index[nxt] = static_cast<int>(pb.elems.size());
        pb.elems.push_back(std::move(nxt));
      }
    }
  }
  int n = static_cast<int>(pb.elems.size());
  std::vector<int> gen_idx;
  for (const auto& g : gens) gen_idx.push_back(pb.index.at(g));
  if (n <= kTableThreshold) {
    pb.table.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        pb.table[a * n + b] = pb.index.at(pb.elems[a].compose(pb.elems[b]));
  }
  return std::make_shared<FiniteGroup>(FiniteGroup::Backend(std::move(pb)), n,
                                       std::move(gen_idx));
}

namespace {

std::vector<int> greedy_generators_from_table(const std::vector<int32_t>& table,
                                              int n) {
  std::vector<int> gens;
  DynBitset have(n);
  have.set(0);
  int have_count = 1;
  while (have_count < n) {
    int next = -1;
    for (int a = 0; a < n; ++a)
      if (!have.test(a)) {
        next = a;
        break;
      }
    gens.push_back(next);
    // re-close under the chosen generators
    std::vector<int> queue = {0};
    DynBitset in(n);
    in.set(0);
    for (size_t pos = 0; pos < queue.size(); ++pos)
      for (int g : gens) {
        int f = table[queue[pos] * n + g];
        if (!in.test(f)) {
          in.set(f);
          queue.push_back(f);
        }
      }
    have = in;
    have_count = static_cast<int>(queue.size());
  }
  return gens;
}

GroupPtr make_table_group(std::vector<int32_t> table, int n,
                          std::vector<int> gens) {
  FiniteGroup::TableBackend tb{std::move(table)};
  return std::make_shared<FiniteGroup>(FiniteGroup::Backend(std::move(tb)), n,
                                       std::move(gens));
}

}  // namespace

GroupPtr group_from_table(const std::vector<int32_t>& table) {
  int n = static_cast<int>(std::lround(std::sqrt(double(table.size()))));
  if (static_cast<size_t>(n) * n != table.size() || n == 0)
    throw ValidationError("table length is not a perfect square");
  for (auto v : table)
    if (v < 0 || v >= n) throw ValidationError("table entry out of range");
  for (int a = 0; a < n; ++a)
    if (table[a] != a || table[a * n] != a)
      throw ValidationError("index 0 is not a two-sided identity");
  // Latin square rows/columns
  for (int a = 0; a < n; ++a) {
    DynBitset row(n), col(n);
    for (int b = 0; b < n; ++b) {
      row.set(table[a * n + b]);
      col.set(table[b * n + a]);
    }
    if (row.count() != n || col.count() != n)
      throw ValidationError("table is not a Latin square");
  }
  if (n <= 200) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (table[table[a * n + b] * n + c] != table[a * n + table[b * n + c]])
            throw ValidationError("table is not associative");
  }
  auto gens = greedy_generators_from_table(table, n);
  return make_table_group(table, n, std::move(gens));
}

GroupPtr trivial_group() { return make_table_group({0}, 1, {}); }

GroupPtr cyclic_group(int n) {
  if (n <= 0) throw ValidationError("cyclic order must be positive");
  if (n == 1) return trivial_group();
  std::vector<int32_t> t(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  return make_table_group(std::move(t), n, {1});
}

GroupPtr dihedral_group(int order) {
  if (order % 2 != 0 || order < 2) throw ValidationError("dihedral order must be even");
  int n = order / 2;
  if (n == 1) return cyclic_group(2);
  if (n == 2) return elementary_abelian_group(2, 2);
  // rotation (0 1 ... n-1), reflection i -> (n - i) mod n
  std::vector<int> rot(n), refl(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    refl[i] = (n - i) % n;
  }
  return group_from_permutations(n, {Permutation(rot), Permutation(refl)},
                                 std::max(kDefaultOrderCap, order + 1));
}

GroupPtr dicyclic_group(int n) {
  if (n < 2) throw ValidationError("dicyclic parameter must be >= 2");
  int m = 2 * n, order = 4 * n;
  // elements a^i b^j: idx = j*m + i
  auto enc = [m](int i, int j) { return j * m + i; };
  std::vector<int32_t> t(static_cast<size_t>(order) * order);
  for (int j1 = 0; j1 < 2; ++j1)
    for (int i1 = 0; i1 < m; ++i1)
      for (int j2 = 0; j2 < 2; ++j2)
        for (int i2 = 0; i2 < m; ++i2) {
          int i, j;
          if (j1 == 0) {
            i = (i1 + i2) % m;
            j = j2;
          } else if (j2 == 0) {
            i = ((i1 - i2) % m + m) % m;
            j = 1;
          } else {
            i = ((i1 - i2 + n) % m + m) % m;
            j = 0;
          }
          t[enc(i1, j1) * order + enc(i2, j2)] = enc(i, j);
        }
  return make_table_group(std::move(t), order, {enc(1, 0), enc(0, 1)});
}

GroupPtr symmetric_group(int n, int order_cap) {
  if (n <= 1) return trivial_group();
  std::vector<int> cyc(n), tr(n);
  std::iota(tr.begin(), tr.end(), 0);
  tr[0] = 1;
  tr[1] = 0;
  for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  return group_from_permutations(n, {Permutation(tr), Permutation(cyc)}, order_cap);
}

GroupPtr alternating_group(int n, int order_cap) {
  if (n <= 2) return trivial_group();
  std::vector<int> three(n);
  std::iota(three.begin(), three.end(), 0);
  three[0] = 1;
  three[1] = 2;
  three[2] = 0;
  std::vector<int> big(n);
  std::iota(big.begin(), big.end(), 0);
  if (n % 2 == 1) {
    for (int i = 0; i < n; ++i) big[i] = (i + 1) % n;
  } else {
    for (int i = 1; i < n; ++i) big[i] = (i % (n - 1)) + 1;
  }
  return group_from_permutations(n, {Permutation(three), Permutation(big)},
                                 order_cap);
}

GroupPtr elementary_abelian_group(int p, int k) {
  int n = 1;
  for (int i = 0; i < k; ++i) n *= p;
  std::vector<int32_t> t(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int x = a, y = b, r = 0, mul = 1;
      for (int d = 0; d < k; ++d) {
        r += ((x % p + y % p) % p) * mul;
        x /= p;
        y /= p;
        mul *= p;
      }
      t[a * n + b] = r;
    }
  std::vector<int> gens;
  int mul = 1;
  for (int d = 0; d < k; ++d) {
    gens.push_back(mul);
    mul *= p;
  }
  return make_table_group(std::move(t), n, std::move(gens));
}

bool Homomorphism::validate(int limit) const {
  if (static_cast<int>(image_of.size()) != source->order()) return false;
  if (image_of[0] != 0) return false;
  if (source->order() <= limit) {
    for (int a = 0; a < source->order(); ++a)
      for (int b = 0; b < source->order(); ++b)
        if (image_of[source->mul(a, b)] !=
            target->mul(image_of[a], image_of[b]))
          return false;
  } else {
    for (int a : source->generators())
      for (int b : source->generators())
        if (image_of[source->mul(a, b)] !=
            target->mul(image_of[a], image_of[b]))
          return false;
  }
  return true;
}

namespace {

GroupPtr build_pair_group(const GroupPtr& n_part, const GroupPtr& h_part,
                          std::vector<std::vector<int32_t>> action) {
  long long order = static_cast<long long>(n_part->order()) * h_part->order();
  int hn = h_part->order();
  std::vector<int> gens;
  for (int g : n_part->generators()) gens.push_back(g * hn);
  for (int g : h_part->generators()) gens.push_back(g);
  if (order <= kTableThreshold) {
    int n = static_cast<int>(order);
    std::vector<int32_t> t(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
      int v1 = a / hn, q1 = a % hn;
      for (int b = 0; b < n; ++b) {
        int v2 = b / hn, q2 = b % hn;
        t[a * n + b] =
            n_part->mul(v1, action[q1][v2]) * hn + h_part->mul(q1, q2);
      }
    }
    return make_table_group(std::move(t), n, std::move(gens));
  }
  FiniteGroup::SemidirectBackend sb{n_part, h_part, std::move(action)};
  return std::make_shared<FiniteGroup>(FiniteGroup::Backend(std::move(sb)),
                                       static_cast<int>(order), std::move(gens));
}

}  // namespace

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
  std::vector<std::vector<int32_t>> trivial_action(
      b->order(), [&] {
        std::vector<int32_t> idmap(a->order());
        std::iota(idmap.begin(), idmap.end(), 0);
        return idmap;
      }());
  return build_pair_group(a, b, std::move(trivial_action));
}

GroupPtr semidirect_product(const GroupPtr& n_part, const GroupPtr& h_part,
                            const std::vector<std::vector<int32_t>>& action) {
  int nn = n_part->order(), hn = h_part->order();
  if (static_cast<int>(action.size()) != hn)
    throw InvalidAction("action must map every element of H");
  for (int q = 0; q < hn; ++q) {
    const auto& f = action[q];
    if (static_cast<int>(f.size()) != nn)
      throw InvalidAction("action image has wrong size");
    DynBitset seen(nn);
    for (auto v : f) {
      if (v < 0 || v >= nn || seen.test(v))
        throw InvalidAction("action image is not a bijection");
      seen.set(v);
    }
    if (f[0] != 0) throw InvalidAction("action image does not fix identity");
    for (int x = 0; x < nn; ++x)
      for (int y = 0; y < nn; ++y)
        if (f[n_part->mul(x, y)] != n_part->mul(f[x], f[y]))
          throw InvalidAction("action image is not an automorphism");
  }
  for (int q1 = 0; q1 < hn; ++q1)
    for (int q2 = 0; q2 < hn; ++q2) {
      int q12 = h_part->mul(q1, q2);
      for (int x = 0; x < nn; ++x)
        if (action[q12][x] != action[q1][action[q2][x]])
          throw InvalidAction("action is not a homomorphism into Aut(N)");
    }
  return build_pair_group(n_part, h_part, action);
}

std::optional<std::vector<int32_t>> extend_automorphism(
    const FiniteGroup& g, const std::vector<int>& gen_images) {
  const auto& gens = g.generators();
  if (gen_images.size() != gens.size()) return std::nullopt;
  int n = g.order();
  std::vector<int32_t> f(n, -1);
  f[0] = 0;
  std::vector<int> queue = {0};
  for (size_t pos = 0; pos < queue.size(); ++pos) {
    int e = queue[pos];
    for (size_t k = 0; k < gens.size(); ++k) {
      int e2 = g.mul(e, gens[k]);
      int img = g.mul(f[e], gen_images[k]);
      if (f[e2] == -1) {
        f[e2] = img;
        queue.push_back(e2);
      } else if (f[e2] != img) {
        return std::nullopt;
      }
    }
  }
  if (static_cast<int>(queue.size()) != n) return std::nullopt;
  DynBitset seen(n);
  for (auto v : f) {
    if (seen.test(v)) return std::nullopt;
    seen.set(v);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (f[g.mul(a, b)] != g.mul(f[a], f[b])) return std::nullopt;
  return f;
}

// ---- subgroup machinery --------------------------------------------------

Subgroup subgroup_from_members(const GroupPtr& g, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup s;
  s.parent = g;
  s.mask = DynBitset::from_indices(g->order(), members);
  s.members = std::move(members);
  return s;
}

Subgroup trivial_subgroup(const GroupPtr& g) {
  return subgroup_from_members(g, {0});
}

Subgroup whole_subgroup(const GroupPtr& g) {
  std::vector<int> all(g->order());
  std::iota(all.begin(), all.end(), 0);
  return subgroup_from_members(g, std::move(all));
}

bool is_subgroup_set(const FiniteGroup& g, const std::vector<int>& members) {
  DynBitset in = DynBitset::from_indices(g.order(), members);
  if (!in.test(0)) return false;
  for (int a : members)
    for (int b : members)
      if (!in.test(g.mul(a, b))) return false;
  return true;
}

namespace {

// Incremental right-multiplication closure; gens may grow between calls.
struct ClosureState {
  const FiniteGroup* g;
  std::vector<int> members{0};
  DynBitset in;
  std::vector<int> gens;
  // positions processed against gens[0..processed_gens)
  size_t next_pos = 0;

  explicit ClosureState(const FiniteGroup& grp) : g(&grp), in(grp.order()) {
    in.set(0);
  }

  void add_generator(int x) {
    if (in.test(x)) return;
    gens.push_back(x);
    in.set(x);
    members.push_back(x);
    next_pos = 0;  // reprocess all members against the enlarged gen set
  }

  void close() {
    while (next_pos < members.size()) {
      int e = members[next_pos++];
      for (int t : gens) {
        int f = g->mul(e, t);
        if (!in.test(f)) {
          in.set(f);
          members.push_back(f);
        }
      }
    }
  }
};

}  // namespace

Subgroup closure(const GroupPtr& g, const std::vector<int>& seed) {
  for (int s : seed)
    if (s < 0 || s >= g->order())
      throw ValidationError("seed index out of range");
  ClosureState st(*g);
  for (int s : seed) st.add_generator(s);
  st.close();
  return subgroup_from_members(g, st.members);
}

Subgroup normal_closure(const GroupPtr& g, const std::vector<int>& seed) {
  ClosureState st(*g);
  for (int s : seed) st.add_generator(s);
  st.close();
  // Conjugates of the generating set by G's generators land inside iff the
  // closure is normal; grow the generating set until they do.
  for (size_t gi = 0; gi < st.gens.size(); ++gi) {
    for (int y : g->generators()) {
      int c = g->conj(y, st.gens[gi]);
      if (!st.in.test(c)) {
        st.add_generator(c);
        st.close();
      }
    }
  }
  return subgroup_from_members(g, st.members);
}

std::vector<std::vector<int>> element_conjugacy_classes(const FiniteGroup& g) {
  int n = g.order();
  std::vector<int> cls(n, -1);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    int c = static_cast<int>(classes.size());
    std::vector<int> orbit = {x};
    cls[x] = c;
    for (size_t pos = 0; pos < orbit.size(); ++pos)
      for (int y : g.generators()) {
        int z = g.conj(y, orbit[pos]);
        if (cls[z] < 0) {
          cls[z] = c;
          orbit.push_back(z);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(std::move(orbit));
  }
  return classes;
}

Subgroup join_subgroups(const Subgroup& a, const Subgroup& b) {
  ClosureState st(*a.parent);
  for (int x : small_generating_set(a)) st.add_generator(x);
  for (int x : small_generating_set(b)) st.add_generator(x);
  st.close();
  return subgroup_from_members(a.parent, st.members);
}

Subgroup intersect_subgroups(const Subgroup& a, const Subgroup& b) {
  DynBitset m = a.mask;
  m &= b.mask;
  return subgroup_from_members(a.parent, m.to_indices());
}

std::vector<Subgroup> normal_subgroups_direct(const GroupPtr& g) {
  auto classes = element_conjugacy_classes(*g);
  std::map<uint64_t, Subgroup> seen;
  auto insert = [&](Subgroup s) -> bool {
    uint64_t h = s.member_hash();
    auto [it, fresh] = seen.emplace(h, std::move(s));
    (void)it;
    return fresh;
  };
  insert(trivial_subgroup(g));
  std::vector<Subgroup> atoms;
  for (const auto& cls : classes) {
    if (cls.size() == 1 && cls[0] == 0) continue;
    Subgroup nc = normal_closure(g, {cls[0]});
    if (insert(nc)) atoms.push_back(nc);
  }
  // join-closure: every normal subgroup is a join of element closures
  std::vector<Subgroup> frontier;
  for (auto& [h, s] : seen) frontier.push_back(s);
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& s : frontier)
      for (const auto& a : atoms) {
        if (a.mask.is_subset_of(s.mask)) continue;
        Subgroup j = join_subgroups(s, a);
        if (insert(j)) next.push_back(std::move(j));
      }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (auto& [h, s] : seen) out.push_back(std::move(s));
  std::sort(out.begin(), out.end(), [](const Subgroup& x, const Subgroup& y) {
    if (x.order() != y.order()) return x.order() < y.order();
    return x.members < y.members;
  });
  return out;
}

std::vector<int> conjugate_members(const FiniteGroup& g,
                                   const std::vector<int>& members, int by) {
  std::vector<int> out;
  out.reserve(members.size());
  for (int m : members) out.push_back(g.conj(by, m));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_normal(const Subgroup& h) {
  const auto& g = *h.parent;
  auto gens = small_generating_set(h);
  for (int y = 0; y < g.order(); ++y)
    for (int m : gens)
      if (!h.mask.test(g.conj(y, m))) return false;
  return true;
}

std::vector<int> small_generating_set(const Subgroup& h) {
  if (h.order() == 1) return {};
  ClosureState st(*h.parent);
  std::vector<int> gens;
  size_t have = 1;
  for (int m : h.members) {
    if (st.in.test(m)) continue;
    gens.push_back(m);
    st.add_generator(m);
    st.close();
    have = st.members.size();
    if (have == h.members.size()) break;
  }
  return gens;
}

Subgroup centralizer(const GroupPtr& g, const std::vector<int>& set) {
  std::vector<int> out;
  for (int x = 0; x < g->order(); ++x) {
    bool ok = true;
    for (int s : set)
      if (g->mul(x, s) != g->mul(s, x)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return subgroup_from_members(g, std::move(out));
}

Subgroup normalizer(const GroupPtr& g, const Subgroup& h) {
  if (!is_subgroup_set(*g, h.members))
    throw NotASubgroup("normalizer requested of a non-closed set");
  auto gens = small_generating_set(h);
  std::vector<int> out;
  for (int x = 0; x < g->order(); ++x) {
    bool ok = true;
    for (int m : gens)
      if (!h.mask.test(g->conj(x, m))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return subgroup_from_members(g, std::move(out));
}

Subgroup center(const GroupPtr& g) {
  std::vector<int> probe = g->generators();
  if (probe.empty()) return whole_subgroup(g);
  return centralizer(g, probe);
}

Subgroup factor_centralizer(const GroupPtr& g, const Subgroup& l,
                            const Subgroup& k) {
  auto lgens = small_generating_set(l);
  std::vector<int> out;
  for (int x = 0; x < g->order(); ++x) {
    bool ok = true;
    for (int t : lgens) {
      int comm = g->mul(g->mul(g->inv(x), g->inv(t)), g->mul(x, t));
      if (!k.mask.test(comm)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return subgroup_from_members(g, std::move(out));
}

Subgroup commutator_subgroup(const GroupPtr& g, const Subgroup& a,
                             const Subgroup& b) {
  std::vector<int> comms;
  DynBitset seen(g->order());
  for (int x : a.members)
    for (int y : b.members) {
      int c = g->mul(g->mul(g->inv(x), g->inv(y)), g->mul(x, y));
      if (!seen.test(c)) {
        seen.set(c);
        comms.push_back(c);
      }
    }
  return closure(g, comms);
}

std::vector<Subgroup> derived_series(const GroupPtr& g) {
  std::vector<Subgroup> series = {whole_subgroup(g)};
  for (;;) {
    const Subgroup& last = series.back();
    Subgroup next = commutator_subgroup(g, last, last);
    if (next.members == last.members) break;
    series.push_back(std::move(next));
    if (series.back().order() == 1) break;
  }
  return series;
}

bool is_abelian(const FiniteGroup& g) {
  for (int a = 0; a < g.order(); ++a)
    for (int b = a + 1; b < g.order(); ++b)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

bool is_perfect(const GroupPtr& g) {
  Subgroup whole = whole_subgroup(g);
  return commutator_subgroup(g, whole, whole).order() == g->order();
}

std::pair<GroupPtr, Homomorphism> quotient_group(const GroupPtr& g,
                                                 const Subgroup& n) {
  if (!is_normal(n)) throw NotNormal("quotient by a non-normal subgroup");
  int order = g->order();
  std::vector<int32_t> coset_of(order, -1);
  std::vector<int32_t> reps;
  auto ngens = small_generating_set(n);
  // cosets keyed and ordered by least member index; each coset filled by a
  // BFS over right multiplication with N's generators
  std::vector<int> stack;
  for (int x = 0; x < order; ++x) {
    if (coset_of[x] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(x);
    coset_of[x] = c;
    stack.assign(1, x);
    while (!stack.empty()) {
      int y = stack.back();
      stack.pop_back();
      for (int m : ngens) {
        int z = g->mul(y, m);
        if (coset_of[z] < 0) {
          coset_of[z] = c;
          stack.push_back(z);
        }
      }
    }
  }
  int qn = static_cast<int>(reps.size());
  std::vector<int> qgens;
  DynBitset gen_seen(qn);
  for (int gg : g->generators()) {
    int img = coset_of[gg];
    if (img != 0 && !gen_seen.test(img)) {
      gen_seen.set(img);
      qgens.push_back(img);
    }
  }
  if (qgens.empty() && qn > 1) {
    // generator images all trivial cannot happen for a proper quotient,
    // but table-built parents may list redundant generators
    for (int c = 1; c < qn; ++c) qgens.push_back(c);
  }
  GroupPtr q;
  if (qn <= kTableThreshold) {
    std::vector<int32_t> t(static_cast<size_t>(qn) * qn);
    for (int a = 0; a < qn; ++a)
      for (int b = 0; b < qn; ++b)
        t[a * qn + b] = coset_of[g->mul(reps[a], reps[b])];
    q = make_table_group(std::move(t), qn, std::move(qgens));
  } else {
    FiniteGroup::InducedBackend ib{g, reps, coset_of};
    q = std::make_shared<FiniteGroup>(FiniteGroup::Backend(std::move(ib)), qn,
                                      std::move(qgens));
  }
  Homomorphism pi;
  pi.source = g;
  pi.target = q;
  pi.image_of.assign(coset_of.begin(), coset_of.end());
  return {q, std::move(pi)};
}

Subgroup preimage(const Homomorphism& pi, const Subgroup& sub_of_target) {
  std::vector<int> out;
  for (int x = 0; x < pi.source->order(); ++x)
    if (sub_of_target.mask.test(pi.image_of[x])) out.push_back(x);
  return subgroup_from_members(pi.source, std::move(out));
}

Subgroup image(const Homomorphism& pi, const Subgroup& sub_of_source) {
  std::vector<int> out;
  for (int x : sub_of_source.members) out.push_back(pi.image_of[x]);
  return subgroup_from_members(pi.target, std::move(out));
}

SubgroupAsGroup subgroup_as_group(const Subgroup& h) {
  const GroupPtr& g = h.parent;
  int k = h.order();
  SubgroupAsGroup out;
  out.embed = h.members;
  std::vector<int> gens = small_generating_set(h);
  if (k == g->order()) {
    out.group = g;
    return out;
  }
  std::vector<int32_t> pos(g->order(), -1);
  for (int i = 0; i < k; ++i) pos[h.members[i]] = i;
  std::vector<int> gen_pos;
  for (int m : gens) gen_pos.push_back(pos[m]);
  if (k <= kTableThreshold) {
    std::vector<int32_t> t(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        t[i * k + j] = pos[g->mul(h.members[i], h.members[j])];
    out.group = make_table_group(std::move(t), k, std::move(gen_pos));
  } else {
    std::vector<int32_t> reps(h.members.begin(), h.members.end());
    FiniteGroup::InducedBackend ib{g, std::move(reps), std::move(pos)};
    out.group = std::make_shared<FiniteGroup>(
        FiniteGroup::Backend(std::move(ib)), k, std::move(gen_pos));
  }
  return out;
}

Subgroup quick_sylow(const GroupPtr& g, int p) {
  long long pp = p_part(g->order(), p);
  if (pp == 1) return trivial_subgroup(g);
  // least p-element to start from
  int start = -1;
  for (int x = 1; x < g->order(); ++x) {
    int o = g->element_order(x);
    if (o % p == 0) {
      start = g->pow(x, o / p_part(o, p));
      break;
    }
  }
  if (start <= 0) return trivial_subgroup(g);
  Subgroup pgrp = closure(g, {start});
  while (pgrp.order() < pp) {
    Subgroup nrm = normalizer(g, pgrp);
    bool grew = false;
    for (int z : nrm.members) {
      if (pgrp.mask.test(z)) continue;
      // coset order of z over pgrp
      int m = 1, zz = z;
      while (!pgrp.mask.test(zz)) {
        zz = g->mul(zz, z);
        ++m;
      }
      if (p_part(m, p) == m) {  // p-power coset order
        int zp = g->pow(z, m / p);
        std::vector<int> bigger = pgrp.members;
        int cos = zp;
        while (!pgrp.mask.test(cos)) {
          for (int mm : pgrp.members) bigger.push_back(g->mul(mm, cos));
          cos = g->mul(cos, zp);
        }
        pgrp = subgroup_from_members(g, std::move(bigger));
        grew = true;
        break;
      }
    }
    if (!grew)
      throw NormLabError("sylow growth stalled (not a group?)");
  }
  return pgrp;
}

bool is_quaternion_q8(const FiniteGroup& g) {
  if (g.order() != 8 || is_abelian(g)) return false;
  int involutions = 0;
  for (int x = 1; x < 8; ++x)
    if (g.element_order(x) == 2) ++involutions;
  return involutions == 1;
}

}  // namespace normlab

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "normlab/bitset.hpp"
#include "normlab/perm.hpp"

namespace normlab {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;
using Gid = std::uint64_t;

constexpr int kDefaultOrderCap = 2000;

// A concrete finite group with enumerated elements. Index 0 is always the
// identity. Element indexing is deterministic: rebuilding from the same
// input yields identical indexing.
class FiniteGroup {
 public:
  struct PermBackend {
    int degree = 0;
    std::vector<Permutation> elems;
    std::unordered_map<Permutation, int, PermHash> index;
    std::vector<int32_t> table;  // precomputed when the order is small
  };
  struct TableBackend {
    // row-major n*n multiplication table
    std::vector<int32_t> table;
  };
  // Pairs (v, q) ordered lexicographically: idx = v*|H| + q.
  struct SemidirectBackend {
    GroupPtr n_part;
    GroupPtr h_part;
    std::vector<std::vector<int32_t>> action;  // action[q] : automorphism of N
  };
  // Elements indexed by parent representatives: quotients (reps = least coset
  // members) and large subgroups reuse this without an n^2 table.
  struct InducedBackend {
    GroupPtr parent;
    std::vector<int32_t> rep;      // index -> representative parent element
    std::vector<int32_t> rep_pos;  // parent element -> index (-1 if unused)
  };
  using Backend =
      std::variant<PermBackend, TableBackend, SemidirectBackend, InducedBackend>;

  FiniteGroup(Backend backend, int order, std::vector<int> generators);

  int order() const { return order_; }
  int mul(int a, int b) const;
  int inv(int a) const { return inverse_[a]; }
  int conj(int g, int x) const { return mul(mul(inv(g), x), g); }  // x^g
  int pow(int a, long long e) const;
  int element_order(int a) const;

  const std::vector<int>& generators() const { return generators_; }
  Gid id() const { return id_; }  // content hash of the multiplication table
  const Backend& backend() const { return backend_; }
  const char* backend_name() const;

  // Permutation image of an element, when permutation-backed.
  const Permutation* perm_of(int a) const;

  // Shortest-word names over the generators (a, b, c, ...), BFS order.
  std::vector<std::string> element_words() const;

  // Exhaustive axiom check (associativity, identity, inverses): O(n^3).
  bool check_axioms() const;

 private:
  void build_inverses();
  void compute_id();

  Backend backend_;
  int order_ = 0;
  std::vector<int> generators_;
  std::vector<int32_t> inverse_;
  Gid id_ = 0;
};

// ---- construction -------------------------------------------------------

// BFS word closure over the generators in input order; index 0 = identity.
GroupPtr group_from_permutations(int degree, const std::vector<Permutation>& gens,
                                 int order_cap = kDefaultOrderCap);

// Validates: identity at index 0, Latin square, inverses; associativity is
// checked exhaustively when n <= 200.
GroupPtr group_from_table(const std::vector<int32_t>& table);

GroupPtr trivial_group();
GroupPtr cyclic_group(int n);
GroupPtr dihedral_group(int order);          // order = 2n, n >= 1
GroupPtr dicyclic_group(int n);              // order 4n; n power of 2 gives Q_{4n}
GroupPtr symmetric_group(int n, int order_cap = kDefaultOrderCap);
GroupPtr alternating_group(int n, int order_cap = kDefaultOrderCap);
GroupPtr elementary_abelian_group(int p, int k);

struct Homomorphism {
  GroupPtr source;
  GroupPtr target;
  std::vector<int> image_of;
  // Exhaustive product check when |source| <= limit, else on generator pairs.
  bool validate(int limit = 200) const;
};

// Table-backed group on pairs (a, b), lexicographic ordering.
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);

// action[q] must be an automorphism of N for every q in H and the map
// q -> action[q] a homomorphism; throws InvalidAction otherwise.
GroupPtr semidirect_product(const GroupPtr& n_part, const GroupPtr& h_part,
                            const std::vector<std::vector<int32_t>>& action);

// Extends generator images to a full automorphism by Cayley-graph BFS;
// nullopt when the images do not define one.
std::optional<std::vector<int32_t>> extend_automorphism(
    const FiniteGroup& g, const std::vector<int>& gen_images);

// ---- subgroups ----------------------------------------------------------

struct Subgroup {
  GroupPtr parent;
  std::vector<int> members;  // sorted ascending, always contains 0
  DynBitset mask;

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int g) const { return mask.test(g); }
  bool is_whole() const { return order() == parent->order(); }
  bool is_trivial() const { return order() == 1; }
  uint64_t member_hash() const { return mask.hash(); }
};

Subgroup subgroup_from_members(const GroupPtr& g, std::vector<int> members);
Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup whole_subgroup(const GroupPtr& g);

// Smallest subgroup containing seed; deterministic (sorted) member ordering.
Subgroup closure(const GroupPtr& g, const std::vector<int>& seed);

// Closure of seed under products and conjugation by all of G.
Subgroup normal_closure(const GroupPtr& g, const std::vector<int>& seed);

// Conjugacy classes of elements; class of the identity first, classes ordered
// by least member.
std::vector<std::vector<int>> element_conjugacy_classes(const FiniteGroup& g);

// All normal subgroups, computed as the join-closure of the normal closures
// of single elements (no subgroup lattice required). Sorted canonically.
std::vector<Subgroup> normal_subgroups_direct(const GroupPtr& g);

Subgroup join_subgroups(const Subgroup& a, const Subgroup& b);
Subgroup intersect_subgroups(const Subgroup& a, const Subgroup& b);

bool is_subgroup_set(const FiniteGroup& g, const std::vector<int>& members);
bool is_normal(const Subgroup& h);
std::vector<int> conjugate_members(const FiniteGroup& g,
                                   const std::vector<int>& members, int by);

// Small generating set, chosen deterministically (least new element first).
std::vector<int> small_generating_set(const Subgroup& h);

Subgroup centralizer(const GroupPtr& g, const std::vector<int>& set);
Subgroup normalizer(const GroupPtr& g, const Subgroup& h);  // NotASubgroup
Subgroup center(const GroupPtr& g);

// Centralizer of the factor L/K: elements whose conjugation fixes every
// coset of K in L. K must be normal in G.
Subgroup factor_centralizer(const GroupPtr& g, const Subgroup& l,
                            const Subgroup& k);

Subgroup commutator_subgroup(const GroupPtr& g, const Subgroup& a,
                             const Subgroup& b);
std::vector<Subgroup> derived_series(const GroupPtr& g);
bool is_abelian(const FiniteGroup& g);
bool is_perfect(const GroupPtr& g);

// Table-backed (or coset-backed above the table threshold) quotient, cosets
// ordered by least member index. Throws NotNormal.
std::pair<GroupPtr, Homomorphism> quotient_group(const GroupPtr& g,
                                                 const Subgroup& n);

Subgroup preimage(const Homomorphism& pi, const Subgroup& sub_of_target);
Subgroup image(const Homomorphism& pi, const Subgroup& sub_of_source);

// The subgroup as a standalone group (members reindexed in sorted order),
// with the embedding back into the parent.
struct SubgroupAsGroup {
  GroupPtr group;
  std::vector<int> embed;  // index in group -> index in parent
};
SubgroupAsGroup subgroup_as_group(const Subgroup& h);

// Any one Sylow p-subgroup via normalizer growth (no lattice required).
Subgroup quick_sylow(const GroupPtr& g, int p);

// true iff |G| = 8, G nonabelian, exactly one element of order 2.
bool is_quaternion_q8(const FiniteGroup& g);

std::vector<int> prime_divisors(long long n);
long long p_part(long long n, int p);

}  // namespace normlab

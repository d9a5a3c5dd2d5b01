#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "normlab/context.hpp"
#include "normlab/group.hpp"
#include "normlab/primeset.hpp"

namespace normlab {

enum class AtomKind {
  Trivial,         // 1
  All,             // G
  PiGroups,        // Gpi(pi)
  Abelian,         // A
  Nilpotent,       // N
  NilpotentClass,  // Nc(c)
  Supersolvable,   // U
  Solvable,        // S
  PiSolvable,      // Spi(pi)
  PiNilpotent,     // Npi(pi)
  SylowTower,      // Tsigma(p1<p2<...)
  PiClosed,        // Cpi(pi)
  FittingLength,   // Nr(r)
  PDecomposable,   // Ldec(p)
};

struct ClassExpr;
using ClassPtr = std::shared_ptr<const ClassExpr>;

// Declared closure properties; a static trust table per atom, structural
// rules for products. Residual/radical post-verification turns any table
// error into a loud instance-level failure.
struct ClassFlags {
  bool formation = false;
  bool fitting = false;
  bool saturated = false;
  bool s_closed = false;
  bool sn_closed = false;
  bool q_closed = false;
  bool e_closed = false;
};

// Symbolic group-class expression: atoms plus formation/Fitting products.
struct ClassExpr {
  enum class Node { Atom, FormationProduct, FittingProduct };
  Node node = Node::Atom;

  AtomKind atom = AtomKind::Trivial;
  PrimeSet pi;
  int param = 0;           // c for Nc, r for Nr, p for Ldec
  std::vector<int> sigma;  // Tsigma ordering prefix; unlisted primes follow
                           // in natural order

  // FormationProduct(X=left, F=right): G^F in X.
  // FittingProduct(H=left, X=right): G/G_H in X.
  ClassPtr left, right;

  std::string key;  // canonical rendering; classes compare by key
};

ClassPtr cls_trivial();
ClassPtr cls_all();
ClassPtr cls_abelian();
ClassPtr cls_nilpotent();
ClassPtr cls_supersolvable();
ClassPtr cls_solvable();
ClassPtr cls_gpi(const PrimeSet& pi);
ClassPtr cls_spi(const PrimeSet& pi);
ClassPtr cls_npi(const PrimeSet& pi);
ClassPtr cls_cpi(const PrimeSet& pi);
ClassPtr cls_nc(int c);
ClassPtr cls_nr(int r);
ClassPtr cls_ldec(int p);
ClassPtr cls_tsigma(const std::vector<int>& ordering);
ClassPtr cls_fproduct(const ClassPtr& x, const ClassPtr& f);  // X o F
ClassPtr cls_hproduct(const ClassPtr& h, const ClassPtr& x);  // H <> X

// Grammar: atoms `1, G, Gpi({..}), A, N, Nc(c), U, S, Spi(..), Npi(..),
// Tsigma(2<3<..), Cpi(..), Nr(r), Ldec(p)`; products `X * F` (formation) and
// `H . X` (Fitting, binds looser); prime sets `{2,3}`, `{2,3}'`, `P`.
ClassPtr parse_class_expr(const std::string& text);

ClassFlags class_flags(const ClassPtr& c);

bool is_member(Workspace& ws, const GroupPtr& g, const ClassPtr& c);

// Smallest normal subgroup with quotient in F; intersection over normal
// subgroups, post-verified (FormationWitnessFailure on a declared-flag bug).
Subgroup residual(Workspace& ws, const GroupPtr& g, const ClassPtr& f);

// Join of all normal H-subgroups, post-verified (FittingWitnessFailure).
Subgroup radical(Workspace& ws, const GroupPtr& g, const ClassPtr& h);

Subgroup o_pi(Workspace& ws, const GroupPtr& g, const PrimeSet& pi);

// Chief factor orders of g, bottom-up (Jordan-Hoelder invariant multiset).
std::vector<long long> chief_factor_orders(Workspace& ws, const GroupPtr& g);

std::vector<Subgroup> upper_central_series(const GroupPtr& g);
std::optional<int> nilpotency_class(const GroupPtr& g);
std::optional<int> fitting_length(Workspace& ws, const GroupPtr& g);

// ---- symbolic facts (conservative: unknown = false) ----------------------

PrimeSet pi_of_class(const ClassPtr& c);
bool contains_all_pi_groups(const ClassPtr& h, const PrimeSet& pi);
bool absorbs_pi_prime(const ClassPtr& f, const PrimeSet& pi);  // Gpi' o F = F
bool subset_of_nilpotent(const ClassPtr& f);
bool subset_of_supersolvable(const ClassPtr& f);
bool subset_of_solvable(const ClassPtr& f);
bool subset_of_some_sylow_tower(const ClassPtr& f);
bool subset_of_two_closed(const ClassPtr& f);     // F within Cpi({2})
bool subset_of_two_nilpotent(const ClassPtr& f);  // F within Npi({2})
bool subset_of_odd_order(const ClassPtr& f);      // F within Gpi({2}')
bool is_shemetkov(const ClassPtr& f);

// Canonical local definition where registered (N, Npi, N o F, Npi o F, Gpi);
// the inner optional is the value at p, nullopt meaning the empty class.
using LocalAt = std::function<std::optional<ClassPtr>(int)>;
std::optional<LocalAt> canonical_local_definition(const ClassPtr& f);

}  // namespace normlab

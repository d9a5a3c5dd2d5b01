#pragma once

#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "normlab/classes.hpp"
#include "normlab/context.hpp"
#include "normlab/group.hpp"

namespace normlab {

// Maximal chain of subgroups normal in the parent (not merely in the next
// term); every factor is a chief factor of the parent.
struct ChiefSeries {
  GroupPtr parent;
  std::vector<Subgroup> terms;  // ascending, terms[0] trivial, back() = top
  struct Factor {
    int below;  // index into terms: factor = terms[below+1]/terms[below]
    long long order;
    std::vector<int> primes;
  };
  std::vector<Factor> factors;
};

// Built bottom-up through `top` (normal in G): each step takes the least
// canonical minimal normal subgroup of G/N_i inside top/N_i. The optional
// RNG randomizes the tie-break (test-only knob for series independence).
std::shared_ptr<const ChiefSeries> chief_series(Workspace& ws, const GroupPtr& g,
                                                const Subgroup& top,
                                                std::mt19937* tie_break = nullptr);
std::shared_ptr<const ChiefSeries> chief_series(Workspace& ws, const GroupPtr& g);

// Cached factor machinery: L/K as a group, G/C_G(L/K), and the semidirect
// product (L/K) x| (G/C_G(L/K)) built from the conjugation action.
struct FactorData {
  Subgroup l, k;
  GroupPtr factor;          // L/K
  Subgroup centralizer;     // C_G(L/K)
  GroupPtr quotient;        // G / C_G(L/K)
  GroupPtr semidirect;      // (L/K) x| (G/C)
  bool elementary_abelian_p = false;
  int p = 0;  // the prime when elementary abelian
};

struct CentralityVerdict {
  bool semidirect_result = false;
  std::optional<bool> local_result;  // registered local definitions only
  std::optional<bool> agree;         // set when both routes are defined
};

// L/K must be a chief factor of G (InvalidFactor otherwise).
CentralityVerdict is_f_central(Workspace& ws, const GroupPtr& g,
                               const Subgroup& l, const Subgroup& k,
                               const ClassPtr& f);

// Product of all pi-F-hypercentral normal subgroups. The join is re-tested
// and HypercentreJoinFailure reported if it fails its own test (this would
// falsify the Jordan-Hoelder independence assumption).
Subgroup hypercentre(Workspace& ws, const GroupPtr& g, const PrimeSet& pi,
                     const ClassPtr& f);

// Ascending-construction oracle: repeatedly adjoin the passing minimal
// normal subgroups of the quotient; independent route kept for tests.
Subgroup hypercentre_ascending(Workspace& ws, const GroupPtr& g,
                               const PrimeSet& pi, const ClassPtr& f);

// Whether one normal subgroup is pi-F-hypercentral in G.
bool is_pi_f_hypercentral(Workspace& ws, const GroupPtr& g, const Subgroup& n,
                          const PrimeSet& pi, const ClassPtr& f,
                          std::mt19937* tie_break = nullptr);

// Number of p-terms of the upper p-series; NotPiSolvable when G is not.
int p_length(Workspace& ws, const GroupPtr& g, int p);

// Subgroup generated by the elements of order p (p odd); for p = 2 the
// elements of order 2, or of order 2 and 4 when a Sylow 2-subgroup has a
// section isomorphic to Q8.
Subgroup psi_p(Workspace& ws, const GroupPtr& g, int p);

bool sylow2_quaternion_free(Workspace& ws, const GroupPtr& g);

}  // namespace normlab

#pragma once

#include <vector>

#include "normlab/classes.hpp"
#include "normlab/context.hpp"
#include "normlab/group.hpp"
#include "normlab/lattice.hpp"

namespace normlab {

// Intersection over all subgroups U <= G of N_G(U^F * G_H). Computed per
// subgroup-conjugacy class as the normal core of N_G(U^F * G_H), which
// equals the naive all-subgroups intersection since (U^g)^F * G_H =
// (U^F * G_H)^g.
Subgroup hf_norm(Workspace& ws, const GroupPtr& g, const ClassPtr& h,
                 const ClassPtr& f);

// Literal Definition 1.1 intersection; oracle for the class/core version.
Subgroup hf_norm_naive(Workspace& ws, const GroupPtr& g, const ClassPtr& h,
                       const ClassPtr& f);

// hf_norm with H = Gpi(pi), i.e. products U^F * O_pi(G).
Subgroup pi_f_norm(Workspace& ws, const GroupPtr& g, const PrimeSet& pi,
                   const ClassPtr& f);

// Ascending norm series: T_{i+1}/T_i = norm of G/T_i; eventually constant.
struct NormSeries {
  GroupPtr parent;
  ClassPtr h, f;
  std::vector<Subgroup> terms;  // terms[0] trivial; back() == terminal term
  int terminal_index = 0;       // first i with T_i = T_{i+1}
};

NormSeries norm_series(Workspace& ws, const GroupPtr& g, const ClassPtr& h,
                       const ClassPtr& f);
Subgroup norm_infinity(Workspace& ws, const GroupPtr& g, const ClassPtr& h,
                       const ClassPtr& f);
Subgroup pi_f_norm_infinity(Workspace& ws, const GroupPtr& g,
                            const PrimeSet& pi, const ClassPtr& f);

// Recomputes every quotient norm of a series; false when any term fails.
bool validate_norm_series(Workspace& ws, const NormSeries& s);

// Subgroups in X that are maximal among X-subgroups, and their intersection.
std::vector<Subgroup> x_maximal_subgroups(Workspace& ws, const GroupPtr& g,
                                          const ClassPtr& x);
Subgroup int_x(Workspace& ws, const GroupPtr& g, const ClassPtr& x);

// G not in X but every proper subgroup in X. The S-closed shortcut (maximal
// subgroups only) is applied when flagged; the full scan stays available.
bool crit_s(Workspace& ws, const GroupPtr& g, const ClassPtr& x);
bool crit_s_full(Workspace& ws, const GroupPtr& g, const ClassPtr& x);

// Intersection of the normalizers of all subnormal subgroups.
Subgroup wielandt_subgroup(Workspace& ws, const GroupPtr& g);

}  // namespace normlab

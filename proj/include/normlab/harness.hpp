#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "normlab/classes.hpp"
#include "normlab/context.hpp"
#include "normlab/group.hpp"

namespace normlab {

struct PropParams {
  std::optional<ClassPtr> f;
  std::optional<ClassPtr> h;
  std::optional<PrimeSet> pi;
  std::optional<int> p;

  std::string to_string() const;
  nlohmann::json to_json() const;
};

enum class Outcome { Pass, Skip, Fail };

const char* outcome_name(Outcome o);

struct PropositionReport {
  std::string prop;
  std::string group;  // "(corpus)" for corpus-level checks
  PropParams params;
  Outcome outcome = Outcome::Skip;
  // "instance", "ledger-established: <citation>", "ledger-evidence"
  std::string basis;
  std::string skip_reason;  // machine-readable, keyed to the hypothesis clause
  nlohmann::json witness;   // non-empty and re-checkable on Fail
  double ms = 0.0;
};

enum class BoundaryCondition { I, II, III, IIIinS };
const char* boundary_name(BoundaryCondition c);

struct LedgerEntry {
  enum class Kind { Established, CorpusEvidence, Counterexample } kind;
  std::string citation;       // Established: proposition that proves it
  int critical_count = 0;     // CorpusEvidence: members examined
  std::string witness_group;  // Counterexample
};

// Encodes each paper statement as a named executable proposition over one
// group (or the corpus), with hypothesis filtering and witness-bearing
// failure reports.
class Harness {
 public:
  Harness(Workspace& ws, std::vector<std::pair<std::string, GroupPtr>> corpus);

  static std::vector<std::string> proposition_ids();
  static bool is_corpus_level(const std::string& prop);

  // Default parameter grid of a proposition (documented in the README).
  std::vector<PropParams> default_grid(const std::string& prop) const;

  // One proposition on one group (or on the corpus when corpus-level).
  PropositionReport check(const std::string& prop, const std::string& group_name,
                          const GroupPtr& g, const PropParams& params);

  // Everything selected, over the whole corpus, reports sorted by
  // (prop, group, params).
  std::vector<PropositionReport> run(const std::vector<std::string>& props,
                                     const std::optional<PropParams>& override_params);

  // Static table from Propositions 3.6-3.8 (never fed by corpus evidence);
  // monotone in pi and closed under the implication chain III => II => I,
  // III => III-in-S.
  std::optional<std::string> established(const ClassPtr& f, const PrimeSet& pi,
                                         BoundaryCondition c) const;

  // Established entry if any; otherwise corpus evidence, computed on demand
  // (Crit_S scans over the corpus). Never upgrades evidence to established.
  LedgerEntry ledger_lookup(const ClassPtr& f, const PrimeSet& pi,
                            BoundaryCondition c);

  const std::vector<std::pair<std::string, GroupPtr>>& corpus() const {
    return corpus_;
  }

 private:
  Workspace& ws_;
  std::vector<std::pair<std::string, GroupPtr>> corpus_;
  std::map<std::string, LedgerEntry> evidence_;  // key F.key|pi|cond
};

}  // namespace normlab

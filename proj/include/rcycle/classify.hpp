#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rcycle/digraph.hpp"
#include "rcycle/pathcond.hpp"
#include "rcycle/slupecki.hpp"

namespace rcycle {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  int girth_lo = 4;
  int girth_hi = 5;
  bool run_syntactic = true;
  bool run_bruteforce = true;
  bool run_slupecki = false;
  bool run_word_criterion = false;   // exploration, never a decider
  int witness_n_override = 0;        // 0: per-cycle default 2n+2
  int bruteforce_girth_cap = 7;      // above this the oracle is skipped
  int arity_override = 0;            // 0: ladder (k=2 girth<=6, +k=3 girth 4)
  std::uint64_t budget_nodes = 100'000'000;
  double budget_secs = 600.0;
  int jobs = 1;
  std::string cache_dir;             // empty: no cache
  enum class Format { Json, Csv } format = Format::Json;

  std::string fingerprint() const;   // cache key component
  std::vector<int> arity_ladder(int girth) const;
};

struct ClassificationRecord {
  int schema_version = 1;
  std::string canonical_word;
  int girth = 0;
  std::optional<PathConditionVerdict> syntactic;
  std::optional<PathConditionVerdict> bruteforce;  // nullopt: skipped
  struct WordCriterionSummary {
    int witness_n = 0;
    int certified = 0;  // length n-1 subpath words certified by W_N(P)
    int targets = 0;
  };
  std::optional<WordCriterionSummary> word_criterion;
  std::vector<SlupeckiOutcome> slupecki;
  int automorphism_count = 0;

  bool methods_disagree() const;
  std::string to_json() const;  // deterministic; timings live elsewhere
  static ClassificationRecord from_json(const std::string& text);
};

struct PhaseTimings {
  std::string canonical_word;
  double syntactic_ms = 0, bruteforce_ms = 0, slupecki_ms = 0, word_criterion_ms = 0;
  bool from_cache = false;
};

ClassificationRecord classify_cycle(const CycleId& g, const RunConfig& config,
                                    PhaseTimings* timings = nullptr);

// Runs the girth range with a worker pool; records are emitted in
// (girth, canonical word) order regardless of completion order.  Returns
// the process exit code: 0 ok, 2 verdict mismatch, 3 inconclusive present.
int run_classification(const RunConfig& config, std::ostream& report, std::ostream& timings,
                       std::ostream& diagnostics);

std::string record_csv_header();
std::string record_csv_row(const ClassificationRecord& r);

}  // namespace rcycle

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rcycle/digraph.hpp"
#include "rcycle/optable.hpp"

namespace rcycle {

// Membership in theta, the n-ary relation of tuples with fewer than n
// distinct entries.  Never materialized: it has n^n - n! members.
bool theta_membership(std::span<const int> tuple, int n);

// Theta preservation through the clone lemma: true iff f is non-surjective
// or essentially unary.
bool preserves_theta(const OperationTable& f);

// Direct definitional check, enumerating all arity-many selections of
// theta columns.  Only supported for domain 3 (the oracle audit); larger
// domains have too many column selections.
bool preserves_theta_direct(const OperationTable& f);

struct SearchBudget {
  std::uint64_t node_cap = 100'000'000;
  double wall_cap_secs = 600.0;
};

struct SlupeckiOutcome {
  enum class Verdict { NoCounterexample, Counterexample, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  int arity = 0;
  std::uint64_t nodes_explored = 0;
  double wall_seconds = 0.0;
  std::optional<OperationTable> table;
};

// Exhaustive search for a surjective, non-essentially-unary polymorphism of
// the cycle at the given arity.  The search enumerates witness placements
// that force a theta violation (n cells carrying the n distinct outputs,
// every argument column repeating a value) and tries to complete each into
// a full table by backtracking with arc-consistency propagation over the
// polymorphism constraints.  Soundness of a returned table is
// self-contained (the pins force surjectivity and kill essential unarity);
// exhaustion is complete by the clone lemma, since any counterexample
// violates theta at such a placement.  Budget exhaustion is reported as
// Inconclusive, never as a verdict.
SlupeckiOutcome find_slupecki_counterexample(const CycleId& g, int arity,
                                             const SearchBudget& budget = {});

// For a surjective polymorphism f of arity p, an embedding of the cycle
// into its p-th power on which f restricts onto; empty when none exists.
// Throws if f is not a surjective polymorphism.
std::optional<std::vector<int>> check_embedding_criterion(const CycleId& g,
                                                          const OperationTable& f);

// Detects the C(P+) shape with P self-dual of length >= 3 carrying at
// least two symmetric edges (the hypotheses of the closing theorem).
std::optional<Word> self_dual_plus_shape(const CycleId& g);

// Verifies the alternating-word connectivity claims on a C(P+) cycle: the
// parity-matched alternating word links every ordered vertex pair.  Throws
// when the cycle is not of the required shape.
bool alternating_reach_check(const CycleId& g);

}  // namespace rcycle

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rcycle/digraph.hpp"
#include "rcycle/optable.hpp"
#include "rcycle/word.hpp"

namespace rcycle {

// Partial assignment of source vertices to target vertices; keys distinct.
struct PinSet {
  std::vector<std::pair<int, int>> pins;
};

// Total assignments are plain vectors indexed by source vertex; this checks
// the defining property (every source arc lands on a target arc).
bool is_homomorphism(const Digraph& k, const Digraph& h, std::span<const int> assignment);

// Backtracking homomorphism search with AC-3 propagation.  Deterministic:
// smallest-domain-first variable order (ties by index), ascending values.
std::optional<std::vector<int>> hom_search(const Digraph& k, const Digraph& h,
                                           const PinSet& pins = {});

// Same search with the value order shuffled by a seeded RNG; used to sample
// homomorphisms.  Deterministic for a fixed seed.
std::optional<std::vector<int>> hom_search_randomized(const Digraph& k, const Digraph& h,
                                                      const PinSet& pins, std::uint64_t seed);

// All y with x W y, by |W| rounds of set propagation.
std::vector<int> reach(const Digraph& g, int x, const Word& w);

// Nondeterministic automaton over {+,-,*} whose states are the vertices of
// a digraph: it accepts exactly { W : x W y }.
class WordAutomaton {
 public:
  WordAutomaton(const Digraph& g, int start, int accept);

  bool accepts(const Word& w) const;
  void step(std::vector<std::uint64_t>& states, Symbol s) const;
  std::vector<std::uint64_t> initial() const;
  bool accepting(const std::vector<std::uint64_t>& states) const;

 private:
  const Digraph* g_;
  int start_, accept_;
};

enum class ExtensionMethod { Search, Inclusion, Both };

struct ExtensionResult {
  bool exists = false;
  // When the inclusion route refutes extendability: a word W and a pinned
  // pair (x, y) with x W y in K but not g(x) W g(y) in P.
  std::optional<Word> separating_word;
  std::optional<std::pair<int, int>> separating_pair;
};

// Decides whether some homomorphism K -> P extends the pins.  P must be a
// path digraph in line order.  Search and Inclusion are independent routes;
// Both runs the two and throws std::logic_error if they ever disagree.
ExtensionResult extension_exists_to_path(const Digraph& k, const PinSet& pins, const Digraph& path,
                                         ExtensionMethod method = ExtensionMethod::Both);

// Decides whether the product of the paths P(Q_i) admits a homomorphism
// onto P(P) mapping the all-starts tuple to 0 and the all-ends tuple to
// |P|.  Equivalent to the word-language inclusion  ∩_i Up(Q_i) ⊆ Up(P),
// solved as a reachability race over monotone frontier counters, so the
// product digraph is never materialized.  For a factor family closed under
// dual this decides the existence of an arbitrary surjective homomorphism
// onto P(P); with try_orientation_flips the 2^l sweep extends that
// semantics to factors taken in either traversal direction.
bool surjective_product_onto_path(std::span<const Word> qs, const Word& p,
                                  bool try_orientation_flips = false);

// The separating word behind a false surjective_product_onto_path answer:
// some W with W >= Q_i for all i but W not >= P.
std::optional<Word> product_onto_path_separating_word(std::span<const Word> qs, const Word& p);

// True when f preserves the arcs of G coordinatewise (f is a polymorphism).
bool is_polymorphism(const OperationTable& f, const Digraph& g);

}  // namespace rcycle

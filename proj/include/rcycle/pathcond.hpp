#pragma once

#include <optional>
#include <utility>

#include "rcycle/digraph.hpp"
#include "rcycle/word.hpp"

namespace rcycle {

// Repetition length of the long alternations in the witness construction;
// the construction needs this much larger than the girth, default 2n+2.
struct WitnessParams {
  int n = 2;
};

WitnessParams default_witness_params(int girth);

// [x,y]: max{x,y} when comparable, the two-letter word yx otherwise.
Word bracket(Symbol x, Symbol y);

// x^: N minuses for Plus, N pluses for Minus, epsilon for Star.
Word hat(Symbol x, int n);

// W_N(X) = x1^ [x1,x2] x2^ ... [x_{r-1},x_r] xr^ for X = x1...xr.
Word w_construction(const Word& x, const WitnessParams& params);

enum class PathConditionMethod { Syntactic, WordCriterion, BruteForce };

struct PathConditionVerdict {
  bool fails = false;
  enum class Witness { None, AlmostSymmetric, SStarDecomposition } witness = Witness::None;
  Word s;     // the self-dual segment, for SStarDecomposition
  int k = 0;  // its repetition count
  PathConditionMethod method = PathConditionMethod::Syntactic;
};

// Whether W certifies the path condition against the length n-1 subpath P:
// W >= Q for every length n-2 subpath Q of the cycle, but not W >= P.
// P must be one of the cycle's length n-1 subpath words.
bool check_word_criterion(const CycleId& g, const Word& p, const Word& w);

// Scans the 2n word representations of the cycle for the (S**)^k S+ shape
// with S self-dual; the almost-symmetric case is S = epsilon territory and
// reported separately.
std::optional<std::pair<Word, int>> s_star_decomposition(const CycleId& g);

// The characterization route: fails iff almost symmetric or of the
// (S**)^k S+ shape.
PathConditionVerdict path_condition_syntactic(const CycleId& g);

// The independent oracle: decides whether the product of all length n-2
// subpaths maps onto the cycle, via the onto-path reduction.  Girth above
// the budget throws.
PathConditionVerdict path_condition_bruteforce(const CycleId& g, int girth_budget = 7);

}  // namespace rcycle

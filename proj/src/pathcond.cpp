#include "rcycle/pathcond.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "rcycle/cover.hpp"
#include "rcycle/homsearch.hpp"

namespace rcycle {

WitnessParams default_witness_params(int girth) { return WitnessParams{2 * girth + 2}; }

Word bracket(Symbol x, Symbol y) {
  if (symbols_comparable(x, y)) return Word{{symbol_leq(x, y) ? y : x}};
  return Word{{y, x}};
}

Word hat(Symbol x, int n) {
  if (n < 1) throw std::invalid_argument("hat: repetition length must be positive");
  switch (x) {
    case Symbol::Plus: return power(Word{{Symbol::Minus}}, n);
    case Symbol::Minus: return power(Word{{Symbol::Plus}}, n);
    case Symbol::Star: return Word{};
  }
  return Word{};
}

Word w_construction(const Word& x, const WitnessParams& params) {
  if (x.empty()) throw std::invalid_argument("w_construction: word must be non-empty");
  Word out = hat(x[0], params.n);
  for (std::size_t i = 1; i < x.size(); ++i) {
    out = out + bracket(x[i - 1], x[i]) + hat(x[i], params.n);
  }
  return out;
}

bool check_word_criterion(const CycleId& g, const Word& p, const Word& w) {
  const auto ps = induced_subpaths(g, g.girth - 1);
  if (!std::binary_search(ps.begin(), ps.end(), p))
    throw std::invalid_argument("check_word_criterion: P is not a length girth-1 subpath word");
  if (word_leq(p, w)) return false;
  const auto qs = induced_subpaths(g, g.girth - 2);
  for (const Word& q : qs)
    if (!word_leq(q, w)) return false;
  return true;
}

namespace {

std::vector<Word> cycle_representations(const CycleId& g) {
  const int n = g.girth;
  std::vector<Word> reps;
  reps.reserve(2 * n);
  const Word& w = g.canonical_word;
  const Word d = dual(w);
  for (int r = 0; r < n; ++r) {
    Word a, b;
    for (int i = 0; i < n; ++i) {
      a.letters.push_back(w[(r + i) % n]);
      b.letters.push_back(d[(r + i) % n]);
    }
    reps.push_back(std::move(a));
    reps.push_back(std::move(b));
  }
  return reps;
}

}  // namespace

std::optional<std::pair<Word, int>> s_star_decomposition(const CycleId& g) {
  const int n = g.girth;
  for (const Word& rep : cycle_representations(g)) {
    if (rep[n - 1] != Symbol::Plus) continue;
    for (int k = 1; 2 * k + 1 <= n; ++k) {
      // length bookkeeping: (s+2)k + s + 1 = n
      if ((n - 1 - 2 * k) % (k + 1) != 0) continue;
      const int s = (n - 1 - 2 * k) / (k + 1);
      Word seg;
      for (int i = 0; i < s; ++i) seg.letters.push_back(rep[i]);
      if (!is_self_dual(seg)) continue;
      Word pattern = power(seg + Word{{Symbol::Star, Symbol::Star}}, k) + seg;
      pattern.letters.push_back(Symbol::Plus);
      if (pattern == rep) return std::make_pair(seg, k);
    }
  }
  return std::nullopt;
}

PathConditionVerdict path_condition_syntactic(const CycleId& g) {
  if (g.girth < 3) throw std::invalid_argument("path_condition_syntactic: girth must be >= 3");
  PathConditionVerdict v;
  v.method = PathConditionMethod::Syntactic;
  int non_star = 0;
  for (Symbol s : g.canonical_word.letters)
    if (s != Symbol::Star) ++non_star;
  if (non_star == 1) {
    v.fails = true;
    v.witness = PathConditionVerdict::Witness::AlmostSymmetric;
    return v;
  }
  if (auto dec = s_star_decomposition(g)) {
    v.fails = true;
    v.witness = PathConditionVerdict::Witness::SStarDecomposition;
    v.s = dec->first;
    v.k = dec->second;
    return v;
  }
  return v;
}

PathConditionVerdict path_condition_bruteforce(const CycleId& g, int girth_budget) {
  if (g.girth > girth_budget)
    throw std::runtime_error("path_condition_bruteforce: girth " + std::to_string(g.girth) +
                             " exceeds the configured budget " + std::to_string(girth_budget));
  PathConditionVerdict v;
  v.method = PathConditionMethod::BruteForce;
  const auto qs = induced_subpaths(g, g.girth - 2);
  v.fails = surjective_product_onto_cycle(qs, g);
  return v;
}

}  // namespace rcycle

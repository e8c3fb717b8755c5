#include "rcycle/slupecki.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <deque>
#include <stdexcept>

#include "rcycle/homsearch.hpp"

namespace rcycle {

bool theta_membership(std::span<const int> tuple, int n) {
  if (static_cast<int>(tuple.size()) != n)
    throw std::invalid_argument("theta_membership: tuple length must equal n");
  std::vector<char> seen(n, 0);
  for (int v : tuple) {
    if (v < 0 || v >= n) throw std::invalid_argument("theta_membership: value out of range");
    if (seen[v]) return true;
    seen[v] = 1;
  }
  return false;
}

bool preserves_theta(const OperationTable& f) {
  return !is_surjective(f) || is_essentially_unary(f).has_value();
}

bool preserves_theta_direct(const OperationTable& f) {
  if (f.domain != 3)
    throw std::invalid_argument("preserves_theta_direct: only domain 3 is supported");
  const int n = 3;
  std::vector<std::vector<int>> theta;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        std::vector<int> t{a, b, c};
        if (theta_membership(t, n)) theta.push_back(std::move(t));
      }
  const int k = f.arity;
  std::vector<std::size_t> pick(k, 0);
  std::vector<int> args(k), image(n);
  while (true) {
    for (int row = 0; row < n; ++row) {
      for (int j = 0; j < k; ++j) args[j] = theta[pick[j]][row];
      image[row] = f.apply(args);
    }
    if (!theta_membership(image, n)) return false;
    int j = k - 1;
    while (j >= 0 && ++pick[j] == theta.size()) pick[j--] = 0;
    if (j < 0) break;
  }
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

// The table search: variables are the cells of G^k, domains are value
// bitmasks, and the binary constraints are arc preservation along the arcs
// of G^k.
struct TableSearch {
  const Digraph& g;
  int arity;
  int n;
  int cells;
  MixedRadix radix;
  // per-cell neighbor list: (cell, fwd, bwd) with fwd = arc(self, other)
  struct Edge {
    int other;
    bool fwd, bwd;
  };
  std::vector<std::vector<Edge>> edges;

  const SearchBudget& budget;
  Clock::time_point start;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;
  std::vector<std::uint32_t> out_mask, in_mask;  // per-value neighborhoods of G
  std::optional<std::vector<std::uint32_t>> solution;

  TableSearch(const Digraph& g_, int arity_, const SearchBudget& b)
      : g(g_), arity(arity_), n(g_.size()), budget(b), start(Clock::now()) {
    radix.radix.assign(arity, n);
    const long long total = radix.total();
    if (total > (1 << 20))
      throw std::invalid_argument("find_slupecki_counterexample: table too large");
    cells = static_cast<int>(total);
    out_mask.assign(n, 0);
    in_mask.assign(n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (g.arc(a, b)) out_mask[a] |= 1u << b;
        if (g.arc(b, a)) in_mask[a] |= 1u << b;
      }
    edges.resize(cells);
    std::vector<int> da(arity), db(arity);
    for (int a = 0; a < cells; ++a) {
      da = radix.decode(a);
      for (int b = 0; b < cells; ++b) {
        if (a == b) continue;
        db = radix.decode(b);
        bool fwd = true, bwd = true;
        for (int i = 0; i < arity && (fwd || bwd); ++i) {
          fwd = fwd && g.arc(da[i], db[i]);
          bwd = bwd && g.arc(db[i], da[i]);
        }
        if (fwd || bwd) edges[a].push_back({b, fwd, bwd});
      }
    }
  }

  bool tick() {
    if (out_of_budget) return false;
    if (++nodes > budget.node_cap) {
      out_of_budget = true;
      return false;
    }
    if ((nodes & 0xfff) == 0 &&
        std::chrono::duration<double>(Clock::now() - start).count() > budget.wall_cap_secs)
      out_of_budget = true;
    return !out_of_budget;
  }

  std::uint32_t full_mask() const { return (n == 32) ? ~0u : ((1u << n) - 1); }

  bool revise(std::vector<std::uint32_t>& dom, int cell, const Edge& e) const {
    std::uint32_t keep = 0;
    std::uint32_t bits = dom[cell];
    while (bits) {
      const int a = std::countr_zero(bits);
      bits &= bits - 1;
      std::uint32_t support = dom[e.other];
      if (e.fwd) support &= out_mask[a];
      if (e.bwd) support &= in_mask[a];
      if (support) keep |= 1u << a;
    }
    dom[cell] = keep;
    return keep != 0;
  }

  bool propagate(std::vector<std::uint32_t>& dom, int seed_cell) {
    std::deque<int> queue{seed_cell};
    std::vector<char> queued(cells, 0);
    queued[seed_cell] = 1;
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      queued[c] = 0;
      for (const Edge& e : edges[c]) {
        const std::uint32_t before = dom[e.other];
        // constraint seen from the other endpoint
        Edge back{c, e.bwd, e.fwd};
        if (!revise(dom, e.other, back)) return false;
        if (dom[e.other] != before && !queued[e.other]) {
          queued[e.other] = 1;
          queue.push_back(e.other);
        }
      }
    }
    return true;
  }

  bool assign(std::vector<std::uint32_t>& dom, int cell, int value) {
    dom[cell] = 1u << value;
    return propagate(dom, cell);
  }

  // Completes the table after the witness pins; true when a full
  // polymorphism exists (the winning domains land in `solution`).
  bool complete(std::vector<std::uint32_t>& dom) {
    int var = -1, best = 33;
    for (int c = 0; c < cells; ++c) {
      const int size = std::popcount(dom[c]);
      if (size > 1 && size < best) {
        best = size;
        var = c;
      }
    }
    if (var == -1) {
      solution = dom;
      return true;
    }
    std::uint32_t bits = dom[var];
    while (bits) {
      const int v = std::countr_zero(bits);
      bits &= bits - 1;
      if (!tick()) return false;
      std::vector<std::uint32_t> saved = dom;
      if (assign(dom, var, v) && complete(dom)) return true;
      dom = std::move(saved);
    }
    return false;
  }

  // Places witness cells for outputs `next..n-1`; the cells chosen so far
  // are rows[0..next).  Columns must end up with a repeated value each.
  bool place(std::vector<std::uint32_t>& dom, std::vector<int>& rows, int next,
             std::vector<std::uint32_t>& used_coords) {
    if (next == n) {
      std::vector<std::uint32_t> completed = dom;
      return complete(completed);
    }
    const int remaining = n - next;
    for (int cell = 0; cell < cells; ++cell) {
      if (!(dom[cell] >> next & 1)) continue;
      const auto digits = radix.decode(cell);
      // each argument column needs a repeat among the n chosen rows
      int missing = 0;
      std::vector<std::uint32_t> next_used = used_coords;
      bool admissible = true;
      for (int j = 0; j < arity; ++j) {
        const std::uint32_t bit = 1u << digits[j];
        const bool repeats = (next == 0) ? false : (used_coords[2 * j] & bit) != 0;
        if (repeats) next_used[2 * j + 1] = 1;  // column j has its repeat
        next_used[2 * j] |= bit;
        if (!next_used[2 * j + 1]) ++missing;
      }
      // every later row can close at most `arity` missing columns, and the
      // final row must close all of them at once
      if (missing > arity * (remaining - 1)) admissible = false;
      if (admissible && remaining == 1 && missing > 0) admissible = false;
      if (!admissible) continue;
      if (!tick()) return false;
      std::vector<std::uint32_t> saved = dom;
      rows[next] = cell;
      if (assign(dom, cell, next) && place(dom, rows, next + 1, next_used)) return true;
      dom = std::move(saved);
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

SlupeckiOutcome find_slupecki_counterexample(const CycleId& g, int arity,
                                             const SearchBudget& budget) {
  if (arity < 2) throw std::invalid_argument("find_slupecki_counterexample: arity must be >= 2");
  const Digraph cycle = cycle_of_word(g.canonical_word);
  TableSearch search(cycle, arity, budget);

  SlupeckiOutcome outcome;
  outcome.arity = arity;

  std::vector<std::uint32_t> dom(search.cells, search.full_mask());
  std::vector<int> rows(cycle.size(), -1);
  // used_coords: per column, the value set seen so far and a repeat flag
  std::vector<std::uint32_t> used(2 * arity, 0);
  const bool found = search.place(dom, rows, 0, used);

  outcome.nodes_explored = search.nodes;
  outcome.wall_seconds = std::chrono::duration<double>(Clock::now() - search.start).count();

  if (!found) {
    outcome.verdict = search.out_of_budget ? SlupeckiOutcome::Verdict::Inconclusive
                                           : SlupeckiOutcome::Verdict::NoCounterexample;
    return outcome;
  }

  OperationTable f = OperationTable::empty(arity, cycle.size());
  for (int c = 0; c < search.cells; ++c) f.table[c] = std::countr_zero((*search.solution)[c]);

  // A returned table must verify unconditionally.
  if (!is_polymorphism(f, cycle) || !is_surjective(f) || is_essentially_unary(f))
    throw std::logic_error("find_slupecki_counterexample: candidate failed verification");
  outcome.verdict = SlupeckiOutcome::Verdict::Counterexample;
  outcome.table = std::move(f);
  return outcome;
}

std::optional<std::vector<int>> check_embedding_criterion(const CycleId& g,
                                                          const OperationTable& f) {
  const Digraph cycle = cycle_of_word(g.canonical_word);
  if (f.domain != cycle.size())
    throw std::invalid_argument("check_embedding_criterion: domain mismatch");
  if (!is_polymorphism(f, cycle) || !is_surjective(f))
    throw std::invalid_argument("check_embedding_criterion: f must be a surjective polymorphism");
  std::vector<Digraph> copies(f.arity, cycle);
  const Digraph power = product(copies);
  MixedRadix mr;
  mr.radix.assign(f.arity, cycle.size());
  for (const auto& e : find_embeddings(cycle, power)) {
    std::vector<char> hit(cycle.size(), 0);
    int count = 0;
    for (int v = 0; v < cycle.size(); ++v) {
      const int img = f.apply(mr.decode(e[v]));
      if (!hit[img]) {
        hit[img] = 1;
        ++count;
      }
    }
    if (count == cycle.size()) return e;
  }
  return std::nullopt;
}

std::optional<Word> self_dual_plus_shape(const CycleId& g) {
  const int n = g.girth;
  const Word& w = g.canonical_word;
  const Word d = dual(w);
  for (int r = 0; r < n; ++r)
    for (const Word* base : {&w, &d}) {
      Word rep;
      for (int i = 0; i < n; ++i) rep.letters.push_back((*base)[(r + i) % n]);
      if (rep[n - 1] != Symbol::Plus) continue;
      Word p{std::vector<Symbol>(rep.letters.begin(), rep.letters.end() - 1)};
      if (static_cast<int>(p.size()) < 3 || !is_self_dual(p)) continue;
      const int stars = static_cast<int>(p.size() - strip_stars(p).size());
      if (stars >= 2) return p;
    }
  return std::nullopt;
}

bool alternating_reach_check(const CycleId& g) {
  const auto shape = self_dual_plus_shape(g);
  if (!shape)
    throw std::invalid_argument("alternating_reach_check: cycle is not of the C(P+) shape");
  const Word& p = *shape;
  const Digraph cycle = cycle_of_word(g.canonical_word);
  const Word plus{{Symbol::Plus}}, minus{{Symbol::Minus}};

  Word z;
  if (p.size() % 2 == 1) {
    const int t = static_cast<int>(p.size() - 1) / 2;
    z = power(plus + minus, t);
  } else {
    const int t = static_cast<int>(p.size()) / 2;
    // Two exceptional families satisfy only the weaker (-+)^t word:
    // C((+)^{t-1} ** (-)^{t-1} +) and its mirror C((-)^{t-1} ** (+)^{t-1} +).
    // They are distinct dihedral classes; on the mirror the strong word
    // already fails at girth 5 (no word below (-+)^{t-1}- joins vertex 3
    // to vertex 0 in C("-**++")).
    const Word stars2 = power(Word{{Symbol::Star}}, 2);
    Word exceptional = power(plus, t - 1) + stars2 + power(minus, t - 1);
    exceptional.letters.push_back(Symbol::Plus);
    Word mirror = power(minus, t - 1) + stars2 + power(plus, t - 1);
    mirror.letters.push_back(Symbol::Plus);
    if (canonical_cycle(exceptional) == g || canonical_cycle(mirror) == g)
      z = power(minus + plus, t);
    else
      z = power(minus + plus, t - 1) + minus;
  }

  for (int x = 0; x < cycle.size(); ++x)
    if (static_cast<int>(reach(cycle, x, z).size()) != cycle.size()) return false;
  return true;
}

}  // namespace rcycle

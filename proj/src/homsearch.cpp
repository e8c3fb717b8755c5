#include "rcycle/homsearch.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace rcycle {

namespace {

int popcount_row(std::span<const std::uint64_t> row) {
  int c = 0;
  for (std::uint64_t w : row) c += std::popcount(w);
  return c;
}

void for_each_bit(std::span<const std::uint64_t> row, auto&& fn) {
  for (std::size_t w = 0; w < row.size(); ++w) {
    std::uint64_t bits = row[w];
    while (bits) {
      fn(static_cast<int>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

// Bitset domains for hom search, one row of h-vertex bits per k-vertex.
struct Domains {
  int words;
  std::vector<std::uint64_t> bits;

  Domains(int k_vertices, int h_words) : words(h_words) {
    bits.assign(static_cast<std::size_t>(k_vertices) * words, ~std::uint64_t(0));
  }
  std::span<std::uint64_t> row(int u) {
    return {bits.data() + static_cast<std::size_t>(u) * words, static_cast<std::size_t>(words)};
  }
  std::span<const std::uint64_t> row(int u) const {
    return {bits.data() + static_cast<std::size_t>(u) * words, static_cast<std::size_t>(words)};
  }
};

struct HomProblem {
  const Digraph& k;
  const Digraph& h;
  std::vector<std::vector<int>> neighbors;  // undirected adjacency in k

  HomProblem(const Digraph& k_, const Digraph& h_) : k(k_), h(h_) {
    neighbors.resize(k.size());
    for (int u = 0; u < k.size(); ++u) neighbors[u] = k.undirected_neighbors(u);
  }

  // Keeps in dom(u) only values with a coherent support in dom(v); returns
  // false if dom(u) became empty.
  bool revise(Domains& d, int u, int v) const {
    const bool fwd = k.arc(u, v), bwd = k.arc(v, u);
    if (!fwd && !bwd) return true;
    auto du = d.row(u);
    auto dv = d.row(v);
    bool changed = false;
    for (int w = 0; w < d.words; ++w) {
      std::uint64_t keep = 0;
      std::uint64_t bits = du[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        const int a = w * 64 + b;
        // support: some value in dom(v) compatible with an assignment a at u
        bool supported = false;
        auto out = h.out_row(a);
        auto in = h.in_row(a);
        for (int ww = 0; ww < d.words && !supported; ++ww) {
          std::uint64_t s = dv[ww];
          if (fwd) s &= out[ww];
          if (bwd) s &= in[ww];
          supported = s != 0;
        }
        if (supported) keep |= std::uint64_t(1) << b;
      }
      if (keep != du[w]) changed = true;
      du[w] = keep;
    }
    if (changed) {
      for (int w = 0; w < d.words; ++w)
        if (du[w]) return true;
      return false;
    }
    return true;
  }

  bool propagate(Domains& d, std::deque<int>& queue) const {
    std::vector<char> queued(k.size(), 0);
    for (int u : queue) queued[u] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      queued[v] = 0;
      for (int u : neighbors[v]) {
        auto before = d.row(u);
        std::vector<std::uint64_t> snapshot(before.begin(), before.end());
        if (!revise(d, u, v)) return false;
        if (!std::equal(snapshot.begin(), snapshot.end(), d.row(u).begin()) && !queued[u]) {
          queued[u] = 1;
          queue.push_back(u);
        }
      }
    }
    return true;
  }

  bool search(Domains& d, std::vector<int>& assignment, int assigned,
              std::mt19937_64* rng) const {
    if (assigned == k.size()) return true;
    int var = -1, best = INT_MAX;
    for (int u = 0; u < k.size(); ++u) {
      if (assignment[u] >= 0) continue;
      const int c = popcount_row(d.row(u));
      if (c < best) {
        best = c;
        var = u;
      }
    }
    std::vector<int> values;
    for_each_bit(d.row(var), [&](int a) { values.push_back(a); });
    if (rng) std::shuffle(values.begin(), values.end(), *rng);
    for (int a : values) {
      Domains saved = d;
      auto row = d.row(var);
      std::fill(row.begin(), row.end(), 0);
      row[a / 64] = std::uint64_t(1) << (a % 64);
      assignment[var] = a;
      std::deque<int> queue{var};
      if (propagate(d, queue) && search(d, assignment, assigned + 1, rng)) return true;
      assignment[var] = -1;
      d = std::move(saved);
    }
    return false;
  }
};

std::optional<std::vector<int>> hom_search_impl(const Digraph& k, const Digraph& h,
                                                const PinSet& pins, std::mt19937_64* rng) {
  HomProblem prob(k, h);
  Domains d(k.size(), h.row_words());
  // mask off bits beyond h.size()
  for (int u = 0; u < k.size(); ++u) {
    auto row = d.row(u);
    const int last = h.size() % 64;
    if (last) row[h.row_words() - 1] &= (std::uint64_t(1) << last) - 1;
  }
  std::vector<char> pinned(k.size(), 0);
  for (auto [src, dst] : pins.pins) {
    if (src < 0 || src >= k.size() || dst < 0 || dst >= h.size())
      throw std::invalid_argument("hom_search: pin out of range");
    if (pinned[src]) throw std::invalid_argument("hom_search: duplicate pin key");
    pinned[src] = 1;
    auto row = d.row(src);
    const bool had = (row[dst / 64] >> (dst % 64)) & 1;
    std::fill(row.begin(), row.end(), 0);
    if (!had) return std::nullopt;
    row[dst / 64] = std::uint64_t(1) << (dst % 64);
  }
  std::deque<int> queue(k.size());
  std::iota(queue.begin(), queue.end(), 0);
  if (!prob.propagate(d, queue)) return std::nullopt;

  std::vector<int> assignment(k.size(), -1);
  if (!prob.search(d, assignment, 0, rng)) return std::nullopt;
  return assignment;
}

}  // namespace

bool is_homomorphism(const Digraph& k, const Digraph& h, std::span<const int> assignment) {
  if (static_cast<int>(assignment.size()) != k.size()) return false;
  for (int v : assignment)
    if (v < 0 || v >= h.size()) return false;
  for (int u = 0; u < k.size(); ++u)
    for (int v = 0; v < k.size(); ++v)
      if (k.arc(u, v) && !h.arc(assignment[u], assignment[v])) return false;
  return true;
}

std::optional<std::vector<int>> hom_search(const Digraph& k, const Digraph& h, const PinSet& pins) {
  return hom_search_impl(k, h, pins, nullptr);
}

std::optional<std::vector<int>> hom_search_randomized(const Digraph& k, const Digraph& h,
                                                      const PinSet& pins, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return hom_search_impl(k, h, pins, &rng);
}

std::vector<int> reach(const Digraph& g, int x, const Word& w) {
  if (x < 0 || x >= g.size()) throw std::invalid_argument("reach: vertex out of range");
  WordAutomaton aut(g, x, 0);
  auto states = aut.initial();
  for (Symbol s : w.letters) aut.step(states, s);
  std::vector<int> out;
  for_each_bit(states, [&](int v) {
    if (v < g.size()) out.push_back(v);
  });
  return out;
}

WordAutomaton::WordAutomaton(const Digraph& g, int start, int accept)
    : g_(&g), start_(start), accept_(accept) {
  if (start < 0 || start >= g.size() || accept < 0 || accept >= g.size())
    throw std::invalid_argument("WordAutomaton: state out of range");
}

std::vector<std::uint64_t> WordAutomaton::initial() const {
  std::vector<std::uint64_t> states(g_->row_words(), 0);
  states[start_ / 64] = std::uint64_t(1) << (start_ % 64);
  return states;
}

void WordAutomaton::step(std::vector<std::uint64_t>& states, Symbol s) const {
  std::vector<std::uint64_t> next(states.size(), 0);
  for_each_bit(states, [&](int u) {
    if (u >= g_->size()) return;
    auto out = g_->out_row(u);
    auto in = g_->in_row(u);
    for (std::size_t w = 0; w < next.size(); ++w) {
      switch (s) {
        case Symbol::Plus: next[w] |= out[w]; break;
        case Symbol::Minus: next[w] |= in[w]; break;
        case Symbol::Star: next[w] |= out[w] & in[w]; break;
      }
    }
  });
  states.swap(next);
}

bool WordAutomaton::accepting(const std::vector<std::uint64_t>& states) const {
  return (states[accept_ / 64] >> (accept_ % 64)) & 1;
}

bool WordAutomaton::accepts(const Word& w) const {
  auto states = initial();
  for (Symbol s : w.letters) step(states, s);
  return accepting(states);
}

namespace {

// Deterministic frontier of the path-walk automaton started at `origin`:
// the reachable position set after any word is the interval [lo, hi], and
// the two ends evolve independently of each other.
struct PathFrontier {
  const Word& p;

  bool up_ok(int target, Symbol s) const {
    // crossing letter `target` (1-based) upward
    const Symbol letter = p[target - 1];
    switch (s) {
      case Symbol::Plus: return letter == Symbol::Plus || letter == Symbol::Star;
      case Symbol::Minus: return letter == Symbol::Minus || letter == Symbol::Star;
      case Symbol::Star: return letter == Symbol::Star;
    }
    return false;
  }
  bool down_ok(int from, Symbol s) const {
    // crossing letter `from` (1-based) downward
    const Symbol letter = p[from - 1];
    switch (s) {
      case Symbol::Plus: return letter == Symbol::Minus || letter == Symbol::Star;
      case Symbol::Minus: return letter == Symbol::Plus || letter == Symbol::Star;
      case Symbol::Star: return letter == Symbol::Star;
    }
    return false;
  }
  int step_hi(int hi, Symbol s) const {
    return (hi < static_cast<int>(p.size()) && up_ok(hi + 1, s)) ? hi + 1 : hi;
  }
  int step_lo(int lo, Symbol s) const { return (lo > 0 && down_ok(lo, s)) ? lo - 1 : lo; }
};

constexpr Symbol kSymbols[3] = {Symbol::Star, Symbol::Plus, Symbol::Minus};

// Searches for a word accepted by the K-side automaton (x -> y) but not by
// the path automaton (a -> b); returns it, or nullopt when the inclusion
// L(K,x,y) ⊆ L(P,a,b) holds.
std::optional<Word> inclusion_counterexample(const Digraph& k, int x, int y, const Word& p, int a,
                                             int b) {
  PathFrontier frontier{p};
  const int plen = static_cast<int>(p.size());
  auto pack = [plen](int u, int lo, int hi) {
    return (static_cast<std::uint64_t>(u) * (plen + 1) + lo) * (plen + 1) + hi;
  };
  struct Item {
    int u, lo, hi;
    int parent;
    Symbol via;
  };
  std::vector<Item> items;
  std::unordered_set<std::uint64_t> seen;
  items.push_back({x, a, a, -1, Symbol::Star});
  seen.insert(pack(x, a, a));
  for (std::size_t head = 0; head < items.size(); ++head) {
    const Item it = items[head];
    if (it.u == y && (b < it.lo || b > it.hi)) {
      Word w;
      int cur = static_cast<int>(head);
      while (items[cur].parent >= 0) {
        w.letters.push_back(items[cur].via);
        cur = items[cur].parent;
      }
      std::reverse(w.letters.begin(), w.letters.end());
      return w;
    }
    for (Symbol s : kSymbols) {
      const int lo = frontier.step_lo(it.lo, s);
      const int hi = frontier.step_hi(it.hi, s);
      auto visit = [&](int v) {
        const std::uint64_t key = pack(v, lo, hi);
        if (seen.insert(key).second) items.push_back({v, lo, hi, static_cast<int>(head), s});
      };
      auto out = k.out_row(it.u);
      auto in = k.in_row(it.u);
      for (int w = 0; w < k.row_words(); ++w) {
        std::uint64_t bits = 0;
        switch (s) {
          case Symbol::Plus: bits = out[w]; break;
          case Symbol::Minus: bits = in[w]; break;
          case Symbol::Star: bits = out[w] & in[w]; break;
        }
        while (bits) {
          const int v = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          if (v < k.size()) visit(v);
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

ExtensionResult extension_exists_to_path(const Digraph& k, const PinSet& pins, const Digraph& path,
                                         ExtensionMethod method) {
  const Word p = word_of_path(path);  // throws if not a line-order path
  for (auto [src, dst] : pins.pins)
    if (src < 0 || src >= k.size() || dst < 0 || dst >= path.size())
      throw std::invalid_argument("extension_exists_to_path: pin out of range");

  std::optional<bool> by_search, by_inclusion;
  ExtensionResult result;

  if (method == ExtensionMethod::Search || method == ExtensionMethod::Both)
    by_search = hom_search(k, path, pins).has_value();

  if (method == ExtensionMethod::Inclusion || method == ExtensionMethod::Both) {
    bool ok = true;
    // Pairs (x, x) always pass against a reflexive target (constant maps),
    // so only distinct ordered pairs are tested.
    for (std::size_t i = 0; i < pins.pins.size() && ok; ++i)
      for (std::size_t j = 0; j < pins.pins.size() && ok; ++j) {
        if (i == j) continue;
        auto [x, gx] = pins.pins[i];
        auto [y, gy] = pins.pins[j];
        if (auto w = inclusion_counterexample(k, x, y, p, gx, gy)) {
          ok = false;
          result.separating_word = std::move(*w);
          result.separating_pair = std::make_pair(x, y);
        }
      }
    by_inclusion = ok;
  }

  if (by_search && by_inclusion && *by_search != *by_inclusion)
    throw std::logic_error(
        "extension_exists_to_path: search and inclusion routes disagree (search=" +
        std::to_string(*by_search) + ", target path " + p.str() + ")");

  result.exists = by_search ? *by_search : *by_inclusion;
  if (result.exists) {
    result.separating_word.reset();
    result.separating_pair.reset();
  }
  return result;
}

namespace {

// The inclusion  ∩_i Up(Q_i) ⊆ Up(P)  as a reachability race: each factor
// contributes the frontier counter of its endpoint-to-endpoint automaton,
// every counter is monotone nondecreasing, and a state is worth exploring
// only while the P counter has not hit |P|.
class ProductRace {
 public:
  ProductRace(std::vector<Word> qs, const Word& p) : qs_(std::move(qs)), p_(p) {}

  // Searches for W with W >= Q_i for all i and not W >= P.
  std::optional<Word> separating_word() const {
    struct Item {
      std::vector<int> state;  // factor frontiers, then the P frontier last
      int parent;
      Symbol via;
    };
    const int l = static_cast<int>(qs_.size());
    std::vector<Item> items;
    std::set<std::vector<int>> seen;

    std::vector<int> start(l + 1, 0);
    if (accepted(start)) return Word{};  // epsilon separates (only if |P| > 0)
    if (start[l] == static_cast<int>(p_.size())) return std::nullopt;
    items.push_back({start, -1, Symbol::Star});
    seen.insert(start);
    for (std::size_t head = 0; head < items.size(); ++head) {
      const auto state = items[head].state;  // copy: items grows below
      for (Symbol s : kSymbols) {
        std::vector<int> next(l + 1);
        for (int i = 0; i < l; ++i) next[i] = PathFrontier{qs_[i]}.step_hi(state[i], s);
        next[l] = PathFrontier{p_}.step_hi(state[l], s);
        if (next[l] == static_cast<int>(p_.size())) continue;  // P caught up: dead branch
        if (!seen.insert(next).second) continue;
        items.push_back({next, static_cast<int>(head), s});
        if (accepted(next)) {
          Word w;
          int cur = static_cast<int>(items.size()) - 1;
          while (items[cur].parent >= 0) {
            w.letters.push_back(items[cur].via);
            cur = items[cur].parent;
          }
          std::reverse(w.letters.begin(), w.letters.end());
          return w;
        }
      }
    }
    return std::nullopt;
  }

 private:
  bool accepted(const std::vector<int>& state) const {
    const int l = static_cast<int>(qs_.size());
    if (state[l] == static_cast<int>(p_.size())) return false;
    for (int i = 0; i < l; ++i)
      if (state[i] != static_cast<int>(qs_[i].size())) return false;
    return true;
  }

  std::vector<Word> qs_;
  const Word& p_;
};

// Deduplicates and keeps only the <=-maximal factors; the intersection of
// their up-sets is unchanged.
std::vector<Word> maximal_factors(std::span<const Word> qs) {
  std::set<Word> uniq(qs.begin(), qs.end());
  std::vector<Word> all(uniq.begin(), uniq.end());
  std::vector<Word> out;
  for (const Word& q : all) {
    bool dominated = false;
    for (const Word& r : all)
      if (!(r == q) && word_leq(q, r)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(q);
  }
  return out;
}

bool family_dual_closed(std::span<const Word> qs) {
  std::set<Word> s(qs.begin(), qs.end());
  for (const Word& q : s)
    if (!s.count(dual(q))) return false;
  return true;
}

}  // namespace

std::optional<Word> product_onto_path_separating_word(std::span<const Word> qs, const Word& p) {
  return ProductRace(maximal_factors(qs), p).separating_word();
}

bool surjective_product_onto_path(std::span<const Word> qs, const Word& p,
                                  bool try_orientation_flips) {
  if (qs.empty()) throw std::invalid_argument("surjective_product_onto_path: no factors");
  const auto factors = maximal_factors(qs);
  if (!ProductRace(factors, p).separating_word().has_value()) return true;
  if (!try_orientation_flips || family_dual_closed(factors)) return false;
  // Sweep the factor orientations; a dual-closed family makes every flip
  // yield the same intersection, hence the skip above.
  const int l = static_cast<int>(factors.size());
  if (l > 20)
    throw std::invalid_argument("surjective_product_onto_path: too many factors for a flip sweep");
  for (std::uint32_t mask = 1; mask < (1u << l); ++mask) {
    std::vector<Word> flipped;
    flipped.reserve(l);
    for (int i = 0; i < l; ++i) flipped.push_back(mask >> i & 1 ? dual(factors[i]) : factors[i]);
    if (!ProductRace(maximal_factors(flipped), p).separating_word().has_value()) return true;
  }
  return false;
}

bool is_polymorphism(const OperationTable& f, const Digraph& g) {
  if (f.arity < 1) throw std::invalid_argument("is_polymorphism: arity must be at least 1");
  if (f.domain != g.size())
    throw std::invalid_argument("is_polymorphism: table domain does not match digraph");
  std::vector<std::pair<int, int>> arcs;
  for (int u = 0; u < g.size(); ++u)
    for (int v = 0; v < g.size(); ++v)
      if (g.arc(u, v)) arcs.emplace_back(u, v);
  // Odometer over k-tuples of arcs: every arc of G^k is such a tuple.
  const int k = f.arity;
  std::vector<std::size_t> idx(k, 0);
  std::vector<int> from(k), to(k);
  while (true) {
    for (int i = 0; i < k; ++i) {
      from[i] = arcs[idx[i]].first;
      to[i] = arcs[idx[i]].second;
    }
    if (!g.arc(f.apply(from), f.apply(to))) return false;
    int i = k - 1;
    while (i >= 0 && ++idx[i] == arcs.size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return true;
}

}  // namespace rcycle

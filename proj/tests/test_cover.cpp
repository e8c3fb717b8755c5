#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "rcycle/cover.hpp"
#include "rcycle/homsearch.hpp"

using namespace rcycle;

namespace {
Word W(const char* s) { return Word::parse(s); }

// Random walk between two vertices in the underlying undirected graph,
// seeded and bounded.
Walk random_walk(const Digraph& g, int from, int to, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    Walk w{{from}};
    int cur = from;
    for (int step = 0; step < 8 * g.size() && cur != to; ++step) {
      auto nb = g.undirected_neighbors(cur);
      nb.push_back(cur);
      cur = nb[rng() % nb.size()];
      w.vertices.push_back(cur);
    }
    if (cur == to) return w;
  }
  REQUIRE(false);
  return Walk{};
}

Walk apply_hom(const std::vector<int>& f, const Walk& w) {
  Walk out;
  for (int v : w.vertices) out.vertices.push_back(f[v]);
  return out;
}
}  // namespace

TEST_CASE("winding number") {
  const Digraph g = cycle_of_word(power(W("*"), 5));
  CHECK(winding_number(g, 0, Walk{{2, 2, 2}}) == 0);

  // one full clockwise traversal crosses the gate once
  Walk around{{0, 1, 2, 3, 4, 0}};
  CHECK(winding_number(g, 0, around) == 1);
  Walk back{{0, 4, 3, 2, 1, 0}};
  CHECK(winding_number(g, 0, back) == -1);

  // concatenation additivity and cancellation
  std::mt19937_64 rng(71);
  for (int i = 0; i < 100; ++i) {
    const int a = static_cast<int>(rng() % g.size());
    const int mid = static_cast<int>(rng() % g.size());
    Walk p = random_walk(g, a, mid, rng);
    Walk q = random_walk(g, mid, static_cast<int>(rng() % g.size()), rng);
    Walk pq = p;
    pq.vertices.insert(pq.vertices.end(), q.vertices.begin() + 1, q.vertices.end());
    CHECK(winding_number(g, 1, pq) == winding_number(g, 1, p) + winding_number(g, 1, q));
    Walk rev = p;
    std::reverse(rev.vertices.begin(), rev.vertices.end());
    Walk cancel = p;
    cancel.vertices.insert(cancel.vertices.end(), rev.vertices.begin() + 1, rev.vertices.end());
    CHECK(winding_number(g, 1, cancel) == 0);
  }

  CHECK_THROWS_AS(winding_number(g, 0, Walk{{0, 2}}), std::invalid_argument);
}

TEST_CASE("cover window structure") {
  for (const char* s : {"+*+-**", "****+", "***"}) {
    const Word w = W(s);
    const Digraph g = cycle_of_word(w);
    const int L = 2;
    const CoverWindow cw = cover_window(g, 0, L);
    const int n = g.size();
    CHECK(cw.path.size() == n * (2 * L + 1));
    // the window is a path whose word unrolls the cycle word
    const Word unrolled = power(w, 2 * L + 1);
    const Word expect{std::vector<Symbol>(unrolled.letters.begin(), unrolled.letters.end() - 1)};
    CHECK(word_of_path(cw.path) == expect);
    // projection labels agree with position_of/level_of
    for (int p = 0; p < cw.path.size(); ++p)
      CHECK(cw.position_of(cw.base_vertex[p], cw.level_of(p)) == p);
  }
}

TEST_CASE("lift of a constant map sits at level zero") {
  const Digraph g = cycle_of_word(W("****+"));
  const Digraph k = cycle_of_word(W("***"));
  std::vector<int> f(k.size(), 3);
  const auto result = lift(k, f, 0, g);
  REQUIRE(result.ok);
  for (int v = 0; v < k.size(); ++v) {
    CHECK(result.window.base_vertex[result.assignment[v]] == 3);
    CHECK(result.window.level_of(result.assignment[v]) == 0);
  }
}

TEST_CASE("identity on a cycle has no lift") {
  for (const char* s : {"****", "+*+-**", "****+"}) {
    const Digraph g = cycle_of_word(W(s));
    std::vector<int> id(g.size());
    for (int v = 0; v < g.size(); ++v) id[v] = v;
    const auto result = lift(g, id, 0, g);
    CHECK(!result.ok);
    CHECK(result.bad_arc.first >= 0);  // the offending arc is reported
  }
}

TEST_CASE("lift from products of subpaths succeeds and projects back") {
  std::mt19937_64 rng(73);
  int lifted = 0;
  for (int i = 0; i < 60; ++i) {
    const auto cyc = canonical_cycle(oracle::random_word(rng, 6, 4));
    const Digraph g = cycle_of_word(cyc.canonical_word);
    const auto qs = induced_subpaths(cyc, cyc.girth - 2);
    std::uniform_int_distribution<std::size_t> pick(0, qs.size() - 1);
    std::vector<Digraph> factors{path_of_word(qs[pick(rng)]), path_of_word(qs[pick(rng)])};
    const Digraph k = product(factors);
    const auto f = hom_search_randomized(k, g, {}, rng());
    REQUIRE(f.has_value());
    const auto result = lift(k, *f, 0, g);
    REQUIRE(result.ok);
    ++lifted;
    // pi o f^ = f
    for (int v = 0; v < k.size(); ++v)
      CHECK(result.window.base_vertex[result.assignment[v]] == (*f)[v]);
    // level spread within the safe bound
    int lo = 0, hi = 0;
    for (int v = 0; v < k.size(); ++v) {
      lo = std::min(lo, result.window.level_of(result.assignment[v]));
      hi = std::max(hi, result.window.level_of(result.assignment[v]));
    }
    CHECK(hi - lo <= k.size());
    // the image is connected, hence a contiguous run of window positions
    std::set<int> img(result.assignment.begin(), result.assignment.end());
    CHECK(*img.rbegin() - *img.begin() + 1 == static_cast<int>(img.size()));
  }
  CHECK(lifted == 60);
}

TEST_CASE("level is walk independent on simply connected sources") {
  // the well-definedness claim behind the lifting lemma
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 40; ++trial) {
    const auto cyc = canonical_cycle(oracle::random_word(rng, 6, 4));
    const Digraph g = cycle_of_word(cyc.canonical_word);
    const auto qs = induced_subpaths(cyc, cyc.girth - 2);
    std::uniform_int_distribution<std::size_t> pick(0, qs.size() - 1);
    std::vector<Digraph> factors{path_of_word(qs[pick(rng)]), path_of_word(qs[pick(rng)])};
    const Digraph k = product(factors);
    const auto f = hom_search_randomized(k, g, {}, rng());
    REQUIRE(f.has_value());
    for (int pair = 0; pair < 5; ++pair) {
      const int s = static_cast<int>(rng() % k.size());
      const int t = static_cast<int>(rng() % k.size());
      const Walk p = random_walk(k, s, t, rng);
      const Walk q = random_walk(k, s, t, rng);
      const int a = (*f)[s];
      CHECK(winding_number(g, a, apply_hom(*f, p)) == winding_number(g, a, apply_hom(*f, q)));
    }
  }
}

TEST_CASE("surjective_product_onto_cycle") {
  const auto almost = canonical_cycle(W("****+"));
  CHECK(surjective_product_onto_cycle(induced_subpaths(almost, 3), almost));

  const auto sym4 = canonical_cycle(power(W("*"), 4));
  std::vector<Word> qs{W("**")};
  CHECK(!surjective_product_onto_cycle(qs, sym4));

  const auto sstar = canonical_cycle(W("+*-**+*-+"));
  CHECK(surjective_product_onto_cycle(induced_subpaths(sstar, 7), sstar));
}

TEST_CASE("lift rejects disconnected sources") {
  Digraph two(2);  // two loops, no arcs between
  std::vector<int> f{0, 0};
  CHECK_THROWS_AS(lift(two, f, 0, cycle_of_word(W("***"))), std::invalid_argument);
}

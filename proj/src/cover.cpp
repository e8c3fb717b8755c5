#include "rcycle/cover.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "rcycle/homsearch.hpp"

namespace rcycle {

bool is_walk(const Digraph& g, const Walk& w) {
  for (int v : w.vertices)
    if (v < 0 || v >= g.size()) return false;
  for (std::size_t i = 1; i < w.vertices.size(); ++i) {
    const int u = w.vertices[i - 1], v = w.vertices[i];
    if (u != v && !g.arc(u, v) && !g.arc(v, u)) return false;
  }
  return !w.vertices.empty();
}

int winding_number(const Digraph& g, int a, const Walk& w) {
  if (!is_walk(g, w)) throw std::invalid_argument("winding_number: not a walk in the digraph");
  const int n = g.size();
  const int am1 = (a - 1 + n) % n;
  int alpha = 0;
  for (std::size_t i = 1; i < w.vertices.size(); ++i) {
    const int u = w.vertices[i - 1], v = w.vertices[i];
    if (u == am1 && v == a) ++alpha;
    if (u == a && v == am1) --alpha;
  }
  return alpha;
}

CoverWindow cover_window(const Digraph& g, int a, int levels) {
  const int n = g.size();
  if (levels < 1) throw std::invalid_argument("cover_window: level bound must be positive");
  CoverWindow cw;
  cw.gate = a;
  cw.levels = levels;
  cw.base_n = n;
  const int total = n * (2 * levels + 1);
  cw.path = Digraph(total);
  cw.base_vertex.resize(total);
  for (int p = 0; p < total; ++p) cw.base_vertex[p] = (a + p % n) % n;
  // Consecutive window positions carry exactly the base arcs between their
  // labels; the only label pair spanning a block boundary is the gate edge,
  // which is what unwinds the cycle into a path.
  for (int p = 0; p + 1 < total; ++p) {
    const int x = cw.base_vertex[p], y = cw.base_vertex[p + 1];
    if (g.arc(x, y)) cw.path.add_arc(p, p + 1);
    if (g.arc(y, x)) cw.path.add_arc(p + 1, p);
  }
  return cw;
}

LiftResult lift(const Digraph& k, const std::vector<int>& f, int u, const Digraph& g,
                int levels) {
  if (static_cast<int>(f.size()) != k.size())
    throw std::invalid_argument("lift: assignment size does not match K");
  if (!k.connected()) throw std::invalid_argument("lift: K must be connected");
  if (levels <= 0) levels = k.size();
  const int n = g.size();
  const int a = f[u];
  const int am1 = (a - 1 + n) % n;

  // Levels along a BFS spanning tree: each tree step contributes the
  // winding increment of its image step.
  std::vector<int> level(k.size(), 0);
  std::vector<char> seen(k.size(), 0);
  std::deque<int> queue{u};
  seen[u] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : k.undirected_neighbors(v)) {
      if (seen[w]) continue;
      seen[w] = 1;
      int delta = 0;
      if (f[v] == am1 && f[w] == a) delta = 1;
      if (f[v] == a && f[w] == am1) delta = -1;
      level[w] = level[v] + delta;
      queue.push_back(w);
    }
  }

  LiftResult result;
  result.window = cover_window(g, a, levels);
  result.assignment.resize(k.size());
  for (int v = 0; v < k.size(); ++v) {
    if (level[v] < -levels || level[v] > levels)
      throw std::invalid_argument("lift: level bound too small for this instance");
    result.assignment[v] = result.window.position_of(f[v], level[v]);
  }

  for (int v = 0; v < k.size(); ++v)
    for (int w = 0; w < k.size(); ++w)
      if (k.arc(v, w) && !result.window.path.arc(result.assignment[v], result.assignment[w])) {
        result.ok = false;
        result.bad_arc = {v, w};
        return result;
      }
  result.ok = true;
  return result;
}

bool surjective_product_onto_cycle(std::span<const Word> qs, const CycleId& g) {
  const auto targets = induced_subpaths(g, g.girth - 1);
  std::set<Word> distinct(targets.begin(), targets.end());
  for (const Word& p : distinct)
    if (surjective_product_onto_path(qs, p)) return true;
  return false;
}

}  // namespace rcycle

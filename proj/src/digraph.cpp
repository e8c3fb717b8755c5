#include "rcycle/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rcycle {

Digraph::Digraph(int n) : n_(n), words_((n + 63) / 64) {
  if (n <= 0) throw std::invalid_argument("Digraph: vertex count must be positive");
  if (n > kMaxDigraphVertices)
    throw std::invalid_argument("Digraph: " + std::to_string(n) + " vertices exceeds the dense-bitset cap");
  out_.assign(static_cast<std::size_t>(n_) * words_, 0);
  in_.assign(static_cast<std::size_t>(n_) * words_, 0);
  for (int v = 0; v < n_; ++v) add_arc(v, v);  // all digraphs here are reflexive
}

void Digraph::add_arc(int u, int v) {
  out_[static_cast<std::size_t>(u) * words_ + v / 64] |= std::uint64_t(1) << (v % 64);
  in_[static_cast<std::size_t>(v) * words_ + u / 64] |= std::uint64_t(1) << (u % 64);
}

std::vector<int> Digraph::undirected_neighbors(int u) const {
  std::vector<int> out;
  for (int v = 0; v < n_; ++v)
    if (v != u && (arc(u, v) || arc(v, u))) out.push_back(v);
  return out;
}

bool Digraph::connected() const {
  if (n_ == 0) return true;
  std::vector<char> seen(n_, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : undirected_neighbors(u))
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == n_;
}

Digraph path_of_word(const Word& w) {
  Digraph g(static_cast<int>(w.size()) + 1);
  for (std::size_t i = 1; i <= w.size(); ++i) {
    const Symbol s = w[i - 1];
    if (s == Symbol::Plus || s == Symbol::Star) g.add_arc(static_cast<int>(i) - 1, static_cast<int>(i));
    if (s == Symbol::Minus || s == Symbol::Star) g.add_arc(static_cast<int>(i), static_cast<int>(i) - 1);
  }
  return g;
}

Word word_of_path(const Digraph& p) {
  const int n = p.size();
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      const bool adjacent_positions = (u - v == 1) || (v - u == 1);
      if (p.arc(u, v) && !adjacent_positions)
        throw std::invalid_argument("word_of_path: input is not a path in line order");
    }
  Word w;
  for (int i = 1; i < n; ++i) {
    const bool up = p.arc(i - 1, i), down = p.arc(i, i - 1);
    if (up && down)
      w.letters.push_back(Symbol::Star);
    else if (up)
      w.letters.push_back(Symbol::Plus);
    else if (down)
      w.letters.push_back(Symbol::Minus);
    else
      throw std::invalid_argument("word_of_path: vertices " + std::to_string(i - 1) + " and " +
                                  std::to_string(i) + " are not adjacent");
  }
  return w;
}

Digraph cycle_of_word(const Word& w) {
  const int n = static_cast<int>(w.size());
  if (n < 3) throw std::invalid_argument("cycle_of_word: need at least 3 letters");
  Digraph g(n);
  for (int i = 1; i <= n; ++i) {
    const Symbol s = w[i - 1];
    const int a = (i - 1) % n, b = i % n;
    if (s == Symbol::Plus || s == Symbol::Star) g.add_arc(a, b);
    if (s == Symbol::Minus || s == Symbol::Star) g.add_arc(b, a);
  }
  return g;
}

long long MixedRadix::total() const {
  long long t = 1;
  for (int r : radix) t *= r;
  return t;
}

int MixedRadix::encode(std::span<const int> digits) const {
  long long code = 0;
  for (std::size_t i = 0; i < radix.size(); ++i) code = code * radix[i] + digits[i];
  return static_cast<int>(code);
}

std::vector<int> MixedRadix::decode(int code) const {
  std::vector<int> digits(radix.size());
  for (std::size_t i = radix.size(); i > 0; --i) {
    digits[i - 1] = code % radix[i - 1];
    code /= radix[i - 1];
  }
  return digits;
}

Digraph product(std::span<const Digraph> factors) {
  if (factors.empty()) throw std::invalid_argument("product: need at least one factor");
  MixedRadix mr;
  for (const Digraph& f : factors) mr.radix.push_back(f.size());
  const long long total = mr.total();
  if (total > kMaxDigraphVertices)
    throw std::invalid_argument("product: " + std::to_string(total) + " vertices exceeds the dense-bitset cap");
  Digraph g(static_cast<int>(total));
  const int n = g.size();
  std::vector<std::vector<int>> digits(n);
  for (int v = 0; v < n; ++v) digits[v] = mr.decode(v);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      bool ok = true;
      for (std::size_t i = 0; i < factors.size() && ok; ++i)
        ok = factors[i].arc(digits[u][i], digits[v][i]);
      if (ok) g.add_arc(u, v);
    }
  return g;
}

namespace {

Word rotate(const Word& w, int by) {
  const int n = static_cast<int>(w.size());
  Word out;
  out.letters.reserve(n);
  for (int i = 0; i < n; ++i) out.letters.push_back(w[(by + i) % n]);
  return out;
}

}  // namespace

CycleId canonical_cycle(const Word& w) {
  const int n = static_cast<int>(w.size());
  if (n < 3) throw std::invalid_argument("canonical_cycle: need at least 3 letters");
  Word best = w;
  const Word d = dual(w);
  for (int r = 0; r < n; ++r) {
    best = std::min(best, rotate(w, r));
    best = std::min(best, rotate(d, r));
  }
  return CycleId{best, n};
}

std::vector<CycleId> enumerate_cycles(int n) {
  if (n < 3) throw std::invalid_argument("enumerate_cycles: girth must be at least 3");
  std::vector<CycleId> out;
  Word w{std::vector<Symbol>(n, Symbol::Star)};
  // Odometer over all 3^n words; keep exactly the self-canonical ones so
  // each dihedral orbit appears once, already in lexicographic order.
  while (true) {
    if (canonical_cycle(w).canonical_word == w) out.push_back(CycleId{w, n});
    int i = n - 1;
    while (i >= 0 && w.letters[i] == Symbol::Minus) w.letters[i--] = Symbol::Star;
    if (i < 0) break;
    w.letters[i] = static_cast<Symbol>(static_cast<int>(w.letters[i]) + 1);
  }
  return out;
}

std::vector<Word> induced_subpaths(const CycleId& c, int len) {
  const int n = c.girth;
  if (len < 1 || len >= n)
    throw std::invalid_argument("induced_subpaths: length must be between 1 and girth-1");
  std::vector<Word> out;
  out.reserve(2 * n);
  for (int s = 0; s < n; ++s) {
    Word w;
    w.letters.reserve(len);
    for (int i = 0; i < len; ++i) w.letters.push_back(c.canonical_word[(s + i) % n]);
    out.push_back(dual(w));
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> automorphisms(const Digraph& g) {
  const int n = g.size();
  if (n < 3 || !g.connected())
    throw std::invalid_argument("automorphisms: input is not a cycle digraph");
  for (int v = 0; v < n; ++v)
    if (g.undirected_neighbors(v).size() != 2)
      throw std::invalid_argument("automorphisms: input is not a cycle digraph");

  auto preserves = [&](const std::vector<int>& p) {
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (g.arc(u, v) != g.arc(p[u], p[v])) return false;
    return true;
  };

  // Walk the cycle once to recover the vertex order, then test the 2n
  // dihedral candidates expressed in that order.
  std::vector<int> order{0, g.undirected_neighbors(0)[0]};
  while (static_cast<int>(order.size()) < n) {
    const auto nb = g.undirected_neighbors(order.back());
    order.push_back(nb[0] == order[order.size() - 2] ? nb[1] : nb[0]);
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  std::vector<std::vector<int>> out;
  for (int shift = 0; shift < n; ++shift)
    for (int refl = 0; refl < 2; ++refl) {
      std::vector<int> p(n);
      for (int v = 0; v < n; ++v) {
        const int i = pos[v];
        const int j = refl ? (shift - i % n + 2 * n) % n : (i + shift) % n;
        p[v] = order[j];
      }
      if (preserves(p)) out.push_back(std::move(p));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Backtracking enumeration of induced embeddings, placing H's vertices in a
// connectivity-friendly order and checking both arc directions against every
// placed vertex.
void embed_rec(const Digraph& h, const Digraph& g, const std::vector<int>& order, std::size_t depth,
               std::vector<int>& map, std::vector<char>& used, std::vector<std::vector<int>>& out) {
  if (depth == order.size()) {
    out.push_back(map);
    return;
  }
  const int hu = order[depth];
  for (int gv = 0; gv < g.size(); ++gv) {
    if (used[gv]) continue;
    bool ok = true;
    for (std::size_t d = 0; d < depth && ok; ++d) {
      const int hv = order[d];
      ok = (h.arc(hu, hv) == g.arc(gv, map[hv])) && (h.arc(hv, hu) == g.arc(map[hv], gv));
    }
    if (!ok) continue;
    map[hu] = gv;
    used[gv] = 1;
    embed_rec(h, g, order, depth + 1, map, used, out);
    used[gv] = 0;
    map[hu] = -1;
  }
}

}  // namespace

std::vector<std::vector<int>> find_embeddings(const Digraph& h, const Digraph& g) {
  if (h.size() > g.size()) return {};
  // BFS order over H so each new vertex is adjacent to a placed one when
  // possible.
  std::vector<int> order;
  std::vector<char> seen(h.size(), 0);
  for (int root = 0; root < h.size(); ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    order.push_back(root);
    for (std::size_t head = order.size() - 1; head < order.size(); ++head)
      for (int v : h.undirected_neighbors(order[head]))
        if (!seen[v]) {
          seen[v] = 1;
          order.push_back(v);
        }
  }
  std::vector<int> map(h.size(), -1);
  std::vector<char> used(g.size(), 0);
  std::vector<std::vector<int>> out;
  embed_rec(h, g, order, 0, map, used, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_dot(const Digraph& g, const DotOptions& opts) {
  std::ostringstream os;
  os << "digraph {\n";
  for (int v = 0; v < g.size(); ++v) os << "  " << v << ";\n";
  for (int u = 0; u < g.size(); ++u)
    for (int v = 0; v < g.size(); ++v) {
      if (u == v) {
        if (opts.show_loops && g.arc(u, v)) os << "  " << u << " -> " << u << ";\n";
        continue;
      }
      if (!g.arc(u, v)) continue;
      if (opts.collapse_symmetric && g.arc(v, u)) {
        if (u < v) os << "  " << u << " -> " << v << " [dir=both];\n";
        continue;
      }
      os << "  " << u << " -> " << v << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace rcycle

#include "rcycle/word.hpp"

#include <algorithm>
#include <set>

namespace rcycle {

char to_char(Symbol s) {
  switch (s) {
    case Symbol::Star: return '*';
    case Symbol::Plus: return '+';
    case Symbol::Minus: return '-';
  }
  return '?';
}

std::optional<Symbol> symbol_from_char(char c) {
  switch (c) {
    case '*': return Symbol::Star;
    case '+': return Symbol::Plus;
    case '-': return Symbol::Minus;
    default: return std::nullopt;
  }
}

Word Word::parse(std::string_view text) {
  Word w;
  w.letters.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto s = symbol_from_char(text[i]);
    if (!s)
      throw WordParseError("invalid word character '" + std::string(1, text[i]) +
                               "' at position " + std::to_string(i),
                           i);
    w.letters.push_back(*s);
  }
  return w;
}

std::string Word::str() const {
  std::string out;
  out.reserve(letters.size());
  for (Symbol s : letters) out.push_back(to_char(s));
  return out;
}

Word concat(const Word& x, const Word& y) {
  Word out = x;
  out.letters.insert(out.letters.end(), y.letters.begin(), y.letters.end());
  return out;
}

Word power(const Word& x, std::size_t n) {
  Word out;
  out.letters.reserve(x.size() * n);
  for (std::size_t i = 0; i < n; ++i)
    out.letters.insert(out.letters.end(), x.letters.begin(), x.letters.end());
  return out;
}

Word dual(const Word& w) {
  Word out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(dual(*it));
  return out;
}

bool is_self_dual(const Word& w) { return dual(w) == w; }

Word strip_stars(const Word& x) {
  Word out;
  for (Symbol s : x.letters)
    if (s != Symbol::Star) out.letters.push_back(s);
  return out;
}

int height(const Word& w) {
  int h = 0;
  for (Symbol s : w.letters) {
    if (s == Symbol::Plus) ++h;
    if (s == Symbol::Minus) --h;
  }
  return h;
}

bool is_subword(const Word& x, const Word& y) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < y.size() && i < x.size(); ++j)
    if (y[j] == x[i]) ++i;
  return i == x.size();
}

namespace {

// One DP row holds a bit per vertex of P(U).  Letter j of U (1-based)
// governs the vertex pair (j-1, j).

struct LeqMasks {
  // up[s]: bit j set when the transition j -> j+1 is legal on letter s,
  // stored at bit j+1 so the shifted row can be masked directly.
  // down[s]: bit j set when j -> j-1 is legal on letter s.
  std::vector<std::uint64_t> up[3], down[3];
  int words;

  explicit LeqMasks(const Word& u) {
    const std::size_t bits = u.size() + 1;
    words = static_cast<int>((bits + 63) / 64);
    for (int s = 0; s < 3; ++s) {
      up[s].assign(words, 0);
      down[s].assign(words, 0);
    }
    auto set = [&](std::vector<std::uint64_t>& m, std::size_t b) {
      m[b / 64] |= std::uint64_t(1) << (b % 64);
    };
    for (std::size_t j = 1; j <= u.size(); ++j) {
      const Symbol letter = u[j - 1];
      // Moving up across letter j needs arc (j-1, j); moving down needs
      // arc (j, j-1).  A Star consumes both arcs at once.
      const bool arc_up = letter == Symbol::Plus || letter == Symbol::Star;
      const bool arc_down = letter == Symbol::Minus || letter == Symbol::Star;
      if (arc_up) set(up[static_cast<int>(Symbol::Plus)], j);
      if (arc_down) set(up[static_cast<int>(Symbol::Minus)], j);
      if (letter == Symbol::Star) set(up[static_cast<int>(Symbol::Star)], j);
      if (arc_down) set(down[static_cast<int>(Symbol::Plus)], j);
      if (arc_up) set(down[static_cast<int>(Symbol::Minus)], j);
      if (letter == Symbol::Star) set(down[static_cast<int>(Symbol::Star)], j);
    }
  }

  void step(std::vector<std::uint64_t>& row, Symbol v, bool allow_down) const {
    const int s = static_cast<int>(v);
    std::uint64_t carry_up = 0, carry_down = 0;
    std::vector<std::uint64_t> next(row);
    for (int w = 0; w < words; ++w) {
      const std::uint64_t shifted_up = (row[w] << 1) | carry_up;
      carry_up = row[w] >> 63;
      next[w] |= shifted_up & up[s][w];
    }
    if (allow_down) {
      for (int w = words - 1; w >= 0; --w) {
        const std::uint64_t src = row[w] & down[s][w];
        next[w] |= (src >> 1) | (carry_down << 63);
        carry_down = src & 1;
      }
    }
    row.swap(next);
  }
};

bool bit_test(const std::vector<std::uint64_t>& row, std::size_t b) {
  return (row[b / 64] >> (b % 64)) & 1;
}

}  // namespace

bool word_leq(const Word& u, const Word& v) {
  if (u.size() > v.size()) return false;
  LeqMasks masks(u);
  std::vector<std::uint64_t> row(masks.words, 0);
  row[0] = 1;
  for (Symbol s : v.letters) masks.step(row, s, /*allow_down=*/true);
  return bit_test(row, u.size());
}

std::optional<std::vector<int>> word_leq_witness(const Word& u, const Word& v) {
  if (u.size() > v.size()) return std::nullopt;
  // Restricting the DP to stay/up moves searches directly for a monotone
  // witness; by the utilities lemma one exists whenever any witness does
  // (the property suite cross-checks this against word_leq).
  LeqMasks masks(u);
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(v.size() + 1);
  std::vector<std::uint64_t> row(masks.words, 0);
  row[0] = 1;
  rows.push_back(row);
  for (Symbol s : v.letters) {
    masks.step(row, s, /*allow_down=*/false);
    rows.push_back(row);
  }
  if (!bit_test(rows.back(), u.size())) return std::nullopt;
  std::vector<int> map(v.size() + 1);
  int j = static_cast<int>(u.size());
  map[v.size()] = j;
  for (std::size_t i = v.size(); i > 0; --i) {
    if (bit_test(rows[i - 1], j)) {
      // stay: always a legal move thanks to loops
    } else {
      --j;  // the up move into j was taken while consuming letter i of V
    }
    map[i - 1] = j;
  }
  return map;
}

std::vector<Word> shuffles(const Word& x, const Word& y) {
  if (x.empty() || y.empty())
    throw std::invalid_argument("shuffles: input words must be non-empty");
  const std::size_t n = x.size() + y.size();
  if (n > 14) throw std::length_error("shuffles: combined length too large to materialize");
  // Straight from the definition: all words of the right length containing
  // X and Y as subwords, with the boundary symbols constrained.  Subword
  // occurrences may overlap, so this is a superset of the plain
  // interleavings (they coincide when X and Y share no letters to overlap
  // on, e.g. a star block against a star-free word).
  std::vector<Word> out;
  std::vector<Symbol> buf(n, Symbol::Star);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n) {
      Word w{std::vector<Symbol>(buf)};
      if (is_subword(x, w) && is_subword(y, w)) out.push_back(std::move(w));
      return;
    }
    for (Symbol s : {Symbol::Star, Symbol::Plus, Symbol::Minus}) {
      if (pos == 0 && s != x[0]) continue;
      if (pos == n - 1 && s != y[y.size() - 1]) continue;
      buf[pos] = s;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rcycle

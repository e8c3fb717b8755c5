#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rcycle {

// Letters of the path alphabet.  The enum order is the canonicalization
// order '*' < '+' < '-', so sequences of Symbol compare lexicographically
// the way cycle canonical forms require.
enum class Symbol : std::uint8_t { Star = 0, Plus = 1, Minus = 2 };

constexpr Symbol dual(Symbol s) {
  return s == Symbol::Plus ? Symbol::Minus : s == Symbol::Minus ? Symbol::Plus : Symbol::Star;
}

// Order on symbols: Star lies below Plus and Minus; Plus and Minus are
// incomparable.
constexpr bool symbol_leq(Symbol a, Symbol b) { return a == b || a == Symbol::Star; }

constexpr bool symbols_comparable(Symbol a, Symbol b) {
  return symbol_leq(a, b) || symbol_leq(b, a);
}

char to_char(Symbol s);
std::optional<Symbol> symbol_from_char(char c);

struct WordParseError : std::runtime_error {
  std::size_t position;  // offset of the offending character
  WordParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), position(pos) {}
};

// A finite word over {+,-,*}; the empty word is epsilon.
struct Word {
  std::vector<Symbol> letters;

  Word() = default;
  explicit Word(std::vector<Symbol> ls) : letters(std::move(ls)) {}

  // Parses the text syntax: one character per letter, epsilon = "".
  static Word parse(std::string_view text);

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  Symbol operator[](std::size_t i) const { return letters[i]; }
  std::string str() const;

  friend auto operator<=>(const Word&, const Word&) = default;
};

Word concat(const Word& x, const Word& y);
inline Word operator+(const Word& x, const Word& y) { return concat(x, y); }
Word power(const Word& x, std::size_t n);
Word dual(const Word& w);
bool is_self_dual(const Word& w);

// The subword of all non-Star letters, in order.
Word strip_stars(const Word& x);

// Number of Plus letters minus number of Minus letters.
int height(const Word& w);

bool is_subword(const Word& x, const Word& y);

// Decides U <= V: there is an end-point preserving homomorphism from P(V)
// onto P(U).  Bitset DP over (position consumed in V, vertex of P(U)); a
// letter of V moves the tracked vertex by at most one, loops make staying
// always legal, and surjectivity is automatic from endpoint preservation.
bool word_leq(const Word& u, const Word& v);

// A monotone end-point preserving map from P(V) onto P(U) when U <= V,
// empty otherwise.  Entry i is the image of vertex i of P(V).
std::optional<std::vector<int>> word_leq_witness(const Word& u, const Word& v);

// <X,Y>: all words of length |X|+|Y| that contain X and Y as subwords,
// start with the first symbol of X and end with the last symbol of Y.
// Materialized eagerly; inputs must be non-empty.
std::vector<Word> shuffles(const Word& x, const Word& y);

}  // namespace rcycle

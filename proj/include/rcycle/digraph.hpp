#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rcycle/word.hpp"

namespace rcycle {

// Hard cap on explicit digraph sizes; everything in this project is desk
// scale and the adjacency matrices are dense bitsets.
inline constexpr int kMaxDigraphVertices = 1 << 13;

// A finite reflexive digraph with dense adjacency bitsets (rows kept in
// both directions so propagation loops can scan in-neighborhoods too).
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n);

  int size() const { return n_; }
  int row_words() const { return words_; }

  bool arc(int u, int v) const {
    return (out_[static_cast<std::size_t>(u) * words_ + v / 64] >> (v % 64)) & 1;
  }
  void add_arc(int u, int v);
  bool symmetric_edge(int u, int v) const { return arc(u, v) && arc(v, u); }

  std::span<const std::uint64_t> out_row(int u) const {
    return {out_.data() + static_cast<std::size_t>(u) * words_, static_cast<std::size_t>(words_)};
  }
  std::span<const std::uint64_t> in_row(int v) const {
    return {in_.data() + static_cast<std::size_t>(v) * words_, static_cast<std::size_t>(words_)};
  }

  std::vector<int> undirected_neighbors(int u) const;  // excludes u itself
  bool connected() const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }

 private:
  int n_ = 0, words_ = 0;
  std::vector<std::uint64_t> out_, in_;
};

// P(W): vertices 0..|W|, letter i (1-based) governing the pair (i-1, i).
Digraph path_of_word(const Word& w);

// Inverse of path_of_word for path digraphs whose vertices are in line
// order; throws std::invalid_argument otherwise.
Word word_of_path(const Digraph& p);

// C(W): vertices 0..|W|-1, letter i governing (i-1 mod n, i mod n).
// Requires |W| >= 3.
Digraph cycle_of_word(const Word& w);

// Product of relational structures; vertices are mixed-radix encoded with
// factor 0 most significant.
Digraph product(std::span<const Digraph> factors);

struct MixedRadix {
  std::vector<int> radix;
  long long total() const;
  int encode(std::span<const int> digits) const;
  std::vector<int> decode(int code) const;
};

// A cycle up to dihedral symmetry: the lexicographic minimum over all
// rotations of W and of dual(W), letter order '*' < '+' < '-'.
struct CycleId {
  Word canonical_word;
  int girth = 0;

  friend auto operator<=>(const CycleId&, const CycleId&) = default;
};

CycleId canonical_cycle(const Word& w);

// Every reflexive n-cycle exactly once, sorted by canonical word.
std::vector<CycleId> enumerate_cycles(int n);

// Words of the subpaths of length len sitting inside the cycle: the length
// len cyclic substrings of the cycle word, each read in both traversal
// directions (2n words, sorted, possibly with repeats; the set is closed
// under dual).  For len <= n-2 these are the induced vertex-window paths,
// for len = n-1 the edge-deleted spanning paths the path-condition
// theorems quantify over.  Requires 1 <= len <= girth-1.
std::vector<Word> induced_subpaths(const CycleId& c, int len);

// All arc-preserving bijections of a cycle digraph, found by checking the
// 2n dihedral candidates.  Throws for non-cycle input.
std::vector<std::vector<int>> automorphisms(const Digraph& g);

// All injective maps from H into G whose image is an induced subdigraph
// isomorphic to H.
std::vector<std::vector<int>> find_embeddings(const Digraph& h, const Digraph& g);

struct DotOptions {
  bool show_loops = false;
  bool collapse_symmetric = true;  // render symmetric pairs once with dir=both
};
std::string to_dot(const Digraph& g, const DotOptions& opts = {});

}  // namespace rcycle

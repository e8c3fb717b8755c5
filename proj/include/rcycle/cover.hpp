#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rcycle/digraph.hpp"
#include "rcycle/word.hpp"

namespace rcycle {

// A walk in a digraph: consecutive vertices are equal or joined by an arc
// in at least one direction.
struct Walk {
  std::vector<int> vertices;
};

bool is_walk(const Digraph& g, const Walk& w);

// Signed number of traversals of the gate pair (a-1, a): +1 per step
// (a-1) -> a, -1 per step a -> (a-1).
int winding_number(const Digraph& g, int a, const Walk& w);

// The universal covering path of an n-cycle restricted to levels -L..L,
// relabeled so vertex p of the window digraph is the p-th vertex along the
// path.  base_vertex[p] is the projection pi.
struct CoverWindow {
  Digraph path;
  std::vector<int> base_vertex;
  int gate = 0;    // the unwound edge is {gate-1, gate}
  int levels = 0;  // L
  int base_n = 0;

  int level_of(int position) const { return position / base_n - levels; }
  int position_of(int base, int level) const {
    return (level + levels) * base_n + ((base - gate) % base_n + base_n) % base_n;
  }
};

CoverWindow cover_window(const Digraph& g, int a, int levels);

struct LiftResult {
  bool ok = false;
  CoverWindow window;
  std::vector<int> assignment;          // window position per K vertex, when ok
  std::pair<int, int> bad_arc{-1, -1};  // a K arc whose lift fails, when !ok
};

// Lifts a homomorphism f : K -> G through the covering projection by
// assigning levels along a BFS spanning tree from u, then verifying arc
// preservation.  Verification failing (bad_arc set) signals that K carries
// a loop of nonzero winding, so no lift exists.  K must be connected.
// levels = 0 uses the safe default |K| (every excursion fits).
LiftResult lift(const Digraph& k, const std::vector<int>& f, int u, const Digraph& g,
                int levels = 0);

// Whether the product of the paths P(Q_i) maps onto the cycle: by the
// onto-path reduction this holds exactly when some length n-1 subpath of
// the cycle receives such a surjection.
bool surjective_product_onto_cycle(std::span<const Word> qs, const CycleId& g);

}  // namespace rcycle

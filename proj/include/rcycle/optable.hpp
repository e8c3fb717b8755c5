#pragma once

#include <optional>
#include <span>
#include <vector>

namespace rcycle {

// A k-ary operation on {0..domain-1}, stored densely.  Argument tuples are
// mixed-radix encoded with coordinate 0 most significant, so the table is
// in lexicographic tuple order.
struct OperationTable {
  int arity = 0;
  int domain = 0;
  std::vector<int> table;

  static OperationTable empty(int arity, int domain);

  long long cell_count() const;
  int index(std::span<const int> args) const;
  std::vector<int> args_of(int index) const;
  int apply(std::span<const int> args) const { return table[index(args)]; }
};

bool is_surjective(const OperationTable& f);

// When f depends on at most one coordinate, the witnessing coordinate
// (0-based) and the induced unary table; empty otherwise.
std::optional<std::pair<int, std::vector<int>>> is_essentially_unary(const OperationTable& f);

}  // namespace rcycle

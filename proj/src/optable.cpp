#include "rcycle/optable.hpp"

#include <stdexcept>

namespace rcycle {

OperationTable OperationTable::empty(int arity, int domain) {
  OperationTable f;
  f.arity = arity;
  f.domain = domain;
  long long cells = 1;
  for (int i = 0; i < arity; ++i) {
    cells *= domain;
    if (cells > (1LL << 26)) throw std::invalid_argument("OperationTable: table too large");
  }
  f.table.assign(static_cast<std::size_t>(cells), 0);
  return f;
}

long long OperationTable::cell_count() const { return static_cast<long long>(table.size()); }

int OperationTable::index(std::span<const int> args) const {
  long long idx = 0;
  for (int a : args) idx = idx * domain + a;
  return static_cast<int>(idx);
}

std::vector<int> OperationTable::args_of(int index) const {
  std::vector<int> args(arity);
  for (int i = arity - 1; i >= 0; --i) {
    args[i] = index % domain;
    index /= domain;
  }
  return args;
}

bool is_surjective(const OperationTable& f) {
  std::vector<char> hit(f.domain, 0);
  int count = 0;
  for (int v : f.table)
    if (!hit[v]) {
      hit[v] = 1;
      if (++count == f.domain) return true;
    }
  return count == f.domain;
}

std::optional<std::pair<int, std::vector<int>>> is_essentially_unary(const OperationTable& f) {
  const long long cells = f.cell_count();
  for (int coord = 0; coord < f.arity; ++coord) {
    // Stride arithmetic: coordinate `coord` changes every `stride` cells.
    long long stride = 1;
    for (int i = coord + 1; i < f.arity; ++i) stride *= f.domain;
    std::vector<int> unary(f.domain, -1);
    bool ok = true;
    for (long long idx = 0; idx < cells && ok; ++idx) {
      const int digit = static_cast<int>((idx / stride) % f.domain);
      if (unary[digit] == -1)
        unary[digit] = f.table[static_cast<std::size_t>(idx)];
      else
        ok = unary[digit] == f.table[static_cast<std::size_t>(idx)];
    }
    if (ok) return std::make_pair(coord, std::move(unary));
  }
  return std::nullopt;
}

}  // namespace rcycle

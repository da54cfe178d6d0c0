#pragma once

// Straight-line serial versions of the parallel kernels: full Cartesian
// products, no pruning, no lookup tricks. Kept for testing and benchmarking.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "egyptsum/group.hpp"
#include "egyptsum/parallel_kernels.hpp"

namespace egyptsum::reference {

/// Calls visit(tuple) for every tuple of the product, odometer order.
template <class E, class Visit>
void for_each_tuple(const std::vector<const std::vector<E>*>& sets, Visit&& visit) {
  for (const auto* s : sets) {
    if (s->empty()) return;
  }
  std::vector<std::size_t> idx(sets.size(), 0);
  std::vector<const E*> tuple(sets.size());
  while (true) {
    for (std::size_t i = 0; i < sets.size(); ++i) tuple[i] = &(*sets[i])[idx[i]];
    visit(tuple);
    std::size_t pos = sets.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < sets[pos]->size()) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
  }
}

template <OrderedGroup G>
kernels::Points<G> naive_padded_sums(const std::vector<std::vector<typename G::element_type>>& padded) {
  using E = typename G::element_type;
  std::vector<const std::vector<E>*> sets;
  for (const auto& p : padded) sets.push_back(&p);
  kernels::Points<G> all;
  for_each_tuple<E>(sets, [&](const std::vector<const E*>& tuple) {
    E sum = G::zero();
    unsigned zeros = 0;
    for (const E* t : tuple) {
      sum = G::add(sum, *t);
      if (G::equals(*t, G::zero())) ++zeros;
    }
    all.push_back({std::move(sum), zeros});
  });
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (G::canonical_less(a.value, b.value)) return true;
    if (G::canonical_less(b.value, a.value)) return false;
    return a.slack > b.slack;
  });
  kernels::Points<G> out;
  for (auto& p : all) {
    if (out.empty() || !G::equals(out.back().value, p.value)) out.push_back(std::move(p));
  }
  return out;
}

template <OrderedGroup G>
std::uint64_t naive_count(const std::vector<const std::vector<typename G::element_type>*>& truncs,
                          const typename G::element_type& target) {
  using E = typename G::element_type;
  std::uint64_t count = 0;
  for_each_tuple<E>(truncs, [&](const std::vector<const E*>& tuple) {
    E sum = G::zero();
    for (const E* t : tuple) sum = G::add(sum, *t);
    if (G::equals(sum, target)) ++count;
  });
  return count;
}

}  // namespace egyptsum::reference

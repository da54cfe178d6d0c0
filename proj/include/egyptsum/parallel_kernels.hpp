#pragma once

// OpenMP kernels behind the sumset engine. Each has a serial counterpart in
// serial_reference.hpp that the tests and the benchmark compare against.
// Results never depend on the thread count: every kernel either reduces a
// count or returns a canonically sorted list.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "egyptsum/errors.hpp"
#include "egyptsum/group.hpp"

namespace egyptsum {

/// A point of a finite net together with its slack: the largest number of
/// zero pads over the 0-padded sums that produce it. Elements of E_n whose
/// dropped small terms project onto this point lie within slack * 2^-k of it.
template <class E>
struct NetPoint {
  E value;
  unsigned slack = 0;
};

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace kernels {

template <OrderedGroup G>
using Points = std::vector<NetPoint<typename G::element_type>>;

template <OrderedGroup G>
bool canonical_equal(const typename G::element_type& a, const typename G::element_type& b) {
  return G::equals(a, b);
}

/// Merge two canonically sorted duplicate-free point lists, keeping the
/// larger slack on collisions.
template <OrderedGroup G>
Points<G> merge_points(const Points<G>& a, const Points<G>& b) {
  Points<G> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && G::canonical_less(a[i].value, b[j].value))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || G::canonical_less(b[j].value, a[i].value)) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].value, std::max(a[i].slack, b[j].slack)});
      ++i;
      ++j;
    }
  }
  return out;
}

/// base + {shifts} by a heap merge of the translated copies of `base`.
/// Right translation preserves the order, so each copy is already sorted.
template <OrderedGroup G>
Points<G> shift_merge(const Points<G>& base, std::span<const typename G::element_type> shifts) {
  using E = typename G::element_type;
  struct Cursor {
    E value;
    std::size_t shift;
    std::size_t pos;
  };
  const auto heap_less = [](const Cursor& a, const Cursor& b) {
    return G::canonical_less(b.value, a.value);
  };
  std::vector<bool> zero_shift(shifts.size());
  std::vector<Cursor> heap;
  heap.reserve(shifts.size());
  for (std::size_t s = 0; s < shifts.size(); ++s) {
    zero_shift[s] = G::equals(shifts[s], G::zero());
    if (!base.empty()) heap.push_back({G::add(base[0].value, shifts[s]), s, 0});
  }
  std::make_heap(heap.begin(), heap.end(), heap_less);

  Points<G> out;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), heap_less);
    Cursor& cur = heap.back();
    const unsigned slack = base[cur.pos].slack + (zero_shift[cur.shift] ? 1u : 0u);
    if (!out.empty() && G::equals(out.back().value, cur.value)) {
      out.back().slack = std::max(out.back().slack, slack);
    } else {
      out.push_back({cur.value, slack});
    }
    if (++cur.pos < base.size()) {
      cur.value = G::add(base[cur.pos].value, shifts[cur.shift]);
      std::push_heap(heap.begin(), heap.end(), heap_less);
    } else {
      heap.pop_back();
    }
  }
  return out;
}

/// One Minkowski step F + T'. Shifts are split into one chunk per thread;
/// the per-chunk results are merged pairwise.
template <OrderedGroup G>
Points<G> minkowski_step(const Points<G>& base, const std::vector<typename G::element_type>& shifts) {
  const std::size_t chunks =
      std::max<std::size_t>(1, std::min<std::size_t>(shifts.size(), static_cast<std::size_t>(max_threads())));
  std::vector<Points<G>> parts(chunks);
  const std::span<const typename G::element_type> all(shifts);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const std::size_t lo = shifts.size() * c / chunks;
    const std::size_t hi = shifts.size() * (c + 1) / chunks;
    parts[c] = shift_merge<G>(base, all.subspan(lo, hi - lo));
  }
  while (parts.size() > 1) {
    std::vector<Points<G>> next((parts.size() + 1) / 2);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(next.size()); ++i) {
      if (2 * i + 1 < static_cast<std::int64_t>(parts.size())) {
        next[i] = merge_points<G>(parts[2 * i], parts[2 * i + 1]);
      } else {
        next[i] = std::move(parts[2 * i]);
      }
    }
    parts = std::move(next);
  }
  return std::move(parts.front());
}

/// 0-padded sums s_1 + ... + s_n with s_i drawn from `padded[i]`, each list
/// sorted canonically and containing 0.
template <OrderedGroup G>
Points<G> build_padded_sums(const std::vector<std::vector<typename G::element_type>>& padded) {
  Points<G> current;
  for (const auto& t : padded.front()) {
    current.push_back({t, G::equals(t, G::zero()) ? 1u : 0u});
  }
  for (std::size_t i = 1; i < padded.size(); ++i) current = minkowski_step<G>(current, padded[i]);
  return current;
}

template <OrderedGroup G>
bool sorted_contains(const std::vector<typename G::element_type>& sorted,
                     const typename G::element_type& x) {
  return std::binary_search(sorted.begin(), sorted.end(), x,
                            [](const auto& a, const auto& b) { return G::canonical_less(a, b); });
}

namespace detail {

template <OrderedGroup G>
std::uint64_t count_suffix(const std::vector<const std::vector<typename G::element_type>*>& truncs,
                           std::size_t level, const typename G::element_type& partial,
                           const typename G::element_type& target) {
  if (level + 1 == truncs.size()) {
    return sorted_contains<G>(*truncs[level], left_difference<G>(partial, target)) ? 1 : 0;
  }
  std::uint64_t total = 0;
  for (const auto& a : *truncs[level]) {
    total += count_suffix<G>(truncs, level + 1, G::add(partial, a), target);
  }
  return total;
}

// Pairs (x, y) in A x B with x + y = r, for positive sorted A and B. Every
// such pair has x >= r/2 or y > r/2 (exclusively), so both halves are scanned
// over the few elements in [r/2, r).
template <OrderedGroup G>
std::uint64_t count_positive_pairs(const std::vector<typename G::element_type>& a,
                                   const std::vector<typename G::element_type>& b,
                                   const typename G::element_type& r) {
  if (!is_positive<G>(r)) return 0;
  const auto below_half = [&](const auto& x) { return less<G>(G::add(x, x), r); };
  const auto at_most_half = [&](const auto& x) { return G::compare(G::add(x, x), r) != Ordering::Greater; };
  const auto below_r = [&](const auto& x) { return less<G>(x, r); };
  std::uint64_t total = 0;
  {
    auto lo = std::partition_point(a.begin(), a.end(), below_half);
    auto hi = std::partition_point(lo, a.end(), below_r);
    for (auto it = lo; it != hi; ++it) {
      if (sorted_contains<G>(b, left_difference<G>(*it, r))) ++total;
    }
  }
  {
    auto lo = std::partition_point(b.begin(), b.end(), at_most_half);
    auto hi = std::partition_point(lo, b.end(), below_r);
    for (auto it = lo; it != hi; ++it) {
      // x + y = r  =>  x = r - y (abelian instances only reach this kernel)
      if (sorted_contains<G>(a, G::add(r, G::neg(*it)))) ++total;
    }
  }
  return total;
}

template <OrderedGroup G>
std::uint64_t count_positive_suffix(const std::vector<const std::vector<typename G::element_type>*>& truncs,
                                    std::size_t level, const typename G::element_type& partial,
                                    const typename G::element_type& target) {
  const std::size_t n = truncs.size();
  if (level + 1 == n) {
    return sorted_contains<G>(*truncs[level], left_difference<G>(partial, target)) ? 1 : 0;
  }
  if (level + 2 == n) {
    return count_positive_pairs<G>(*truncs[level], *truncs[level + 1], left_difference<G>(partial, target));
  }
  std::uint64_t total = 0;
  for (const auto& a : *truncs[level]) {
    auto next = G::add(partial, a);
    if (!less<G>(next, target)) break;  // remaining terms are positive
    total += count_positive_suffix<G>(truncs, level + 1, next, target);
  }
  return total;
}

}  // namespace detail

/// Number of tuples in T_1 x ... x T_n (sorted truncations) summing to
/// `target`. The last coordinate is solved for and looked up.
template <OrderedGroup G>
std::uint64_t count_product(const std::vector<const std::vector<typename G::element_type>*>& truncs,
                            const typename G::element_type& target) {
  if (truncs.size() == 1) return sorted_contains<G>(*truncs[0], target) ? 1 : 0;
  const auto& first = *truncs[0];
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(first.size()); ++i) {
    total += detail::count_suffix<G>(truncs, 1, first[i], target);
  }
  return total;
}

/// Same count for positive-cone truncations of a totally ordered group,
/// pruning partial sums that already reach the target and splitting the
/// last two coordinates around target/2.
template <OrderedGroup G>
std::uint64_t count_positive(const std::vector<const std::vector<typename G::element_type>*>& truncs,
                             const typename G::element_type& target) {
  const std::size_t n = truncs.size();
  if (n <= 2) return detail::count_positive_suffix<G>(truncs, 0, G::zero(), target);
  const auto& first = *truncs[0];
  const auto stop = std::partition_point(first.begin(), first.end(),
                                         [&](const auto& x) { return less<G>(x, target); });
  const auto limit = static_cast<std::int64_t>(stop - first.begin());
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total)
  for (std::int64_t i = 0; i < limit; ++i) {
    total += detail::count_positive_suffix<G>(truncs, 1, first[i], target);
  }
  return total;
}

/// Work estimates matching the two counting kernels.
inline std::uint64_t product_work(const std::vector<std::size_t>& sizes) {
  std::uint64_t w = 1;
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) w = saturating_mul(w, sizes[i]);
  return w;
}

inline std::uint64_t positive_work(const std::vector<std::size_t>& sizes) {
  if (sizes.size() < 2) return 1;
  std::uint64_t w = 1;
  for (std::size_t i = 0; i + 2 < sizes.size(); ++i) w = saturating_mul(w, sizes[i]);
  return saturating_mul(w, sizes[sizes.size() - 2] + sizes.back());
}

/// Distinct 0-padded sums lying in the closed window [lo, hi], for
/// positive-cone sets in a rational-valued group. Branches on which remaining
/// position carries a largest term: that term is at least (lo - s)/|J|, so
/// only the finitely many large candidates are scanned.
template <RationalValued G>
Points<G> window_points_positive(const std::vector<std::vector<typename G::element_type>>& padded,
                                 const Rational& lo, const Rational& hi, std::uint64_t budget) {
  using E = typename G::element_type;
  const std::size_t n = padded.size();
  std::atomic<std::uint64_t> visited{0};

  struct Search {
    const std::vector<std::vector<E>>& sets;
    std::atomic<std::uint64_t>& visited;
    std::uint64_t budget;
    bool symmetric;
    std::map<Rational, NetPoint<E>> found;

    static auto lower(const std::vector<E>& s, const Rational& bound) {
      return std::partition_point(s.begin(), s.end(), [&](const E& x) { return G::to_rational(x) < bound; });
    }
    static auto upper(const std::vector<E>& s, const Rational& bound) {
      return std::partition_point(s.begin(), s.end(), [&](const E& x) { return G::to_rational(x) <= bound; });
    }

    void record(const E& value, unsigned slack) {
      auto key = G::to_rational(value);
      auto [it, inserted] = found.try_emplace(std::move(key), NetPoint<E>{value, slack});
      if (!inserted) it->second.slack = std::max(it->second.slack, slack);
    }

    void tick() {
      if (visited.fetch_add(1, std::memory_order_relaxed) + 1 > budget) {
        throw BudgetExceeded(visited.load(), budget);
      }
    }

    // Terms are picked in nonincreasing order, each capped by the previous
    // one, so every tuple is reached through an ordering of its positions by
    // value. With identical sets the positions are also filled in index
    // order and each multiset is visited once.
    void run(std::vector<bool>& used, std::size_t remaining, const E& partial, unsigned zeros,
             const std::optional<Rational>& cap, const Rational& lo, const Rational& hi) {
      tick();
      const Rational sum = G::to_rational(partial);
      const Rational lo_rem = lo - sum;
      Rational hi_rem = hi - sum;
      if (hi_rem < 0) return;
      if (cap && *cap < hi_rem) hi_rem = *cap;
      Rational floor_bound = lo_rem / static_cast<unsigned long>(remaining);
      if (floor_bound < 0) floor_bound = 0;
      for (std::size_t j = 0; j < sets.size(); ++j) {
        if (used[j]) continue;
        const auto& s = sets[j];
        used[j] = true;
        for (auto it = lower(s, remaining == 1 ? lo_rem : floor_bound), end = upper(s, hi_rem); it != end; ++it) {
          const unsigned z = zeros + (G::equals(*it, G::zero()) ? 1u : 0u);
          if (remaining == 1) {
            record(G::add(partial, *it), z);
          } else {
            run(used, remaining - 1, G::add(partial, *it), z, G::to_rational(*it), lo, hi);
          }
        }
        used[j] = false;
        if (symmetric) break;
      }
    }
  };

  // Terms are assigned out of order, so summing them in position order
  // would need the full tuple; the shipped rational-valued groups are
  // abelian and the partial sum is order-independent.
  const bool symmetric = std::all_of(padded.begin(), padded.end(), [&](const auto& p) {
    return p.size() == padded[0].size() && std::equal(p.begin(), p.end(), padded[0].begin(), G::equals);
  });
  Search root{padded, visited, budget, symmetric, {}};
  std::vector<bool> used(n, false);
  root.run(used, n, G::zero(), 0, std::nullopt, lo, hi);

  Points<G> out;
  out.reserve(root.found.size());
  for (auto& [key, point] : root.found) out.push_back(std::move(point));
  return out;
}

/// Distance from each sample to the nearest point of a sorted point list.
template <RationalValued G>
std::vector<Rational> nearest_distances(const Points<G>& points, const std::vector<Rational>& samples) {
  std::vector<Rational> out(samples.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples.size()); ++i) {
    const Rational& x = samples[i];
    auto it = std::partition_point(points.begin(), points.end(),
                                   [&](const auto& p) { return G::to_rational(p.value) < x; });
    Rational best = -1;
    if (it != points.end()) best = G::to_rational(it->value) - x;
    if (it != points.begin()) {
      Rational d = x - G::to_rational(std::prev(it)->value);
      if (best < 0 || d < best) best = d;
    }
    out[i] = best;
  }
  return out;
}

}  // namespace kernels
}  // namespace egyptsum

#pragma once

// Decreasing sequences in infinite subsets of E_n, and the matching
// "no accumulation from below" census.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "egyptsum/errors.hpp"
#include "egyptsum/group.hpp"
#include "egyptsum/lcf0.hpp"
#include "egyptsum/sumset.hpp"

namespace egyptsum {

template <OrderedGroup G>
struct Emission {
  typename G::element_type element;
  std::vector<typename G::element_type> terms;  // left-to-right sum is `element`
};

/// Restartable single-consumer generator of distinct elements, each with a
/// representation witness. Copies restart from the beginning.
template <OrderedGroup G>
class ElementStream {
 public:
  using Generator = std::function<std::optional<Emission<G>>()>;
  using Factory = std::function<Generator()>;

  explicit ElementStream(Factory factory) : factory_(std::move(factory)), generator_(factory_()) {}

  ElementStream(const ElementStream& other) : factory_(other.factory_), generator_(factory_()) {}
  ElementStream& operator=(const ElementStream& other) {
    factory_ = other.factory_;
    generator_ = factory_();
    return *this;
  }
  ElementStream(ElementStream&&) noexcept = default;
  ElementStream& operator=(ElementStream&&) noexcept = default;

  std::optional<Emission<G>> next() { return generator_(); }
  void restart() { generator_ = factory_(); }

  /// Stream over the values of `f(1), f(2), ...`, each its own witness;
  /// stops at the first nullopt.
  static ElementStream from_sequence(std::function<std::optional<typename G::element_type>(std::uint64_t)> f) {
    return ElementStream([f]() -> Generator {
      auto index = std::make_shared<std::uint64_t>(0);
      return [f, index]() -> std::optional<Emission<G>> {
        auto value = f(++*index);
        if (!value) return std::nullopt;
        return Emission<G>{*value, {*value}};
      };
    });
  }

 private:
  Factory factory_;
  Generator generator_;
};

enum class StreamOrder { ByDenominatorSum, Lexicographic };

std::optional<StreamOrder> parse_stream_order(std::string_view name);

namespace detail {

/// Elements of one generating set indexed by height: the denominator for
/// rationals, 1 + rank in the (finite) set for discrete groups.
template <OrderedGroup G>
class HeightPool {
 public:
  using E = typename G::element_type;
  struct Item {
    E value;
    std::uint64_t height;
  };

  explicit HeightPool(Lcf0Set<G> set) : set_(std::move(set)) {}

  /// Items of height <= h, canonically sorted.
  std::vector<Item> up_to(std::uint64_t h) const {
    std::vector<Item> out;
    if constexpr (std::same_as<E, Rational>) {
      const auto& trunc = set_.truncate(resolution_for(Rational(1, static_cast<unsigned long>(h))));
      for (const auto& t : trunc) {
        if (t.get_den() <= h) out.push_back({t, t.get_den().get_ui()});
      }
    } else {
      const auto& trunc = set_.truncate(1);
      for (std::size_t i = 0; i < trunc.size() && i + 1 <= h; ++i) out.push_back({trunc[i], i + 1});
    }
    return out;
  }

  /// Largest height in a set known to be finite.
  std::optional<std::uint64_t> max_height() const {
    if (!set_.finite() && !G::capabilities.discrete) return std::nullopt;
    std::uint64_t best = 0;
    if constexpr (std::same_as<E, Rational>) {
      // Finite sets truncate cheaply at any depth; 2^-62 sits below every
      // element a config can reasonably name.
      for (const auto& t : set_.truncate(62)) {
        const auto h = t.get_den().fits_ulong_p() ? t.get_den().get_ui() : ~0UL;
        best = std::max<std::uint64_t>(best, h);
      }
    } else {
      best = set_.truncate(1).size();
    }
    return best;
  }

 private:
  Lcf0Set<G> set_;
};

template <OrderedGroup G>
class SpecStreamState {
 public:
  using E = typename G::element_type;

  SpecStreamState(const SumSpec<G>& spec, StreamOrder order) : order_(order) {
    std::optional<std::uint64_t> total = 0;
    for (const auto& s : spec.sets()) {
      pools_.emplace_back(s);
      auto h = pools_.back().max_height();
      if (h && total) {
        *total += *h;
      } else {
        total.reset();
      }
    }
    if (total) limit_ = *total;
    level_ = order_ == StreamOrder::ByDenominatorSum ? pools_.size() : 1;
  }

  std::optional<Emission<G>> next() {
    while (pending_pos_ == pending_.size()) {
      if (limit_ && level_ > *limit_) return std::nullopt;
      fill_level();
      ++level_;
    }
    return std::move(pending_[pending_pos_++]);
  }

 private:
  void fill_level() {
    pending_.clear();
    pending_pos_ = 0;
    const std::uint64_t d = level_;
    std::vector<std::vector<typename HeightPool<G>::Item>> items;
    for (const auto& p : pools_) items.push_back(p.up_to(d));
    std::vector<std::vector<E>> tuples;
    std::vector<E> current;
    collect(items, 0, 0, false, d, current, tuples);
    std::sort(tuples.begin(), tuples.end(), [](const auto& a, const auto& b) { return lexicographic_less<G>(a, b); });
    for (auto& t : tuples) {
      E value = sum_terms<G>(t);
      if (emitted_.insert(value).second) pending_.push_back({std::move(value), std::move(t)});
    }
  }

  void collect(const std::vector<std::vector<typename HeightPool<G>::Item>>& items, std::size_t pos,
               std::uint64_t height_sum, bool hit_level, std::uint64_t d, std::vector<E>& current,
               std::vector<std::vector<E>>& out) const {
    const std::size_t n = items.size();
    if (pos == n) {
      const bool keep = order_ == StreamOrder::ByDenominatorSum ? height_sum == d : hit_level;
      if (keep) out.push_back(current);
      return;
    }
    for (const auto& item : items[pos]) {
      if (order_ == StreamOrder::ByDenominatorSum && height_sum + item.height + (n - pos - 1) > d) continue;
      current.push_back(item.value);
      collect(items, pos + 1, height_sum + item.height, hit_level || item.height == d, d, current, out);
      current.pop_back();
    }
  }

  struct CanonicalLess {
    bool operator()(const E& a, const E& b) const { return G::canonical_less(a, b); }
  };

  StreamOrder order_;
  std::vector<HeightPool<G>> pools_;
  std::optional<std::uint64_t> limit_;
  std::uint64_t level_ = 1;
  std::vector<Emission<G>> pending_;
  std::size_t pending_pos_ = 0;
  std::set<E, CanonicalLess> emitted_;
};

}  // namespace detail

/// Distinct elements of E_n in a fixed order. ByDenominatorSum emits tuples
/// in order of total height (sum of denominators for rationals), ties broken
/// lexicographically on the terms; Lexicographic walks shells of equal
/// maximal height, lexicographically within a shell. Repeated values are
/// skipped, keeping the first witness.
template <OrderedGroup G>
ElementStream<G> stream_from_spec(const SumSpec<G>& spec, StreamOrder order) {
  return ElementStream<G>([spec, order]() -> typename ElementStream<G>::Generator {
    auto state = std::make_shared<detail::SpecStreamState<G>>(spec, order);
    return [state]() { return state->next(); };
  });
}

/// Emission witness check: sum and membership.
template <OrderedGroup G>
bool verify_emission(const SumSpec<G>& spec, const Emission<G>& e) {
  return verify(spec, Representation<G>{e.element, e.terms});
}

/// Sum of the terms lying outside u_k: the projection of an element onto
/// the resolution-k net of E'_n.
template <OrderedGroup G>
typename G::element_type project(const std::vector<typename G::element_type>& terms, unsigned k) {
  auto total = G::zero();
  for (const auto& t : terms) {
    if (!G::in_basis(k, t)) total = G::add(total, t);
  }
  return total;
}

template <OrderedGroup G>
struct AccumulationPoint {
  typename G::element_type point;
  unsigned resolution = 0;      // net resolution the point was snapped at
  std::size_t cluster_size = 0;  // samples in the concentrated interval
};

/// Finest resolution scanned when snapping a cluster to the net.
inline constexpr unsigned kMaxSnapResolution = 64;

/// Cluster point of a stream's samples. Draws `samples` distinct elements
/// and bisects their bounding interval `depth` times, keeping a half that
/// holds at least half of the remaining samples (left half on ties). The
/// deepest level still holding two or more samples is the cluster; its
/// members are projected onto the resolution-k net (terms inside u_k
/// dropped) and the result is the common projection at the finest k where
/// they all agree, k >= 1. Returns nullopt when the stream repeats or ends before
/// `samples` distinct elements, or when no common projection exists.
template <MetricGroup G>
std::optional<AccumulationPoint<G>> find_accumulation_point(ElementStream<G> stream, std::size_t samples,
                                                            unsigned depth) {
  using E = typename G::element_type;
  if (samples < 2) throw PreconditionError("find_accumulation_point needs at least 2 samples");
  stream.restart();

  struct Sample {
    Rational value;
    std::vector<E> terms;
  };
  std::vector<Sample> drawn;
  std::set<Rational> seen;
  while (drawn.size() < samples) {
    auto e = stream.next();
    if (!e) return std::nullopt;
    Rational v = G::to_rational(e->element);
    if (!seen.insert(v).second) return std::nullopt;
    drawn.push_back({std::move(v), std::move(e->terms)});
  }

  std::vector<std::size_t> current(drawn.size());
  for (std::size_t i = 0; i < current.size(); ++i) current[i] = i;
  Rational lo = drawn[0].value, hi = drawn[0].value;
  for (const auto& s : drawn) {
    if (s.value < lo) lo = s.value;
    if (s.value > hi) hi = s.value;
  }
  std::vector<std::size_t> cluster = current;
  for (unsigned level = 0; level < depth; ++level) {
    const Rational mid = (lo + hi) / 2;
    std::vector<std::size_t> left, right;
    for (auto i : current) (drawn[i].value <= mid ? left : right).push_back(i);
    if (2 * left.size() >= current.size()) {
      current = std::move(left);
      hi = mid;
    } else {
      current = std::move(right);
      lo = mid;
    }
    if (current.size() >= 2) cluster = current;
  }

  for (unsigned k = kMaxSnapResolution; k >= 1; --k) {
    const E first = project<G>(drawn[cluster.front()].terms, k);
    const bool agree = std::all_of(cluster.begin(), cluster.end(), [&](std::size_t i) {
      return G::equals(project<G>(drawn[i].terms, k), first);
    });
    if (agree) return AccumulationPoint<G>{first, k, cluster.size()};
  }
  return std::nullopt;
}

template <OrderedGroup G>
struct DecreasingTrace {
  typename G::element_type limit;                // g
  std::vector<typename G::element_type> terms;  // s_1 > s_2 > ... > g
  bool complete = false;                         // false: budget exhausted early
};

/// s_1 is the first emitted element above g; s_{m+1} is the first emitted
/// x with g < x < s_m. The stream restarts for every step and each step
/// scans at most `budget` emissions.
template <OrderedGroup G>
DecreasingTrace<G> extract_decreasing(ElementStream<G> stream, const typename G::element_type& g,
                                      std::size_t length, std::uint64_t budget) {
  DecreasingTrace<G> trace{g, {}, false};
  while (trace.terms.size() < length) {
    stream.restart();
    bool found = false;
    for (std::uint64_t scanned = 0; scanned < budget; ++scanned) {
      auto e = stream.next();
      if (!e) break;
      if (!less<G>(g, e->element)) continue;
      if (!trace.terms.empty() && !less<G>(e->element, trace.terms.back())) continue;
      trace.terms.push_back(std::move(e->element));
      found = true;
      break;
    }
    if (!found) return trace;
  }
  trace.complete = true;
  return trace;
}

/// Trace invariants, checkable from the trace alone.
template <OrderedGroup G>
bool is_valid_trace(const DecreasingTrace<G>& trace) {
  for (std::size_t i = 0; i < trace.terms.size(); ++i) {
    if (!less<G>(trace.limit, trace.terms[i])) return false;
    if (i > 0 && !less<G>(trace.terms[i], trace.terms[i - 1])) return false;
  }
  return true;
}

enum class Side { Below, Above };

/// For each resolution k, the number of net points of E'_n in (g - eta, g)
/// (or (g, g + eta) for Side::Above). E_n admits no strictly increasing
/// sequence, so below g these counts settle once eta is small enough.
template <RationalValued G>
std::vector<std::uint64_t> below_accumulation_census(const SumSpec<G>& spec, const typename G::element_type& g,
                                                     const Rational& eta, const std::vector<unsigned>& schedule,
                                                     Side side = Side::Below,
                                                     std::uint64_t budget = kDefaultBudget) {
  if (sgn(eta) <= 0) throw PreconditionError("eta must be positive");
  if (schedule.empty()) throw PreconditionError("schedule is empty");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i - 1] >= schedule[i]) throw PreconditionError("schedule must be strictly increasing");
  }
  const Rational centre = G::to_rational(g);
  const Rational lo = side == Side::Below ? Rational(centre - eta) : centre;
  const Rational hi = side == Side::Below ? centre : Rational(centre + eta);
  std::vector<std::uint64_t> counts;
  for (unsigned k : schedule) {
    std::uint64_t c = 0;
    for (const auto& p : net_window(spec, k, lo, hi, budget)) {
      const Rational q = G::to_rational(p.value);
      if (lo < q && q < hi) ++c;
    }
    counts.push_back(c);
  }
  return counts;
}

}  // namespace egyptsum

#pragma once

// E_n = T_1 + ... + T_n: finite nets, gap certificates, exact
// representation enumeration and truncation censuses.

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "egyptsum/errors.hpp"
#include "egyptsum/group.hpp"
#include "egyptsum/lcf0.hpp"
#include "egyptsum/parallel_kernels.hpp"
#include "egyptsum/rational.hpp"

namespace egyptsum {

template <OrderedGroup G>
class SumSpec {
 public:
  using element_type = typename G::element_type;

  explicit SumSpec(std::vector<Lcf0Set<G>> sets) : sets_(std::move(sets)) {
    if (sets_.empty()) throw InvalidSpec("a sum needs at least one generating set");
  }

  static SumSpec repeat(const Lcf0Set<G>& set, std::size_t n) {
    return SumSpec(std::vector<Lcf0Set<G>>(n, set));
  }

  std::size_t arity() const { return sets_.size(); }
  const Lcf0Set<G>& operator[](std::size_t i) const { return sets_[i]; }
  const std::vector<Lcf0Set<G>>& sets() const { return sets_; }

  bool positive_cone() const {
    return std::all_of(sets_.begin(), sets_.end(), [](const auto& s) { return s.positive_cone(); });
  }

  std::vector<const std::vector<element_type>*> truncations(unsigned k) const {
    std::vector<const std::vector<element_type>*> out;
    for (const auto& s : sets_) out.push_back(&s.truncate(k));
    return out;
  }

  /// T_i \ u_k with 0 added back, sorted.
  std::vector<std::vector<element_type>> padded_truncations(unsigned k) const {
    std::vector<std::vector<element_type>> out;
    for (const auto& s : sets_) {
      auto t = s.truncate(k);
      const auto at = std::partition_point(t.begin(), t.end(),
                                           [](const auto& x) { return G::canonical_less(x, G::zero()); });
      t.insert(at, G::zero());  // truncations never hold 0
      out.push_back(std::move(t));
    }
    return out;
  }

 private:
  std::vector<Lcf0Set<G>> sets_;
};

template <OrderedGroup G>
struct Representation {
  typename G::element_type target;
  std::vector<typename G::element_type> terms;
};

/// a_i ∈ T_i for every i and the left-to-right sum equals the target.
template <OrderedGroup G>
bool verify(const SumSpec<G>& spec, const Representation<G>& rep) {
  if (rep.terms.size() != spec.arity()) return false;
  for (std::size_t i = 0; i < rep.terms.size(); ++i) {
    if (!spec[i].contains(rep.terms[i])) return false;
  }
  return G::equals(sum_terms<G>(rep.terms), rep.target);
}

template <OrderedGroup G>
bool lexicographic_less(const std::vector<typename G::element_type>& a,
                        const std::vector<typename G::element_type>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const auto& x, const auto& y) { return G::canonical_less(x, y); });
}

// ---------------------------------------------------------------------------
// Nets.

/// Finite subset of E'_n = T'_1 + ... + T'_n at resolution k. Every element
/// of E'_n lies within `fattening` of some point; for discrete groups the
/// net is E'_n itself.
template <OrderedGroup G>
struct SumsetNet {
  unsigned resolution = 0;
  std::size_t arity = 0;
  Rational fattening;
  std::vector<NetPoint<typename G::element_type>> points;

  std::vector<typename G::element_type> values() const {
    std::vector<typename G::element_type> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.value);
    return out;
  }
};

template <OrderedGroup G>
Rational net_radius(unsigned k) {
  if constexpr (G::capabilities.metric) {
    return dyadic_radius(k);
  } else {
    return Rational(0);
  }
}

template <OrderedGroup G>
std::uint64_t net_work(const SumSpec<G>& spec, unsigned k) {
  std::uint64_t work = 1;
  for (const auto& s : spec.sets()) work = saturating_mul(work, s.truncate(k).size() + 1);
  return work;
}

template <OrderedGroup G>
SumsetNet<G> build_net(const SumSpec<G>& spec, unsigned k, std::uint64_t budget = kDefaultBudget) {
  if (k == 0) throw PreconditionError("build_net: resolution must be at least 1");
  if (const auto work = net_work(spec, k); work > budget) throw BudgetExceeded(work, budget);
  SumsetNet<G> net;
  net.resolution = k;
  net.arity = spec.arity();
  net.fattening = net_radius<G>(k) * static_cast<unsigned long>(spec.arity());
  net.points = kernels::build_padded_sums<G>(spec.padded_truncations(k));
  return net;
}

/// Net points lying in the closed window [lo, hi].
template <RationalValued G>
std::vector<NetPoint<typename G::element_type>> net_window(const SumSpec<G>& spec, unsigned k,
                                                           const Rational& lo, const Rational& hi,
                                                           std::uint64_t budget = kDefaultBudget) {
  if (spec.positive_cone()) {
    return kernels::window_points_positive<G>(spec.padded_truncations(k), lo, hi, budget);
  }
  auto net = build_net(spec, k, budget);
  std::vector<NetPoint<typename G::element_type>> out;
  for (auto& p : net.points) {
    const auto q = G::to_rational(p.value);
    if (lo <= q && q <= hi) out.push_back(std::move(p));
  }
  return out;
}

template <RationalValued G>
struct NearestPoint {
  typename G::element_type point;
  Rational distance;
};

template <RationalValued G>
std::optional<NearestPoint<G>> nearest_net_point(const SumsetNet<G>& net, const Rational& x) {
  if (net.points.empty()) return std::nullopt;
  auto it = std::partition_point(net.points.begin(), net.points.end(),
                                 [&](const auto& p) { return G::to_rational(p.value) < x; });
  std::optional<NearestPoint<G>> best;
  if (it != net.points.end()) best = NearestPoint<G>{it->value, G::to_rational(it->value) - x};
  if (it != net.points.begin()) {
    const auto& prev = std::prev(it)->value;
    Rational d = x - G::to_rational(prev);
    if (!best || d < best->distance) best = NearestPoint<G>{prev, d};
  }
  return best;
}

struct PropertyReport {
  std::size_t trials = 0;
  std::size_t failures = 0;
  Rational min_slack;  // min over trials of fattening - distance
  std::vector<std::string> first_failure;
  bool passed() const { return failures == 0; }
};

/// ε-net check: random exact elements of E_n, with terms drawn half from
/// T_i \ u_k and half from the much deeper T_i \ u_{k+8}, must each lie
/// strictly within the net's fattening of some net point.
template <MetricGroup G>
PropertyReport cover_soundness(const SumSpec<G>& spec, const SumsetNet<G>& net, std::size_t trials,
                               std::uint64_t seed = 1, unsigned deep_offset = 8) {
  std::mt19937_64 rng(seed);
  std::vector<Rational> samples;
  std::vector<std::vector<Rational>> witnesses;
  samples.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Rational> terms;
    Rational sum = 0;
    for (const auto& set : spec.sets()) {
      const unsigned depth = (rng() & 1) ? net.resolution : net.resolution + deep_offset;
      const auto& pool = set.truncate(depth);
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      const auto& term = pool[pick(rng)];
      sum = G::add(sum, term);
      terms.push_back(G::to_rational(term));
    }
    samples.push_back(G::to_rational(sum));
    witnesses.push_back(std::move(terms));
  }
  const auto distances = kernels::nearest_distances<G>(net.points, samples);

  PropertyReport report;
  report.trials = trials;
  report.min_slack = net.fattening;
  for (std::size_t t = 0; t < trials; ++t) {
    const Rational slack = net.fattening - distances[t];
    if (slack < report.min_slack) report.min_slack = slack;
    if (distances[t] < 0 || slack <= 0) {
      if (report.failures++ == 0) {
        for (const auto& w : witnesses[t]) report.first_failure.push_back(to_string(w));
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Gap certificates.

struct GapCertificate {
  Rational query_lo, query_hi;
  Rational gap_lo, gap_hi;
  unsigned resolution = 0;
  std::size_t witness_points = 0;  // net points inspected at that resolution
};

struct NotFoundAtResolution {
  unsigned k_max = 0;
};

using GapResult = std::variant<GapCertificate, NotFoundAtResolution>;

struct OpenInterval {
  Rational lo, hi;
};

/// Widest (ties: leftmost) maximal open subinterval of (lo, hi) missing every
/// closed interval in `cover`.
std::optional<OpenInterval> widest_uncovered(const Rational& lo, const Rational& hi,
                                             std::vector<std::pair<Rational, Rational>> cover);

/// Searches k = 1..k_max for an open subinterval of the query disjoint from
/// E_n. At resolution k each net point f with slack z covers every element
/// that projects onto it: [f, f + z 2^-k] for positive-cone specs (dropped
/// terms are positive) and [f - z 2^-k, f + z 2^-k] otherwise.
template <RationalValued G>
GapResult find_gap(const SumSpec<G>& spec, const Rational& lo, const Rational& hi, unsigned k_max,
                   std::uint64_t budget = kDefaultBudget) {
  if (!(lo < hi)) throw PreconditionError("find_gap: query interval must be nonempty");
  const bool positive = spec.positive_cone();
  const auto n = static_cast<unsigned long>(spec.arity());
  for (unsigned k = 1; k <= k_max; ++k) {
    const Rational delta = net_radius<G>(k);
    const Rational reach = delta * n;
    const auto points = net_window(spec, k, lo - reach, positive ? hi : Rational(hi + reach), budget);
    std::vector<std::pair<Rational, Rational>> cover;
    cover.reserve(points.size());
    for (const auto& p : points) {
      const Rational f = G::to_rational(p.value);
      const Rational spread = delta * p.slack;
      cover.emplace_back(positive ? f : Rational(f - spread), f + spread);
    }
    if (auto gap = widest_uncovered(lo, hi, std::move(cover))) {
      return GapCertificate{lo, hi, gap->lo, gap->hi, k, points.size()};
    }
  }
  return NotFoundAtResolution{k_max};
}

// ---------------------------------------------------------------------------
// Representations.

namespace detail {

template <OrderedGroup G>
struct TupleLess {
  bool operator()(const std::vector<typename G::element_type>& a,
                  const std::vector<typename G::element_type>& b) const {
    return lexicographic_less<G>(a, b);
  }
};

template <OrderedGroup G>
using TupleSet = std::set<std::vector<typename G::element_type>, TupleLess<G>>;

template <MetricGroup G>
struct ArchimedeanSearch {
  using E = typename G::element_type;
  const SumSpec<G>& spec;
  std::uint64_t budget;
  std::atomic<std::uint64_t>& nodes;

  void tick() {
    if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > budget) throw BudgetExceeded(nodes.load(), budget);
  }

  /// Elements t of T_j with lower <= t < r.
  std::vector<E> candidates(std::size_t j, const E& lower, const E& r) const {
    std::vector<E> out;
    for (const auto& t : truncate_at(spec[j], G::magnitude(lower))) {
      if (!less<G>(t, lower) && less<G>(t, r)) out.push_back(t);
    }
    return out;
  }

  void run(const E& r, std::vector<std::optional<E>>& slots, std::size_t remaining, TupleSet<G>& out) {
    tick();
    if (!is_positive<G>(r)) return;
    if (remaining == 1) {
      for (std::size_t j = 0; j < slots.size(); ++j) {
        if (slots[j]) continue;
        if (spec[j].contains(r)) {
          slots[j] = r;
          emit(slots, out);
          slots[j].reset();
        }
      }
      return;
    }
    const E bound = lower_witness(G{}, r, static_cast<unsigned>(remaining));
    for (std::size_t j = 0; j < slots.size(); ++j) {
      if (slots[j]) continue;
      for (const auto& t : candidates(j, bound, r)) {
        slots[j] = t;
        run(left_difference<G>(t, r), slots, remaining - 1, out);
      }
      slots[j].reset();
    }
  }

  void emit(const std::vector<std::optional<E>>& slots, TupleSet<G>& out) const {
    std::vector<E> tuple;
    tuple.reserve(slots.size());
    for (const auto& s : slots) tuple.push_back(*s);
    out.insert(std::move(tuple));
  }
};

}  // namespace detail

/// Every ordered tuple (a_1, ..., a_n) ∈ T_1 x ... x T_n summing to g, sorted
/// lexicographically. Positive-cone specs only.
///
/// Archimedean metric groups: branch on which open position holds a largest
/// term; that term lies in [lower_witness(r, |J|), r), a finite range since
/// it avoids a neighbourhood of 0. The last position is settled by
/// contains(). Discrete groups: the sets are finite and their truncation at
/// k = 1 is searched exhaustively.
template <OrderedGroup G>
std::vector<Representation<G>> enumerate_representations(const SumSpec<G>& spec,
                                                          const typename G::element_type& g,
                                                          std::uint64_t budget = kDefaultBudget) {
  using E = typename G::element_type;
  if (!spec.positive_cone()) {
    throw PreconditionError("enumerate_representations needs generating sets in the positive cone");
  }
  std::vector<Representation<G>> reps;
  if (!is_positive<G>(g)) return reps;

  detail::TupleSet<G> found;
  if constexpr (G::capabilities.discrete) {
    const auto truncs = spec.truncations(1);
    std::vector<std::size_t> sizes;
    for (const auto* t : truncs) sizes.push_back(t->size());
    if (const auto work = kernels::product_work(sizes); work > budget) throw BudgetExceeded(work, budget);
    for (const auto* t : truncs) {
      if (t->empty()) return reps;
    }
    std::vector<const std::vector<E>*> prefix(truncs.begin(), truncs.end() - 1);
    const auto& last_set = spec[spec.arity() - 1];
    auto settle = [&](std::vector<E> head) {
      E partial = sum_terms<G>(head);
      E last = left_difference<G>(partial, g);
      if (last_set.contains(last)) {
        head.push_back(std::move(last));
        found.insert(std::move(head));
      }
    };
    if (prefix.empty()) {
      settle({});
    } else {
      std::vector<std::size_t> idx(prefix.size(), 0);
      while (true) {
        std::vector<E> head;
        for (std::size_t i = 0; i < prefix.size(); ++i) head.push_back((*prefix[i])[idx[i]]);
        settle(std::move(head));
        std::size_t pos = prefix.size();
        while (pos > 0 && ++idx[pos - 1] == prefix[pos - 1]->size()) idx[--pos] = 0;
        if (pos == 0) break;
      }
    }
  } else if constexpr (MetricGroup<G> && G::capabilities.archimedean) {
    std::atomic<std::uint64_t> nodes{0};
    detail::ArchimedeanSearch<G> search{spec, budget, nodes};
    const std::size_t n = spec.arity();
    if (n == 1) {
      std::vector<std::optional<E>> slots(1);
      search.run(g, slots, 1, found);
    } else {
      // Top-level branches run in parallel; results merge into a sorted set.
      const E bound = lower_witness(G{}, g, static_cast<unsigned>(n));
      std::vector<std::pair<std::size_t, E>> branches;
      for (std::size_t j = 0; j < n; ++j) {
        for (auto& t : search.candidates(j, bound, g)) branches.emplace_back(j, std::move(t));
      }
      std::vector<detail::TupleSet<G>> partial(branches.size());
      std::vector<std::exception_ptr> errors(branches.size());
#pragma omp parallel for schedule(dynamic)
      for (std::int64_t b = 0; b < static_cast<std::int64_t>(branches.size()); ++b) {
        try {
          std::vector<std::optional<E>> slots(n);
          slots[branches[b].first] = branches[b].second;
          search.run(left_difference<G>(branches[b].second, g), slots, n - 1, partial[b]);
        } catch (...) {
          errors[b] = std::current_exception();
        }
      }
      for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
      for (auto& p : partial) found.merge(p);
    }
  } else {
    throw UnsupportedCapability(std::string(G::name) +
                                " is neither archimedean-metric nor discrete; no enumeration bound");
  }

  reps.reserve(found.size());
  for (const auto& tuple : found) reps.push_back(Representation<G>{g, tuple});
  return reps;
}

template <OrderedGroup G>
struct CensusReport {
  typename G::element_type target;
  std::vector<unsigned> schedule;
  std::vector<std::uint64_t> counts;
};

/// Number of ordered tuples with a_i ∈ T_i \ u_k summing exactly to g, for
/// each k of a strictly increasing schedule.
template <OrderedGroup G>
CensusReport<G> representation_census(const SumSpec<G>& spec, const typename G::element_type& g,
                                      const std::vector<unsigned>& schedule,
                                      std::uint64_t budget = kDefaultBudget) {
  if (schedule.empty()) throw PreconditionError("census schedule is empty");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i - 1] >= schedule[i]) throw PreconditionError("census schedule must be strictly increasing");
  }
  const bool pruned = spec.positive_cone() && G::capabilities.total;
  CensusReport<G> report{g, schedule, {}};
  for (unsigned k : schedule) {
    const auto truncs = spec.truncations(k);
    std::vector<std::size_t> sizes;
    for (const auto* t : truncs) sizes.push_back(t->size());
    const auto work = pruned ? kernels::positive_work(sizes) : kernels::product_work(sizes);
    if (work > budget) throw BudgetExceeded(work, budget);
    report.counts.push_back(pruned ? kernels::count_positive<G>(truncs, g) : kernels::count_product<G>(truncs, g));
  }
  return report;
}

enum class TrichotomyKind { FiniteStable, Member, Zero, Violation, Undetermined };

struct TrichotomyVerdict {
  TrichotomyKind kind;
  std::size_t member = 0;  // 1-based index of the set containing g, for Member

  std::string label() const;
  friend bool operator==(const TrichotomyVerdict&, const TrichotomyVerdict&) = default;
};

/// Growth past this many halvings below |g| counts as a confirmed violation.
inline constexpr unsigned kViolationMarginLog2 = 10;

/// Classifies a 3-term census: either g has finitely many representations,
/// or g lies in some T_j, or g = 0. Growing counts with none of the escape
/// clauses are UNDETERMINED until the truncation radius is 2^-10 |g| or
/// smaller, after which they are reported as VIOLATION.
template <OrderedGroup G>
TrichotomyVerdict trichotomy_check(const SumSpec<G>& spec, const typename G::element_type& g,
                                   const CensusReport<G>& report,
                                   unsigned margin_log2 = kViolationMarginLog2) {
  if (spec.arity() != 3) {
    throw SpecArityError("trichotomy needs exactly 3 generating sets, got " + std::to_string(spec.arity()));
  }
  const auto& c = report.counts;
  if (c.size() >= 2 && c[c.size() - 1] == c[c.size() - 2]) return {TrichotomyKind::FiniteStable};
  if (G::equals(g, G::zero())) return {TrichotomyKind::Zero};
  for (std::size_t j = 0; j < 3; ++j) {
    if (spec[j].has_contains() && spec[j].contains(g)) return {TrichotomyKind::Member, j + 1};
  }
  if (c.size() >= 2 && c[c.size() - 1] > c[c.size() - 2]) {
    if constexpr (MetricGroup<G>) {
      const unsigned k_prev = report.schedule[report.schedule.size() - 2];
      if (dyadic_radius(k_prev) <= G::magnitude(g) * dyadic_radius(margin_log2)) {
        return {TrichotomyKind::Violation};
      }
    }
  }
  return {TrichotomyKind::Undetermined};
}

}  // namespace egyptsum

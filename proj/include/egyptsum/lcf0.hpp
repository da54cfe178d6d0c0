#pragma once

// Sets locally cofinite at 0, described by their finite truncations
// T_k = T \ u_k.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "egyptsum/errors.hpp"
#include "egyptsum/group.hpp"
#include "egyptsum/rational.hpp"

namespace egyptsum {

/// Truncations larger than this are refused rather than materialized.
inline constexpr std::size_t kMaxTruncationSize = std::size_t{1} << 24;

template <OrderedGroup G>
void sort_unique(std::vector<typename G::element_type>& elems) {
  std::sort(elems.begin(), elems.end(), [](const auto& a, const auto& b) {
    return G::canonical_less(a, b);
  });
  elems.erase(std::unique(elems.begin(), elems.end(),
                          [](const auto& a, const auto& b) { return G::equals(a, b); }),
              elems.end());
}

template <OrderedGroup G>
class Lcf0Set {
 public:
  using element_type = typename G::element_type;
  using TruncateFn = std::function<std::vector<element_type>(unsigned)>;
  using ContainsFn = std::function<bool(const element_type&)>;

  /// `contains` may be empty for descriptors without a decision procedure;
  /// operations that need membership then throw UnsupportedCapability.
  /// `finite` marks sets known to be finite (every truncation is the whole set
  /// from some k on); streams use it to terminate.
  Lcf0Set(std::string name, TruncateFn truncate, ContainsFn contains, bool positive_cone,
          bool finite = false)
      : impl_(std::make_shared<Impl>(std::move(name), std::move(truncate), std::move(contains),
                                     positive_cone, finite)) {}

  const std::string& name() const { return impl_->name; }
  bool positive_cone() const { return impl_->positive_cone; }
  bool finite() const { return impl_->finite; }
  bool has_contains() const { return static_cast<bool>(impl_->contains); }

  /// T \ u_k, sorted ascending, exact duplicates removed. Cached; safe to call
  /// concurrently. The returned reference stays valid for the set's lifetime.
  const std::vector<element_type>& truncate(unsigned k) const {
    {
      std::lock_guard lock(impl_->mutex);
      if (auto it = impl_->cache.find(k); it != impl_->cache.end()) return it->second;
    }
    auto elems = impl_->truncate(k);
    if (elems.size() > kMaxTruncationSize) throw BudgetExceeded(elems.size(), kMaxTruncationSize);
    sort_unique<G>(elems);
    std::lock_guard lock(impl_->mutex);
    return impl_->cache.try_emplace(k, std::move(elems)).first->second;
  }

  bool contains(const element_type& g) const {
    if (!impl_->contains) {
      throw UnsupportedCapability("set '" + name() + "' does not declare a membership test");
    }
    return impl_->contains(g);
  }

 private:
  struct Impl {
    Impl(std::string n, TruncateFn t, ContainsFn c, bool pos, bool fin)
        : name(std::move(n)), truncate(std::move(t)), contains(std::move(c)),
          positive_cone(pos), finite(fin) {}
    std::string name;
    TruncateFn truncate;
    ContainsFn contains;
    bool positive_cone;
    bool finite;
    std::mutex mutex;
    std::map<unsigned, std::vector<element_type>> cache;
  };

  std::shared_ptr<Impl> impl_;
};

/// T \ B(0, eps) for a metric group: every element of magnitude >= eps.
template <MetricGroup G>
std::vector<typename G::element_type> truncate_at(const Lcf0Set<G>& set, const Rational& eps) {
  const auto& coarse = set.truncate(resolution_for(eps));
  std::vector<typename G::element_type> out;
  for (const auto& t : coarse) {
    if (G::magnitude(t) >= eps) out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Discrete streams B used by weighted sets.

/// Strictly increasing stream of positive rationals, never materialized.
class RationalStream {
 public:
  struct Geometric {
    Rational start;
    Rational ratio;
  };
  struct Arithmetic {
    Rational start;
    Rational step;
  };
  struct List {
    std::vector<Rational> values;
  };

  static RationalStream geometric(Rational start, Rational ratio);
  static RationalStream arithmetic(Rational start, Rational step);
  /// A bounded discrete B; the generated set is then finite.
  static RationalStream list(std::vector<Rational> values);

  /// Number of b in B with b < x.
  std::size_t count_below(const Rational& x) const;
  /// All b in B with b <= x, ascending.
  std::vector<Rational> terms_up_to(const Rational& x) const;
  bool contains(const Rational& b) const;
  bool bounded() const { return std::holds_alternative<List>(kind_); }
  std::string describe() const;

 private:
  using Kind = std::variant<Geometric, Arithmetic, List>;
  explicit RationalStream(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

struct WeightedSpec {
  std::vector<Rational> numerators;  // A: finite, positive
  RationalStream denominators;       // B: discrete, strictly increasing
};

// ---------------------------------------------------------------------------
// Built-in families and combinators.

/// {1/m : m >= 1}; truncate(k) = {1/m : m <= 2^k}.
Lcf0Set<Rationals> unit_fractions(Rationals = {});

/// {a/b : a in A, b in B}. truncate(k) = union over a of {a/b : b <= a * 2^k};
/// the boundary b = a * 2^k has magnitude exactly 2^-k and lies outside the
/// open ball u_k.
Lcf0Set<Rationals> weighted(Rationals, WeightedSpec spec);

template <OrderedGroup G>
Lcf0Set<G> finite_set(G, std::vector<typename G::element_type> elems) {
  if (elems.empty()) throw InvalidSpec("finite set must be nonempty");
  bool positive = true;
  std::string label;
  for (const auto& e : elems) {
    if (G::equals(e, G::zero())) throw ZeroElement();
    positive = positive && is_positive<G>(e);
    label += (label.empty() ? "" : ",") + G::format(e);
  }
  auto sorted = elems;
  sort_unique<G>(sorted);
  if (sorted.size() != elems.size()) throw InvalidSpec("finite set has duplicate elements");
  auto shared = std::make_shared<const std::vector<typename G::element_type>>(std::move(sorted));
  return Lcf0Set<G>(
      "finite{" + label + "}",
      [shared](unsigned k) {
        std::vector<typename G::element_type> out;
        for (const auto& e : *shared) {
          if (!G::in_basis(k, e)) out.push_back(e);
        }
        return out;
      },
      [shared](const typename G::element_type& g) {
        return std::binary_search(shared->begin(), shared->end(), g,
                                  [](const auto& a, const auto& b) { return G::canonical_less(a, b); });
      },
      positive, /*finite=*/true);
}

/// -T. The basis is symmetric, so truncations negate elementwise.
template <OrderedGroup G>
Lcf0Set<G> negate(const Lcf0Set<G>& set) {
  typename Lcf0Set<G>::ContainsFn contains;
  if (set.has_contains()) {
    contains = [set](const typename G::element_type& g) { return set.contains(G::neg(g)); };
  }
  return Lcf0Set<G>(
      "-(" + set.name() + ")",
      [set](unsigned k) {
        std::vector<typename G::element_type> out;
        for (const auto& t : set.truncate(k)) out.push_back(G::neg(t));
        return out;
      },
      std::move(contains), /*positive_cone=*/false, set.finite());
}

/// T1 ∪ T2. Both operands must live in the same group; mixing groups is a
/// compile-time GroupMismatch.
template <OrderedGroup G>
Lcf0Set<G> union_of(const Lcf0Set<G>& a, const Lcf0Set<G>& b) {
  typename Lcf0Set<G>::ContainsFn contains;
  if (a.has_contains() && b.has_contains()) {
    contains = [a, b](const typename G::element_type& g) { return a.contains(g) || b.contains(g); };
  }
  return Lcf0Set<G>(
      "(" + a.name() + " | " + b.name() + ")",
      [a, b](unsigned k) {
        auto out = a.truncate(k);
        const auto& rhs = b.truncate(k);
        out.insert(out.end(), rhs.begin(), rhs.end());
        return out;
      },
      std::move(contains), a.positive_cone() && b.positive_cone(), a.finite() && b.finite());
}

// ---------------------------------------------------------------------------
// Validation.

enum class ViolationKind { ContainsZero, NotMonotone, InsideNeighborhood, ContainsInconsistent, NotPositive };

std::string_view to_string(ViolationKind kind);

template <OrderedGroup G>
struct ValidationReport {
  struct Violation {
    ViolationKind kind;
    unsigned k;
    typename G::element_type witness;
  };

  unsigned depth = 0;
  std::optional<Violation> violation;

  bool passed() const { return !violation.has_value(); }
};

/// Checks both LCF0 clauses and the descriptor invariants for k = 1..depth:
/// 0 not in T_k, T_k ⊆ T_{k+1}, T_k ∩ u_k = ∅, contains() agrees, positive
/// cone flag honoured. Reports the first violation found.
template <OrderedGroup G>
ValidationReport<G> validate_lcf0(const Lcf0Set<G>& set, unsigned depth) {
  if (depth == 0) throw PreconditionError("validate_lcf0: depth must be at least 1");
  ValidationReport<G> report;
  report.depth = depth;
  auto fail = [&](ViolationKind kind, unsigned k, const typename G::element_type& w) {
    report.violation = typename ValidationReport<G>::Violation{kind, k, w};
    return report;
  };
  const auto by_canonical = [](const auto& a, const auto& b) { return G::canonical_less(a, b); };
  for (unsigned k = 1; k <= depth; ++k) {
    const auto& current = set.truncate(k);
    for (const auto& t : current) {
      if (G::equals(t, G::zero())) return fail(ViolationKind::ContainsZero, k, t);
      if (G::in_basis(k, t)) return fail(ViolationKind::InsideNeighborhood, k, t);
      if (set.positive_cone() && !is_positive<G>(t)) return fail(ViolationKind::NotPositive, k, t);
      if (set.has_contains() && !set.contains(t)) return fail(ViolationKind::ContainsInconsistent, k, t);
    }
    if (k < depth) {
      const auto& next = set.truncate(k + 1);
      for (const auto& t : current) {
        if (!std::binary_search(next.begin(), next.end(), t, by_canonical)) {
          return fail(ViolationKind::NotMonotone, k, t);
        }
      }
    }
  }
  return report;
}

}  // namespace egyptsum

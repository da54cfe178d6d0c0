#pragma once

// Ordered groups with exact arithmetic.
//
// A group is a stateless tag type exposing its operations as static
// members. The countable neighbourhood basis u_0 ⊇ u_1 ⊇ ... at 0 stands in
// for the topology: metric groups use open balls of radius 2^-k, discrete
// groups use u_k = {0}.

#include <concepts>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "egyptsum/errors.hpp"
#include "egyptsum/rational.hpp"

namespace egyptsum {

enum class Ordering { Less, Equal, Greater, Incomparable };

std::string_view to_string(Ordering ord);

struct Capabilities {
  bool metric = false;
  bool archimedean = false;
  bool discrete = false;
  bool total = true;
};

template <class G>
concept OrderedGroup = requires(const typename G::element_type& a,
                                const typename G::element_type& b, unsigned k,
                                std::string_view text) {
  { G::name } -> std::convertible_to<std::string_view>;
  { G::capabilities } -> std::convertible_to<Capabilities>;
  { G::zero() } -> std::same_as<typename G::element_type>;
  { G::add(a, b) } -> std::same_as<typename G::element_type>;
  { G::neg(a) } -> std::same_as<typename G::element_type>;
  { G::compare(a, b) } -> std::same_as<Ordering>;
  { G::equals(a, b) } -> std::same_as<bool>;
  // Strict weak order used for sorting and deduplication; agrees with
  // compare() on every shipped (totally ordered) instance.
  { G::canonical_less(a, b) } -> std::same_as<bool>;
  { G::in_basis(k, a) } -> std::same_as<bool>;
  { G::radius(k) } -> std::same_as<std::optional<Rational>>;
  { G::parse(text) } -> std::same_as<typename G::element_type>;
  { G::format(a) } -> std::same_as<std::string>;
};

/// Groups whose elements embed order-preservingly into Q.
template <class G>
concept RationalValued = OrderedGroup<G> && requires(const typename G::element_type& a) {
  { G::to_rational(a) } -> std::same_as<Rational>;
};

template <class G>
concept MetricGroup = RationalValued<G> && G::capabilities.metric &&
                      requires(const typename G::element_type& a, const Rational& q) {
                        { G::magnitude(a) } -> std::same_as<Rational>;
                        { G::embed(q) } -> std::same_as<typename G::element_type>;
                      };

inline Ordering compare_values(const auto& a, const auto& b) {
  if (a < b) return Ordering::Less;
  if (b < a) return Ordering::Greater;
  return Ordering::Equal;
}

/// Additive rationals: total order, metric |x - y|, archimedean.
struct Rationals {
  using element_type = Rational;
  static constexpr std::string_view name = "rationals";
  static constexpr Capabilities capabilities{.metric = true, .archimedean = true, .discrete = false};

  static Rational zero() { return Rational(0); }
  static Rational add(const Rational& a, const Rational& b) { return a + b; }
  static Rational neg(const Rational& a) { return -a; }
  static Ordering compare(const Rational& a, const Rational& b) { return compare_values(a, b); }
  static bool equals(const Rational& a, const Rational& b) { return a == b; }
  static bool canonical_less(const Rational& a, const Rational& b) { return a < b; }

  static Rational magnitude(const Rational& a) { return abs(a); }
  static Rational embed(const Rational& q) { return q; }
  static Rational to_rational(const Rational& a) { return a; }

  /// u_k is the open ball of radius 2^-k.
  static bool in_basis(unsigned k, const Rational& g) { return abs(g) < dyadic_radius(k); }
  static std::optional<Rational> radius(unsigned k) { return dyadic_radius(k); }

  /// Any k positive rationals summing to r include one >= r/k.
  static Rational lower_witness(const Rational& r, unsigned k) { return r / k; }

  static Rational parse(std::string_view text) { return parse_rational(text); }
  static std::string format(const Rational& a) { return to_string(a); }
};

/// Additive integers with the discrete topology.
struct Integers {
  using element_type = Integer;
  static constexpr std::string_view name = "integers";
  static constexpr Capabilities capabilities{.metric = false, .archimedean = true, .discrete = true};

  static Integer zero() { return Integer(0); }
  static Integer add(const Integer& a, const Integer& b) { return a + b; }
  static Integer neg(const Integer& a) { return -a; }
  static Ordering compare(const Integer& a, const Integer& b) { return compare_values(a, b); }
  static bool equals(const Integer& a, const Integer& b) { return a == b; }
  static bool canonical_less(const Integer& a, const Integer& b) { return a < b; }

  static Rational to_rational(const Integer& a) { return Rational(a); }

  static bool in_basis(unsigned, const Integer& g) { return g == 0; }
  static std::optional<Rational> radius(unsigned) { return std::nullopt; }

  /// Positive integers are >= 1.
  static Integer lower_witness(const Integer&, unsigned) { return Integer(1); }

  static Integer parse(std::string_view text) { return parse_integer(text); }
  static std::string format(const Integer& a) { return to_string(a); }
};

struct LexPair {
  Integer first;
  Integer second;

  friend bool operator==(const LexPair& a, const LexPair& b) {
    return a.first == b.first && a.second == b.second;
  }
};

/// Z x Z, componentwise addition, lexicographic order, discrete topology.
/// The lexicographic order does not respect the product topology, but any
/// order respects the discrete one.
struct LexPairs {
  using element_type = LexPair;
  static constexpr std::string_view name = "lex_pairs";
  static constexpr Capabilities capabilities{.metric = false, .archimedean = false, .discrete = true};

  static LexPair zero() { return {Integer(0), Integer(0)}; }
  static LexPair add(const LexPair& a, const LexPair& b) {
    return {a.first + b.first, a.second + b.second};
  }
  static LexPair neg(const LexPair& a) { return {-a.first, -a.second}; }
  static Ordering compare(const LexPair& a, const LexPair& b) {
    if (a.first != b.first) return a.first < b.first ? Ordering::Less : Ordering::Greater;
    return compare_values(a.second, b.second);
  }
  static bool equals(const LexPair& a, const LexPair& b) { return a == b; }
  static bool canonical_less(const LexPair& a, const LexPair& b) {
    return compare(a, b) == Ordering::Less;
  }

  static bool in_basis(unsigned, const LexPair& g) { return g == zero(); }
  static std::optional<Rational> radius(unsigned) { return std::nullopt; }

  static LexPair parse(std::string_view text);
  static std::string format(const LexPair& a) {
    return "(" + to_string(a.first) + "," + to_string(a.second) + ")";
  }
};

static_assert(MetricGroup<Rationals>);
static_assert(RationalValued<Integers> && !MetricGroup<Integers>);
static_assert(OrderedGroup<LexPairs> && !RationalValued<LexPairs>);

inline Rationals make_rationals() { return {}; }
inline Integers make_integers() { return {}; }
inline LexPairs make_lex_pairs() { return {}; }

template <OrderedGroup G>
bool less(const typename G::element_type& a, const typename G::element_type& b) {
  return G::compare(a, b) == Ordering::Less;
}

template <OrderedGroup G>
bool is_positive(const typename G::element_type& a) {
  return less<G>(G::zero(), a);
}

/// -a + b, the x solving a + x = b.
template <OrderedGroup G>
typename G::element_type left_difference(const typename G::element_type& a,
                                         const typename G::element_type& b) {
  return G::add(G::neg(a), b);
}

/// Left-to-right sum, never reassociated.
template <OrderedGroup G>
typename G::element_type sum_terms(std::span<const typename G::element_type> terms) {
  auto total = G::zero();
  for (const auto& t : terms) total = G::add(total, t);
  return total;
}

/// Bound l such that any k positive-cone elements summing to r include one
/// element x with l <= x. Declined by groups without an archimedean bound.
template <OrderedGroup G>
typename G::element_type lower_witness(G, const typename G::element_type& r, unsigned k) {
  if constexpr (requires { G::lower_witness(r, k); }) {
    if (k == 0) throw PreconditionError("lower_witness: k must be at least 1");
    if (!is_positive<G>(r)) throw PreconditionError("lower_witness: r must be in the positive cone");
    return G::lower_witness(r, k);
  } else {
    throw UnsupportedCapability(std::string(G::name) + " has no archimedean lower witness");
  }
}

}  // namespace egyptsum

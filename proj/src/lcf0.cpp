#include "egyptsum/lcf0.hpp"

namespace egyptsum {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::ContainsZero: return "truncation contains 0";
    case ViolationKind::NotMonotone: return "truncation not contained in the next one";
    case ViolationKind::InsideNeighborhood: return "truncation element lies inside u_k";
    case ViolationKind::ContainsInconsistent: return "contains() rejects a truncation element";
    case ViolationKind::NotPositive: return "positive-cone set has a non-positive element";
  }
  return "?";
}

RationalStream RationalStream::geometric(Rational start, Rational ratio) {
  start.canonicalize();
  ratio.canonicalize();
  if (sgn(start) <= 0) throw InvalidSpec("geometric stream: start must be positive");
  if (ratio <= 1) throw InvalidSpec("geometric stream: ratio must exceed 1");
  return RationalStream(Geometric{std::move(start), std::move(ratio)});
}

RationalStream RationalStream::arithmetic(Rational start, Rational step) {
  start.canonicalize();
  step.canonicalize();
  if (sgn(start) <= 0) throw InvalidSpec("arithmetic stream: start must be positive");
  if (sgn(step) <= 0) throw InvalidSpec("arithmetic stream: step must be positive");
  return RationalStream(Arithmetic{std::move(start), std::move(step)});
}

RationalStream RationalStream::list(std::vector<Rational> values) {
  if (values.empty()) throw InvalidSpec("list stream must be nonempty");
  for (auto& v : values) v.canonicalize();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (sgn(values[i]) <= 0) throw InvalidSpec("list stream values must be positive");
    if (i > 0 && !(values[i - 1] < values[i])) {
      throw InvalidSpec("list stream must be strictly increasing");
    }
  }
  return RationalStream(List{std::move(values)});
}

std::vector<Rational> RationalStream::terms_up_to(const Rational& x) const {
  std::vector<Rational> out;
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Geometric>) {
          for (Rational b = s.start; b <= x; b *= s.ratio) out.push_back(b);
        } else if constexpr (std::is_same_v<S, Arithmetic>) {
          for (Rational b = s.start; b <= x; b += s.step) out.push_back(b);
        } else {
          for (const auto& b : s.values) {
            if (b > x) break;
            out.push_back(b);
          }
        }
      },
      kind_);
  return out;
}

std::size_t RationalStream::count_below(const Rational& x) const {
  return std::visit(
      [&](const auto& s) -> std::size_t {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Geometric>) {
          std::size_t n = 0;
          for (Rational b = s.start; b < x; b *= s.ratio) ++n;
          return n;
        } else if constexpr (std::is_same_v<S, Arithmetic>) {
          if (x <= s.start) return 0;
          // number of j >= 0 with start + j*step < x, i.e. ceil((x - start) / step)
          Rational q = (x - s.start) / s.step;
          Integer c;
          mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
          return c.get_ui();
        } else {
          return static_cast<std::size_t>(
              std::lower_bound(s.values.begin(), s.values.end(), x) - s.values.begin());
        }
      },
      kind_);
}

bool RationalStream::contains(const Rational& b) const {
  return std::visit(
      [&](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Geometric>) {
          for (Rational v = s.start; v <= b; v *= s.ratio) {
            if (v == b) return true;
          }
          return false;
        } else if constexpr (std::is_same_v<S, Arithmetic>) {
          if (b < s.start) return false;
          Rational q = (b - s.start) / s.step;
          return q.get_den() == 1;
        } else {
          return std::binary_search(s.values.begin(), s.values.end(), b);
        }
      },
      kind_);
}

std::string RationalStream::describe() const {
  return std::visit(
      [](const auto& s) -> std::string {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Geometric>) {
          return "geometric(" + to_string(s.start) + "," + to_string(s.ratio) + ")";
        } else if constexpr (std::is_same_v<S, Arithmetic>) {
          return "arithmetic(" + to_string(s.start) + "," + to_string(s.step) + ")";
        } else {
          std::string out = "list(";
          for (std::size_t i = 0; i < s.values.size(); ++i) {
            out += (i ? "," : "") + to_string(s.values[i]);
          }
          return out + ")";
        }
      },
      kind_);
}

Lcf0Set<Rationals> unit_fractions(Rationals) {
  return Lcf0Set<Rationals>(
      "unit_fractions",
      [](unsigned k) {
        if (k >= 63 || (std::uint64_t{1} << k) > kMaxTruncationSize) {
          throw BudgetExceeded(k >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << k, kMaxTruncationSize);
        }
        const std::uint64_t count = std::uint64_t{1} << k;
        std::vector<Rational> out;
        out.reserve(count);
        for (std::uint64_t m = count; m >= 1; --m) out.emplace_back(1, static_cast<unsigned long>(m));
        return out;
      },
      [](const Rational& g) { return sgn(g) > 0 && g.get_num() == 1; },
      /*positive_cone=*/true);
}

Lcf0Set<Rationals> weighted(Rationals, WeightedSpec spec) {
  if (spec.numerators.empty()) throw InvalidSpec("weighted set: A must be nonempty");
  for (auto& a : spec.numerators) a.canonicalize();
  for (const auto& a : spec.numerators) {
    if (sgn(a) <= 0) throw InvalidSpec("weighted set: A must be positive");
  }
  std::string label = "weighted{A=";
  for (std::size_t i = 0; i < spec.numerators.size(); ++i) {
    label += (i ? "," : "") + to_string(spec.numerators[i]);
  }
  label += ";B=" + spec.denominators.describe() + "}";
  const bool finite = spec.denominators.bounded();
  auto shared = std::make_shared<const WeightedSpec>(std::move(spec));
  return Lcf0Set<Rationals>(
      std::move(label),
      [shared](unsigned k) {
        const Rational eps = dyadic_radius(k);
        std::vector<Rational> out;
        for (const auto& a : shared->numerators) {
          // a/b >= eps  <=>  b <= a/eps
          for (const auto& b : shared->denominators.terms_up_to(a / eps)) {
            out.push_back(a / b);
            if (out.size() > kMaxTruncationSize) throw BudgetExceeded(out.size(), kMaxTruncationSize);
          }
        }
        return out;
      },
      [shared](const Rational& g) {
        if (sgn(g) <= 0) return false;
        for (const auto& a : shared->numerators) {
          if (shared->denominators.contains(a / g)) return true;
        }
        return false;
      },
      /*positive_cone=*/true, finite);
}

}  // namespace egyptsum

#include "egyptsum/sumset.hpp"

namespace egyptsum {

std::optional<OpenInterval> widest_uncovered(const Rational& lo, const Rational& hi,
                                             std::vector<std::pair<Rational, Rational>> cover) {
  std::sort(cover.begin(), cover.end());
  std::optional<OpenInterval> best;
  auto consider = [&](const Rational& a, const Rational& b) {
    if (!(a < b)) return;
    if (!best || b - a > best->hi - best->lo) best = OpenInterval{a, b};
  };
  Rational cursor = lo;
  for (const auto& [a, b] : cover) {
    if (cursor >= hi) break;
    if (a > cursor) consider(cursor, a < hi ? a : hi);
    if (b > cursor) cursor = b;
  }
  if (cursor < hi) consider(cursor, hi);
  return best;
}

std::string TrichotomyVerdict::label() const {
  switch (kind) {
    case TrichotomyKind::FiniteStable: return "FINITE_STABLE";
    case TrichotomyKind::Member: return "MEMBER(" + std::to_string(member) + ")";
    case TrichotomyKind::Zero: return "ZERO";
    case TrichotomyKind::Violation: return "VIOLATION";
    case TrichotomyKind::Undetermined: return "UNDETERMINED";
  }
  return "?";
}

}  // namespace egyptsum

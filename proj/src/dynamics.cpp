#include "egyptsum/dynamics.hpp"

namespace egyptsum {

std::optional<StreamOrder> parse_stream_order(std::string_view name) {
  if (name == "by-denominator-sum") return StreamOrder::ByDenominatorSum;
  if (name == "lexicographic") return StreamOrder::Lexicographic;
  return std::nullopt;
}

}  // namespace egyptsum

#include "egyptsum/group.hpp"

namespace egyptsum {

std::string_view to_string(Ordering ord) {
  switch (ord) {
    case Ordering::Less: return "LT";
    case Ordering::Equal: return "EQ";
    case Ordering::Greater: return "GT";
    case Ordering::Incomparable: return "INCOMPARABLE";
  }
  return "?";
}

LexPair LexPairs::parse(std::string_view text) {
  if (text.size() < 5 || text.front() != '(' || text.back() != ')') {
    throw ParseError("pair literal must look like (a,b): '" + std::string(text) + "'");
  }
  const auto body = text.substr(1, text.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos) {
    throw ParseError("pair literal must look like (a,b): '" + std::string(text) + "'");
  }
  return {parse_integer(body.substr(0, comma)), parse_integer(body.substr(comma + 1))};
}

}  // namespace egyptsum

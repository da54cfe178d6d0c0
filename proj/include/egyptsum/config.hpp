#pragma once

// Run configuration: JSON text naming a group, its generating sets and the
// parameters of one command. Every rational is an exact string ("p/q");
// floating-point literals are rejected.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "egyptsum/dynamics.hpp"
#include "egyptsum/errors.hpp"
#include "egyptsum/group.hpp"
#include "egyptsum/lcf0.hpp"
#include "egyptsum/rational.hpp"
#include "egyptsum/sumset.hpp"

namespace egyptsum {

struct RunConfig {
  std::string group;
  nlohmann::json sets;  // descriptors, one per summand; shared when "n" repeats one
  std::size_t repeat = 0;  // nonzero: sets holds a single descriptor used this many times
  nlohmann::json params;   // everything else

  bool has(std::string_view key) const { return params.contains(key); }

  std::optional<std::string> text(std::string_view key) const;
  std::optional<Rational> rational(std::string_view key) const;
  std::optional<std::uint64_t> natural(std::string_view key) const;
  std::optional<std::vector<unsigned>> schedule(std::string_view key = "schedule") const;
  /// "(a,b)" or ["a","b"].
  std::optional<std::pair<Rational, Rational>> interval(std::string_view key = "interval") const;
};

RunConfig parse_config(std::string_view text);

/// Rejects non-integral or negative JSON numbers and non-string literals.
std::string literal_text(const nlohmann::json& value, std::string_view what);

Rational parse_rational_json(const nlohmann::json& value, std::string_view what);

RationalStream parse_stream(const nlohmann::json& desc);

template <OrderedGroup G>
Lcf0Set<G> parse_set(const nlohmann::json& desc) {
  if (!desc.is_object() || !desc.contains("kind") || !desc["kind"].is_string()) {
    throw ParseError("set descriptor needs a string \"kind\"");
  }
  const auto kind = desc["kind"].get<std::string>();
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!desc.contains(key)) throw ParseError("set kind '" + kind + "' needs \"" + key + "\"");
    return desc[key];
  };
  if (kind == "unit_fractions" || kind == "weighted") {
    if constexpr (std::same_as<G, Rationals>) {
      if (kind == "unit_fractions") return unit_fractions();
      const auto& a = need("A");
      if (!a.is_array()) throw ParseError("\"A\" must be an array of rationals");
      std::vector<Rational> numerators;
      for (const auto& v : a) numerators.push_back(parse_rational_json(v, "A"));
      return weighted(Rationals{}, WeightedSpec{std::move(numerators), parse_stream(need("B"))});
    } else {
      throw InvalidSpec("set kind '" + kind + "' needs the rationals group");
    }
  }
  if (kind == "finite") {
    const auto& elems = need("elements");
    if (!elems.is_array()) throw ParseError("\"elements\" must be an array");
    std::vector<typename G::element_type> values;
    for (const auto& e : elems) values.push_back(G::parse(literal_text(e, "elements")));
    return finite_set(G{}, std::move(values));
  }
  if (kind == "negate") return negate(parse_set<G>(need("of")));
  if (kind == "union") {
    const auto& parts = need("of");
    if (!parts.is_array() || parts.size() < 2) throw ParseError("union needs at least two sets in \"of\"");
    auto out = parse_set<G>(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) out = union_of(out, parse_set<G>(parts[i]));
    return out;
  }
  throw ParseError("unknown set kind '" + kind + "'");
}

template <OrderedGroup G>
SumSpec<G> build_spec(const RunConfig& config) {
  if (config.repeat > 0) return SumSpec<G>::repeat(parse_set<G>(config.sets[0]), config.repeat);
  std::vector<Lcf0Set<G>> sets;
  for (const auto& d : config.sets) sets.push_back(parse_set<G>(d));
  return SumSpec<G>(std::move(sets));
}

template <OrderedGroup G>
std::optional<typename G::element_type> element_param(const RunConfig& config, std::string_view key) {
  if (!config.has(key)) return std::nullopt;
  return G::parse(literal_text(config.params[std::string(key)], key));
}

}  // namespace egyptsum

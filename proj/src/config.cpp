#include "egyptsum/config.hpp"

#include <algorithm>
#include <array>

namespace egyptsum {
namespace {

constexpr std::array kKnownKeys = {
    "group", "sets", "set",     "n",     "command", "target", "interval", "k",     "k_max",
    "schedule", "length", "budget", "eta", "g",      "samples", "depth",  "order",
    "side",     "validate_depth",
};

}  // namespace

std::string literal_text(const nlohmann::json& value, std::string_view what) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return value.dump();
  if (value.is_number_float()) {
    throw ParseError("floating-point literal for '" + std::string(what) + "'; use an exact \"p/q\" string");
  }
  throw ParseError("expected a literal for '" + std::string(what) + "'");
}

Rational parse_rational_json(const nlohmann::json& value, std::string_view what) {
  return parse_rational(literal_text(value, what));
}

RationalStream parse_stream(const nlohmann::json& desc) {
  if (!desc.is_object() || !desc.contains("kind") || !desc["kind"].is_string()) {
    throw ParseError("\"B\" needs a string \"kind\"");
  }
  const auto kind = desc["kind"].get<std::string>();
  auto field = [&](const char* key) {
    if (!desc.contains(key)) throw ParseError("stream kind '" + kind + "' needs \"" + key + "\"");
    return parse_rational_json(desc[key], key);
  };
  if (kind == "geometric") return RationalStream::geometric(field("start"), field("ratio"));
  if (kind == "arithmetic") return RationalStream::arithmetic(field("start"), field("step"));
  if (kind == "list") {
    if (!desc.contains("values") || !desc["values"].is_array()) throw ParseError("list stream needs \"values\"");
    std::vector<Rational> values;
    for (const auto& v : desc["values"]) values.push_back(parse_rational_json(v, "values"));
    return RationalStream::list(std::move(values));
  }
  throw ParseError("unknown stream kind '" + kind + "'");
}

RunConfig parse_config(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      throw ParseError("unknown config key '" + key + "'");
    }
  }
  RunConfig config;
  if (!doc.contains("group") || !doc["group"].is_string()) throw ParseError("config needs a string \"group\"");
  config.group = doc["group"].get<std::string>();

  if (doc.contains("sets") == doc.contains("set")) throw ParseError("config needs exactly one of \"sets\" or \"set\"");
  if (doc.contains("sets")) {
    if (!doc["sets"].is_array() || doc["sets"].empty()) throw ParseError("\"sets\" must be a nonempty array");
    config.sets = doc["sets"];
    if (doc.contains("n")) throw ParseError("\"n\" only applies with a single \"set\"");
  } else {
    config.sets = nlohmann::json::array({doc["set"]});
    config.repeat = 1;
    if (doc.contains("n")) {
      const auto& n = doc["n"];
      if (!n.is_number_unsigned() || n.get<std::uint64_t>() == 0) throw ParseError("\"n\" must be a positive integer");
      config.repeat = n.get<std::size_t>();
    }
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "group" && key != "sets" && key != "set" && key != "n") config.params[key] = value;
  }
  if (config.params.is_null()) config.params = nlohmann::json::object();
  return config;
}

std::optional<std::string> RunConfig::text(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  const auto& v = params[std::string(key)];
  if (!v.is_string()) throw ParseError("'" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

std::optional<Rational> RunConfig::rational(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  return parse_rational_json(params[std::string(key)], key);
}

std::optional<std::uint64_t> RunConfig::natural(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  const auto& v = params[std::string(key)];
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_float()) throw ParseError("floating-point value for '" + std::string(key) + "'");
  throw ParseError("'" + std::string(key) + "' must be a nonnegative integer");
}

std::optional<std::vector<unsigned>> RunConfig::schedule(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  const auto& v = params[std::string(key)];
  if (!v.is_array()) throw ParseError("'" + std::string(key) + "' must be an array of resolutions");
  std::vector<unsigned> out;
  for (const auto& k : v) {
    if (!k.is_number_unsigned()) throw ParseError("resolutions must be nonnegative integers");
    out.push_back(k.get<unsigned>());
  }
  return out;
}

std::optional<std::pair<Rational, Rational>> RunConfig::interval(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  const auto& v = params[std::string(key)];
  if (v.is_array()) {
    if (v.size() != 2) throw ParseError("interval array needs two endpoints");
    return std::pair{parse_rational_json(v[0], key), parse_rational_json(v[1], key)};
  }
  if (!v.is_string()) throw ParseError("interval must be \"(a,b)\" or [a,b]");
  const auto s = v.get<std::string>();
  const auto comma = s.find(',');
  if (s.size() < 5 || s.front() != '(' || s.back() != ')' || comma == std::string::npos) {
    throw ParseError("interval must look like \"(a,b)\", got '" + s + "'");
  }
  return std::pair{parse_rational(std::string_view(s).substr(1, comma - 1)),
                   parse_rational(std::string_view(s).substr(comma + 1, s.size() - comma - 2))};
}

}  // namespace egyptsum

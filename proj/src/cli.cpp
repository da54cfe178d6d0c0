#include "egyptsum/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "egyptsum/config.hpp"
#include "egyptsum/dynamics.hpp"
#include "egyptsum/sumset.hpp"

namespace egyptsum {
namespace {

using Record = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultEmissionBudget = 100'000;
constexpr unsigned kDefaultKMax = 12;
constexpr unsigned kDefaultValidateDepth = 16;

struct Options {
  std::string config_path = "-";
  std::string command;
  std::optional<std::uint64_t> budget;
  std::optional<unsigned> k_max;
  std::optional<std::string> schedule;
  std::optional<std::uint64_t> length;
  std::optional<unsigned> k;
};

class Command {
 public:
  Command(const RunConfig& config, const Options& options, std::ostream& out)
      : config_(config), options_(options), out_(out) {}

  template <OrderedGroup G>
  int run(const std::string& name) {
    const auto spec = build_spec<G>(config_);
    if (name == "reps") return reps(spec);
    if (name == "census") return census(spec);
    if (name == "net") return net(spec);
    if (name == "validate") return validate(spec);
    if (name == "decseq") return decseq(spec);
    if (name == "gap" || name == "belowcensus") {
      if constexpr (RationalValued<G>) {
        return name == "gap" ? gap(spec) : below(spec);
      } else {
        throw UnsupportedCapability("'" + name + "' needs a group embedded in the rationals");
      }
    }
    if (name == "accum") {
      if constexpr (MetricGroup<G>) {
        return accum(spec);
      } else {
        throw UnsupportedCapability("'accum' needs a metric group");
      }
    }
    throw ParseError("unknown command '" + name + "'");
  }

 private:
  void emit(const Record& r) { out_ << r.dump() << '\n'; }

  std::uint64_t budget(std::uint64_t fallback = kDefaultBudget) const {
    if (options_.budget) return *options_.budget;
    return config_.natural("budget").value_or(fallback);
  }

  std::vector<unsigned> schedule() const {
    if (options_.schedule) {
      std::vector<unsigned> out;
      std::stringstream ss(*options_.schedule);
      std::string item;
      while (std::getline(ss, item, ',')) {
        const auto v = parse_integer(item);
        if (v < 0 || !v.fits_uint_p()) throw ParseError("bad resolution '" + item + "' in --schedule");
        out.push_back(static_cast<unsigned>(v.get_ui()));
      }
      return out;
    }
    if (auto s = config_.schedule()) return *s;
    throw ParseError("command needs a \"schedule\"");
  }

  unsigned resolution() const {
    if (options_.k) return *options_.k;
    return static_cast<unsigned>(config_.natural("k").value_or(1));
  }

  template <OrderedGroup G>
  typename G::element_type required_element(std::string_view key) const {
    auto v = element_param<G>(config_, key);
    if (!v) throw ParseError("command needs \"" + std::string(key) + "\"");
    return *v;
  }

  template <OrderedGroup G>
  static Record terms_json(const std::vector<typename G::element_type>& terms) {
    Record arr = Record::array();
    for (const auto& t : terms) arr.push_back(G::format(t));
    return arr;
  }

  template <OrderedGroup G>
  StreamOrder order() const {
    const auto name = config_.text("order").value_or("by-denominator-sum");
    auto o = parse_stream_order(name);
    if (!o) throw ParseError("unknown stream order '" + name + "'");
    return *o;
  }

  template <OrderedGroup G>
  int reps(const SumSpec<G>& spec) {
    const auto g = required_element<G>("target");
    const auto found = enumerate_representations(spec, g);
    for (const auto& r : found) {
      Record rec;
      rec["terms"] = terms_json<G>(r.terms);
      rec["target"] = G::format(r.target);
      emit(rec);
    }
    emit(Record{{"count", found.size()}});
    return kExitOk;
  }

  template <OrderedGroup G>
  int census(const SumSpec<G>& spec) {
    const auto g = required_element<G>("target");
    const auto report = representation_census(spec, g, schedule(), budget());
    Record rec;
    rec["target"] = G::format(g);
    rec["schedule"] = report.schedule;
    rec["counts"] = report.counts;
    if (spec.arity() == 3) rec["trichotomy"] = trichotomy_check(spec, g, report).label();
    emit(rec);
    return kExitOk;
  }

  template <OrderedGroup G>
  int net(const SumSpec<G>& spec) {
    const auto result = build_net(spec, resolution(), budget());
    Record rec;
    rec["k"] = result.resolution;
    rec["fattening"] = to_string(result.fattening);
    rec["points"] = terms_json<G>(result.values());
    Record slack = Record::array();
    for (const auto& p : result.points) slack.push_back(p.slack);
    rec["slack"] = slack;
    emit(rec);
    return kExitOk;
  }

  template <RationalValued G>
  int gap(const SumSpec<G>& spec) {
    auto query = config_.interval();
    if (!query) throw ParseError("gap needs an \"interval\"");
    const unsigned k_max = options_.k_max.value_or(
        static_cast<unsigned>(config_.natural("k_max").value_or(kDefaultKMax)));
    const auto result = find_gap(spec, query->first, query->second, k_max, budget());
    Record rec;
    if (const auto* cert = std::get_if<GapCertificate>(&result)) {
      rec["gap"] = {to_string(cert->gap_lo), to_string(cert->gap_hi)};
      rec["query"] = {to_string(cert->query_lo), to_string(cert->query_hi)};
      rec["k"] = cert->resolution;
      rec["witness_points"] = cert->witness_points;
      emit(rec);
      return kExitOk;
    }
    rec["status"] = "NOT_FOUND_AT_RESOLUTION";
    rec["query"] = {to_string(query->first), to_string(query->second)};
    rec["k_max"] = k_max;
    emit(rec);
    return kExitNotFound;
  }

  template <RationalValued G>
  int below(const SumSpec<G>& spec) {
    const auto g = required_element<G>("g");
    const auto eta = config_.rational("eta");
    if (!eta) throw ParseError("belowcensus needs \"eta\"");
    const auto side_name = config_.text("side").value_or("below");
    if (side_name != "below" && side_name != "above") throw ParseError("\"side\" must be \"below\" or \"above\"");
    const auto sched = schedule();
    const auto counts = below_accumulation_census(spec, g, *eta, sched,
                                                  side_name == "below" ? Side::Below : Side::Above, budget());
    Record rec;
    rec["g"] = G::format(g);
    rec["eta"] = to_string(*eta);
    rec["side"] = side_name;
    rec["schedule"] = sched;
    rec["counts"] = counts;
    emit(rec);
    return kExitOk;
  }

  template <MetricGroup G>
  int accum(const SumSpec<G>& spec) {
    const auto samples = config_.natural("samples").value_or(64);
    const auto depth = config_.natural("depth").value_or(20);
    auto point = find_accumulation_point(stream_from_spec(spec, order<G>()), samples,
                                         static_cast<unsigned>(depth));
    if (!point) {
      emit(Record{{"status", "NONE_FOUND"}});
      return kExitNotFound;
    }
    Record rec;
    rec["point"] = G::format(point->point);
    rec["resolution"] = point->resolution;
    rec["cluster"] = point->cluster_size;
    emit(rec);
    return kExitOk;
  }

  template <OrderedGroup G>
  int decseq(const SumSpec<G>& spec) {
    const auto stream = stream_from_spec(spec, order<G>());
    std::optional<typename G::element_type> g = element_param<G>(config_, "g");
    if (!g) {
      if constexpr (MetricGroup<G>) {
        const auto samples = config_.natural("samples").value_or(64);
        const auto depth = config_.natural("depth").value_or(20);
        auto point = find_accumulation_point(stream, samples, static_cast<unsigned>(depth));
        if (!point) {
          emit(Record{{"status", "NONE_FOUND"}});
          return kExitNotFound;
        }
        g = point->point;
      } else {
        throw ParseError("decseq needs \"g\" outside metric groups");
      }
    }
    const auto length = options_.length.value_or(config_.natural("length").value_or(20));
    const auto trace = extract_decreasing(stream, *g, length, budget(kDefaultEmissionBudget));
    Record rec;
    rec["g"] = G::format(trace.limit);
    rec["terms"] = terms_json<G>(trace.terms);
    rec["length"] = length;
    rec["status"] = trace.complete ? "COMPLETE" : "BUDGET_EXHAUSTED";
    emit(rec);
    return trace.complete ? kExitOk : kExitNotFound;
  }

  template <OrderedGroup G>
  int validate(const SumSpec<G>& spec) {
    const auto depth = static_cast<unsigned>(config_.natural("validate_depth").value_or(kDefaultValidateDepth));
    bool all_passed = true;
    const std::size_t count = config_.repeat > 0 ? 1 : spec.arity();
    for (std::size_t i = 0; i < count; ++i) {
      const auto report = validate_lcf0(spec[i], depth);
      Record rec;
      rec["set"] = i + 1;
      rec["name"] = spec[i].name();
      rec["depth"] = depth;
      rec["status"] = report.passed() ? "PASS" : "FAIL";
      if (!report.passed()) {
        all_passed = false;
        rec["violation"] = std::string(to_string(report.violation->kind));
        rec["k"] = report.violation->k;
        rec["witness"] = G::format(report.violation->witness);
      }
      emit(rec);
    }
    return all_passed ? kExitOk : kExitError;
  }

  const RunConfig& config_;
  const Options& options_;
  std::ostream& out_;
};

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact generalized Egyptian fractions over ordered groups", "egyptsum"};
  Options opt;
  std::string positional;
  app.add_option("name", positional, "reps | census | gap | net | accum | decseq | belowcensus | validate");
  app.add_option("--config", opt.config_path, "config file; '-' or absent reads standard input");
  app.add_option("--command", opt.command, "command name (alternative to the positional form)");
  app.add_option("--budget", opt.budget, "work cap (emission cap for decseq)");
  app.add_option("--k-max", opt.k_max, "finest resolution tried by gap");
  app.add_option("--schedule", opt.schedule, "comma-separated resolutions, e.g. 4,6,8");
  app.add_option("--length", opt.length, "trace length for decseq");
  app.add_option("--k", opt.k, "resolution for net");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    std::string text;
    if (opt.config_path == "-") {
      text = read_all(in);
    } else {
      std::ifstream file(opt.config_path);
      if (!file) throw ParseError("cannot open config '" + opt.config_path + "'");
      text = read_all(file);
    }
    const auto config = parse_config(text);
    std::string name = !opt.command.empty() ? opt.command : positional;
    if (name.empty()) name = config.text("command").value_or("");
    if (!positional.empty() && !opt.command.empty() && positional != opt.command) {
      throw ParseError("conflicting commands '" + positional + "' and '" + opt.command + "'");
    }
    if (name.empty()) throw ParseError("no command given");

    // Buffer so a failing command prints nothing on standard output.
    std::ostringstream buffer;
    Command command(config, opt, buffer);
    int code;
    if (config.group == Rationals::name) {
      code = command.run<Rationals>(name);
    } else if (config.group == Integers::name) {
      code = command.run<Integers>(name);
    } else if (config.group == LexPairs::name) {
      code = command.run<LexPairs>(name);
    } else {
      throw ParseError("unknown group '" + config.group + "'");
    }
    out << buffer.str();
    return code;
  } catch (const std::exception& e) {
    err << "egyptsum: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace egyptsum

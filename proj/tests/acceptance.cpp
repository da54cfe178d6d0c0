// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "egyptsum/cli.hpp"
#include "egyptsum/dynamics.hpp"
#include "egyptsum/sumset.hpp"
#include "oracles.hpp"

using namespace egyptsum;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

SumSpec<Rationals> units(std::size_t n) { return SumSpec<Rationals>::repeat(unit_fractions(), n); }

SumSpec<Rationals> mixed() {
  const auto U = unit_fractions();
  return SumSpec<Rationals>({U, U, negate(U)});
}

oracle::Frac frac(const Rational& q) { return {q.get_num().get_si(), q.get_den().get_si()}; }

std::string str(const std::vector<std::uint64_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

// 1. Representation counts against the bound-chain oracle.
void representation_counts(Check& c) {
  const auto three = enumerate_representations(units(3), Rational(1));
  const auto two = enumerate_representations(units(2), Rational(1, 2));
  c.expect(three.size() == 10, "3-term count of 1 is " + std::to_string(three.size()));
  c.expect(two.size() == 3, "2-term count of 1/2 is " + std::to_string(two.size()));
  auto as_set = [](const auto& reps) {
    std::set<std::vector<oracle::i64>> out;
    for (const auto& r : reps) {
      std::vector<oracle::i64> d;
      for (const auto& t : r.terms) d.push_back(t.get_den().get_si());
      out.insert(d);
    }
    return out;
  };
  c.expect(as_set(three) == oracle::ordered_unit_reps(3, 1, 1), "3-term tuples differ from the oracle");
  c.expect(as_set(two) == oracle::ordered_unit_reps(2, 1, 2), "2-term tuples differ from the oracle");
}

// 2. T_i = {1} in the integers.
void integer_remark(Check& c) {
  const auto one = finite_set(make_integers(), {Integer(1)});
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto spec = SumSpec<Integers>::repeat(one, n);
    const auto net = build_net(spec, 1);
    std::vector<Integer> expected;
    for (std::size_t v = 0; v <= n; ++v) expected.push_back(Integer(static_cast<unsigned long>(v)));
    c.expect(net.values() == expected, "net for n=" + std::to_string(n) + " is not {0..n}");
    c.expect(net.fattening == 0, "nonzero fattening for n=" + std::to_string(n));
    const auto reps = enumerate_representations(spec, Integer(static_cast<unsigned long>(n)));
    c.expect(reps.size() == 1, "n=" + std::to_string(n) + " has " + std::to_string(reps.size()) + " representations");
  }
}

// 3. Gap certificates and brute-force soundness.
void gap_certificates(Check& c) {
  struct Case {
    std::size_t n;
    Rational lo, hi, gap_lo, gap_hi;
  };
  const std::vector<Case> cases{{2, Rational(4, 5), Rational(1), Rational(5, 6), Rational(1)},
                                {1, Rational(1, 3), Rational(1, 2), Rational(1, 3), Rational(1, 2)}};
  for (const auto& k : cases) {
    const auto result = find_gap(units(k.n), k.lo, k.hi, 12);
    const auto* cert = std::get_if<GapCertificate>(&result);
    const std::string tag = std::to_string(k.n) + "-term (" + to_string(k.lo) + "," + to_string(k.hi) + ")";
    c.expect(cert != nullptr, tag + ": no certificate");
    if (!cert) continue;
    c.expect(cert->gap_lo == k.gap_lo && cert->gap_hi == k.gap_hi,
             tag + ": got (" + to_string(cert->gap_lo) + "," + to_string(cert->gap_hi) + ")");
    const auto inside = oracle::unit_sums_inside(static_cast<int>(k.n), frac(cert->gap_lo), frac(cert->gap_hi), 1000);
    c.expect(inside == 0, tag + ": brute force finds " + std::to_string(inside) + " elements in the gap");
  }
}

// 4. Every random exact representation lies within n 2^-k of a net point.
void net_cover(Check& c) {
  std::mt19937_64 rng(20240601);
  for (std::size_t n : {2, 3}) {
    const auto spec = units(n);
    for (unsigned k : {4u, 6u, 8u}) {
      const auto net = build_net(spec, k);
      const Rational radius = Rational(static_cast<unsigned long>(n)) * dyadic_radius(k);
      // Denominators up to 2^(k+8): about half the terms fall below 2^-k.
      std::uniform_int_distribution<long> head(1, 1L << k), tail(1, 1L << (k + 8));
      for (int t = 0; t < 1000; ++t) {
        Rational x = 0;
        for (std::size_t i = 0; i < n; ++i) x += Rational(1, (rng() & 1) ? head(rng) : tail(rng));
        const auto near = nearest_net_point(net, x);
        const Rational d = near ? abs(near->distance) : Rational(-1);
        if (!near || d >= radius) {
          c.expect(false, "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + to_string(x) +
                              " is not within " + to_string(radius));
          return;
        }
      }
      c.expect(cover_soundness(spec, net, 1000, 7 + k).passed(),
               "cover_soundness failed for n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
}

// 5. Census over (3,6,9,12) for random 3-term targets.
void census_stabilization(Check& c, std::vector<TrichotomyVerdict>& verdicts) {
  const std::vector<unsigned> schedule{3, 6, 9, 12};
  const auto spec = units(3);
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<oracle::i64> den(1, 12);
  std::set<std::pair<oracle::i64, oracle::i64>> seen;
  int accepted = 0, draws = 0;
  while (accepted < 20 && draws < 10'000) {
    ++draws;
    const oracle::i64 a = den(rng), b = den(rng), d = den(rng);
    const auto t = oracle::reduce(static_cast<oracle::i128>(b) * d + a * d + a * b, static_cast<oracle::i128>(a) * b * d);
    if (!seen.insert({t.num, t.den}).second) continue;
    // Keep targets whose representations all fit in the finest truncation.
    const auto sorted = oracle::sorted_unit_reps(3, t.num, t.den);
    oracle::i64 max_den = 0;
    for (const auto& r : sorted) max_den = std::max(max_den, r.back());
    if (max_den > 4096) continue;
    ++accepted;

    const Rational g(t.num, t.den);
    const auto report = representation_census(spec, g, schedule);
    const auto reps = enumerate_representations(spec, g);
    const auto ordered = oracle::ordered_unit_reps(3, t.num, t.den);
    const std::string tag = to_string(g) + " " + str(report.counts);
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      if (i > 0) c.expect(report.counts[i - 1] <= report.counts[i], tag + ": counts decrease");
      std::uint64_t within = 0;
      for (const auto& o : ordered) within += *std::max_element(o.begin(), o.end()) <= (1L << schedule[i]);
      c.expect(report.counts[i] == within, tag + ": census at k=" + std::to_string(schedule[i]) + " != oracle " +
                                               std::to_string(within));
    }
    c.expect(report.counts.back() == reps.size(), tag + ": stabilized value != enumeration count " +
                                                      std::to_string(reps.size()));
    c.expect(reps.size() == ordered.size(), tag + ": enumeration != oracle");
    verdicts.push_back(trichotomy_check(spec, g, report));
  }
  c.expect(accepted == 20, "only " + std::to_string(accepted) + " targets accepted");
}

// 6. Trichotomy verdicts; also sweeps the verdicts gathered above.
void trichotomy(Check& c, std::vector<TrichotomyVerdict>& verdicts) {
  const std::vector<unsigned> schedule{4, 6, 8};
  const auto member_report = representation_census(mixed(), Rational(1, 2), schedule);
  const auto member = trichotomy_check(mixed(), Rational(1, 2), member_report);
  c.expect(member.label() == "MEMBER(1)", "g=1/2 classified " + member.label());
  const auto zero_report = representation_census(mixed(), Rational(0), schedule);
  const auto zero = trichotomy_check(mixed(), Rational(0), zero_report);
  c.expect(zero.label() == "ZERO", "g=0 classified " + zero.label());
  const auto& z = zero_report.counts;
  c.expect(z[0] < z[1] && z[1] < z[2], "g=0 census not strictly growing: " + str(z));
  const auto fin = trichotomy_check(units(3), Rational(1), representation_census(units(3), Rational(1), {3, 6, 9}));
  c.expect(fin.label() == "FINITE_STABLE", "g=1 classified " + fin.label());
  verdicts.insert(verdicts.end(), {member, zero, fin});

  for (oracle::i64 q = 1; q <= 8; ++q) {
    for (oracle::i64 p = -2 * q; p <= 2 * q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Rational g(p, q);
      verdicts.push_back(trichotomy_check(mixed(), g, representation_census(mixed(), g, schedule)));
    }
  }
  for (const auto& v : verdicts) c.expect(v.kind != TrichotomyKind::Violation, "VIOLATION returned");
}

// 7. Accumulation point and decreasing trace of {1/2 + 1/m : m >= 2}.
void decreasing_extraction(Check& c) {
  const auto tail = weighted(make_rationals(), {{Rational(1)}, RationalStream::arithmetic(2, 1)});
  const SumSpec<Rationals> spec({finite_set(make_rationals(), {Rational(1, 2)}), tail});
  const auto stream = stream_from_spec(spec, StreamOrder::ByDenominatorSum);
  const auto point = find_accumulation_point(stream, 64, 20);
  c.expect(point && point->point == Rational(1, 2), "accumulation point not 1/2");
  if (!point) return;
  const auto trace = extract_decreasing(stream, point->point, 20, 100'000);
  c.expect(trace.complete && trace.terms.size() == 20, "trace incomplete");
  c.expect(is_valid_trace(trace), "trace not strictly decreasing above 1/2");
  if (trace.terms.size() >= 3) {
    c.expect(trace.terms[0] == 1 && trace.terms[1] == Rational(5, 6) && trace.terms[2] == Rational(3, 4),
             "first terms are not (1, 5/6, 3/4)");
  }
}

// 8. Nothing accumulates at 1/2 from below.
void no_increase(Check& c) {
  const auto spec = units(2);
  const Rational g(1, 2), eta(1, 100);
  const std::vector<unsigned> schedule{6, 8, 10};
  const auto below = below_accumulation_census(spec, g, eta, schedule);
  const auto above = below_accumulation_census(spec, g, eta, schedule, Side::Above);
  c.expect(below == std::vector<std::uint64_t>{0, 0, 0}, "below-side counts " + str(below));
  c.expect(above[0] < above[1] && above[1] < above[2], "above-side counts do not grow: " + str(above));
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const oracle::i64 bound = 1L << schedule[i];
    const auto lo = oracle::padded_pair_values_inside({49, 100}, {1, 2}, bound);
    const auto hi = oracle::padded_pair_values_inside({1, 2}, {51, 100}, bound);
    c.expect(lo == 0 && below[i] == lo, "brute force below 1/2 at k=" + std::to_string(schedule[i]));
    c.expect(above[i] == hi, "brute force above 1/2 at k=" + std::to_string(schedule[i]) + " gives " +
                                 std::to_string(hi));
  }
}

// 9. Weighted truncations against the formula, to depth 16.
void weighted_formula(Check& c) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> small(1, 9), count(1, 3);
  for (int config = 0; config < 10; ++config) {
    std::vector<Rational> A;
    for (int i = count(rng); i > 0; --i) A.emplace_back(small(rng), small(rng));
    Rational start(small(rng), small(rng)), ratio(small(rng) + 9, 9);  // ratio in (1, 2]
    start.canonicalize();
    ratio.canonicalize();
    for (auto& a : A) a.canonicalize();
    const auto T = weighted(make_rationals(), {A, RationalStream::geometric(start, ratio)});
    for (unsigned k = 0; k <= 16; ++k) {
      const Rational eps = dyadic_radius(k);
      auto got = T.truncate(k);
      // The truncation keeps |x| >= eps; the formula is strict at b = a/eps.
      const bool has_eps = std::erase(got, eps) > 0;
      const auto expected = oracle::weighted_formula(A, start, ratio, eps);
      if (got != expected || has_eps != T.contains(eps)) {
        c.expect(false, "config " + std::to_string(config) + " differs at k=" + std::to_string(k));
        return;
      }
    }
  }
}

// 10. Two runs of every command give identical bytes, regardless of threads.
void determinism(Check& c) {
  const std::string units3 = R"J({"group":"rationals","set":{"kind":"unit_fractions"},"n":3)J";
  const std::string half_plus = R"J({"group":"rationals","sets":[{"kind":"finite","elements":["1/2"]},
    {"kind":"weighted","A":["1"],"B":{"kind":"arithmetic","start":"2","step":"1"}}])J";
  const std::vector<std::pair<std::string, std::string>> suite{
      {"reps", units3 + R"J(,"target":"1"})J"},
      {"census", R"J({"group":"rationals","sets":[{"kind":"unit_fractions"},{"kind":"unit_fractions"},
        {"kind":"negate","of":{"kind":"unit_fractions"}}],"target":"1/2","schedule":[4,6,8]})J"},
      {"gap", R"J({"group":"rationals","set":{"kind":"unit_fractions"},"n":2,"interval":"(4/5,1)"})J"},
      {"net", units3 + R"J(,"k":6})J"},
      {"accum", half_plus + "}"},
      {"decseq", half_plus + R"J(,"length":20})J"},
      {"belowcensus", R"J({"group":"rationals","set":{"kind":"unit_fractions"},"n":2,"g":"1/2","eta":"1/100",
        "schedule":[6,8,10],"side":"above"})J"},
      {"validate", units3 + "}"},
  };
  const int threads = omp_get_max_threads();
  for (const auto& [name, config] : suite) {
    std::string outputs[2];
    int codes[2];
    for (int run = 0; run < 2; ++run) {
      omp_set_num_threads(run == 0 ? threads : 1);
      std::istringstream in(config);
      std::ostringstream out, err;
      codes[run] = run_cli({name}, in, out, err);
      outputs[run] = out.str();
    }
    omp_set_num_threads(threads);
    c.expect(codes[0] == 0 && codes[1] == 0, name + " exited nonzero");
    c.expect(!outputs[0].empty() && outputs[0] == outputs[1], name + " output differs between runs");
  }
}

}  // namespace

int main() {
  std::vector<TrichotomyVerdict> verdicts;
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<void(Check&)> body;
  };
  const std::vector<Criterion> criteria{
      {"representation counts", 5, representation_counts},
      {"integer sums {0..n}", 1, integer_remark},
      {"gap certificates", 5, gap_certificates},
      {"net cover property", 30, net_cover},
      {"census stabilization", 60, [&](Check& c) { census_stabilization(c, verdicts); }},
      {"trichotomy", 60, [&](Check& c) { trichotomy(c, verdicts); }},
      {"decreasing extraction", 5, decreasing_extraction},
      {"no accumulation from below", 10, no_increase},
      {"weighted truncation formula", 5, weighted_formula},
      {"deterministic CLI output", 60, determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& cr = criteria[i];
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (check.ok && secs >= cr.limit_s) check.expect(false, "over the time limit");
    failures += !check.ok;
    std::printf("%s %2zu %-30s %7.3f s (limit %g s)%s%s\n", check.ok ? "PASS" : "FAIL", i + 1, cr.name, secs,
                cr.limit_s, check.ok ? "" : ": ", check.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

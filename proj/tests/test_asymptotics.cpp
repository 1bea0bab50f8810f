#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <numbers>
#include <sstream>

#include "crlab/asymptotics.hpp"
#include "crlab/cr_sum.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace crlab;

namespace {
const SExponent s1{1}, s2{2};

ExpansionCoefficients plain(SExponent s, std::vector<double> v) {
  return {s, ArgumentMode::plain_n, std::move(v), {Provenance::Kind::mean_value_extracted, 0}};
}

double sigma_over_n(std::uint64_t n) { return oracle::sigma_power_over(n, 1.0) / static_cast<double>(n); }
}  // namespace

TEST_CASE("correlation_sum") {
  const ArithmeticFunction one = [](std::uint64_t) { return 1.0; };
  const ArithmeticFunction id = [](std::uint64_t n) { return static_cast<double>(n); };
  const ArithmeticFunction sig = sigma_over_n;
  CHECK(correlation_sum(one, one, 7, 10) == 10.0);
  CHECK(correlation_sum(id, id, 0, 3) == 14.0);
  CHECK(correlation_sum(sig, sig, 1, 2) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK_THROWS_AS(correlation_sum(one, one, 0, 0), DomainError);
  CHECK(correlation_sum(sig, sig, 3, 20000, 1) == correlation_sum(sig, sig, 3, 20000, 4));
}

TEST_CASE("theorem main terms") {
  const auto unit = plain(s1, {1.0});
  const auto zero = plain(s1, {0.0, 0.0, 0.0});
  CHECK(theorem1_main(unit, unit, 1) == 1.0);
  CHECK(theorem1_main(zero, zero, 3) == 0.0);
  CHECK(theorem2_main(plain(s2, {0.5}), plain(s2, {3.0}), 9, 1) == 1.5);
  CHECK_THROWS_AS(theorem1_main(unit, plain(s2, {1.0}), 1), PreconditionError);
  CHECK_THROWS_AS(theorem2_main(unit, unit, 0, 2), PreconditionError);

  const auto sig = sigma_expansion(1, s1, 1000);
  SUBCASE("partial sums of the sigma pair increase and settle") {
    double previous = 0;
    for (std::uint64_t R : {10, 100, 1000}) {
      const double value = theorem1_main(sig, sig, R);
      CHECK(value > previous);
      previous = value;
    }
    CHECK(theorem1_main(sig, sig, 1000) - theorem1_main(sig, sig, 100) < 1e-2);
  }
  SUBCASE("h = 0 reproduces theorem 1 exactly") {
    for (std::uint64_t R : {1, 17, 1000}) CHECK(theorem2_main(sig, sig, 0, R) == theorem1_main(sig, sig, R));
    const auto s2fam = sigma_expansion(2, s2, 200);
    CHECK(theorem2_main(s2fam, s2fam, 0, 200) == theorem1_main(s2fam, s2fam, 200));
  }
  SUBCASE("h = 1 weights by mu(r)") {
    const double z2 = zeta(2.0);
    double expected = 0;
    for (std::uint64_t r = 1; r <= 1000; ++r)
      expected += z2 * z2 * oracle::mobius(r) / std::pow(static_cast<double>(r), 4);
    CHECK(theorem2_main(sig, sig, 1, 1000) == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("hypothesis sums are finite and grow with R") {
    const auto fam = sigma_expansion(2, s1, 200);
    CHECK(theorem1_hypothesis_sum(fam, fam, 50) < theorem1_hypothesis_sum(fam, fam, 200));
    CHECK(std::isfinite(theorem2_hypothesis_sum(fam, fam, 200)));
    // r = k = 1 alone: |f(1) g(1)| * 1 * 1 * 1
    CHECK(theorem1_hypothesis_sum(fam, fam, 1) == fam[1] * fam[1]);
  }
}

TEST_CASE("decompose_h") {
  auto check = [](std::uint64_t h, unsigned s, std::uint64_t m, std::uint64_t k) {
    const auto d = decompose_h(h, SExponent{s});
    CHECK(d.h == h);
    CHECK(d.m == m);
    CHECK(d.k == k);
  };
  check(12, 2, 2, 3);
  check(32, 2, 4, 2);
  check(360, 1, 360, 1);
  check(1, 3, 1, 1);
  CHECK_THROWS_AS(decompose_h(0, s2), DomainError);

  for (unsigned s = 1; s <= 3; ++s)
    for (std::uint64_t h = 1; h <= 10000; ++h) {
      const auto d = decompose_h(h, SExponent{s});
      REQUIRE(oracle::ipow(d.m, s) * d.k == h);
      REQUIRE(is_sth_power_free(d.k, SExponent{s}));
      if (h <= 1000) {
        std::uint64_t best = 1;
        for (std::uint64_t m = 1; oracle::ipow(m, s) <= h; ++m)
          if (h % oracle::ipow(m, s) == 0) best = m;
        REQUIRE(d.m == best);
      }
    }
}

TEST_CASE("corollary") {
  // mpmath: zeta(3)^2 / zeta(6)
  const double base = 1.4203083034891933532;
  CHECK(corollary_main(2, 2, s1, 1) == doctest::Approx(base).epsilon(1e-12));
  CHECK(corollary_main(2, 2, s1, 2) == doctest::Approx(base * 1.03125).epsilon(1e-12));
  CHECK(corollary_main(2, 2, s1, 3) == doctest::Approx(base * (1 + std::pow(3.0, -5))).epsilon(1e-12));
  // m = 1 whenever h is s-th power free.
  CHECK(corollary_main(1.75, 2.5, s2, 6) ==
        doctest::Approx(zeta(2.75) * zeta(3.5) / zeta(6.25)).epsilon(1e-14));
  CHECK_THROWS_AS(corollary_main(1.5, 2, s1, 1), PreconditionError);
  CHECK_THROWS_AS(corollary_main(2, 1.2, s1, 1), PreconditionError);

  CHECK(corollary_lhs(2, 2, s1, 1, 1) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(corollary_lhs(2, 2, s1, 1, 2) == doctest::Approx(1.25 + 1.25 * 10.0 / 9.0).epsilon(1e-15));
  double brute = 0;
  for (std::uint64_t n = 1; n <= 300; ++n)
    brute += oracle::sigma_power_over(n, 4.0) / std::pow(n, 4.0) *
             oracle::sigma_power_over(n + 5, 4.0) / std::pow(n + 5.0, 4.0);
  CHECK(corollary_lhs(2, 2, s2, 5, 300) == doctest::Approx(brute).epsilon(1e-13));
}

TEST_CASE("run_correlation_report") {
  const ArithmeticFunction one = [](std::uint64_t) { return 1.0; };
  const auto unit = plain(s1, {1.0});
  const auto cfg = theorem_config(TheoremKind::T2, unit, unit, one, one, 4, 1, {10});
  const auto rep = run_correlation_report(cfg);
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0].ratio.value() == 1.0);
  CHECK(rep.weight == WeightKind::cr_at_h);

  auto bad = cfg;
  bad.schedule = {};
  CHECK_THROWS_AS(run_correlation_report(bad), PreconditionError);
  bad.schedule = {100, 10};
  CHECK_THROWS_AS(run_correlation_report(bad), PreconditionError);
  CHECK_THROWS_AS(theorem_config(TheoremKind::T1, unit, unit, one, one, 3, 1, {10}), PreconditionError);

  const auto zero = plain(s1, {0.0});
  const auto degenerate = run_correlation_report(theorem_config(TheoremKind::T1, zero, zero, one, one, 0, 1, {5}));
  CHECK_FALSE(degenerate.records[0].ratio.has_value());

  SUBCASE("incremental lhs matches direct sums") {
    const auto c = corollary_config(2, 2, s1, 2, {100, 1000, 5000});
    const auto report = run_correlation_report(c);
    for (const auto& rec : report.records) {
      CHECK(rec.lhs == doctest::Approx(corollary_lhs(2, 2, s1, 2, rec.N)).epsilon(1e-13));
      CHECK(rec.main_term == doctest::Approx(rec.N * corollary_main(2, 2, s1, 2)).epsilon(1e-15));
    }
    std::ostringstream json;
    write_correlation_json(json, report);
    const auto parsed = nlohmann::json::parse(json.str());
    CHECK(parsed["theorem"] == "corollary");
    CHECK(parsed["params"]["h"] == 2);
    CHECK(parsed["params"]["m"] == 2.0);
    REQUIRE(parsed["records"].size() == 3);
    CHECK(parsed["records"][2]["N"] == 5000);
    CHECK(parsed["records"][2]["ratio"].get<double>() == *report.records[2].ratio);

    std::ostringstream csv;
    write_correlation_csv(csv, report);
    CHECK(csv.str().rfind("N,lhs,main_term,ratio\n100,", 0) == 0);
  }
}

TEST_CASE("lemma_check examples") {
  LemmaGrid tiny;
  tiny.r_max = 1;
  tiny.k_max = 1;
  tiny.s_values = {1, 2};
  tiny.N_values = {37};
  const auto l1 = lemma_check(LemmaId::L1, tiny);
  for (const auto& p : l1.grid) {
    CHECK(p.measured == 37.0);
    CHECK(p.bound == 37.0);
    CHECK(p.h == 0);
  }

  LemmaGrid g;
  g.r_max = g.k_max = 2;
  g.s_values = {1};
  g.N_values = {100};
  const auto two = lemma_check(LemmaId::L1, g);
  for (const auto& p : two.grid)
    if (p.r == 2 && p.k == 2) {
      CHECK(p.bound == 800.0);
      CHECK(p.measured <= 800.0);
      CHECK(p.exact_sum == 100);  // c_2(n)^2 = 1
    }

  SUBCASE("L2 diagonal at h = 0 is N Phi plus a bounded remainder") {
    LemmaGrid d;
    d.r_max = d.k_max = 6;
    d.s_values = {1, 2};
    d.h_values = {0};
    d.N_values = {500, 2000};
    const auto rep = lemma_check(LemmaId::L2, d);
    for (const auto& p : rep.grid) {
      if (p.r != p.k) continue;
      const wide_int main = static_cast<wide_int>(p.N) * jordan_totient(p.r, SExponent{p.s});
      const wide_int diff = p.exact_sum - main;
      CHECK(to_double(diff < 0 ? -diff : diff) == p.measured);
      CHECK(p.normalized < 1.0);
    }
  }

  SUBCASE("L4 at r = 1") {
    LemmaGrid l;
    l.r_max = 1;
    l.k_max = 8;
    l.s_values = {2};
    l.h_values = {3};
    l.N_values = {100};
    const auto rep = lemma_check(LemmaId::L4, l);
    CHECK(rep.all_pass);
    for (const auto& p : rep.grid) {
      wide_int direct = 0;
      for (std::uint64_t n = 1; n <= 100; ++n) direct += cr_sum_exact(p.k, n + 3, s2);
      CHECK(p.exact_sum == direct);
      CHECK(p.bound == 200.0 * static_cast<double>(oracle::tau_s(p.k, 1)));
    }
  }

  SUBCASE("grid preconditions") {
    LemmaGrid l;
    l.N_values = {3};
    l.h_values = {5};
    CHECK_THROWS_AS(lemma_check(LemmaId::L4, l), PreconditionError);
    CHECK_NOTHROW(lemma_check(LemmaId::L3, l));
    l.N_values = {};
    CHECK_THROWS_AS(lemma_check(LemmaId::L1, l), PreconditionError);
  }
}

TEST_CASE("lemma bounds hold on the standard grid") {
  const LemmaGrid grid;  // r, k <= 10; s in {1, 2}; N in {100, 500, 2000}; h in {0, 1, 5}
  for (LemmaId id : {LemmaId::L1, LemmaId::L3, LemmaId::L4}) {
    const auto rep = lemma_check(id, grid);
    CHECK(rep.all_pass);
    CHECK(rep.max_normalized <= 1.0);
  }
  const auto l2 = lemma_check(LemmaId::L2, grid);
  CHECK(std::isfinite(l2.max_normalized));
  CHECK(l2.grid.size() == 2 * (100 - 1) * 3 * 3);
  MESSAGE("L2 max normalized constant: " << l2.max_normalized
          << ", non-increasing within 2x beyond N = 500: " << lemma2_non_increasing(l2, 500, 2.0));

  std::ostringstream json;
  write_lemma_json(json, l2);
  const auto parsed = nlohmann::json::parse(json.str());
  CHECK(parsed["lemma"] == "L2");
  CHECK(parsed["grid"].size() == l2.grid.size());
  CHECK(parsed["max_normalized"].get<double>() == l2.max_normalized);
  for (const char* key : {"r", "k", "s", "h", "N", "measured", "bound", "normalized"})
    CHECK(parsed["grid"][0].contains(key));
}

TEST_CASE("L2 remainder depends only on N modulo lcm(r^s, k^s)") {
  // A full period of c_r^s(n) c_k^s(n + h) sums to [r = k] P c_r^s(h), so the
  // remainder is periodic in N rather than shrinking.
  for (unsigned s = 1; s <= 2; ++s)
    for (std::uint64_t r = 1; r <= 6; ++r)
      for (std::uint64_t k = 1; k <= 6; ++k)
        for (std::uint64_t h : {0, 1, 5}) {
          const SExponent se{s};
          const CRSumKernel cr(r, se), ck(k, se);
          const std::uint64_t P = std::lcm(oracle::ipow(r, s), oracle::ipow(k, s));
          const wide_int diag = r == k ? cr(h) : 0;
          std::vector<wide_int> remainder{0};
          wide_int sum = 0;
          for (std::uint64_t N = 1; N <= 2 * P; ++N) {
            sum += cr(N) * ck(N + h);
            remainder.push_back(sum - static_cast<wide_int>(N) * diag);
          }
          for (std::uint64_t N = 0; N <= P; ++N) REQUIRE(remainder[N + P] == remainder[N]);
        }
}

TEST_CASE("lemma2_non_increasing") {
  LemmaCheckReport rep;
  rep.lemma = LemmaId::L2;
  auto point = [](std::uint64_t N, double normalized) {
    LemmaGridPoint p;
    p.r = 2;
    p.N = N;
    p.normalized = normalized;
    return p;
  };
  rep.grid = {point(100, 9.0), point(500, 1.0), point(2000, 1.9)};
  CHECK(lemma2_non_increasing(rep, 500, 2.0));
  CHECK(lemma2_non_increasing(rep, 100, 2.0));  // 1.0 <= 2 * 9.0
  rep.grid.back().normalized = 2.1;
  CHECK_FALSE(lemma2_non_increasing(rep, 500, 2.0));
  CHECK(lemma2_non_increasing(rep, 1000, 2.0));
}

TEST_CASE("lemma reports do not depend on thread count") {
  const LemmaGrid grid;
  std::ostringstream a, b;
  write_lemma_csv(a, lemma_check(LemmaId::L3, grid, 1));
  write_lemma_csv(b, lemma_check(LemmaId::L3, grid, 4));
  CHECK(a.str() == b.str());
}

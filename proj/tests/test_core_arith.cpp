#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "crlab/core_arith.hpp"
#include "oracles.hpp"

using namespace crlab;

namespace {
const SExponent s1{1}, s2{2}, s3{3};

std::uint64_t product(const Factorization& f) {
  std::uint64_t n = 1;
  for (const auto& [p, e] : f.factors)
    for (unsigned i = 0; i < e; ++i) n *= p;
  return n;
}
}  // namespace

TEST_CASE("factorize") {
  CHECK(factorize(1).factors.empty());
  CHECK(factorize(12).factors == std::vector<PrimePower>{{2, 2}, {3, 1}});
  CHECK(factorize(97).factors == std::vector<PrimePower>{{97, 1}});
  CHECK_THROWS_AS(factorize(0), DomainError);

  // A 2^61 - 1 Mersenne prime and a product of two large primes.
  CHECK(factorize(2305843009213693951ull).factors == std::vector<PrimePower>{{2305843009213693951ull, 1}});
  CHECK(factorize(999983ull * 1000003ull).factors == std::vector<PrimePower>{{999983, 1}, {1000003, 1}});

  for (std::uint64_t n = 1; n <= 5000; ++n) {
    const Factorization f = factorize(n);
    CHECK(product(f) == n);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      CHECK(f.factors[i].exponent >= 1);
      if (i) CHECK(f.factors[i - 1].prime < f.factors[i].prime);
    }
  }
}

TEST_CASE("prime factor sieve agrees with trial division") {
  const PrimeFactorSieve sieve(20000);
  for (std::uint64_t n = 1; n <= 20000; ++n) CHECK(sieve.factorize(n).factors == factorize(n).factors);
  // Beyond the limit it falls back to trial division.
  CHECK(sieve.factorize(20011).factors == factorize(20011).factors);
}

TEST_CASE("divisors") {
  CHECK(divisors(1) == std::vector<std::uint64_t>{1});
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(49) == std::vector<std::uint64_t>{1, 7, 49});
}

TEST_CASE("mobius") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
  for (std::uint64_t n = 1; n <= 1000; ++n) CHECK(mobius(n) == oracle::mobius(n));
}

TEST_CASE("gcd_s") {
  CHECK(gcd_s(4, 8, s2) == 4);
  CHECK(gcd_s(12, 18, s1) == 6);
  CHECK(gcd_s(8, 27, s3) == 1);
  CHECK(gcd_s(0, 48, s2) == 16);
  CHECK(gcd_s(48, 0, s1) == 48);
  CHECK_THROWS_AS(gcd_s(0, 0, s2), DomainError);

  for (unsigned s = 1; s <= 4; ++s)
    for (std::uint64_t m = 0; m <= 100; ++m)
      for (std::uint64_t n = 0; n <= 100; ++n) {
        if (m == 0 && n == 0) continue;
        REQUIRE(gcd_s(m, n, SExponent{s}) == oracle::gcd_s(m, n, s));
      }
}

TEST_CASE("is_s_prime") {
  CHECK(is_s_prime(3, 4, s2));
  CHECK_FALSE(is_s_prime(4, 8, s2));
  for (std::uint64_t n = 0; n <= 50; ++n) CHECK(is_s_prime(1, n, s3));
}

TEST_CASE("generalized gcd times lcm of s-th powers") {
  for (unsigned s = 1; s <= 3; ++s)
    for (std::uint64_t m = 1; m <= 100; ++m)
      for (std::uint64_t n = 1; n <= 100; ++n) {
        const wide_int ms = oracle::ipow(m, s), ns = oracle::ipow(n, s);
        const wide_int g = std::gcd(static_cast<std::uint64_t>(ms), static_cast<std::uint64_t>(ns));
        const wide_int lcm = ms / g * ns;
        REQUIRE(gcd_s(static_cast<std::uint64_t>(ms), static_cast<std::uint64_t>(ns), SExponent{s}) * lcm ==
                ms * ns);
      }
}

TEST_CASE("is_sth_power_free") {
  CHECK(is_sth_power_free(1, s2));
  CHECK(is_sth_power_free(12, s3));
  CHECK_FALSE(is_sth_power_free(12, s2));
  CHECK_FALSE(is_sth_power_free(2, s1));
  CHECK(is_sth_power_free(1, s1));
}

TEST_CASE("jordan_totient and klee_phi") {
  CHECK(jordan_totient(10, s1) == 4);
  CHECK(jordan_totient(2, s2) == 3);
  CHECK(jordan_totient(1, s3) == 1);
  CHECK(klee_phi(4, s2) == 3);
  CHECK(klee_phi(6, s1) == 2);
  CHECK(klee_phi(12, s2) == 9);

  SUBCASE("divisor sum of J_s is n^s") {
    for (unsigned s = 1; s <= 3; ++s)
      for (std::uint64_t n = 1; n <= 500; ++n) {
        wide_int sum = 0;
        for (std::uint64_t d : divisors(n)) sum += jordan_totient(d, SExponent{s});
        REQUIRE(sum == static_cast<wide_int>(oracle::ipow(n, s)));
      }
  }
  SUBCASE("Phi_s(n^s) = J_s(n)") {
    for (unsigned s = 1; s <= 3; ++s)
      for (std::uint64_t n = 1; n <= 200; ++n)
        REQUIRE(klee_phi(oracle::ipow(n, s), SExponent{s}) == jordan_totient(n, SExponent{s}));
  }
  SUBCASE("klee_phi matches direct count") {
    for (unsigned s = 1; s <= 3; ++s)
      for (std::uint64_t n = 1; n <= 300; ++n)
        REQUIRE(klee_phi(n, SExponent{s}) == static_cast<wide_int>(oracle::klee_phi(n, s)));
  }
  CHECK_THROWS_AS(jordan_totient(0, s1), DomainError);
  // 2^64 - 59 is prime; J_2 needs ~2^128 and must report, not wrap.
  CHECK_THROWS_AS(jordan_totient(18446744073709551557ull, s3), RangeError);
}

TEST_CASE("tau_s and sigma_ks") {
  CHECK(tau_s(16, s2) == 3);
  CHECK(tau_s(6, s1) == 4);
  CHECK(tau_s(8, s3) == 2);
  CHECK(sigma_ks(12, 1, s2) == 5);
  CHECK(sigma_ks(6, 1, s1) == 12);
  CHECK(sigma_ks(16, 2, s2) == 273);
  CHECK_THROWS_AS(sigma_ks(1ull << 62, 3, s1), RangeError);

  for (unsigned s = 1; s <= 3; ++s)
    for (std::uint64_t n = 1; n <= 300; ++n) {
      REQUIRE(tau_s(n, SExponent{s}) == oracle::tau_s(n, s));
      REQUIRE(sigma_ks(n, 1, SExponent{s}) == oracle::sigma_ks(n, 1, s));
      REQUIRE(sigma_ks(n, 2, SExponent{s}) == oracle::sigma_ks(n, 2, s));
    }
  // s = 1 reduces to the ordinary divisor functions.
  for (std::uint64_t n = 1; n <= 300; ++n) {
    CHECK(tau_s(n, s1) == divisors(n).size());
    CHECK(klee_phi(n, s1) == static_cast<wide_int>(oracle::phi(n)));
  }
}

TEST_CASE("sigma_real") {
  CHECK(sigma_real(2, -3.0) == 1.125);
  CHECK(sigma_real(1, 0.37) == 1.0);
  CHECK(sigma_real(6, 1.0) == 12.0);
  for (std::uint64_t n = 1; n <= 200; ++n)
    CHECK(sigma_real(n, -2.5) == doctest::Approx(oracle::sigma_power_over(n, -2.5)).epsilon(1e-14));
}

TEST_CASE("zeta") {
  const double pi = std::numbers::pi;
  CHECK(std::abs(zeta(2.0) - pi * pi / 6) < 1e-12);
  CHECK(std::abs(zeta(4.0) - std::pow(pi, 4) / 90) < 1e-12);
  CHECK(std::abs(zeta(6.0) - std::pow(pi, 6) / 945) < 1e-12);
  // Direct partial sum; the tail past n = 200 is below 200^-19 / 19.
  double direct = 0;
  for (int n = 200; n >= 1; --n) direct += std::pow(n, -20.0);
  CHECK(std::abs(zeta(20.0) - direct) < 1e-15);
  CHECK(std::abs(zeta(20.0) - 1.0000009540) < 1e-10);
  // zeta(3) (Apery) and a point close to the pole.
  CHECK(std::abs(zeta(3.0) - 1.2020569031595942854) < 1e-12);
  CHECK(std::abs(zeta(1.01) - 100.57794333849687) < 1e-9);
  CHECK_THROWS_AS(zeta(1.0), DomainError);
  CHECK_THROWS_AS(zeta(0.5), DomainError);
}

TEST_CASE("harmonic_sum") {
  CHECK(harmonic_sum(1) == 1.0);
  CHECK(harmonic_sum(4) == doctest::Approx(25.0 / 12).epsilon(1e-15));
  CHECK(harmonic_sum(4.9) == harmonic_sum(4));
  CHECK(std::abs(harmonic_sum(100) - std::log(100.0) - kEulerGamma) < 0.01);
  CHECK_THROWS_AS(harmonic_sum(0.5), DomainError);

  // |H(x) - ln x - gamma| <= 1/x over [10, 1e5]: the function is checked at
  // sampled points, the running sum at every integer.
  double worst = 0.0;
  double running = 0.0;
  for (std::uint64_t x = 1; x <= 100000; ++x) {
    running += 1.0 / static_cast<double>(x);
    if (x < 10) continue;
    const double err = std::abs(running - std::log(static_cast<double>(x)) - kEulerGamma);
    REQUIRE(err <= 1.0 / static_cast<double>(x));
    worst = std::max(worst, err * static_cast<double>(x));
    if (x % 997 == 0 || x == 100000) REQUIRE(harmonic_sum(static_cast<double>(x)) == running);
  }
  MESSAGE("max x * |H(x) - ln x - gamma| = " << worst);
  CHECK(worst <= 1.0);
}

TEST_CASE("SExponent rejects zero") { CHECK_THROWS_AS(SExponent{0}, DomainError); }

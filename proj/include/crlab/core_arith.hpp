#pragma once

// Elementary arithmetic functions over the generalized (s-th power) GCD.
// Everything here is a pure function; divisor-indexed quantities are built
// from the prime factorization rather than by scanning 1..n.

#include <cstdint>
#include <vector>

#include "crlab/errors.hpp"
#include "crlab/wide_int.hpp"

namespace crlab {

/// The fixed exponent s >= 1 of the theory.
class SExponent {
 public:
  explicit SExponent(unsigned s) : s_(s) {
    if (s == 0) throw DomainError("s must be >= 1");
  }
  unsigned value() const { return s_; }
  operator unsigned() const { return s_; }  // NOLINT: used as an exponent everywhere

 private:
  unsigned s_;
};

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

/// n together with its prime-power decomposition, primes strictly increasing.
struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;
};

/// Deterministic trial division. Throws DomainError for n = 0.
Factorization factorize(std::uint64_t n);

/// All positive divisors in increasing order.
std::vector<std::uint64_t> divisors(const Factorization& f);
std::vector<std::uint64_t> divisors(std::uint64_t n);

int mobius(const Factorization& f);
int mobius(std::uint64_t n);

/// Largest l^s dividing both m and n. gcd_s(0, n, s) is the largest l^s dividing n.
/// Throws DomainError when m = n = 0.
std::uint64_t gcd_s(std::uint64_t m, std::uint64_t n, SExponent s);
bool is_s_prime(std::uint64_t m, std::uint64_t n, SExponent s);

/// No l > 1 with l^s | n.
bool is_sth_power_free(std::uint64_t n, SExponent s);

/// J_s(n) = n^s * prod_{p | n} (1 - p^-s), evaluated exactly.
wide_int jordan_totient(std::uint64_t n, SExponent s);

/// Klee's function: #{1 <= m <= n : (m, n)_s = 1}.
wide_int klee_phi(std::uint64_t n, SExponent s);

/// Number of l with l^s | n.
std::uint64_t tau_s(std::uint64_t n, SExponent s);

/// Sum of (d^s)^k over d with d^s | n.
wide_int sigma_ks(std::uint64_t n, unsigned k, SExponent s);

/// sum_{d | n} d^x, divisors visited in increasing order.
double sigma_real(std::uint64_t n, double x);
double sigma_real(const Factorization& f, double x);

/// Riemann zeta for real x > 1, absolute error below 1e-10.
double zeta(double x);

/// sum_{n <= x} 1/n accumulated in increasing n. Requires x >= 1.
double harmonic_sum(double x);

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Smallest-prime-factor table over [0, limit]; factorizes any n <= limit
/// in O(log n). Immutable after construction.
class PrimeFactorSieve {
 public:
  explicit PrimeFactorSieve(std::uint64_t limit);
  std::uint64_t limit() const { return limit_; }
  Factorization factorize(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

}  // namespace crlab

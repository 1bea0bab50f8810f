#pragma once

// Cohen-Ramanujan sums c_r^s(n): the exact divisor-sum route, the literal
// exponential-sum route over an s-reduced residue system, sieved batch tables,
// and the structural identities the sums satisfy.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "crlab/core_arith.hpp"
#include "crlab/wide_int.hpp"

namespace crlab {

/// Precomputed terms of c_r^s(n) = sum_{d | r, d^s | n} mu(r/d) d^s for fixed (r, s).
/// Cheap to evaluate for many n.
class CRSumKernel {
 public:
  CRSumKernel(std::uint64_t r, SExponent s);

  std::uint64_t r() const { return r_; }
  SExponent s() const { return s_; }

  wide_int operator()(std::uint64_t n) const;

 private:
  struct Term {
    std::uint64_t modulus;  // d^s, or 0 when d^s exceeds 64 bits (divides only n = 0)
    wide_int weight;        // mu(r/d) d^s
  };
  std::uint64_t r_;
  SExponent s_;
  std::vector<Term> terms_;
};

/// Exact c_r^s(n). n = 0 gives J_s(r).
wide_int cr_sum_exact(std::uint64_t r, std::uint64_t n, SExponent s);

/// Largest r^s accepted by the exponential route.
inline constexpr std::uint64_t kExponentialModulusLimit = 10'000'000;

/// The literal sum of e^{2 pi i n h / r^s} over 1 <= h <= r^s with (h, r^s)_s = 1.
/// The residue system is built once per (r, s).
class ExponentialCRSum {
 public:
  ExponentialCRSum(std::uint64_t r, SExponent s);

  std::uint64_t modulus() const { return modulus_; }
  const std::vector<std::uint64_t>& residues() const { return residues_; }

  std::complex<double> operator()(std::uint64_t n) const;

 private:
  std::uint64_t modulus_;
  std::vector<std::uint64_t> residues_;
};

std::complex<double> cr_sum_exponential(std::uint64_t r, std::uint64_t n, SExponent s);

/// Classical Ramanujan sum via Hoelder: c_r(n) = mu(r/g) phi(r) / phi(r/g), g = gcd(r, n).
/// Self-contained so it can serve as an oracle for the s = 1 case.
wide_int ramanujan_sum_oracle(std::uint64_t r, std::uint64_t n);

struct Rational {
  wide_int num = 0;
  wide_int den = 1;
  bool operator==(const Rational&) const = default;
};

/// (1/r^s) sum_{m=1}^{r^s} c_d^s(m) c_t^s(m), exactly. Requires d | r and t | r.
/// Throws std::logic_error if the inner sum is not divisible by r^s.
Rational orthogonality_value(std::uint64_t r, std::uint64_t d, std::uint64_t t, SExponent s);

/// c_r^s(m^s k) == c_r^s(m^s). k must be s-th power free.
bool power_free_absorption_check(std::uint64_t r, std::uint64_t m, std::uint64_t k, SExponent s);

/// Immutable rectangle of c_r^s(n), 1 <= r <= r_max, 0 <= n <= n_max.
class CRSumTable {
 public:
  SExponent s() const { return s_; }
  std::uint64_t r_max() const { return r_max_; }
  std::uint64_t n_max() const { return n_max_; }

  std::int64_t operator()(std::uint64_t r, std::uint64_t n) const {
    return values_[(r - 1) * width() + n];
  }
  std::int64_t at(std::uint64_t r, std::uint64_t n) const;

 private:
  friend CRSumTable build_table(std::uint64_t, std::uint64_t, SExponent, unsigned, std::size_t);
  CRSumTable(SExponent s, std::uint64_t r_max, std::uint64_t n_max)
      : s_(s), r_max_(r_max), n_max_(n_max) {}
  std::uint64_t width() const { return n_max_ + 1; }

  SExponent s_;
  std::uint64_t r_max_;
  std::uint64_t n_max_;
  std::vector<std::int64_t> values_;
};

inline constexpr std::size_t kDefaultTableBudgetBytes = std::size_t{1} << 30;

/// Sieved construction: each row r adds mu(r/d) d^s along the stride d^s for
/// every d | r. Rows are independent, so the result is identical for any
/// thread count. Throws ResourceError when the table exceeds budget_bytes.
CRSumTable build_table(std::uint64_t r_max, std::uint64_t n_max, SExponent s,
                       unsigned threads = 0,
                       std::size_t budget_bytes = kDefaultTableBudgetBytes);

/// CSV with header `r,n,value`, one row per cell, r-major.
void write_table_csv(std::ostream& out, const CRSumTable& table);

}  // namespace crlab

#include "crlab/cr_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "crlab/parallel.hpp"

namespace crlab {

namespace {

// d^s, or 0 if it does not fit 64 bits.
std::uint64_t power_or_zero(std::uint64_t d, unsigned s) {
  try {
    return checked_pow_u64(d, s);
  } catch (const RangeError&) {
    return 0;
  }
}

struct MobiusDivisor {
  std::uint64_t d;
  int mu;  // mu(r / d), never 0
};

// The d | r with r/d squarefree, i.e. the only divisors carrying a nonzero
// mu(r/d): r divided by each subset product of the distinct primes of r.
std::vector<MobiusDivisor> mobius_divisors(std::uint64_t r) {
  const Factorization f = factorize(r);
  const std::size_t width = f.factors.size();
  std::vector<MobiusDivisor> out;
  out.reserve(std::size_t{1} << width);
  for (std::size_t mask = 0; mask < (std::size_t{1} << width); ++mask) {
    std::uint64_t d = r;
    int mu = 1;
    for (std::size_t i = 0; i < width; ++i) {
      if (mask & (std::size_t{1} << i)) {
        d /= f.factors[i].prime;
        mu = -mu;
      }
    }
    out.push_back({d, mu});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.d < b.d; });
  return out;
}

}  // namespace

CRSumKernel::CRSumKernel(std::uint64_t r, SExponent s) : r_(r), s_(s) {
  if (r == 0) throw DomainError("c_r^s(n): r must be positive");
  for (const auto& [d, mu] : mobius_divisors(r))
    terms_.push_back({power_or_zero(d, s), mu * checked_pow(d, s)});
}

wide_int CRSumKernel::operator()(std::uint64_t n) const {
  wide_int sum = 0;
  for (const auto& t : terms_) {
    const bool divides = n == 0 || (t.modulus != 0 && n % t.modulus == 0);
    if (divides) sum = checked_add(sum, t.weight);
  }
  return sum;
}

wide_int cr_sum_exact(std::uint64_t r, std::uint64_t n, SExponent s) {
  return CRSumKernel(r, s)(n);
}

ExponentialCRSum::ExponentialCRSum(std::uint64_t r, SExponent s) {
  if (r == 0) throw DomainError("c_r^s(n): r must be positive");
  const std::uint64_t q = power_or_zero(r, s);
  if (q == 0 || q > kExponentialModulusLimit)
    throw ResourceError("exponential route limited to r^s <= " +
                        std::to_string(kExponentialModulusLimit));
  modulus_ = q;
  for (std::uint64_t h = 1; h <= q; ++h)
    if (gcd_s(h, q, s) == 1) residues_.push_back(h);
}

std::complex<double> ExponentialCRSum::operator()(std::uint64_t n) const {
  const std::uint64_t q = modulus_;
  const std::uint64_t n_mod = n % q;
  const double scale = 2.0 * std::numbers::pi / static_cast<double>(q);
  double re = 0.0;
  double im = 0.0;
  for (std::uint64_t h : residues_) {
    // Reduce nh mod q exactly before going to floating point.
    const double angle = scale * static_cast<double>((n_mod * h) % q);
    re += std::cos(angle);
    im += std::sin(angle);
  }
  return {re, im};
}

std::complex<double> cr_sum_exponential(std::uint64_t r, std::uint64_t n, SExponent s) {
  return ExponentialCRSum(r, s)(n);
}

wide_int ramanujan_sum_oracle(std::uint64_t r, std::uint64_t n) {
  if (r == 0 || n == 0) throw DomainError("ramanujan_sum_oracle: r and n must be positive");
  auto phi = [](std::uint64_t m) {
    std::uint64_t result = m;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
      if (m % p != 0) continue;
      while (m % p == 0) m /= p;
      result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
  };
  auto mu = [](std::uint64_t m) {
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
      if (m % p != 0) continue;
      m /= p;
      if (m % p == 0) return 0;
      sign = -sign;
    }
    if (m > 1) sign = -sign;
    return sign;
  };
  const std::uint64_t g = std::gcd(r, n);
  const std::uint64_t q = r / g;
  return static_cast<wide_int>(mu(q)) * static_cast<wide_int>(phi(r) / phi(q));
}

Rational orthogonality_value(std::uint64_t r, std::uint64_t d, std::uint64_t t, SExponent s) {
  if (r == 0 || d == 0 || t == 0 || r % d != 0 || r % t != 0)
    throw PreconditionError("orthogonality_value: d and t must divide r");
  const std::uint64_t period = checked_pow_u64(r, s);
  const CRSumKernel cd(d, s);
  const CRSumKernel ct(t, s);
  wide_int sum = 0;
  for (std::uint64_t m = 1; m <= period; ++m) sum = checked_add(sum, checked_mul(cd(m), ct(m)));
  if (sum % static_cast<wide_int>(period) != 0)
    throw std::logic_error("orthogonality_value: inner sum " + to_string(sum) +
                           " not divisible by r^s = " + std::to_string(period));
  return {sum / static_cast<wide_int>(period), 1};
}

bool power_free_absorption_check(std::uint64_t r, std::uint64_t m, std::uint64_t k, SExponent s) {
  if (r == 0 || m == 0 || k == 0) throw PreconditionError("absorption check: r, m, k must be positive");
  if (!is_sth_power_free(k, s))
    throw PreconditionError("absorption check: k = " + std::to_string(k) + " is not s-th power free");
  const std::uint64_t ms = checked_pow_u64(m, s);
  std::uint64_t msk = 0;
  if (__builtin_mul_overflow(ms, k, &msk)) throw RangeError("absorption check: m^s k overflows");
  const CRSumKernel c(r, s);
  return c(msk) == c(ms);
}

std::int64_t CRSumTable::at(std::uint64_t r, std::uint64_t n) const {
  if (r == 0 || r > r_max_ || n > n_max_) throw std::out_of_range("CRSumTable::at");
  return (*this)(r, n);
}

CRSumTable build_table(std::uint64_t r_max, std::uint64_t n_max, SExponent s, unsigned threads,
                       std::size_t budget_bytes) {
  if (r_max == 0) throw DomainError("build_table: r_max must be >= 1");
  std::uint64_t cells = 0;
  if (n_max == std::numeric_limits<std::uint64_t>::max() ||
      __builtin_mul_overflow(r_max, n_max + 1, &cells) ||
      cells > budget_bytes / sizeof(std::int64_t))
    throw ResourceError("build_table: " + std::to_string(r_max) + " x " +
                        std::to_string(n_max + 1) + " table exceeds memory budget");

  CRSumTable table(s, r_max, n_max);
  table.values_.assign(static_cast<std::size_t>(cells), 0);
  const std::uint64_t width = n_max + 1;

  parallel_for(static_cast<std::size_t>(r_max), threads, [&](std::size_t row) {
    const std::uint64_t r = row + 1;
    std::int64_t* cell = table.values_.data() + row * width;
    for (const auto& [d, mu] : mobius_divisors(r)) {
      const std::uint64_t stride = power_or_zero(d, s);
      if (stride == 0 || stride > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        throw RangeError("build_table: d^s exceeds 64-bit cell width");
      const std::int64_t weight = mu * static_cast<std::int64_t>(stride);
      for (std::uint64_t n = 0; n <= n_max; n += stride) {
        if (__builtin_add_overflow(cell[n], weight, &cell[n]))
          throw RangeError("build_table: cell overflow");
        if (n > n_max - stride) break;
      }
    }
  });
  return table;
}

void write_table_csv(std::ostream& out, const CRSumTable& table) {
  out << "r,n,value\n";
  for (std::uint64_t r = 1; r <= table.r_max(); ++r)
    for (std::uint64_t n = 0; n <= table.n_max(); ++n) out << r << ',' << n << ',' << table(r, n) << '\n';
}

}  // namespace crlab

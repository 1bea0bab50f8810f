#include "crlab/core_arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace crlab {

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  Factorization f;
  f.n = n;
  auto pull = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e != 0) f.factors.push_back({p, e});
  };
  pull(2);
  pull(3);
  // 6k +- 1 wheel; p <= n / p avoids overflow of p * p near 2^64.
  for (std::uint64_t p = 5; p <= n / p; p += 6) {
    pull(p);
    pull(p + 2);
  }
  if (n > 1) f.factors.push_back({n, 1});
  return f;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) { return divisors(factorize(n)); }

int mobius(const Factorization& f) {
  for (const auto& pp : f.factors)
    if (pp.exponent >= 2) return 0;
  return (f.factors.size() % 2 == 0) ? 1 : -1;
}

int mobius(std::uint64_t n) { return mobius(factorize(n)); }

std::uint64_t gcd_s(std::uint64_t m, std::uint64_t n, SExponent s) {
  if (m == 0 && n == 0) throw DomainError("gcd_s: m and n must not both be zero");
  // l^s divides m and n exactly when it divides gcd(m, n).
  const Factorization g = factorize(std::gcd(m, n));
  std::uint64_t out = 1;
  for (const auto& [p, e] : g.factors) {
    for (unsigned i = 0; i < (e / s) * s; ++i) out *= p;
  }
  return out;
}

bool is_s_prime(std::uint64_t m, std::uint64_t n, SExponent s) { return gcd_s(m, n, s) == 1; }

bool is_sth_power_free(std::uint64_t n, SExponent s) {
  const Factorization f = factorize(n);
  return std::all_of(f.factors.begin(), f.factors.end(),
                     [&](const PrimePower& pp) { return pp.exponent < s; });
}

wide_int jordan_totient(std::uint64_t n, SExponent s) {
  const Factorization f = factorize(n);
  wide_int out = 1;
  for (const auto& [p, e] : f.factors) {
    // J_s(p^e) = p^{s(e-1)} (p^s - 1)
    const wide_int ps = checked_pow(p, s);
    out = checked_mul(out, checked_pow(ps, e - 1));
    out = checked_mul(out, ps - 1);
  }
  return out;
}

wide_int klee_phi(std::uint64_t n, SExponent s) {
  const Factorization f = factorize(n);
  wide_int out = 1;
  for (const auto& [p, e] : f.factors) {
    // Phi_s(p^e) = p^e when e < s, otherwise p^e - p^{e-s}
    const wide_int pe = checked_pow(p, e);
    const wide_int term = e < s ? pe : pe - checked_pow(p, e - s);
    out = checked_mul(out, term);
  }
  return out;
}

std::uint64_t tau_s(std::uint64_t n, SExponent s) {
  const Factorization f = factorize(n);
  std::uint64_t out = 1;
  for (const auto& pp : f.factors) out *= pp.exponent / s + 1;
  return out;
}

wide_int sigma_ks(std::uint64_t n, unsigned k, SExponent s) {
  if (k == 0) throw DomainError("sigma_ks: k must be >= 1");
  const Factorization f = factorize(n);
  wide_int out = 1;
  for (const auto& [p, e] : f.factors) {
    const wide_int step = checked_pow(checked_pow(p, s), k);
    wide_int term = 1;
    wide_int local = 1;
    for (unsigned j = 1; j <= e / s; ++j) {
      term = checked_mul(term, step);
      local = checked_add(local, term);
    }
    out = checked_mul(out, local);
  }
  return out;
}

double sigma_real(const Factorization& f, double x) {
  double sum = 0.0;
  for (std::uint64_t d : divisors(f)) sum += std::pow(static_cast<double>(d), x);
  return sum;
}

double sigma_real(std::uint64_t n, double x) { return sigma_real(factorize(n), x); }

double zeta(double x) {
  if (!(x > 1.0)) throw DomainError("zeta: argument must exceed 1, got " + std::to_string(x));
  // Euler-Maclaurin: sum_{n<N} n^-x + N^{1-x}/(x-1) + N^-x/2 + B2 and B4 terms.
  // N grows until the first omitted (B6) term is below 1e-13.
  auto b6_term = [x](double n) {
    return x * (x + 1) * (x + 2) * (x + 3) * (x + 4) / 30240.0 * std::pow(n, -x - 5);
  };
  double n_cut = 10.0;
  while (b6_term(n_cut) > 1e-13) n_cut *= 2.0;
  const auto N = static_cast<std::uint64_t>(n_cut);

  double partial = 0.0;
  for (std::uint64_t n = N - 1; n >= 1; --n) partial += std::pow(static_cast<double>(n), -x);
  const double Nd = n_cut;
  const double tail = std::pow(Nd, 1.0 - x) / (x - 1.0) + 0.5 * std::pow(Nd, -x) +
                      x / 12.0 * std::pow(Nd, -x - 1.0) -
                      x * (x + 1) * (x + 2) / 720.0 * std::pow(Nd, -x - 3.0);
  return partial + tail;
}

double harmonic_sum(double x) {
  if (!(x >= 1.0)) throw DomainError("harmonic_sum: x must be >= 1");
  const auto top = static_cast<std::uint64_t>(std::floor(x));
  double sum = 0.0;
  for (std::uint64_t n = 1; n <= top; ++n) sum += 1.0 / static_cast<double>(n);
  return sum;
}

PrimeFactorSieve::PrimeFactorSieve(std::uint64_t limit) : limit_(limit) {
  if (limit > (std::uint64_t{1} << 31)) throw ResourceError("PrimeFactorSieve: limit too large");
  spf_.assign(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] != 0) continue;
    for (std::uint64_t j = i; j <= limit; j += i)
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
  }
}

Factorization PrimeFactorSieve::factorize(std::uint64_t n) const {
  if (n == 0) throw DomainError("factorize: n must be positive");
  if (n > limit_) return crlab::factorize(n);
  Factorization f;
  f.n = n;
  while (n > 1) {
    const std::uint64_t p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  return f;
}

}  // namespace crlab

#pragma once

// Truncated Cohen-Ramanujan expansions f(n) = sum_r fhat(r) c_r^s(arg),
// with arg = n or n^s depending on the family.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "crlab/core_arith.hpp"

namespace crlab {

/// Integer -> real arithmetical function.
using ArithmeticFunction = std::function<double(std::uint64_t)>;

enum class ArgumentMode { plain_n, n_to_s };

struct Provenance {
  enum class Kind { closed_form_sigma, mean_value_extracted, shifted };
  Kind kind = Kind::mean_value_extracted;
  // k for closed_form_sigma, N for mean_value_extracted, h for shifted.
  std::uint64_t parameter = 0;
};

/// Dense coefficient family fhat(1..R). An empty family (R = 0) is allowed
/// as a degenerate value and evaluates to 0 everywhere.
class ExpansionCoefficients {
 public:
  ExpansionCoefficients(SExponent s, ArgumentMode mode, std::vector<double> coeffs, Provenance provenance)
      : s_(s), mode_(mode), coeffs_(std::move(coeffs)), provenance_(provenance) {}

  SExponent s() const { return s_; }
  ArgumentMode mode() const { return mode_; }
  const Provenance& provenance() const { return provenance_; }
  std::uint64_t truncation() const { return coeffs_.size(); }
  std::span<const double> values() const { return coeffs_; }

  /// 1-based access; r must lie in [1, truncation()].
  double operator[](std::uint64_t r) const { return coeffs_[r - 1]; }

 private:
  SExponent s_;
  ArgumentMode mode_;
  std::vector<double> coeffs_;
  Provenance provenance_;
};

/// sigma_{ks}(n) / n^{ks} = zeta((k+1)s) sum_r c_r^s(n^s) / r^{(k+1)s}, truncated at R.
ExpansionCoefficients sigma_expansion(unsigned k, SExponent s, std::uint64_t R);

/// sum_{r <= R} fhat(r) c_r^s(arg). Terms use exact c values; block sums over
/// r are combined with a fixed pairwise tree.
double evaluate(const ExpansionCoefficients& coeffs, std::uint64_t n, unsigned threads = 0);

struct MeanValueResult {
  double value = 0.0;
  bool period_exact = false;  // N is a multiple of r^s
};

/// (1/N) sum_{n <= N} f(n) c_r^s(n) / Phi_s(r^s). No extrapolation in N.
MeanValueResult mean_value_coefficient(const ArithmeticFunction& f, std::uint64_t r, SExponent s,
                                       std::uint64_t N, unsigned threads = 0);

/// Family fhat(1..R) of mean-value coefficients of f, plain_n mode.
ExpansionCoefficients extract_coefficients(const ArithmeticFunction& f, SExponent s, std::uint64_t R,
                                           std::uint64_t N, unsigned threads = 0);

/// ghat(r) = fhat(r) c_r^s(h) / Phi_s(r^s). Requires plain_n mode.
ExpansionCoefficients shift_coefficients(const ExpansionCoefficients& coeffs, std::uint64_t h);

/// sum_{r <= R} |fhat(r)| tau(r).
double tau_weighted_norm(const ExpansionCoefficients& coeffs);

/// CSV with header `r,coefficient`, 17 significant digits.
void write_coefficients_csv(std::ostream& out, const ExpansionCoefficients& coeffs);

/// Inverse of write_coefficients_csv. Metadata is not part of the file and is
/// supplied by the caller. Throws std::runtime_error on malformed input.
ExpansionCoefficients read_coefficients_csv(std::istream& in, SExponent s, ArgumentMode mode,
                                            Provenance provenance);

}  // namespace crlab

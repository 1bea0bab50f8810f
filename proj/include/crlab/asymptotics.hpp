#pragma once

// Empirical checks of the shifted-correlation asymptotics and of the bounds
// on sums of products of Cohen-Ramanujan sums.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crlab/expansion.hpp"
#include "crlab/wide_int.hpp"

namespace crlab {

/// sum_{n=1}^{N} f(n) g(n + h).
double correlation_sum(const ArithmeticFunction& f, const ArithmeticFunction& g, std::uint64_t h,
                       std::uint64_t N, unsigned threads = 0);

/// sum_{r <= R} fhat(r) ghat(r) Phi_s(r^s): the per-N multiplier for h = 0.
double theorem1_main(const ExpansionCoefficients& f, const ExpansionCoefficients& g, std::uint64_t R);

/// sum_{r <= R} fhat(r) ghat(r) c_r^s(h). Equals theorem1_main exactly at h = 0.
double theorem2_main(const ExpansionCoefficients& f, const ExpansionCoefficients& g, std::uint64_t h,
                     std::uint64_t R);

/// Truncated hypothesis sums over r, k <= R:
///   h = 0 form:  sum |fhat(r) ghat(k)| (r^s, k^s)_s tau_s(r^s) tau_s(k^s)
///   shift form:  sum |fhat(r)| |ghat(k)| (r^s k^s)^{1/2} tau_s(r^s) tau_s(k^s)
double theorem1_hypothesis_sum(const ExpansionCoefficients& f, const ExpansionCoefficients& g,
                               std::uint64_t R);
double theorem2_hypothesis_sum(const ExpansionCoefficients& f, const ExpansionCoefficients& g,
                               std::uint64_t R);

/// h = m^s k with k s-th power free and m maximal.
struct HDecomposition {
  std::uint64_t h = 1;
  std::uint64_t m = 1;
  std::uint64_t k = 1;
};

HDecomposition decompose_h(std::uint64_t h, SExponent s);

/// zeta(a+1) zeta(b+1) / zeta(a+b+2) * sigma_{-(a+b+1)s}(m), h = m^s k.
/// Requires a, b > 3/2.
double corollary_main(double a, double b, SExponent s, std::uint64_t h);

/// sum_{n <= N} sigma_{as}(n)/n^{as} * sigma_{bs}(n+h)/(n+h)^{bs} with the
/// classical divisor power sum sigma_x(n) = sum_{d | n} d^x.
double corollary_lhs(double a, double b, SExponent s, std::uint64_t h, std::uint64_t N,
                     unsigned threads = 0);

/// n -> sigma_{x}(n) / n^{x} = sum_{d | n} d^{-x}, factorizing through a sieve
/// for n <= limit.
ArithmeticFunction sigma_ratio_function(double x, std::uint64_t limit);

enum class TheoremKind { T1, T2, corollary };
enum class WeightKind { phi, cr_at_h };

std::string to_string(TheoremKind kind);

struct CorrelationRecord {
  std::uint64_t N = 0;
  double lhs = 0.0;
  double main_term = 0.0;
  std::optional<double> ratio;  // absent when main_term == 0
};

struct CorrelationReport {
  TheoremKind theorem = TheoremKind::T2;
  WeightKind weight = WeightKind::cr_at_h;
  unsigned s = 1;
  std::uint64_t h = 0;
  std::vector<std::pair<std::string, double>> params;  // extra numeric parameters, in output order
  std::vector<CorrelationRecord> records;
};

struct CorrelationConfig {
  TheoremKind theorem = TheoremKind::T2;
  unsigned s = 1;
  std::uint64_t h = 0;
  std::vector<std::uint64_t> schedule;  // strictly increasing
  ArithmeticFunction f;
  ArithmeticFunction g;
  double multiplier = 0.0;  // main term per unit N
  std::vector<std::pair<std::string, double>> params;
  unsigned threads = 0;
};

/// f, g given with coefficient families; the multiplier is theorem1_main (T1)
/// or theorem2_main (T2) truncated at R.
CorrelationConfig theorem_config(TheoremKind kind, const ExpansionCoefficients& fhat,
                                 const ExpansionCoefficients& ghat, ArithmeticFunction f,
                                 ArithmeticFunction g, std::uint64_t h, std::uint64_t R,
                                 std::vector<std::uint64_t> schedule);

/// The sigma-pair correlation with multiplier corollary_main(a, b, s, h).
CorrelationConfig corollary_config(double a, double b, SExponent s, std::uint64_t h,
                                   std::vector<std::uint64_t> schedule);

/// One record per scheduled N. lhs at each N extends the previous one by the
/// segment sum, so the run costs one pass up to max N.
CorrelationReport run_correlation_report(const CorrelationConfig& config);

void write_correlation_json(std::ostream& out, const CorrelationReport& report);
void write_correlation_csv(std::ostream& out, const CorrelationReport& report);

enum class LemmaId { L1, L2, L3, L4 };
std::string to_string(LemmaId id);

struct LemmaGrid {
  std::uint64_t r_max = 10;
  std::uint64_t k_max = 10;
  std::vector<unsigned> s_values{1, 2};
  std::vector<std::uint64_t> N_values{100, 500, 2000};
  std::vector<std::uint64_t> h_values{0, 1, 5};
};

struct LemmaGridPoint {
  std::uint64_t r = 1, k = 1;
  unsigned s = 1;
  std::uint64_t h = 0, N = 1;
  wide_int exact_sum = 0;  // sum_{n <= N} c_r^s(n) c_k^s(n + h)
  double measured = 0.0;
  double bound = 0.0;
  double normalized = 0.0;
  bool pass = true;
};

struct LemmaCheckReport {
  LemmaId lemma = LemmaId::L1;
  std::vector<LemmaGridPoint> grid;
  double max_normalized = 0.0;
  bool all_pass = true;
};

/// L1: sum c_r c_k <= N tau_s(r^s) tau_s(k^s) (r^s, k^s)_s            (h ignored, taken as 0)
/// L2: |sum c_r(n) c_k(n+h) - [r=k] N c_r(h)| / (r^s k^s ln(r^s k^s))  (r^s k^s = 1 skipped)
/// L3: |sum c_r(n) c_k(n+h)| <= sqrt(N (N+h) r^s k^s) tau_s(r^s) tau_s(k^s)
/// L4: sum c_r(n) c_k(n+h) <= 2 N Phi_s(r^s) tau(k)                    (requires h <= N)
/// Sums are exact integers taken from CRSumTable rows. Inequalities are
/// decided in integer arithmetic.
LemmaCheckReport lemma_check(LemmaId lemma, const LemmaGrid& grid, unsigned threads = 0);

/// For each (r, k, s, h), normalized values at consecutive scheduled N >= from_N
/// satisfy next <= slack * previous.
bool lemma2_non_increasing(const LemmaCheckReport& report, std::uint64_t from_N, double slack);

void write_lemma_json(std::ostream& out, const LemmaCheckReport& report);
void write_lemma_csv(std::ostream& out, const LemmaCheckReport& report);

}  // namespace crlab

#include "crlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <ostream>
#include <tuple>

#include "crlab/cr_sum.hpp"
#include "crlab/format.hpp"
#include "crlab/parallel.hpp"

namespace crlab {

namespace {

void require_shared_s(const ExpansionCoefficients& f, const ExpansionCoefficients& g, std::uint64_t R) {
  if (f.s() != g.s()) throw PreconditionError("coefficient families use different s");
  if (R > f.truncation() || R > g.truncation())
    throw PreconditionError("R exceeds the truncation of a coefficient family");
}

}  // namespace

double correlation_sum(const ArithmeticFunction& f, const ArithmeticFunction& g, std::uint64_t h,
                       std::uint64_t N, unsigned threads) {
  if (N == 0) throw DomainError("correlation_sum: N must be >= 1");
  return deterministic_sum(1, N + 1, threads, [&](std::uint64_t n) { return f(n) * g(n + h); });
}

double theorem1_main(const ExpansionCoefficients& f, const ExpansionCoefficients& g, std::uint64_t R) {
  require_shared_s(f, g, R);
  double sum = 0.0;
  for (std::uint64_t r = 1; r <= R; ++r) sum += f[r] * g[r] * to_double(jordan_totient(r, f.s()));
  return sum;
}

double theorem2_main(const ExpansionCoefficients& f, const ExpansionCoefficients& g, std::uint64_t h,
                     std::uint64_t R) {
  require_shared_s(f, g, R);
  double sum = 0.0;
  for (std::uint64_t r = 1; r <= R; ++r) sum += f[r] * g[r] * to_double(cr_sum_exact(r, h, f.s()));
  return sum;
}

double theorem1_hypothesis_sum(const ExpansionCoefficients& f, const ExpansionCoefficients& g,
                               std::uint64_t R) {
  require_shared_s(f, g, R);
  const SExponent s = f.s();
  std::vector<double> tau(R + 1);
  std::vector<std::uint64_t> power(R + 1);
  for (std::uint64_t r = 1; r <= R; ++r) {
    power[r] = checked_pow_u64(r, s);
    tau[r] = static_cast<double>(tau_s(power[r], s));
  }
  double sum = 0.0;
  for (std::uint64_t r = 1; r <= R; ++r)
    for (std::uint64_t k = 1; k <= R; ++k)
      sum += std::abs(f[r] * g[k]) * static_cast<double>(gcd_s(power[r], power[k], s)) * tau[r] * tau[k];
  return sum;
}

double theorem2_hypothesis_sum(const ExpansionCoefficients& f, const ExpansionCoefficients& g,
                               std::uint64_t R) {
  require_shared_s(f, g, R);
  const SExponent s = f.s();
  std::vector<double> weight(R + 1);
  for (std::uint64_t r = 1; r <= R; ++r) {
    const std::uint64_t rs = checked_pow_u64(r, s);
    weight[r] = std::sqrt(static_cast<double>(rs)) * static_cast<double>(tau_s(rs, s));
  }
  double sum = 0.0;
  for (std::uint64_t r = 1; r <= R; ++r)
    for (std::uint64_t k = 1; k <= R; ++k) sum += std::abs(f[r]) * std::abs(g[k]) * weight[r] * weight[k];
  return sum;
}

HDecomposition decompose_h(std::uint64_t h, SExponent s) {
  if (h == 0) throw DomainError("decompose_h: h must be positive");
  HDecomposition out{h, 1, 1};
  for (const auto& [p, e] : factorize(h).factors) {
    for (unsigned i = 0; i < e / s; ++i) out.m *= p;
    for (unsigned i = 0; i < e % s; ++i) out.k *= p;
  }
  return out;
}

double corollary_main(double a, double b, SExponent s, std::uint64_t h) {
  if (!(a > 1.5) || !(b > 1.5)) throw PreconditionError("corollary: requires a, b > 3/2");
  const HDecomposition dec = decompose_h(h, s);
  const double ratio = zeta(a + 1.0) * zeta(b + 1.0) / zeta(a + b + 2.0);
  return ratio * sigma_real(dec.m, -(a + b + 1.0) * static_cast<double>(s.value()));
}

ArithmeticFunction sigma_ratio_function(double x, std::uint64_t limit) {
  auto sieve = std::make_shared<const PrimeFactorSieve>(limit);
  // sigma_x(n) / n^x = sum_{d | n} (d/n)^x = sum_{e | n} e^{-x}
  return [sieve, x](std::uint64_t n) { return sigma_real(sieve->factorize(n), -x); };
}

double corollary_lhs(double a, double b, SExponent s, std::uint64_t h, std::uint64_t N, unsigned threads) {
  if (!(a > 1.5) || !(b > 1.5)) throw PreconditionError("corollary: requires a, b > 3/2");
  const double sd = static_cast<double>(s.value());
  const auto f = sigma_ratio_function(a * sd, N);
  const auto g = sigma_ratio_function(b * sd, N + h);
  return correlation_sum(f, g, h, N, threads);
}

std::string to_string(TheoremKind kind) {
  switch (kind) {
    case TheoremKind::T1: return "T1";
    case TheoremKind::T2: return "T2";
    case TheoremKind::corollary: return "corollary";
  }
  return "?";
}

std::string to_string(LemmaId id) { return "L" + std::to_string(static_cast<int>(id) + 1); }

CorrelationConfig theorem_config(TheoremKind kind, const ExpansionCoefficients& fhat,
                                 const ExpansionCoefficients& ghat, ArithmeticFunction f,
                                 ArithmeticFunction g, std::uint64_t h, std::uint64_t R,
                                 std::vector<std::uint64_t> schedule) {
  if (kind == TheoremKind::corollary) throw PreconditionError("theorem_config: use corollary_config");
  if (kind == TheoremKind::T1 && h != 0) throw PreconditionError("T1 correlates f(n) g(n): h must be 0");
  CorrelationConfig c;
  c.theorem = kind;
  c.s = fhat.s();
  c.h = h;
  c.schedule = std::move(schedule);
  c.f = std::move(f);
  c.g = std::move(g);
  c.multiplier = kind == TheoremKind::T1 ? theorem1_main(fhat, ghat, R) : theorem2_main(fhat, ghat, h, R);
  c.params = {{"R", static_cast<double>(R)}};
  return c;
}

CorrelationConfig corollary_config(double a, double b, SExponent s, std::uint64_t h,
                                   std::vector<std::uint64_t> schedule) {
  CorrelationConfig c;
  c.theorem = TheoremKind::corollary;
  c.s = s;
  c.h = h;
  c.multiplier = corollary_main(a, b, s, h);
  const std::uint64_t top = schedule.empty() ? 1 : *std::max_element(schedule.begin(), schedule.end());
  const double sd = static_cast<double>(s.value());
  c.f = sigma_ratio_function(a * sd, top);
  c.g = sigma_ratio_function(b * sd, top + h);
  c.schedule = std::move(schedule);
  const HDecomposition dec = decompose_h(h, s);
  c.params = {{"a", a}, {"b", b}, {"m", static_cast<double>(dec.m)}, {"k", static_cast<double>(dec.k)}};
  return c;
}

CorrelationReport run_correlation_report(const CorrelationConfig& config) {
  if (config.schedule.empty()) throw PreconditionError("correlation report: empty N schedule");
  if (config.schedule.front() == 0) throw PreconditionError("correlation report: N must be >= 1");
  for (std::size_t i = 1; i < config.schedule.size(); ++i)
    if (config.schedule[i] <= config.schedule[i - 1])
      throw PreconditionError("correlation report: N schedule must be strictly increasing");
  if (!config.f || !config.g) throw PreconditionError("correlation report: f and g are required");

  CorrelationReport report;
  report.theorem = config.theorem;
  report.weight = config.theorem == TheoremKind::T1 ? WeightKind::phi : WeightKind::cr_at_h;
  report.s = config.s;
  report.h = config.h;
  report.params = config.params;

  double lhs = 0.0;
  std::uint64_t done = 0;
  for (std::uint64_t N : config.schedule) {
    lhs += deterministic_sum(done + 1, N + 1, config.threads,
                             [&](std::uint64_t n) { return config.f(n) * config.g(n + config.h); });
    done = N;
    CorrelationRecord rec;
    rec.N = N;
    rec.lhs = lhs;
    rec.main_term = static_cast<double>(N) * config.multiplier;
    if (rec.main_term != 0.0) rec.ratio = rec.lhs / rec.main_term;
    report.records.push_back(rec);
  }
  return report;
}

void write_correlation_json(std::ostream& out, const CorrelationReport& report) {
  out << "{\"theorem\": " << json_quote(to_string(report.theorem)) << ", \"params\": {\"s\": " << report.s
      << ", \"h\": " << report.h;
  for (const auto& [key, value] : report.params) out << ", " << json_quote(key) << ": " << format_float(value);
  out << ", \"weight_kind\": " << json_quote(report.weight == WeightKind::phi ? "phi" : "cr_at_h")
      << "}, \"records\": [";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& r = report.records[i];
    out << (i ? ", " : "") << "{\"N\": " << r.N << ", \"lhs\": " << format_float(r.lhs)
        << ", \"main_term\": " << format_float(r.main_term)
        << ", \"ratio\": " << (r.ratio ? format_float(*r.ratio) : "null") << "}";
  }
  out << "]}\n";
}

void write_correlation_csv(std::ostream& out, const CorrelationReport& report) {
  out << "N,lhs,main_term,ratio\n";
  for (const auto& r : report.records)
    out << r.N << ',' << format_float(r.lhs) << ',' << format_float(r.main_term) << ','
        << (r.ratio ? format_float(*r.ratio) : "") << '\n';
}

LemmaCheckReport lemma_check(LemmaId lemma, const LemmaGrid& grid, unsigned threads) {
  if (grid.r_max == 0 || grid.k_max == 0 || grid.s_values.empty() || grid.N_values.empty() ||
      grid.h_values.empty())
    throw PreconditionError("lemma_check: empty grid");
  for (unsigned s : grid.s_values)
    if (s == 0) throw PreconditionError("lemma_check: s must be >= 1");
  for (std::uint64_t N : grid.N_values)
    if (N == 0) throw PreconditionError("lemma_check: N must be >= 1");
  const std::vector<std::uint64_t> h_values =
      lemma == LemmaId::L1 ? std::vector<std::uint64_t>{0} : grid.h_values;
  if (lemma == LemmaId::L4)
    for (std::uint64_t h : h_values)
      for (std::uint64_t N : grid.N_values)
        if (h > N) throw PreconditionError("lemma_check: L4 requires h <= N at every grid point");

  const std::uint64_t max_N = *std::max_element(grid.N_values.begin(), grid.N_values.end());
  const std::uint64_t max_h = *std::max_element(h_values.begin(), h_values.end());
  const std::uint64_t rows = std::max(grid.r_max, grid.k_max);

  LemmaCheckReport report;
  report.lemma = lemma;
  for (unsigned s_raw : grid.s_values) {
    const SExponent s{s_raw};
    const CRSumTable table = build_table(rows, max_N + max_h, s, threads);

    std::vector<LemmaGridPoint> points;
    for (std::uint64_t r = 1; r <= grid.r_max; ++r)
      for (std::uint64_t k = 1; k <= grid.k_max; ++k) {
        if (lemma == LemmaId::L2 && r == 1 && k == 1) continue;  // ln(r^s k^s) = 0
        for (std::uint64_t h : h_values)
          for (std::uint64_t N : grid.N_values) points.push_back({r, k, s_raw, h, N});
      }

    parallel_for(points.size(), threads, [&](std::size_t i) {
      LemmaGridPoint& p = points[i];
      wide_int sum = 0;
      for (std::uint64_t n = 1; n <= p.N; ++n)
        sum += static_cast<wide_int>(table(p.r, n)) * table(p.k, n + p.h);
      p.exact_sum = sum;

      const wide_int rs = checked_pow(p.r, s);
      const wide_int ks = checked_pow(p.k, s);
      const wide_int tau_r = tau_s(to_u64(rs), s);
      const wide_int tau_k = tau_s(to_u64(ks), s);
      const wide_int N = p.N;
      switch (lemma) {
        case LemmaId::L1: {
          const wide_int bound = N * tau_r * tau_k * gcd_s(to_u64(rs), to_u64(ks), s);
          p.measured = to_double(sum);
          p.bound = to_double(bound);
          p.pass = sum <= bound;
          break;
        }
        case LemmaId::L2: {
          const wide_int main = p.r == p.k ? N * table(p.r, p.h) : 0;
          const wide_int diff = sum - main;
          p.measured = to_double(diff < 0 ? -diff : diff);
          const double prod = to_double(rs * ks);
          p.bound = prod * std::log(prod);
          p.pass = std::isfinite(p.measured / p.bound);
          break;
        }
        case LemmaId::L3: {
          const wide_int abs_sum = sum < 0 ? -sum : sum;
          const wide_int radicand = checked_mul(checked_mul(N * (N + p.h), rs * ks),
                                                checked_mul(tau_r * tau_r, tau_k * tau_k));
          p.measured = to_double(abs_sum);
          p.bound = std::sqrt(to_double(N * (N + p.h)) * to_double(rs * ks)) * to_double(tau_r * tau_k);
          p.pass = checked_mul(abs_sum, abs_sum) <= radicand;
          break;
        }
        case LemmaId::L4: {
          const wide_int bound = 2 * N * jordan_totient(p.r, s) * tau_s(p.k, SExponent{1});
          p.measured = to_double(sum);
          p.bound = to_double(bound);
          p.pass = sum <= bound;
          break;
        }
      }
      p.normalized = p.measured / p.bound;
    });

    for (const auto& p : points) {
      report.grid.push_back(p);
      report.max_normalized = report.grid.size() == 1 ? p.normalized : std::max(report.max_normalized, p.normalized);
      report.all_pass = report.all_pass && p.pass;
    }
  }
  return report;
}

bool lemma2_non_increasing(const LemmaCheckReport& report, std::uint64_t from_N, double slack) {
  std::map<std::tuple<std::uint64_t, std::uint64_t, unsigned, std::uint64_t>,
           std::map<std::uint64_t, double>>
      series;
  for (const auto& p : report.grid) series[{p.r, p.k, p.s, p.h}][p.N] = p.normalized;
  for (const auto& [key, by_N] : series) {
    const double* previous = nullptr;
    for (const auto& [N, value] : by_N) {
      if (N < from_N) continue;
      if (previous != nullptr && value > slack * *previous) return false;
      previous = &value;
    }
  }
  return true;
}

void write_lemma_json(std::ostream& out, const LemmaCheckReport& report) {
  out << "{\"lemma\": " << json_quote(to_string(report.lemma)) << ", \"grid\": [";
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    const auto& p = report.grid[i];
    out << (i ? ", " : "") << "{\"r\": " << p.r << ", \"k\": " << p.k << ", \"s\": " << p.s
        << ", \"h\": " << p.h << ", \"N\": " << p.N << ", \"measured\": " << format_float(p.measured)
        << ", \"bound\": " << format_float(p.bound) << ", \"normalized\": " << format_float(p.normalized)
        << "}";
  }
  out << "], \"max_normalized\": " << format_float(report.max_normalized) << "}\n";
}

void write_lemma_csv(std::ostream& out, const LemmaCheckReport& report) {
  out << "r,k,s,h,N,measured,bound,normalized\n";
  for (const auto& p : report.grid)
    out << p.r << ',' << p.k << ',' << p.s << ',' << p.h << ',' << p.N << ',' << format_float(p.measured) << ','
        << format_float(p.bound) << ',' << format_float(p.normalized) << '\n';
}

}  // namespace crlab

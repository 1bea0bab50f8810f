#include "crlab/expansion.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "crlab/cr_sum.hpp"
#include "crlab/format.hpp"
#include "crlab/parallel.hpp"

namespace crlab {

ExpansionCoefficients sigma_expansion(unsigned k, SExponent s, std::uint64_t R) {
  if (k == 0) throw DomainError("sigma_expansion: k must be >= 1");
  if (R == 0) throw DomainError("sigma_expansion: R must be >= 1");
  // sum_r c_r^s(n^s) r^{-ws} = sigma_{-(w-1)s}(n) / zeta(ws), so the constant is
  // zeta((k+1)s); it reduces to zeta(k+1) at s = 1.
  const double exponent = static_cast<double>((k + 1) * s.value());
  const double z = zeta(exponent);
  std::vector<double> coeffs(R);
  for (std::uint64_t r = 1; r <= R; ++r) coeffs[r - 1] = z * std::pow(static_cast<double>(r), -exponent);
  return {s, ArgumentMode::n_to_s, std::move(coeffs), {Provenance::Kind::closed_form_sigma, k}};
}

double evaluate(const ExpansionCoefficients& coeffs, std::uint64_t n, unsigned threads) {
  if (n == 0) throw DomainError("evaluate: n must be positive");
  const SExponent s = coeffs.s();
  const std::uint64_t arg = coeffs.mode() == ArgumentMode::n_to_s ? checked_pow_u64(n, s) : n;
  return deterministic_sum(1, coeffs.truncation() + 1, threads, [&](std::uint64_t r) {
    const double c = to_double(cr_sum_exact(r, arg, s));
    return c == 0.0 ? 0.0 : coeffs[r] * c;
  });
}

MeanValueResult mean_value_coefficient(const ArithmeticFunction& f, std::uint64_t r, SExponent s,
                                       std::uint64_t N, unsigned threads) {
  if (N == 0) throw DomainError("mean_value_coefficient: N must be >= 1");
  const CRSumKernel c(r, s);
  const double sum = deterministic_sum(1, N + 1, threads, [&](std::uint64_t n) {
    const wide_int cn = c(n);
    return cn == 0 ? 0.0 : f(n) * to_double(cn);
  });
  const double phi = to_double(jordan_totient(r, s));  // Phi_s(r^s) = J_s(r)
  MeanValueResult out;
  out.value = sum / (static_cast<double>(N) * phi);
  try {
    out.period_exact = N % checked_pow_u64(r, s) == 0;
  } catch (const RangeError&) {
    out.period_exact = false;
  }
  return out;
}

ExpansionCoefficients extract_coefficients(const ArithmeticFunction& f, SExponent s, std::uint64_t R,
                                           std::uint64_t N, unsigned threads) {
  std::vector<double> coeffs(R);
  for (std::uint64_t r = 1; r <= R; ++r) coeffs[r - 1] = mean_value_coefficient(f, r, s, N, threads).value;
  return {s, ArgumentMode::plain_n, std::move(coeffs), {Provenance::Kind::mean_value_extracted, N}};
}

ExpansionCoefficients shift_coefficients(const ExpansionCoefficients& coeffs, std::uint64_t h) {
  if (coeffs.mode() != ArgumentMode::plain_n)
    throw PreconditionError("shift_coefficients: family must be expanded in c_r^s(n), not c_r^s(n^s)");
  const SExponent s = coeffs.s();
  std::vector<double> shifted(coeffs.truncation());
  for (std::uint64_t r = 1; r <= coeffs.truncation(); ++r) {
    const wide_int c = cr_sum_exact(r, h, s);
    const wide_int phi = jordan_totient(r, s);
    // c_r^s(0) = Phi_s(r^s): keep h = 0 bit-exact.
    shifted[r - 1] = c == phi ? coeffs[r] : coeffs[r] * to_double(c) / to_double(phi);
  }
  return {s, ArgumentMode::plain_n, std::move(shifted), {Provenance::Kind::shifted, h}};
}

double tau_weighted_norm(const ExpansionCoefficients& coeffs) {
  double sum = 0.0;
  for (std::uint64_t r = 1; r <= coeffs.truncation(); ++r)
    sum += std::abs(coeffs[r]) * static_cast<double>(tau_s(r, SExponent{1}));
  return sum;
}

void write_coefficients_csv(std::ostream& out, const ExpansionCoefficients& coeffs) {
  out << "r,coefficient\n";
  for (std::uint64_t r = 1; r <= coeffs.truncation(); ++r) out << r << ',' << format_float(coeffs[r]) << '\n';
}

ExpansionCoefficients read_coefficients_csv(std::istream& in, SExponent s, ArgumentMode mode,
                                            Provenance provenance) {
  std::string line;
  if (!std::getline(in, line) || line != "r,coefficient")
    throw std::runtime_error("coefficient CSV: expected header 'r,coefficient'");
  std::vector<double> coeffs;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("coefficient CSV line " + std::to_string(line_no) + ": missing comma");
    std::size_t used = 0;
    unsigned long long r = 0;
    double value = 0.0;
    try {
      r = std::stoull(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("r");
      const std::string rest = line.substr(comma + 1);
      value = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("coefficient");
    } catch (const std::logic_error&) {
      throw std::runtime_error("coefficient CSV line " + std::to_string(line_no) + ": malformed row");
    }
    if (r != coeffs.size() + 1)
      throw std::runtime_error("coefficient CSV line " + std::to_string(line_no) +
                               ": r must be contiguous from 1");
    coeffs.push_back(value);
  }
  return {s, mode, std::move(coeffs), provenance};
}

}  // namespace crlab

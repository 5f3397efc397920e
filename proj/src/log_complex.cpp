#include "pwcheck/log_complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pwcheck {

double principal_phase(double angle) {
  constexpr double kPi = std::numbers::pi;
  double r = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

LogComplex LogComplex::from_polar(long double logmag, double phase) {
  return LogComplex{logmag, principal_phase(phase), false};
}

LogComplex LogComplex::from_complex(std::complex<double> z) {
  const double r = std::abs(z);
  if (r == 0.0) return zero();
  // hypot-based modulus, then log in extended precision.
  return LogComplex{std::log(static_cast<long double>(r)), principal_phase(std::arg(z)), false};
}

std::complex<double> LogComplex::to_complex() const {
  if (is_zero) return {0.0, 0.0};
  const long double mag = std::exp(logmag);
  return {static_cast<double>(mag * std::cos(static_cast<long double>(phase))),
          static_cast<double>(mag * std::sin(static_cast<long double>(phase)))};
}

LogComplex LogComplex::operator-() const {
  if (is_zero) return *this;
  return from_polar(logmag, phase + std::numbers::pi);
}

LogComplex operator*(const LogComplex& x, const LogComplex& y) {
  if (x.is_zero || y.is_zero) return LogComplex::zero();
  return LogComplex::from_polar(x.logmag + y.logmag, x.phase + y.phase);
}

LogComplex LogComplex::pow(int n) const {
  if (n == 0) return from_polar(0.0L, 0.0);
  if (is_zero) return zero();
  return from_polar(logmag * n, phase * n);
}

LogComplex log_sum(std::span<const LogComplex> terms) {
  long double top = -std::numeric_limits<long double>::infinity();
  for (const auto& t : terms) {
    if (!t.is_zero) top = std::max(top, t.logmag);
  }
  if (!std::isfinite(top)) return LogComplex::zero();

  std::complex<long double> acc{0.0L, 0.0L};
  int live = 0;
  for (const auto& t : terms) {
    if (t.is_zero) continue;
    ++live;
    const long double scale = std::exp(t.logmag - top);
    acc += std::polar(scale, static_cast<long double>(t.phase));
  }
  const long double mag = std::abs(acc);
  if (mag <= 8.0L * live * std::numeric_limits<double>::epsilon()) return LogComplex::zero();
  return LogComplex{top + std::log(mag), principal_phase(static_cast<double>(std::arg(acc))),
                    false};
}

}  // namespace pwcheck

#pragma once

#include <complex>
#include <span>

namespace pwcheck {

/// A complex number stored as (log |z|, arg z). The magnitude is kept in
/// extended precision so exp(logmag) stays accurate to ~1e-16 relative even
/// when |logmag| is in the hundreds.
struct LogComplex {
  long double logmag = 0.0L;
  double phase = 0.0;  // (-pi, pi]
  bool is_zero = true;

  static LogComplex zero() { return {}; }
  static LogComplex from_polar(long double logmag, double phase);
  static LogComplex from_complex(std::complex<double> z);

  /// Overflows to inf for logmag beyond ~709.
  std::complex<double> to_complex() const;

  LogComplex operator-() const;
  friend LogComplex operator*(const LogComplex& x, const LogComplex& y);
  LogComplex pow(int n) const;
};

/// Sum of terms with the largest magnitude factored out first. A result that
/// cancels below roundoff of the largest term is reported as zero.
LogComplex log_sum(std::span<const LogComplex> terms);

/// Reduce an angle to (-pi, pi].
double principal_phase(double angle);

}  // namespace pwcheck

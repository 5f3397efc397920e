#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "pwcheck/log_complex.hpp"
#include "pwcheck/periods.hpp"

namespace pwcheck {

/// Angles mu_j(R, phi) of the diagonal unitary factors at the three punctures.
/// Their actual form is unknown, so they are a user-selected profile; every
/// variant is continuous and 2*pi-periodic in phi.
class MuProfile {
 public:
  enum class Kind { kZero, kConstant, kSmoothRandom };

  static MuProfile zero() { return MuProfile(); }
  static MuProfile constant(double mu0, double mu1, double mut);
  static MuProfile smooth_random(std::uint64_t seed, int harmonics = 3);
  /// Accepts "zero", "const:MU0,MU1,MUT" and "random:SEED".
  static MuProfile parse(std::string_view text);

  Kind kind() const { return kind_; }
  std::string to_string() const;

  /// (mu_0, mu_1, mu_t) at (R, phi).
  std::array<double, 3> operator()(double R, double phi) const;

 private:
  Kind kind_ = Kind::kZero;
  std::array<double, 3> offset_{};
  std::uint64_t seed_ = 0;
  int harmonics_ = 0;
  // Fourier coefficients, harmonics_ per puncture.
  std::array<std::array<double, 16>, 3> cos_{};
  std::array<std::array<double, 16>, 3> sin_{};
  std::array<double, 3> r_coupling_{};
};

/// 2 cosh(rho + i delta) in log form. Exact up to rounding for any finite rho;
/// the large exponential is factored out so nothing overflows.
LogComplex cosh_log(double rho, double delta);

struct TraceTriple {
  std::array<LogComplex, 3> X;
  double R = 0.0;
  double phi = 0.0;
};

/// Asymptotic traces of B0 B1, Bt B0 and B1 Bt on the circle |det| = R.
TraceTriple trace_coordinates(double R, double phi, const PeriodTriangle& tri,
                              const MuProfile& mu);

/// [X0 : X1 : X2 : X3] with X0 = 1, stored as log-magnitudes shifted so the
/// largest is 0. A vanishing coordinate has ell = -inf.
struct ProjectivePoint {
  std::array<double, 4> ell{};
  std::array<double, 4> phase{};
};

ProjectivePoint projective_normalize(const TraceTriple& tt);

using FrickeConstants = std::array<std::complex<double>, 4>;

/// X1 X2 X3 + X1^2 + X2^2 + X3^2 - s1 X1 - s2 X2 - s3 X3 + s4, in log form.
/// Diagnostic only: asymptotic traces need not lie on the cubic.
LogComplex fricke_residual(const TraceTriple& tt, const FrickeConstants& s);

}  // namespace pwcheck

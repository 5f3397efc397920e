#pragma once

#include "pwcheck/contour.hpp"

namespace pwcheck {

inline constexpr Complex kDefaultBasepoint{-2.0, -2.0};
inline constexpr double kDefaultDegeneracyFloor = 1e-6;

/// Integrals of the bivalued form over the keyhole loops around 0, 1 and t,
/// all transported from one branch choice at the basepoint.
struct HalfPeriods {
  Complex pi0;
  Complex pi1;
  Complex pit;
  Complex z0;
  double tol_used = 0.0;

  Complex operator[](Puncture p) const;
};

/// Sides a = pi0 - pi1, b = pit - pi0, c = pi1 - pit. Individual half-periods
/// move with the basepoint; these differences do not (up to one global sign).
struct PeriodTriangle {
  Complex a;
  Complex b;
  Complex c;

  /// Validates closure and non-degeneracy; throws DegenerateTriangleError.
  static PeriodTriangle from_sides(Complex a, Complex b, Complex c,
                                   double degeneracy_floor = kDefaultDegeneracyFloor);

  Complex side(int index) const;  // 0 -> a, 1 -> b, 2 -> c
  double scale() const;
  PeriodTriangle scaled(Complex lambda) const { return {lambda * a, lambda * b, lambda * c}; }
};

/// Quarter of the distance from puncture j to its nearest neighbour.
double auto_radius(const PunctureConfig& punctures, Puncture j);

HalfPeriods half_periods(const PunctureConfig& punctures, Complex z0 = kDefaultBasepoint,
                         double tol = 1e-10, BranchState initial = {});

PeriodTriangle period_triangle(const HalfPeriods& hp,
                               double degeneracy_floor = kDefaultDegeneracyFloor);

}  // namespace pwcheck

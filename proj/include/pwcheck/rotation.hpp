#pragma once

#include <array>
#include <utility>

#include "pwcheck/periods.hpp"

namespace pwcheck {

/// Reduce an angle to [0, 2*pi).
double wrap_two_pi(double angle);
/// Reduce an angle to (-pi, pi].
double wrap_pi(double angle);
/// Positive (counterclockwise) distance from `from` to `to` on the circle.
double ccw_distance(double from, double to);

/// |Re(e^{i phi / 2} side)|: the side's shadow on the real axis after the
/// triangle has been rotated by phi / 2.
double projected_length(Complex side, double phi);

/// The unique phi in [0, 2*pi) at which e^{i phi / 2} side is purely imaginary.
double critical_angle(Complex side);

struct CriticalAngles {
  double phi_a = 0.0;
  double phi_b = 0.0;
  double phi_c = 0.0;

  double operator[](int index) const;
};

/// Closed arc of the circle, traversed counterclockwise from start to end.
struct Arc {
  double start = 0.0;
  double end = 0.0;

  double length() const { return ccw_distance(start, end); }
  bool contains(double phi) const;
  /// Interior test with `guard` radians trimmed from both ends.
  bool interior_contains(double phi, double guard = 0.0) const;
};

/// I1, I2, I3: I_k is bounded by the critical angles of the other two sides
/// and is the stretch on which side k has the largest projection.
struct ArcDecomposition {
  std::array<Arc, 3> arcs;

  const Arc& operator[](int index) const { return arcs[static_cast<std::size_t>(index)]; }
  /// Index of the arc whose interior holds phi, or -1 at a critical angle.
  int arc_index(double phi) const;
};

std::pair<CriticalAngles, ArcDecomposition> arc_decomposition(const PeriodTriangle& tri);

struct Dominance {
  int index = 1;  // 1-based: 1 -> a, 2 -> b, 3 -> c
  double margin = 0.0;
};

/// Side with the largest projected length at phi; ties go to the lowest index.
Dominance dominant_side(const PeriodTriangle& tri, double phi);

}  // namespace pwcheck

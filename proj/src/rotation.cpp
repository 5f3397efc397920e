#include "pwcheck/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pwcheck/errors.hpp"

namespace pwcheck {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinAngleGap = 1e-8;
}  // namespace

double wrap_two_pi(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double wrap_pi(double angle) {
  double r = wrap_two_pi(angle);
  if (r > kPi) r -= kTwoPi;
  return r;
}

double ccw_distance(double from, double to) { return wrap_two_pi(to - from); }

double projected_length(Complex side, double phi) {
  return std::abs((std::polar(1.0, 0.5 * phi) * side).real());
}

double critical_angle(Complex side) {
  if (std::abs(side) == 0.0) throw DegenerateTriangleError("critical angle of a zero side");
  double half = std::fmod(0.5 * kPi - std::arg(side), kPi);
  if (half < 0.0) half += kPi;
  if (half >= kPi) half = 0.0;
  return 2.0 * half;
}

double CriticalAngles::operator[](int index) const {
  switch (index) {
    case 0:
      return phi_a;
    case 1:
      return phi_b;
    default:
      return phi_c;
  }
}

bool Arc::contains(double phi) const {
  return ccw_distance(start, wrap_two_pi(phi)) <= length();
}

bool Arc::interior_contains(double phi, double guard) const {
  const double offset = ccw_distance(start, wrap_two_pi(phi));
  return offset > guard && offset < length() - guard;
}

int ArcDecomposition::arc_index(double phi) const {
  for (int k = 0; k < 3; ++k) {
    if (arcs[static_cast<std::size_t>(k)].interior_contains(phi)) return k;
  }
  return -1;
}

std::pair<CriticalAngles, ArcDecomposition> arc_decomposition(const PeriodTriangle& tri) {
  const std::array<double, 3> phi{critical_angle(tri.a), critical_angle(tri.b),
                                  critical_angle(tri.c)};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double gap = std::min(ccw_distance(phi[i], phi[j]), ccw_distance(phi[j], phi[i]));
      if (gap <= kMinAngleGap) {
        throw DegenerateTriangleError("critical angles coincide; periods are collinear");
      }
    }
  }

  ArcDecomposition arcs;
  for (int k = 0; k < 3; ++k) {
    const double lo = phi[static_cast<std::size_t>((k + 1) % 3)];
    const double hi = phi[static_cast<std::size_t>((k + 2) % 3)];
    const double excluded = phi[static_cast<std::size_t>(k)];
    // Pick the orientation whose open arc misses the excluded angle.
    Arc arc{lo, hi};
    if (arc.interior_contains(excluded)) arc = Arc{hi, lo};
    arcs.arcs[static_cast<std::size_t>(k)] = arc;
  }
  return {CriticalAngles{phi[0], phi[1], phi[2]}, arcs};
}

Dominance dominant_side(const PeriodTriangle& tri, double phi) {
  const std::array<double, 3> len{projected_length(tri.a, phi), projected_length(tri.b, phi),
                                  projected_length(tri.c, phi)};
  int best = 0;
  for (int k = 1; k < 3; ++k) {
    if (len[static_cast<std::size_t>(k)] > len[static_cast<std::size_t>(best)]) best = k;
  }
  double second = -1.0;
  for (int k = 0; k < 3; ++k) {
    if (k != best) second = std::max(second, len[static_cast<std::size_t>(k)]);
  }
  return {best + 1, len[static_cast<std::size_t>(best)] - second};
}

}  // namespace pwcheck

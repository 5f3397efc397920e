#include "pwcheck/periods.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pwcheck/errors.hpp"

namespace pwcheck {

Complex HalfPeriods::operator[](Puncture p) const {
  switch (p) {
    case Puncture::kZero:
      return pi0;
    case Puncture::kOne:
      return pi1;
    case Puncture::kT:
      return pit;
  }
  return {};
}

PeriodTriangle PeriodTriangle::from_sides(Complex a, Complex b, Complex c,
                                          double degeneracy_floor) {
  PeriodTriangle tri{a, b, c};
  const double s = tri.scale();
  if (!(s > 0.0) || std::abs(a) == 0.0 || std::abs(b) == 0.0 || std::abs(c) == 0.0) {
    throw DegenerateTriangleError("period triangle has a vanishing side");
  }
  if (std::abs(a + b + c) > 1e-12 * s) {
    throw DegenerateTriangleError("period triangle does not close: |a + b + c| = " +
                                  std::to_string(std::abs(a + b + c)));
  }
  const double skew = std::abs((b / a).imag());
  if (!(skew > degeneracy_floor)) {
    throw DegenerateTriangleError("periods are collinear: |Im(b/a)| = " + std::to_string(skew));
  }
  return tri;
}

Complex PeriodTriangle::side(int index) const {
  switch (index) {
    case 0:
      return a;
    case 1:
      return b;
    default:
      return c;
  }
}

double PeriodTriangle::scale() const { return std::max({std::abs(a), std::abs(b), std::abs(c)}); }

double auto_radius(const PunctureConfig& punctures, Puncture j) {
  const Complex p = punctures.location(j);
  double nearest = std::numeric_limits<double>::infinity();
  for (Puncture k : kAllPunctures) {
    if (k != j) nearest = std::min(nearest, std::abs(p - punctures.location(k)));
  }
  return 0.25 * nearest;
}

HalfPeriods half_periods(const PunctureConfig& punctures, Complex z0, double tol,
                         BranchState initial) {
  if (punctures.distance_to_nearest_branch_point(z0) <= punctures.separation_floor()) {
    throw GeometryError("basepoint violates the separation floor");
  }
  IntegrationOptions opts;
  opts.tol = tol;

  HalfPeriods hp;
  hp.z0 = z0;
  hp.tol_used = tol;
  Complex* out[3] = {&hp.pi0, &hp.pi1, &hp.pit};
  for (Puncture j : kAllPunctures) {
    const ParamPath loop = make_puncture_loop(punctures, j, z0, auto_radius(punctures, j));
    const IntegrationResult r = integrate_branch_tracked(loop, punctures, initial, opts);
    if (!(std::abs(r.value) > 10.0 * tol)) {
      throw GeometryError(std::string("half-period around ") + to_string(j) +
                          " vanishes for this basepoint");
    }
    *out[static_cast<int>(j)] = r.value;
  }
  return hp;
}

PeriodTriangle period_triangle(const HalfPeriods& hp, double degeneracy_floor) {
  return PeriodTriangle::from_sides(hp.pi0 - hp.pi1, hp.pit - hp.pi0, hp.pi1 - hp.pit,
                                    degeneracy_floor);
}

}  // namespace pwcheck

#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace pwcheck {

using Complex = std::complex<double>;

enum class Puncture { kZero = 0, kOne = 1, kT = 2 };

inline constexpr std::array<Puncture, 3> kAllPunctures{Puncture::kZero, Puncture::kOne,
                                                       Puncture::kT};

const char* to_string(Puncture p);

/// The finite branch points {0, 1, t} of the spectral double cover
/// zeta^2 + z(z-1)(z-t) = 0 (the fourth one sits at infinity).
class PunctureConfig {
 public:
  static constexpr double kDefaultSeparationFloor = 1e-6;

  /// Throws GeometryError when t is not finite or closer than the floor to 0 or 1.
  explicit PunctureConfig(Complex t, double separation_floor = kDefaultSeparationFloor);

  Complex t() const { return t_; }
  double separation_floor() const { return floor_; }

  Complex location(Puncture p) const;
  std::array<Complex, 3> branch_points() const { return {0.0, 1.0, t_}; }

  /// z(z-1)(z-t); the form is dz / sqrt(cubic).
  Complex cubic(Complex z) const { return z * (z - 1.0) * (z - t_); }

  double distance_to_nearest_branch_point(Complex z) const;

 private:
  Complex t_;
  double floor_;
};

/// One smooth piece of a path, parameterized over s in [0, 1].
class Segment {
 public:
  enum class Kind { kLine, kArc };

  static Segment line(Complex from, Complex to);
  /// Arc of the circle |z - center| = radius starting at angle `theta0`
  /// and sweeping `sweep` radians (positive = counterclockwise).
  static Segment arc(Complex center, double radius, double theta0, double sweep);

  Kind kind() const { return kind_; }
  Complex point(double s) const;
  Complex derivative(double s) const;
  Complex start() const { return point(0.0); }
  Complex end() const { return point(1.0); }
  double length() const;
  Segment reversed() const;

  /// Exact Euclidean distance from `p` to the segment's image.
  double distance_to(Complex p) const;

  Complex center() const { return center_; }
  double radius() const { return radius_; }
  double sweep() const { return sweep_; }

 private:
  Kind kind_ = Kind::kLine;
  Complex a_{}, b_{};
  Complex center_{};
  double radius_ = 0.0;
  double theta0_ = 0.0;
  double sweep_ = 0.0;
};

/// A piecewise-smooth path; consecutive segments must share endpoints.
class ParamPath {
 public:
  ParamPath() = default;
  explicit ParamPath(std::vector<Segment> segments);

  std::span<const Segment> segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  Complex start() const;
  Complex end() const;
  bool closed() const;
  /// Largest coordinate extent of the path; sets the scale for gap tests.
  double scale() const;
  ParamPath reversed() const;
  double distance_to(Complex p) const;

 private:
  std::vector<Segment> segments_;
};

/// Circle as a closed path, starting and ending at angle `theta0`.
ParamPath circle_path(Complex center, double radius, double theta0 = 0.0, bool ccw = true);

/// Winding number of a closed path about `p` (path must avoid `p`).
int winding_about(const ParamPath& path, Complex p);

/// Which of the two square roots of the cubic is being followed, relative to
/// the principal root at the reference point.
struct BranchState {
  int sign = 1;

  BranchState flipped() const { return BranchState{-sign}; }
  friend bool operator==(BranchState, BranchState) = default;
};

/// Keyhole loop based at z0: straight corridor toward puncture `j`, one full
/// counterclockwise circle of the given radius, and the corridor back.
ParamPath make_puncture_loop(const PunctureConfig& punctures, Puncture j, Complex z0,
                             double radius);

struct IntegrationOptions {
  double tol = 1e-10;
  int nodes = 15;
  int max_depth = 40;
};

struct IntegrationResult {
  Complex value;
  BranchState final_state;
  double error_estimate = 0.0;
  int panels = 0;
};

/// Integral of dz / sqrt(z(z-1)(z-t)) along `path`, continuing the square root
/// from the branch `initial` selects at the path start. `final_state` is the
/// branch at the path end relative to the principal root there.
/// A panel is also accepted once its discrepancy falls below its own rounding
/// floor, which can exceed `tol` on paths grazing a branch point.
IntegrationResult integrate_branch_tracked(const ParamPath& path, const PunctureConfig& punctures,
                                           BranchState initial,
                                           const IntegrationOptions& options = {});

/// Same integrand on a fixed composite grid (`panels` equal panels per segment)
/// with no adaptivity; used to study the rule's convergence order.
Complex integrate_fixed_panels(const ParamPath& path, const PunctureConfig& punctures,
                               BranchState initial, int panels, int nodes);

}  // namespace pwcheck

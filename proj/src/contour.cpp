#include "pwcheck/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pwcheck/errors.hpp"
#include "pwcheck/gauss_legendre.hpp"

namespace pwcheck {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGapTolerance = 1e-12;

std::string format_complex(Complex z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

}  // namespace

const char* to_string(Puncture p) {
  switch (p) {
    case Puncture::kZero:
      return "0";
    case Puncture::kOne:
      return "1";
    case Puncture::kT:
      return "t";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// PunctureConfig

PunctureConfig::PunctureConfig(Complex t, double separation_floor)
    : t_(t), floor_(separation_floor) {
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) {
    throw GeometryError("puncture t must be finite");
  }
  if (!(separation_floor > 0.0)) throw GeometryError("separation floor must be positive");
  if (std::abs(t) <= floor_ || std::abs(t - 1.0) <= floor_) {
    throw GeometryError("puncture t = " + format_complex(t) +
                        " collides with 0 or 1 (separation floor " +
                        std::to_string(floor_) + ")");
  }
}

Complex PunctureConfig::location(Puncture p) const {
  switch (p) {
    case Puncture::kZero:
      return 0.0;
    case Puncture::kOne:
      return 1.0;
    case Puncture::kT:
      return t_;
  }
  return 0.0;
}

double PunctureConfig::distance_to_nearest_branch_point(Complex z) const {
  return std::min({std::abs(z), std::abs(z - 1.0), std::abs(z - t_)});
}

// ---------------------------------------------------------------------------
// Segment

Segment Segment::line(Complex from, Complex to) {
  Segment s;
  s.kind_ = Kind::kLine;
  s.a_ = from;
  s.b_ = to;
  return s;
}

Segment Segment::arc(Complex center, double radius, double theta0, double sweep) {
  if (!(radius > 0.0)) throw GeometryError("arc radius must be positive");
  Segment s;
  s.kind_ = Kind::kArc;
  s.center_ = center;
  s.radius_ = radius;
  s.theta0_ = theta0;
  s.sweep_ = sweep;
  return s;
}

Complex Segment::point(double s) const {
  if (kind_ == Kind::kLine) return a_ + (b_ - a_) * s;
  return center_ + std::polar(radius_, theta0_ + sweep_ * s);
}

Complex Segment::derivative(double s) const {
  if (kind_ == Kind::kLine) return b_ - a_;
  return Complex(0.0, sweep_) * std::polar(radius_, theta0_ + sweep_ * s);
}

double Segment::length() const {
  if (kind_ == Kind::kLine) return std::abs(b_ - a_);
  return radius_ * std::abs(sweep_);
}

Segment Segment::reversed() const {
  if (kind_ == Kind::kLine) return line(b_, a_);
  return arc(center_, radius_, theta0_ + sweep_, -sweep_);
}

double Segment::distance_to(Complex p) const {
  if (kind_ == Kind::kLine) {
    const Complex d = b_ - a_;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a_);
    const double s = std::clamp(((p - a_) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - point(s));
  }
  const Complex rel = p - center_;
  const double r = std::abs(rel);
  if (std::abs(sweep_) >= kTwoPi) return std::abs(r - radius_);
  // Angle of p measured along the sweep direction from theta0.
  const double lo = std::min(theta0_, theta0_ + sweep_);
  double ang = r > 0.0 ? std::arg(rel) : lo;
  double off = std::fmod(ang - lo, kTwoPi);
  if (off < 0.0) off += kTwoPi;
  if (off <= std::abs(sweep_)) return std::abs(r - radius_);
  return std::min(std::abs(p - start()), std::abs(p - end()));
}

// ---------------------------------------------------------------------------
// ParamPath

ParamPath::ParamPath(std::vector<Segment> segments) : segments_(std::move(segments)) {
  const double gap_limit = kGapTolerance * std::max(1.0, scale());
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    if (std::abs(segments_[i].start() - segments_[i - 1].end()) > gap_limit) {
      throw GeometryError("path segments " + std::to_string(i - 1) + " and " +
                          std::to_string(i) + " do not share an endpoint");
    }
  }
}

Complex ParamPath::start() const { return segments_.front().start(); }
Complex ParamPath::end() const { return segments_.back().end(); }

bool ParamPath::closed() const {
  if (segments_.empty()) return false;
  return std::abs(end() - start()) <= kGapTolerance * std::max(1.0, scale());
}

double ParamPath::scale() const {
  double s = 0.0;
  for (const auto& seg : segments_) {
    if (seg.kind() == Segment::Kind::kArc) {
      s = std::max(s, std::abs(seg.center()) + seg.radius());
    } else {
      s = std::max({s, std::abs(seg.start()), std::abs(seg.end())});
    }
  }
  return s;
}

ParamPath ParamPath::reversed() const {
  std::vector<Segment> rev;
  rev.reserve(segments_.size());
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) rev.push_back(it->reversed());
  return ParamPath(std::move(rev));
}

double ParamPath::distance_to(Complex p) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& seg : segments_) d = std::min(d, seg.distance_to(p));
  return d;
}

ParamPath circle_path(Complex center, double radius, double theta0, bool ccw) {
  return ParamPath({Segment::arc(center, radius, theta0, ccw ? kTwoPi : -kTwoPi)});
}

int winding_about(const ParamPath& path, Complex p) {
  if (!path.closed()) throw GeometryError("winding_about needs a closed path");
  const double dist = path.distance_to(p);
  if (!(dist > 0.0)) throw GeometryError("winding_about: path passes through the point");

  double total = 0.0;
  for (const auto& seg : path.segments()) {
    // Chords stay on the same side of p as the arc once each chord is short
    // compared with the distance to p.
    int pieces = 1;
    if (seg.kind() == Segment::Kind::kArc) {
      pieces = std::max(8, static_cast<int>(std::ceil(seg.length() / (0.25 * dist))));
    }
    Complex prev = seg.start() - p;
    for (int k = 1; k <= pieces; ++k) {
      const Complex cur = seg.point(static_cast<double>(k) / pieces) - p;
      total += std::arg(cur / prev);
      prev = cur;
    }
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

// ---------------------------------------------------------------------------
// Keyhole loops

ParamPath make_puncture_loop(const PunctureConfig& punctures, Puncture j, Complex z0,
                             double radius) {
  const Complex p = punctures.location(j);
  const double floor = punctures.separation_floor();
  if (!(radius > floor) || !std::isfinite(radius)) {
    throw GeometryError("loop radius must exceed the separation floor");
  }

  double nearest_other = std::numeric_limits<double>::infinity();
  for (Puncture k : kAllPunctures) {
    if (k != j) nearest_other = std::min(nearest_other, std::abs(p - punctures.location(k)));
  }
  if (radius >= 0.5 * nearest_other) {
    throw GeometryError(std::string("loop radius ") + std::to_string(radius) +
                        " around puncture " + to_string(j) +
                        " reaches past half the distance to another puncture");
  }

  const double reach = std::abs(z0 - p);
  if (reach <= radius + floor) {
    throw GeometryError("basepoint " + format_complex(z0) + " lies inside the loop around " +
                        to_string(j));
  }
  if (punctures.distance_to_nearest_branch_point(z0) <= floor) {
    throw GeometryError("basepoint " + format_complex(z0) + " sits on a branch point");
  }

  const Complex dir = (z0 - p) / reach;
  const Complex entry = p + radius * dir;
  const Segment corridor = Segment::line(z0, entry);
  for (Puncture k : kAllPunctures) {
    if (k == j) continue;
    if (corridor.distance_to(punctures.location(k)) <= floor) {
      throw GeometryError(std::string("corridor from basepoint to puncture ") + to_string(j) +
                          " hits puncture " + to_string(k));
    }
  }

  return ParamPath({corridor, Segment::arc(p, radius, std::arg(dir), kTwoPi),
                    Segment::line(entry, z0)});
}

// ---------------------------------------------------------------------------
// Branch-tracked quadrature

namespace {

// Root of the cubic at z nearest to the previously tracked value.
Complex continue_root(const PunctureConfig& pc, Complex z, Complex previous) {
  const Complex q = std::sqrt(pc.cubic(z));
  return std::norm(q - previous) <= std::norm(q + previous) ? q : -q;
}

// Consecutive roots must turn by well under a quarter turn; otherwise the
// nearest-root rule could silently jump sheets.
bool small_turn(Complex from, Complex to) {
  const double dot = (to * std::conj(from)).real();
  const double cross = std::abs((to * std::conj(from)).imag());
  return dot > 0.0 && cross < dot;  // |arg(to / from)| < pi / 4
}

struct PanelEval {
  Complex value;
  Complex root_end;
  bool tracked = false;
  // Rounding floor of `value`: evaluating z to one ulp perturbs the integrand
  // by about ulp(z) / (2 * distance to the nearest branch point).
  double noise = 0.0;
};

PanelEval eval_panel(const Segment& seg, const PunctureConfig& pc, const GaussLegendreRule& rule,
                     double s0, double s1, Complex root_start) {
  const double mid = 0.5 * (s0 + s1);
  const double half = 0.5 * (s1 - s0);
  Complex root = root_start;
  Complex sum = 0.0;
  double noise = 0.0;
  for (int i = 0; i < rule.size(); ++i) {
    const double s = mid + half * rule.nodes[i];
    const Complex z = seg.point(s);
    const Complex next = continue_root(pc, z, root);
    if (!small_turn(root, next)) return {};
    const Complex term = rule.weights[i] * seg.derivative(s) / next;
    sum += term;
    noise += std::abs(term) * std::max(1.0, std::abs(z)) / pc.distance_to_nearest_branch_point(z);
    root = next;
  }
  const Complex end = continue_root(pc, seg.point(s1), root);
  if (!small_turn(root, end)) return {};
  constexpr double kUlpFactor = 16.0 * std::numeric_limits<double>::epsilon();
  return {sum * half, end, true, kUlpFactor * noise * std::abs(half)};
}

struct Accumulator {
  Complex value = 0.0;
  double error = 0.0;
  int panels = 0;
};

Complex integrate_adaptive(const Segment& seg, const PunctureConfig& pc,
                           const GaussLegendreRule& rule, double s0, double s1, Complex root,
                           double tol, int depth, int max_depth, Accumulator& acc) {
  const double mid = 0.5 * (s0 + s1);
  const PanelEval whole = eval_panel(seg, pc, rule, s0, s1, root);
  const PanelEval left = eval_panel(seg, pc, rule, s0, mid, root);
  PanelEval right;
  if (left.tracked) right = eval_panel(seg, pc, rule, mid, s1, left.root_end);

  if (whole.tracked && left.tracked && right.tracked) {
    const Complex refined = left.value + right.value;
    const double discrepancy = std::abs(whole.value - refined);
    if (discrepancy < std::max(tol, whole.noise)) {
      acc.value += refined;
      acc.error += discrepancy;
      acc.panels += 2;
      return right.root_end;
    }
  }
  if (depth >= max_depth) {
    throw QuadratureError("adaptive quadrature did not converge after " +
                          std::to_string(max_depth) + " bisections near z = " +
                          format_complex(seg.point(mid)));
  }
  const Complex root_mid =
      integrate_adaptive(seg, pc, rule, s0, mid, root, 0.5 * tol, depth + 1, max_depth, acc);
  return integrate_adaptive(seg, pc, rule, mid, s1, root_mid, 0.5 * tol, depth + 1, max_depth,
                            acc);
}

void check_clearance(const ParamPath& path, const PunctureConfig& pc) {
  if (path.empty()) throw GeometryError("empty path");
  for (Puncture k : kAllPunctures) {
    if (path.distance_to(pc.location(k)) <= pc.separation_floor()) {
      throw GeometryError(std::string("path passes within the separation floor of puncture ") +
                          to_string(k));
    }
  }
}

BranchState relative_sign(const PunctureConfig& pc, Complex z, Complex root) {
  const Complex principal = std::sqrt(pc.cubic(z));
  return BranchState{std::norm(root - principal) <= std::norm(root + principal) ? 1 : -1};
}

}  // namespace

IntegrationResult integrate_branch_tracked(const ParamPath& path, const PunctureConfig& punctures,
                                           BranchState initial,
                                           const IntegrationOptions& options) {
  if (!(options.tol > 0.0)) throw QuadratureError("tolerance must be positive");
  if (initial.sign != 1 && initial.sign != -1) throw GeometryError("branch sign must be +-1");
  check_clearance(path, punctures);

  const GaussLegendreRule rule = gauss_legendre(options.nodes);
  const auto segments = path.segments();
  const double segment_tol = options.tol / static_cast<double>(segments.size());

  Complex root = static_cast<double>(initial.sign) * std::sqrt(punctures.cubic(path.start()));
  Accumulator acc;
  for (const auto& seg : segments) {
    root = integrate_adaptive(seg, punctures, rule, 0.0, 1.0, root, segment_tol, 0,
                              options.max_depth, acc);
  }
  return {acc.value, relative_sign(punctures, path.end(), root), acc.error, acc.panels};
}

Complex integrate_fixed_panels(const ParamPath& path, const PunctureConfig& punctures,
                               BranchState initial, int panels, int nodes) {
  if (panels < 1) throw QuadratureError("need at least one panel");
  check_clearance(path, punctures);
  const GaussLegendreRule rule = gauss_legendre(nodes);
  Complex root = static_cast<double>(initial.sign) * std::sqrt(punctures.cubic(path.start()));
  Complex total = 0.0;
  for (const auto& seg : path.segments()) {
    for (int k = 0; k < panels; ++k) {
      const PanelEval e = eval_panel(seg, punctures, rule, static_cast<double>(k) / panels,
                                     static_cast<double>(k + 1) / panels, root);
      if (!e.tracked) throw QuadratureError("fixed grid too coarse to track the branch");
      total += e.value;
      root = e.root_end;
    }
  }
  return total;
}

}  // namespace pwcheck

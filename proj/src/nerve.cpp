#include "pwcheck/nerve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pwcheck/errors.hpp"
#include "pwcheck/rotation.hpp"

namespace pwcheck {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kThird = kTwoPi / 3.0;

// Stand-in for -inf in the log-ratio formula; keeps all sums finite.
constexpr double kFloorLog = -1e300;

}  // namespace

const char* to_string(NerveEdge e) {
  switch (e) {
    case NerveEdge::kV1V2:
      return "v1v2";
    case NerveEdge::kV2V3:
      return "v2v3";
    case NerveEdge::kV3V1:
      return "v3v1";
  }
  return "?";
}

const char* to_string(PartitionScheme s) {
  return s == PartitionScheme::kTubular ? "tubular" : "log-ratio";
}

PartitionScheme parse_partition_scheme(std::string_view name) {
  if (name == "tubular") return PartitionScheme::kTubular;
  if (name == "log-ratio") return PartitionScheme::kLogRatio;
  throw std::invalid_argument("unknown partition scheme '" + std::string(name) + "'");
}

bool NervePoint::on_edge(NerveEdge e) const {
  switch (e) {
    case NerveEdge::kV1V2:
      return bary[2] == 0.0;
    case NerveEdge::kV2V3:
      return bary[0] == 0.0;
    case NerveEdge::kV3V1:
      return bary[1] == 0.0;
  }
  return false;
}

NervePoint partition_of_unity(const ProjectivePoint& point, const PartitionOptions& options) {
  if (!(options.near_threshold > 1.0)) {
    throw std::invalid_argument("near-infinity threshold must exceed 1");
  }
  const double log_threshold = std::log(options.near_threshold);
  const std::array<double, 3> ell{point.ell[1], point.ell[2], point.ell[3]};
  const double top = std::max({ell[0], ell[1], ell[2]});
  if (!(top - point.ell[0] > log_threshold)) {
    throw NotNearInfinityError("no trace exceeds X0 by the factor " +
                               std::to_string(options.near_threshold) +
                               "; point is not near the divisor at infinity");
  }

  std::array<double, 3> w{};
  if (options.scheme == PartitionScheme::kTubular) {
    for (int j = 0; j < 3; ++j) w[j] = std::min(1.0, (top - ell[j]) / log_threshold);
  } else {
    std::array<double, 3> e{};
    for (int j = 0; j < 3; ++j) e[j] = std::isinf(ell[j]) ? kFloorLog : ell[j];
    for (int j = 0; j < 3; ++j) {
      const double s = e[(j + 1) % 3] + e[(j + 2) % 3] - 2.0 * e[j];
      w[j] = std::max(0.0, s);
    }
  }

  const double total = w[0] + w[1] + w[2];
  if (!(total > 0.0)) {
    throw AmbiguousPointError("all three trace magnitudes coincide");
  }
  NervePoint p;
  for (int j = 0; j < 3; ++j) p.bary[j] = w[j] / total;
  return p;
}

double nerve_angle(const NervePoint& p) {
  const auto& b = p.bary;
  for (double x : b) {
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidNervePointError("barycentric coordinate out of [0,1]");
  }
  if (std::abs(b[0] + b[1] + b[2] - 1.0) > 1e-12) {
    throw InvalidNervePointError("barycentric coordinates do not sum to 1");
  }
  if (b[2] == 0.0) return kThird * b[1];
  if (b[0] == 0.0) return kThird + kThird * b[2];
  if (b[1] == 0.0) return wrap_two_pi(2.0 * kThird + kThird * b[0]);
  throw InvalidNervePointError("point lies inside the 2-simplex, not on the nerve");
}

int winding_number(std::span<const double> angles) {
  if (angles.size() < 2) return 0;
  double total = 0.0;
  for (std::size_t k = 1; k < angles.size(); ++k) {
    const double step = wrap_pi(angles[k] - angles[k - 1]);
    if (!(std::abs(step) < 0.5 * std::numbers::pi)) {
      throw UndersampledError("angle step of " + std::to_string(step) + " rad between samples " +
                              std::to_string(k - 1) + " and " + std::to_string(k));
    }
    total += step;
  }
  const double turns = total / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) {
    throw std::invalid_argument("angle sequence does not close up");
  }
  return static_cast<int>(rounded);
}

int winding_number(const Trajectory& traj) {
  if (!traj.closed) throw std::invalid_argument("winding number needs a closed trajectory");
  std::vector<double> angles;
  angles.reserve(traj.samples.size());
  for (const auto& s : traj.samples) angles.push_back(s.angle);
  return winding_number(angles);
}

}  // namespace pwcheck

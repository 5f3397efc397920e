#pragma once

#include <array>
#include <span>
#include <vector>

#include "pwcheck/traces.hpp"

namespace pwcheck {

/// Edges of the nerve of the divisor at infinity. Vertex v_j stands for the
/// line {X0 = 0 = X_j}; the edge [v_j v_k] for the intersection point of two
/// such lines.
enum class NerveEdge { kV1V2 = 0, kV2V3 = 1, kV3V1 = 2 };

const char* to_string(NerveEdge e);

/// Fixed combinatorics of the nerve: a hollow triangle.
struct NerveComplex {
  static constexpr std::array<const char*, 3> kVertexLines{"[0:0:X2:X3]", "[0:X1:0:X3]",
                                                           "[0:X1:X2:0]"};
  static constexpr std::array<const char*, 3> kEdgePoints{"[0:0:0:1]", "[0:1:0:0]",
                                                          "[0:0:1:0]"};
  /// The edge missing vertex `vertex` (0-based): the image of arc I_{vertex+1}.
  static NerveEdge edge_opposite(int vertex) {
    return static_cast<NerveEdge>((vertex + 1) % 3);
  }
};

/// Barycentric coordinates on the boundary of the 2-simplex.
struct NervePoint {
  std::array<double, 3> bary{};

  double operator[](int j) const { return bary[static_cast<std::size_t>(j)]; }
  /// Closed-edge membership: the coordinate of the opposite vertex is exactly 0.
  bool on_edge(NerveEdge e) const;
};

enum class PartitionScheme {
  /// Depth of X_j below the largest trace, saturated at log(near_threshold).
  kTubular,
  /// relu(ell_k + ell_l - 2 ell_j), normalized. Homogeneous in the ell.
  kLogRatio,
};

struct PartitionOptions {
  PartitionScheme scheme = PartitionScheme::kTubular;
  double near_threshold = 1e3;
};

const char* to_string(PartitionScheme s);
PartitionScheme parse_partition_scheme(std::string_view name);

/// Map a projective point near the divisor at infinity into the nerve body.
/// Throws NotNearInfinityError if no X_j exceeds X0 by the threshold factor and
/// AmbiguousPointError if no coordinate is singled out.
NervePoint partition_of_unity(const ProjectivePoint& point, const PartitionOptions& options = {});

/// Circle coordinate on the nerve body: v1 -> 0, v2 -> 2pi/3, v3 -> 4pi/3,
/// linear along each edge.
double nerve_angle(const NervePoint& p);

struct TrajectorySample {
  double phi = 0.0;
  ProjectivePoint point;
  NervePoint nerve;
  double angle = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  bool closed = false;
};

/// Net number of turns of a sampled closed angle sequence. Every wrapped step
/// must stay below pi/2 in magnitude, otherwise UndersampledError.
int winding_number(std::span<const double> angles);
int winding_number(const Trajectory& traj);

}  // namespace pwcheck

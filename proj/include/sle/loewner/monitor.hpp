#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sle/loewner/flow.hpp"

namespace sle {

/// Boundary curve of an obstacle attached to the real line, parametrized on
/// [0, 1]: a vertical segment rising from its base, or a semicircle running
/// from its left base to its right base.
class HullBoundary {
 public:
  static HullBoundary vertical_segment(double base, double height);
  static HullBoundary semicircle(double center, double radius);

  Complex point(double s) const;
  bool two_bases() const { return kind_ == Kind::Arc; }
  /// Gap threshold scale for the node at parameter s: the slit height
  /// below s divided by sqrt(2) (the eps of an eps-slit), or the radius.
  double guard_scale(double s) const;
  /// Height above the base for a slit parameter; s * height.
  double height_at(double s) const { return s * size_; }
  /// Horizontal extent [lo, hi] and top height, for reach bounds.
  double left() const;
  double right() const;
  double top() const;
  /// Size scale: slit height or radius.
  double size() const { return size_; }

  /// Euclidean distance from a point of the closed upper half-plane.
  double distance(Complex p) const;
  /// Does the segment [p, q] (in the closed upper half-plane) meet the curve?
  bool crosses(Complex p, Complex q) const;

 private:
  enum class Kind { Segment, Arc };
  HullBoundary(Kind kind, double base, double size) : kind_(kind), base_(base), size_(size) {}

  Kind kind_;
  double base_;
  double size_;
};

struct MonitorOptions {
  int initial_nodes = 17;
  int max_nodes = 400;
  /// A segment is split while its image is longer than refine_ratio times
  /// its distance to the driving point (floored at sqrt(dt)).
  double refine_ratio = 0.5;
  double min_spacing = 1e-7;
  /// Flow-monitoring threshold: a node whose gap to the driving point,
  /// pulled back to the original plane by |g_t'|, drops below
  /// delta_hit * guard_scale counts as hit.
  double delta_hit = 0.02;
  /// Keep monitoring the part below each hit (vertical segments only) and
  /// report the lowest hit parameter.
  bool track_lowest = false;
  /// A step [w0, w1] is bisected with a Brownian bridge midpoint while some
  /// node lies within bridge_ratio * (2 sqrt(dt) + |w1 - w0|) of w0 or w1, at
  /// most max_bridge_depth times. Depth 0 keeps the plain grid.
  double bridge_ratio = 4.0;
  int max_bridge_depth = 60;
  /// Keep the list of applied steps (bridge substeps included) in the record.
  bool record_steps = false;
};

struct HitRecord {
  bool hit = false;
  /// Lowest boundary parameter at which a hit was seen (segments: fraction
  /// of the height).
  double lowest = 1.0;
  std::optional<int> first_hit_step;
  /// The obstacle was enclosed by the hull without being touched.
  bool swallowed = false;
  double min_gap = 0;
  int nodes_used = 0;
  /// Flow steps actually applied, bridge substeps included.
  int substeps = 0;
  /// With record_steps: the steps taken, ending with the one that hit.
  std::vector<FlowStep> steps;
};

/// Tracks the image of the obstacle boundary under the discrete Loewner flow
/// and reports whether the hull of some step meets it.
HitRecord monitor_hull(const DrivingPath& d, const HullBoundary& boundary, const MonitorOptions& opt = {});

struct TraceHitRecord {
  bool hit = false;
  /// Smallest distance from a polyline point to the boundary.
  double min_distance = 0;
  int points_used = 0;
};

/// Independent detector: the trace polyline of a step list at a coarse
/// stride, redone at stride 1 wherever it comes near the obstacle. Hit when a
/// polyline segment meets the boundary or a point is within tolerance of it.
/// kappa only sizes the search margin.
TraceHitRecord trace_hit(std::span<const FlowStep> steps, double kappa, const HullBoundary& boundary, double tolerance,
                         int coarse_stride = 64);

/// Does the trace meet the vertical slit [x, x + i eps sqrt(2)]?
bool hit_slit(const DrivingPath& d, double x, double eps, double delta_hit = 0.02);

}  // namespace sle

#pragma once

#include <optional>

namespace msb {

struct Ellipse {
  double a = 0.0;  // semi-major axis, along the rotated row direction
  double b = 0.0;  // semi-minor axis
};

enum class EllipseId { kOuter, kCore, kRim };

// Radial zones of an artifact footprint. kRimBand is the sub-zone of the
// core between the rim ellipse and the core ellipse; it is only reported
// for geometries that carry a rim ellipse.
enum class Region { kCore, kFade, kRimBand, kOutside };

// Footprint of one marine-snow artifact: concentric ellipses sharing a
// center, a rotation and an eccentricity. `rim` is present exactly for
// volcanic-crater artifacts.
struct ArtifactGeometry {
  double center_row = 0.0;
  double center_col = 0.0;
  double theta = 0.0;  // rotation of the major axis, radians
  Ellipse outer;       // fade boundary
  Ellipse core;        // flat-top boundary
  std::optional<Ellipse> rim;

  // Throws std::invalid_argument on any violated invariant: positive axes,
  // b <= a, outer > core > rim orderings, shared eccentricity within 1e-9
  // relative.
  void validate() const;

  // Half extents of the outer ellipse's axis-aligned bounding box.
  double extent_rows() const;
  double extent_cols() const;
};

// Scale t such that center + t * (point - center) lies on the requested
// ellipse: t > 0, and t == 1 exactly when the point is on the boundary.
// Throws on a point equal to the center ("degenerate ray") or when the rim
// ellipse is requested but absent.
double radial_scale(const ArtifactGeometry& g, EllipseId which, double row, double col);

Region classify_region(const ArtifactGeometry& g, double row, double col);

}  // namespace msb

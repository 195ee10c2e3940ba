#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "msb/geometry.hpp"
#include "msb/image.hpp"
#include "msb/rng.hpp"

namespace msb {

enum class ArtifactKind { kHighland, kVolcanic };

struct ArtifactAppearance {
  ArtifactKind kind = ArtifactKind::kHighland;
  std::array<int, 3> core_intensity{};  // plateau height c, per channel
  std::array<int, 3> rim_height{};      // rim peak c_r, per channel (volcanic only)
  double roughness_amplitude = 5.0;     // surface perturbation is uniform in +-this
  int blur_radius = 3;                  // Gaussian kernel is (2r+1) x (2r+1)

  void validate() const;  // throws std::invalid_argument
};

// One rasterized artifact: per-channel intensities over the clipped
// bounding box plus the support mask (pixels inside the outer ellipse).
// Values are zero wherever the mask is zero.
struct ArtifactPatch {
  Rect box;
  std::array<std::vector<float>, 3> values;
  std::vector<std::uint8_t> support;

  bool empty() const { return box.empty(); }
  float value(int c, int y, int x) const {
    return values[c][static_cast<std::size_t>(y) * box.width + x];
  }
  bool inside(int y, int x) const {
    return support[static_cast<std::size_t>(y) * box.width + x] != 0;
  }
};

// Highland intensity at a continuous coordinate: c + eps on the core
// plateau, a linear radial fade from c to 0 across the fade band, 0
// outside. eps is the already-drawn roughness perturbation for this
// sample; the result is clamped below at 0 (outside stays exactly 0).
double eval_type_h(const ArtifactGeometry& g, double c, double eps, double row, double col);

// Rim ridge: c_r * (1 - d(p, mid(q2,q3)) / (d(q2,q3)/2)) inside the band
// between the rim and core ellipses, 0 elsewhere. Peaks at exactly c_r at
// the radial midpoint of the band. Requires a rim ellipse.
double eval_rim(const ArtifactGeometry& g, double c_r, double row, double col);

// Volcanic-crater intensity: highland term plus rim term.
double eval_type_v(const ArtifactGeometry& g, double c, double c_r, double eps, double row,
                   double col);

// Rasterizes one artifact at the pixel centers of the outer ellipse's
// bounding box clipped to the image. Per-pixel, per-channel roughness is
// drawn from channel substreams of `artifact_stream`, keyed by the
// pixel's global linear index, so a patch re-rendered from the same
// stream is identical. A bounding box fully outside the image yields an
// empty patch.
ArtifactPatch render_artifact(const ArtifactGeometry& g, const ArtifactAppearance& app,
                              const RandomStream& artifact_stream, int image_height,
                              int image_width);

}  // namespace msb

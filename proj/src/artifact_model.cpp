#include "msb/artifact_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msb {

void ArtifactAppearance::validate() const {
  for (int c : core_intensity)
    if (c < 0) throw std::invalid_argument("core intensity must be non-negative");
  if (kind == ArtifactKind::kVolcanic)
    for (int c : rim_height)
      if (c < 0) throw std::invalid_argument("rim height must be non-negative");
  if (roughness_amplitude < 0.0)
    throw std::invalid_argument("roughness amplitude must be non-negative");
  if (blur_radius < 1) throw std::invalid_argument("blur radius must be >= 1");
}

double eval_type_h(const ArtifactGeometry& g, double c, double eps, double row, double col) {
  switch (classify_region(g, row, col)) {
    case Region::kCore:
    case Region::kRimBand:
      return std::max(0.0, c + eps);
    case Region::kFade: {
      const double t1 = radial_scale(g, EllipseId::kOuter, row, col);
      const double t2 = radial_scale(g, EllipseId::kCore, row, col);
      // Equals c * d(p, q1) / d(q1, q2): the q_i lie at t_i along the ray.
      return std::max(0.0, c * (t1 - 1.0) / (t1 - t2) + eps);
    }
    case Region::kOutside:
      return 0.0;
  }
  return 0.0;
}

double eval_rim(const ArtifactGeometry& g, double c_r, double row, double col) {
  if (!g.rim) throw std::invalid_argument("rim requested on type H geometry");
  if (classify_region(g, row, col) != Region::kRimBand) return 0.0;
  const double t2 = radial_scale(g, EllipseId::kCore, row, col);
  const double t3 = radial_scale(g, EllipseId::kRim, row, col);
  const double mid = 0.5 * (t2 + t3);
  const double half_width = 0.5 * (t2 - t3);
  // p itself sits at scale 1; distances along the ray scale with |p - center|.
  return c_r * (1.0 - std::abs(1.0 - mid) / half_width);
}

double eval_type_v(const ArtifactGeometry& g, double c, double c_r, double eps, double row,
                   double col) {
  return eval_type_h(g, c, eps, row, col) + eval_rim(g, c_r, row, col);
}

ArtifactPatch render_artifact(const ArtifactGeometry& g, const ArtifactAppearance& app,
                              const RandomStream& artifact_stream, int image_height,
                              int image_width) {
  g.validate();
  app.validate();
  if (app.kind == ArtifactKind::kVolcanic && !g.rim)
    throw std::invalid_argument("volcanic appearance requires a rim ellipse");

  const double em = g.extent_rows();
  const double en = g.extent_cols();
  const int top = std::max(0, static_cast<int>(std::ceil(g.center_row - em)));
  const int bottom = std::min(image_height - 1, static_cast<int>(std::floor(g.center_row + em)));
  const int left = std::max(0, static_cast<int>(std::ceil(g.center_col - en)));
  const int right = std::min(image_width - 1, static_cast<int>(std::floor(g.center_col + en)));

  ArtifactPatch patch;
  if (top > bottom || left > right) return patch;
  patch.box = {top, left, bottom - top + 1, right - left + 1};
  const std::size_t n = static_cast<std::size_t>(patch.box.height) * patch.box.width;
  for (auto& v : patch.values) v.assign(n, 0.0f);
  patch.support.assign(n, 0);

  std::array<RandomStream, 3> noise;
  for (int t = 0; t < 3; ++t) noise[t] = artifact_stream.substream(stream_salt::kChannel, t);

  const bool volcanic = app.kind == ArtifactKind::kVolcanic;
  const double cos_t = std::cos(g.theta);
  const double sin_t = std::sin(g.theta);

  const auto ellipse_value = [](const Ellipse& e, double lm, double ln) {
    const double u = lm / e.a;
    const double v = ln / e.b;
    return u * u + v * v;
  };

  for (int y = top; y <= bottom; ++y) {
    const double dm = y - g.center_row;
    for (int x = left; x <= right; ++x) {
      const double dn = x - g.center_col;
      const double lm = cos_t * dm + sin_t * dn;
      const double ln = -sin_t * dm + cos_t * dn;
      const double e_outer = ellipse_value(g.outer, lm, ln);
      if (e_outer > 1.0) continue;  // outside: value 0, no support

      const std::size_t idx =
          static_cast<std::size_t>(y - top) * patch.box.width + (x - left);
      patch.support[idx] = 1;
      const std::uint64_t pixel = static_cast<std::uint64_t>(y) * image_width + x;

      const double e_core = ellipse_value(g.core, lm, ln);
      const bool in_core = e_core <= 1.0;
      double t1 = 0.0, t2 = 0.0;
      if (!in_core) {
        t1 = 1.0 / std::sqrt(e_outer);
        t2 = 1.0 / std::sqrt(e_core);
      }
      double rim_term = 0.0;
      if (volcanic && in_core) {
        const double e_rim = ellipse_value(*g.rim, lm, ln);
        if (e_rim > 1.0) {
          const double tc = 1.0 / std::sqrt(e_core);
          const double tr = 1.0 / std::sqrt(e_rim);
          rim_term = 1.0 - std::abs(1.0 - 0.5 * (tc + tr)) / (0.5 * (tc - tr));
        }
      }

      for (int t = 0; t < 3; ++t) {
        const double eps =
            (2.0 * noise[t].uniform01(pixel) - 1.0) * app.roughness_amplitude;
        double v;
        if (in_core) {
          v = std::max(0.0, app.core_intensity[t] + eps);
          if (rim_term != 0.0) v += app.rim_height[t] * rim_term;
        } else {
          v = std::max(0.0, app.core_intensity[t] * (t1 - 1.0) / (t1 - t2) + eps);
        }
        patch.values[t][idx] = static_cast<float>(v);
      }
    }
  }
  return patch;
}

}  // namespace msb

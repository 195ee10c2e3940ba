#include "msb/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace msb {

namespace {

// Offset of (row, col) from the center, rotated by -theta into the
// ellipse-aligned frame.
inline void local_offset(const ArtifactGeometry& g, double row, double col, double& lm,
                         double& ln) {
  const double dm = row - g.center_row;
  const double dn = col - g.center_col;
  const double c = std::cos(g.theta);
  const double s = std::sin(g.theta);
  lm = c * dm + s * dn;
  ln = -s * dm + c * dn;
}

// (lm/a)^2 + (ln/b)^2; <= 1 inside-or-on the ellipse.
inline double ellipse_value(const Ellipse& e, double lm, double ln) {
  const double u = lm / e.a;
  const double v = ln / e.b;
  return u * u + v * v;
}

void check_axes(const Ellipse& e, const char* name) {
  if (!(e.a > 0.0) || !(e.b > 0.0))
    throw std::invalid_argument(std::string(name) + " ellipse axes must be positive");
  if (e.b > e.a)
    throw std::invalid_argument(std::string(name) + " ellipse must have b <= a");
}

void check_eccentricity(const Ellipse& x, const Ellipse& ref, const char* name) {
  const double r_ref = ref.a / ref.b;
  if (std::abs(x.a / x.b - r_ref) > 1e-9 * r_ref)
    throw std::invalid_argument(std::string(name) + " ellipse eccentricity differs from core");
}

}  // namespace

void ArtifactGeometry::validate() const {
  check_axes(outer, "outer");
  check_axes(core, "core");
  if (!(outer.a > core.a) || !(outer.b > core.b))
    throw std::invalid_argument("outer ellipse must strictly contain the core ellipse");
  check_eccentricity(outer, core, "outer");
  if (rim) {
    check_axes(*rim, "rim");
    if (!(core.a > rim->a) || !(core.b > rim->b))
      throw std::invalid_argument("core ellipse must strictly contain the rim ellipse");
    check_eccentricity(*rim, core, "rim");
  }
}

double ArtifactGeometry::extent_rows() const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return std::sqrt(outer.a * outer.a * c * c + outer.b * outer.b * s * s);
}

double ArtifactGeometry::extent_cols() const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return std::sqrt(outer.a * outer.a * s * s + outer.b * outer.b * c * c);
}

double radial_scale(const ArtifactGeometry& g, EllipseId which, double row, double col) {
  const Ellipse* e = nullptr;
  switch (which) {
    case EllipseId::kOuter:
      e = &g.outer;
      break;
    case EllipseId::kCore:
      e = &g.core;
      break;
    case EllipseId::kRim:
      if (!g.rim) throw std::invalid_argument("rim requested on type H geometry");
      e = &*g.rim;
      break;
  }
  double lm, ln;
  local_offset(g, row, col, lm, ln);
  if (lm == 0.0 && ln == 0.0) throw std::invalid_argument("degenerate ray");
  return 1.0 / std::sqrt(ellipse_value(*e, lm, ln));
}

Region classify_region(const ArtifactGeometry& g, double row, double col) {
  double lm, ln;
  local_offset(g, row, col, lm, ln);
  if (ellipse_value(g.core, lm, ln) <= 1.0) {
    if (g.rim && ellipse_value(*g.rim, lm, ln) > 1.0) return Region::kRimBand;
    return Region::kCore;
  }
  if (ellipse_value(g.outer, lm, ln) <= 1.0) return Region::kFade;
  return Region::kOutside;
}

}  // namespace msb

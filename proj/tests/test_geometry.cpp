#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "msb/geometry.hpp"
#include "oracles.hpp"

using msb::ArtifactGeometry;
using msb::Ellipse;
using msb::EllipseId;
using msb::Region;

namespace {

ArtifactGeometry axis_geometry(double theta = 0.0) {
  ArtifactGeometry g;
  g.theta = theta;
  g.outer = {4.0, 2.0};
  g.core = {2.0, 1.0};
  return g;
}

}  // namespace

TEST_CASE("radial scale on the major axis") {
  const ArtifactGeometry g = axis_geometry();
  CHECK(msb::radial_scale(g, EllipseId::kOuter, 3.0, 0.0) == doctest::Approx(4.0 / 3.0));
  CHECK(msb::radial_scale(g, EllipseId::kOuter, 4.0, 0.0) == doctest::Approx(1.0));
  CHECK(msb::radial_scale(g, EllipseId::kCore, 1.0, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("rotation by a quarter turn swaps the axes") {
  const ArtifactGeometry g = axis_geometry(3.14159265358979323846 / 2.0);
  CHECK(msb::radial_scale(g, EllipseId::kOuter, 0.0, 3.0) == doctest::Approx(4.0 / 3.0));
  CHECK(msb::radial_scale(g, EllipseId::kOuter, 3.0, 0.0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("scale is 1 exactly on the boundary, above 1 inside") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const ArtifactGeometry g = oracle::random_geometry(rng, trial % 2 == 0);
    const double phi = u01(rng) * 2.0 * 3.14159265358979323846;
    // Point on the outer ellipse, constructed in the rotated frame.
    const double lm = g.outer.a * std::cos(phi);
    const double ln = g.outer.b * std::sin(phi);
    const double row = g.center_row + std::cos(g.theta) * lm - std::sin(g.theta) * ln;
    const double col = g.center_col + std::sin(g.theta) * lm + std::cos(g.theta) * ln;
    CHECK(msb::radial_scale(g, EllipseId::kOuter, row, col) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("radial scale agrees with the bisection oracle") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    const ArtifactGeometry g = oracle::random_geometry(rng, trial % 2 == 0);
    const oracle::Vec2 p = oracle::random_point(rng, g, 1.5);
    for (EllipseId id : {EllipseId::kOuter, EllipseId::kCore}) {
      const Ellipse& e = id == EllipseId::kOuter ? g.outer : g.core;
      const double expected = oracle::radial_scale(g, e, p);
      CHECK(msb::radial_scale(g, id, p.row, p.col) == doctest::Approx(expected).epsilon(1e-9));
    }
    if (g.rim)
      CHECK(msb::radial_scale(g, EllipseId::kRim, p.row, p.col) ==
            doctest::Approx(oracle::radial_scale(g, *g.rim, p)).epsilon(1e-9));
  }
}

TEST_CASE("degenerate and missing-rim requests throw") {
  const ArtifactGeometry g = axis_geometry();
  CHECK_THROWS_WITH_AS(msb::radial_scale(g, EllipseId::kOuter, 0.0, 0.0),
                       doctest::Contains("degenerate ray"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(msb::radial_scale(g, EllipseId::kRim, 0.0, 1.0),
                       doctest::Contains("rim requested"), std::invalid_argument);
}

TEST_CASE("region classification follows the boundary conventions") {
  const ArtifactGeometry g = axis_geometry();
  CHECK(msb::classify_region(g, 0.0, 0.0) == Region::kCore);
  CHECK(msb::classify_region(g, 3.0, 0.0) == Region::kFade);
  CHECK(msb::classify_region(g, 5.0, 0.0) == Region::kOutside);
  // Boundaries count as inside the ellipse they close.
  CHECK(msb::classify_region(g, 2.0, 0.0) == Region::kCore);
  CHECK(msb::classify_region(g, 4.0, 0.0) == Region::kFade);
}

TEST_CASE("rim band is carved out of the core region") {
  ArtifactGeometry g = axis_geometry();
  g.rim = Ellipse{1.0, 0.5};
  CHECK(msb::classify_region(g, 0.5, 0.0) == Region::kCore);      // inside the rim ellipse
  CHECK(msb::classify_region(g, 1.0, 0.0) == Region::kCore);      // on the rim boundary
  CHECK(msb::classify_region(g, 1.5, 0.0) == Region::kRimBand);   // strictly between
  CHECK(msb::classify_region(g, 2.0, 0.0) == Region::kRimBand);   // on the core boundary
  CHECK(msb::classify_region(g, 3.0, 0.0) == Region::kFade);
}

TEST_CASE("bounding-box extents match the rotated ellipse") {
  ArtifactGeometry g = axis_geometry();
  CHECK(g.extent_rows() == doctest::Approx(4.0));
  CHECK(g.extent_cols() == doctest::Approx(2.0));
  g.theta = 3.14159265358979323846 / 2.0;
  CHECK(g.extent_rows() == doctest::Approx(2.0));
  CHECK(g.extent_cols() == doctest::Approx(4.0));

  // At any angle the extents bound sampled boundary points tightly.
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const ArtifactGeometry r = oracle::random_geometry(rng, false);
    double max_row = 0.0, max_col = 0.0;
    for (int k = 0; k < 2000; ++k) {
      const double phi = 2.0 * 3.14159265358979323846 * k / 2000.0;
      const double lm = r.outer.a * std::cos(phi);
      const double ln = r.outer.b * std::sin(phi);
      max_row = std::max(max_row,
                         std::abs(std::cos(r.theta) * lm - std::sin(r.theta) * ln));
      max_col = std::max(max_col,
                         std::abs(std::sin(r.theta) * lm + std::cos(r.theta) * ln));
    }
    CHECK(r.extent_rows() == doctest::Approx(max_row).epsilon(1e-4));
    CHECK(r.extent_cols() == doctest::Approx(max_col).epsilon(1e-4));
    CHECK(r.extent_rows() >= max_row - 1e-9);
    CHECK(r.extent_cols() >= max_col - 1e-9);
  }
}

TEST_CASE("geometry validation rejects broken invariants") {
  ArtifactGeometry g = axis_geometry();
  CHECK_NOTHROW(g.validate());

  ArtifactGeometry bad = g;
  bad.core = {4.0, 2.0};  // outer no longer strictly contains the core
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = g;
  bad.core.b = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = g;
  bad.core.b = 1.5;  // eccentricity no longer shared
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = g;
  bad.outer = {2.0, 4.0};  // b > a
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = g;
  bad.rim = Ellipse{2.0, 1.0};  // rim must be strictly inside the core
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

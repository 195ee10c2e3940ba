#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <stdexcept>

#include "msb/image.hpp"
#include "msb/kernels.hpp"
#include "msb/reference.hpp"
#include "testutil.hpp"

using msb::Image;
using msb::Rect;

namespace {

bool same_pixels(const Image& a, const Image& b) {
  return a.same_size(b) && a.data == b.data;
}

double max_abs_diff(const Image& a, const Image& b) {
  REQUIRE(a.same_size(b));
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    m = std::max(m, std::abs(static_cast<double>(a.data[i]) - b.data[i]));
  return m;
}

}  // namespace

TEST_CASE("blur preserves constant images") {
  const Image img(24, 24, 77.0f);
  for (int r = 1; r <= 6; ++r) {
    const Image out = msb::gaussian_blur(img, r);
    CHECK(max_abs_diff(out, img) < 1e-4);
  }
}

TEST_CASE("blur of a unit impulse matches the hand-computed kernel") {
  Image img(9, 9, 0.0f);
  for (int c = 0; c < 3; ++c) img.at(c, 4, 4) = 255.0f;
  const Image out = msb::gaussian_blur(img, 1);

  // r = 1, sigma = 1/2: w(0) = 1, w(+-1) = exp(-2).
  const double w1 = std::exp(-2.0);
  const double norm = 1.0 + 2.0 * w1;
  const double center = 255.0 / (norm * norm);
  CHECK(out.at(0, 4, 4) == doctest::Approx(center).epsilon(1e-6));
  CHECK(out.at(0, 4, 3) == doctest::Approx(center * w1).epsilon(1e-6));
  CHECK(out.at(0, 3, 3) == doctest::Approx(center * w1 * w1).epsilon(1e-6));
  CHECK(out.at(0, 4, 6) == 0.0f);
}

TEST_CASE("blur radius outside the supported range throws") {
  const Image img(8, 8, 1.0f);
  CHECK_THROWS_AS(msb::gaussian_blur(img, 0), std::invalid_argument);
  CHECK_THROWS_AS(msb::gaussian_blur(img, 7), std::invalid_argument);
}

TEST_CASE("region blur equals the matching crop of a whole-image blur") {
  const Image img = testutil::noise_image(31, 40, 56);
  for (const Rect region : {Rect{0, 0, 8, 8}, Rect{10, 20, 13, 17}, Rect{33, 47, 7, 9},
                            Rect{0, 0, 40, 56}}) {
    for (int r : {1, 3, 6}) {
      const Image full = msb::gaussian_blur(img, r);
      const Image part = msb::gaussian_blur_region(img, region, r);
      REQUIRE(part.height == region.height);
      REQUIRE(part.width == region.width);
      for (int c = 0; c < 3; ++c)
        for (int y = 0; y < region.height; ++y)
          for (int x = 0; x < region.width; ++x)
            CHECK(part.at(c, y, x) == full.at(c, region.top + y, region.left + x));
    }
  }
}

TEST_CASE("separable blur agrees with the direct-convolution reference") {
  const Image img = testutil::noise_image(7, 24, 31);
  for (int r : {1, 2, 4, 6})
    CHECK(max_abs_diff(msb::gaussian_blur(img, r), msb::reference::gaussian_blur(img, r)) <
          1e-4);
}

TEST_CASE("blur output is clamped to the displayable range") {
  const Image img(16, 16, 255.0f);
  const Image out = msb::gaussian_blur(img, 3);
  for (float v : out.data) {
    CHECK(v >= 0.0f);
    CHECK(v <= 255.0f);
  }
}

TEST_CASE("kernels give identical bytes for any thread count") {
  const Image img = testutil::noise_image(97, 64, 64);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const Image blur1 = msb::gaussian_blur(img, 4);
  const Image med1 = msb::median_filter(img, 5);
  const Image amf1 = msb::adaptive_median_filter(img, 3, 10.0);
  omp_set_num_threads(7);
  const Image blur7 = msb::gaussian_blur(img, 4);
  const Image med7 = msb::median_filter(img, 5);
  const Image amf7 = msb::adaptive_median_filter(img, 3, 10.0);
  omp_set_num_threads(saved);
  CHECK(same_pixels(blur1, blur7));
  CHECK(same_pixels(med1, med7));
  CHECK(same_pixels(amf1, amf7));
}

TEST_CASE("median filter fundamentals") {
  SUBCASE("constant images are unchanged") {
    const Image img(12, 12, 42.0f);
    CHECK(same_pixels(msb::median_filter(img, 3), img));
    CHECK(same_pixels(msb::median_filter(img, 5), img));
  }
  SUBCASE("a lone bright impulse is removed") {
    Image img(9, 9, 0.0f);
    for (int c = 0; c < 3; ++c) img.at(c, 4, 4) = 255.0f;
    const Image out = msb::median_filter(img, 3);
    for (float v : out.data) CHECK(v == 0.0f);
  }
  SUBCASE("a 3x3 window holding 0..8 yields the middle value") {
    Image img(3, 3);
    for (int c = 0; c < 3; ++c)
      for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) img.at(c, y, x) = static_cast<float>(y * 3 + x);
    CHECK(msb::median_filter(img, 3).at(0, 1, 1) == 4.0f);
  }
  SUBCASE("even or non-positive kernels throw") {
    const Image img(8, 8, 1.0f);
    CHECK_THROWS_AS(msb::median_filter(img, 4), std::invalid_argument);
    CHECK_THROWS_AS(msb::median_filter(img, 0), std::invalid_argument);
    CHECK_THROWS_AS(msb::median_filter(img, -3), std::invalid_argument);
  }
}

TEST_CASE("median filter matches the full-sort reference") {
  const Image img = testutil::noise_image(55, 30, 22);
  CHECK(same_pixels(msb::median_filter(img, 3), msb::reference::median_filter(img, 3)));
  CHECK(same_pixels(msb::median_filter(img, 5), msb::reference::median_filter(img, 5)));
}

TEST_CASE("adaptive median filter selectivity") {
  SUBCASE("constant images are unchanged for any threshold") {
    const Image img(10, 10, 90.0f);
    CHECK(same_pixels(msb::adaptive_median_filter(img, 3, 0.0), img));
    CHECK(same_pixels(msb::adaptive_median_filter(img, 3, 10.0), img));
  }
  SUBCASE("a bright impulse is replaced, its neighbors kept") {
    Image img(9, 9, 20.0f);
    for (int c = 0; c < 3; ++c) img.at(c, 4, 4) = 255.0f;
    const Image out = msb::adaptive_median_filter(img, 3, 10.0);
    CHECK(out.at(0, 4, 4) == 20.0f);
    CHECK(out.at(0, 4, 3) == 20.0f);
    CHECK(out.at(1, 0, 0) == 20.0f);
  }
  SUBCASE("pepper noise is preserved by the one-sided rule") {
    Image img(9, 9, 200.0f);
    for (int c = 0; c < 3; ++c) img.at(c, 4, 4) = 0.0f;
    const Image out = msb::adaptive_median_filter(img, 3, 10.0);
    CHECK(out.at(0, 4, 4) == 0.0f);
  }
  SUBCASE("an enormous threshold is the identity") {
    const Image img = testutil::noise_image(5, 16, 16);
    CHECK(same_pixels(msb::adaptive_median_filter(img, 3, 1e9), img));
  }
  SUBCASE("threshold zero touches exactly the pixels above their window median") {
    const Image img = testutil::noise_image(6, 20, 20);
    const Image medians = msb::reference::median_filter(img, 3);
    const Image out = msb::adaptive_median_filter(img, 3, 0.0);
    for (int c = 0; c < 3; ++c)
      for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
          if (img.at(c, y, x) > medians.at(c, y, x))
            CHECK(out.at(c, y, x) == medians.at(c, y, x));
          else
            CHECK(out.at(c, y, x) == img.at(c, y, x));
        }
  }
  SUBCASE("negative thresholds throw") {
    const Image img(8, 8, 1.0f);
    CHECK_THROWS_AS(msb::adaptive_median_filter(img, 3, -1.0), std::invalid_argument);
  }
}

TEST_CASE("adaptive median filter matches the full-sort reference") {
  const Image img = testutil::noise_image(66, 28, 33);
  for (double threshold : {0.0, 10.0, 35.0})
    CHECK(same_pixels(msb::adaptive_median_filter(img, 3, threshold),
                      msb::reference::adaptive_median_filter(img, 3, threshold)));
}

TEST_CASE("replicate padding keeps borders plausible") {
  // A horizontal step: left half 0, right half 200. Replicate padding means
  // the outermost columns see only their own side's values.
  Image img(12, 12, 0.0f);
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < 12; ++y)
      for (int x = 6; x < 12; ++x) img.at(c, y, x) = 200.0f;
  const Image med = msb::median_filter(img, 3);
  CHECK(med.at(0, 0, 0) == 0.0f);
  CHECK(med.at(0, 11, 11) == 200.0f);
  const Image blur = msb::gaussian_blur(img, 2);
  CHECK(blur.at(0, 0, 0) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(blur.at(0, 6, 11) == doctest::Approx(200.0).epsilon(1e-4));
}

TEST_CASE("noise fixture median matches reference at 5x5 too") {
  const Image img = testutil::noise_image(77, 19, 45);
  CHECK(same_pixels(msb::adaptive_median_filter(img, 5, 10.0),
                    msb::reference::adaptive_median_filter(img, 5, 10.0)));
}

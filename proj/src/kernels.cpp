#include "msb/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace msb {

namespace {

inline int clamp_index(int i, int n) { return std::min(std::max(i, 0), n - 1); }

// Window weights for sigma = r/2, normalized to sum 1.
std::vector<double> gaussian_weights(int radius) {
  std::vector<double> w(2 * radius + 1);
  const double sigma = radius / 2.0;
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    w[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    total += w[i + radius];
  }
  for (double& v : w) v /= total;
  return w;
}

void check_odd_kernel(int kernel) {
  if (kernel < 1 || kernel % 2 == 0)
    throw std::invalid_argument("kernel size must be odd and positive");
}

}  // namespace

Image gaussian_blur_region(const Image& img, const Rect& region, int radius) {
  if (radius < 1 || radius > 6)
    throw std::invalid_argument("blur radius must be in {1, ..., 6}");
  if (region.empty()) throw std::invalid_argument("empty blur region");
  if (region.top < 0 || region.left < 0 || region.top + region.height > img.height ||
      region.left + region.width > img.width)
    throw std::invalid_argument("blur region outside image bounds");

  const std::vector<double> w = gaussian_weights(radius);
  Image out(region.height, region.width);

  // Horizontal pass over the rows the vertical pass will consume. Rows
  // outside the image replicate the edge row, matching whole-image padding.
  const int ext_top = region.top - radius;
  const int ext_rows = region.height + 2 * radius;
  std::vector<double> hpass(static_cast<std::size_t>(ext_rows) * region.width);

  for (int c = 0; c < Image::kChannels; ++c) {
    const float* src = img.plane(c);
#pragma omp parallel for
    for (int ey = 0; ey < ext_rows; ++ey) {
      const int sy = clamp_index(ext_top + ey, img.height);
      const float* row = src + static_cast<std::size_t>(sy) * img.width;
      double* dst = hpass.data() + static_cast<std::size_t>(ey) * region.width;
      for (int x = 0; x < region.width; ++x) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k)
          acc += w[k + radius] * row[clamp_index(region.left + x + k, img.width)];
        dst[x] = acc;
      }
    }
#pragma omp parallel for
    for (int y = 0; y < region.height; ++y) {
      float* dst = out.plane(c) + static_cast<std::size_t>(y) * region.width;
      for (int x = 0; x < region.width; ++x) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k)
          acc += w[k + radius] * hpass[static_cast<std::size_t>(y + k + radius) * region.width + x];
        dst[x] = static_cast<float>(std::min(255.0, std::max(0.0, acc)));
      }
    }
  }
  return out;
}

Image gaussian_blur(const Image& img, int radius) {
  return gaussian_blur_region(img, Rect{0, 0, img.height, img.width}, radius);
}

Image median_filter(const Image& img, int kernel) {
  check_odd_kernel(kernel);
  const int r = kernel / 2;
  Image out(img.height, img.width);
  for (int c = 0; c < Image::kChannels; ++c) {
    const float* src = img.plane(c);
    float* dst = out.plane(c);
#pragma omp parallel
    {
      std::vector<float> window(static_cast<std::size_t>(kernel) * kernel);
#pragma omp for
      for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
          int n = 0;
          for (int dy = -r; dy <= r; ++dy) {
            const float* row = src + static_cast<std::size_t>(clamp_index(y + dy, img.height)) * img.width;
            for (int dx = -r; dx <= r; ++dx) window[n++] = row[clamp_index(x + dx, img.width)];
          }
          const int mid = n / 2;
          std::nth_element(window.begin(), window.begin() + mid, window.begin() + n);
          dst[static_cast<std::size_t>(y) * img.width + x] = window[mid];
        }
      }
    }
  }
  return out;
}

Image adaptive_median_filter(const Image& img, int kernel, double threshold) {
  check_odd_kernel(kernel);
  if (threshold < 0.0) throw std::invalid_argument("threshold must be non-negative");
  const int r = kernel / 2;
  Image out(img.height, img.width);
  for (int c = 0; c < Image::kChannels; ++c) {
    const float* src = img.plane(c);
    float* dst = out.plane(c);
#pragma omp parallel
    {
      std::vector<float> window(static_cast<std::size_t>(kernel) * kernel);
#pragma omp for
      for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
          int n = 0;
          for (int dy = -r; dy <= r; ++dy) {
            const float* row = src + static_cast<std::size_t>(clamp_index(y + dy, img.height)) * img.width;
            for (int dx = -r; dx <= r; ++dx) window[n++] = row[clamp_index(x + dx, img.width)];
          }
          const int mid = n / 2;
          std::nth_element(window.begin(), window.begin() + mid, window.begin() + n);
          const float median = window[mid];
          const float pixel = src[static_cast<std::size_t>(y) * img.width + x];
          dst[static_cast<std::size_t>(y) * img.width + x] =
              (pixel > median + threshold) ? median : pixel;
        }
      }
    }
  }
  return out;
}

}  // namespace msb

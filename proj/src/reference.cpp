#include "msb/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace msb::reference {

namespace {

inline int clamp_index(int i, int n) { return std::min(std::max(i, 0), n - 1); }

std::vector<double> normalized_gaussian(int radius, double sigma) {
  std::vector<double> w(2 * radius + 1);
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    w[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    total += w[i + radius];
  }
  for (double& v : w) v /= total;
  return w;
}

float sorted_median(std::vector<float>& window) {
  std::sort(window.begin(), window.end());
  return window[window.size() / 2];
}

void gather_window(const float* src, int width, int height, int y, int x, int r,
                   std::vector<float>& window) {
  window.clear();
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx)
      window.push_back(src[static_cast<std::size_t>(clamp_index(y + dy, height)) * width +
                           clamp_index(x + dx, width)]);
}

}  // namespace

Image gaussian_blur(const Image& img, int radius) {
  if (radius < 1 || radius > 6)
    throw std::invalid_argument("blur radius must be in {1, ..., 6}");
  const std::vector<double> w1 = normalized_gaussian(radius, radius / 2.0);
  Image out(img.height, img.width);
  for (int c = 0; c < Image::kChannels; ++c) {
    const float* src = img.plane(c);
    float* dst = out.plane(c);
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) {
        double acc = 0.0;
        for (int dy = -radius; dy <= radius; ++dy) {
          const float* row = src + static_cast<std::size_t>(clamp_index(y + dy, img.height)) * img.width;
          for (int dx = -radius; dx <= radius; ++dx)
            acc += w1[dy + radius] * w1[dx + radius] * row[clamp_index(x + dx, img.width)];
        }
        dst[static_cast<std::size_t>(y) * img.width + x] =
            static_cast<float>(std::min(255.0, std::max(0.0, acc)));
      }
    }
  }
  return out;
}

Image median_filter(const Image& img, int kernel) {
  if (kernel < 1 || kernel % 2 == 0)
    throw std::invalid_argument("kernel size must be odd and positive");
  const int r = kernel / 2;
  Image out(img.height, img.width);
  std::vector<float> window;
  for (int c = 0; c < Image::kChannels; ++c) {
    const float* src = img.plane(c);
    float* dst = out.plane(c);
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x) {
        gather_window(src, img.width, img.height, y, x, r, window);
        dst[static_cast<std::size_t>(y) * img.width + x] = sorted_median(window);
      }
  }
  return out;
}

Image adaptive_median_filter(const Image& img, int kernel, double threshold) {
  if (kernel < 1 || kernel % 2 == 0)
    throw std::invalid_argument("kernel size must be odd and positive");
  if (threshold < 0.0) throw std::invalid_argument("threshold must be non-negative");
  const int r = kernel / 2;
  Image out(img.height, img.width);
  std::vector<float> window;
  for (int c = 0; c < Image::kChannels; ++c) {
    const float* src = img.plane(c);
    float* dst = out.plane(c);
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x) {
        gather_window(src, img.width, img.height, y, x, r, window);
        const float median = sorted_median(window);
        const float pixel = src[static_cast<std::size_t>(y) * img.width + x];
        dst[static_cast<std::size_t>(y) * img.width + x] =
            (pixel > median + threshold) ? median : pixel;
      }
  }
  return out;
}

double psnr(const Image& a, const Image& b) {
  if (!a.same_size(b)) throw std::invalid_argument("image size mismatch");
  double sum_sq = 0.0;
  const std::size_t n = static_cast<std::size_t>(a.height) * a.width;
  for (int c = 0; c < Image::kChannels; ++c) {
    const float* pa = a.plane(c);
    const float* pb = b.plane(c);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = static_cast<double>(pa[i]) - pb[i];
      sum_sq += d * d;
    }
  }
  const double mse = sum_sq / (static_cast<double>(n) * Image::kChannels);
  if (mse == 0.0) return 100.0;
  return std::min(100.0, 10.0 * std::log10(255.0 * 255.0 / mse));
}

double ssim(const Image& a, const Image& b) {
  if (!a.same_size(b)) throw std::invalid_argument("image size mismatch");
  constexpr int kRadius = 5;
  constexpr double kSigma = 1.5;
  constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
  constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);
  if (a.height < 2 * kRadius + 1 || a.width < 2 * kRadius + 1)
    throw std::invalid_argument("image too small for the 11x11 window");

  const std::vector<double> w1 = normalized_gaussian(kRadius, kSigma);
  double channel_total = 0.0;
  for (int c = 0; c < Image::kChannels; ++c) {
    const float* pa = a.plane(c);
    const float* pb = b.plane(c);
    double score_sum = 0.0;
    std::size_t count = 0;
    for (int y = kRadius; y < a.height - kRadius; ++y) {
      for (int x = kRadius; x < a.width - kRadius; ++x) {
        double mu_a = 0.0, mu_b = 0.0, aa = 0.0, bb = 0.0, ab = 0.0;
        for (int dy = -kRadius; dy <= kRadius; ++dy) {
          for (int dx = -kRadius; dx <= kRadius; ++dx) {
            const double w = w1[dy + kRadius] * w1[dx + kRadius];
            const std::size_t idx =
                static_cast<std::size_t>(y + dy) * a.width + (x + dx);
            const double va = pa[idx];
            const double vb = pb[idx];
            mu_a += w * va;
            mu_b += w * vb;
            aa += w * va * va;
            bb += w * vb * vb;
            ab += w * va * vb;
          }
        }
        const double var_a = aa - mu_a * mu_a;
        const double var_b = bb - mu_b * mu_b;
        const double cov = ab - mu_a * mu_b;
        const double num = (2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2);
        const double den = (mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2);
        score_sum += num / den;
        ++count;
      }
    }
    channel_total += score_sum / static_cast<double>(count);
  }
  return channel_total / Image::kChannels;
}

}  // namespace msb::reference

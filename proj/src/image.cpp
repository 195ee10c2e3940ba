#include "msb/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msb {

Image::Image(int h, int w, float fill)
    : height(h),
      width(w),
      data(static_cast<std::size_t>(kChannels) * h * w, fill) {
  if (h < 1 || w < 1) throw std::invalid_argument("image dimensions must be >= 1");
}

std::uint8_t quantize_sample(float v) {
  const float clamped = std::min(255.0f, std::max(0.0f, v));
  return static_cast<std::uint8_t>(std::lround(clamped));
}

Image center_crop_square(const Image& img) {
  const int side = std::min(img.height, img.width);
  const int top = (img.height - side) / 2;
  const int left = (img.width - side) / 2;
  if (side == img.height && side == img.width) return img;
  Image out(side, side);
  for (int c = 0; c < Image::kChannels; ++c)
    for (int y = 0; y < side; ++y)
      for (int x = 0; x < side; ++x) out.at(c, y, x) = img.at(c, top + y, left + x);
  return out;
}

Image resize_bilinear(const Image& img, int out_height, int out_width) {
  if (out_height < 1 || out_width < 1)
    throw std::invalid_argument("resize target must be >= 1");
  if (out_height == img.height && out_width == img.width) return img;
  Image out(out_height, out_width);
  const double sy = static_cast<double>(img.height) / out_height;
  const double sx = static_cast<double>(img.width) / out_width;
  for (int y = 0; y < out_height; ++y) {
    // Source sample position for the output pixel center.
    double fy = (y + 0.5) * sy - 0.5;
    fy = std::min(std::max(fy, 0.0), static_cast<double>(img.height - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double wy = fy - y0;
    for (int x = 0; x < out_width; ++x) {
      double fx = (x + 0.5) * sx - 0.5;
      fx = std::min(std::max(fx, 0.0), static_cast<double>(img.width - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, img.width - 1);
      const double wx = fx - x0;
      for (int c = 0; c < Image::kChannels; ++c) {
        const double top = img.at(c, y0, x0) * (1.0 - wx) + img.at(c, y0, x1) * wx;
        const double bot = img.at(c, y1, x0) * (1.0 - wx) + img.at(c, y1, x1) * wx;
        out.at(c, y, x) = static_cast<float>(top * (1.0 - wy) + bot * wy);
      }
    }
  }
  return out;
}

Image prepare_source(const Image& img, int size) {
  if (img.height == size && img.width == size) return img;
  return resize_bilinear(center_crop_square(img), size, size);
}

}  // namespace msb

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace msb {

// Planar float image, always 3 channels, values on the 0-255 scale.
// Intermediate math may leave fractional values; quantize_sample() maps a
// value back to 8-bit storage.
struct Image {
  int height = 0;
  int width = 0;
  static constexpr int kChannels = 3;
  std::vector<float> data;  // plane-major: [channel][row][col]

  Image() = default;
  Image(int h, int w, float fill = 0.0f);

  std::size_t plane_size() const {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }
  float* plane(int c) { return data.data() + static_cast<std::size_t>(c) * plane_size(); }
  const float* plane(int c) const {
    return data.data() + static_cast<std::size_t>(c) * plane_size();
  }
  float& at(int c, int y, int x) { return plane(c)[static_cast<std::size_t>(y) * width + x]; }
  float at(int c, int y, int x) const {
    return plane(c)[static_cast<std::size_t>(y) * width + x];
  }
  bool same_size(const Image& o) const { return height == o.height && width == o.width; }
};

struct Rect {
  int top = 0;
  int left = 0;
  int height = 0;
  int width = 0;
  bool empty() const { return height <= 0 || width <= 0; }
};

std::uint8_t quantize_sample(float v);

Image center_crop_square(const Image& img);
Image resize_bilinear(const Image& img, int out_height, int out_width);

// Square center-crop followed by a bilinear resample to size x size.
// Returns the input unchanged when it already has that shape.
Image prepare_source(const Image& img, int size);

}  // namespace msb
